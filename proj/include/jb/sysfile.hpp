// The line-oriented system description language.
//
//   system NAME
//   base x y ...
//   unknown u v ...
//   param P [diff x -> EXPR, y -> EXPR]
//   invertible EXPR
//   eq NAME = EXPR
//
// '#' starts a comment. Expressions use rational literals (3/2), identifiers,
// jet access u[1,0] (bare u is the zero jet), + - * ^ with non-negative
// integer exponents, and parentheses. There is no division operator; division
// only enters through declared invertibles.
#ifndef JB_SYSFILE_HPP
#define JB_SYSFILE_HPP

#include <string>

#include "jb/diffpoly.hpp"

namespace jb {

PDESystem parse_system(const std::string& text);

// Canonical form: declarations in order, equations with canonically printed
// polynomials. parse(print(parse(t))) is identical to parse(t).
std::string print_system(const PDESystem& sys);

// Parse a single expression against an existing system's universe; used by
// the command line for ad-hoc --invertible declarations.
DiffPoly parse_expression(const PDESystem& sys, const std::string& text);

} // namespace jb

#endif
