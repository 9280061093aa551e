// Multi-brackets of non-linear scalar differential operators on a system
// with m unknowns: m+1 operators produce one operator measuring the first
// obstruction to shared solutions. The linearization-based bracket is the
// canonical definition; the coordinate bracket is the cheaper Jacobian form
// that represents the same class modulo the prolonged module.
#ifndef JB_BRACKETS_HPP
#define JB_BRACKETS_HPP

#include <vector>

#include "jb/linops.hpp"

namespace jb {

// { F_1, ..., F_{m+1} } = sum_k (-1)^k Ndet[linearization rows != k](F_k).
// Expects exactly m+1 operators, each with a defined order.
DiffPoly multibracket(const PDESystem& sys, const std::vector<DiffPoly>& F);

// Jacobian form: (1/m!) sum over permutations zeta of S_{m+1} of
//   sgn(zeta) sum_{|tau_j| = ord(F_zeta(j))} det[ dF_zeta(j)/dp^k_tau_j ]
//     * D_{tau_1+...+tau_m} F_zeta(m+1).
// Represents the same class as multibracket modulo J_{sum ord - 1}.
DiffPoly coordinate_multibracket(const PDESystem& sys, const std::vector<DiffPoly>& F);

// The Mayer bracket of two scalar operators: the m = 1 multi-bracket.
DiffPoly mayer_bracket(const PDESystem& sys, const DiffPoly& F, const DiffPoly& G);

} // namespace jb

#endif
