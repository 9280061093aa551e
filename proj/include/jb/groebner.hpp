// Buchberger's algorithm and canonical normal forms over the jet polynomial
// ring, with exact rational arithmetic. Computations carry a budget; blowing
// past it raises budget_exceeded so callers can report "inconclusive" instead
// of a wrong verdict.
#ifndef JB_GROEBNER_HPP
#define JB_GROEBNER_HPP

#include <vector>

#include "jb/diffpoly.hpp"

namespace jb {

struct Budget {
    int max_degree = 24;          // total degree any intermediate may reach
    size_t max_monomials = 200000; // total monomials across the working basis
};

// Relation polynomials t_q * d_q - 1 for every inverse symbol declared in the
// universe, in declaration order.
std::vector<DiffPoly> inverse_relations(const UniversePtr& u);

class GroebnerBasis {
public:
    GroebnerBasis() = default;
    // Computes the reduced basis of <gens>; deterministic for a fixed
    // generator order.
    GroebnerBasis(UniversePtr u, std::vector<DiffPoly> gens, Budget budget = {});

    const UniversePtr& universe() const { return uni_; }
    const std::vector<DiffPoly>& basis() const { return g_; }

    // Canonical remainder of f modulo the ideal; zero iff f is a member.
    DiffPoly normal_form(const DiffPoly& f) const;
    bool contains(const DiffPoly& f) const { return normal_form(f).is_zero(); }
    // The ideal contains 1 (no solutions at all).
    bool is_unit() const;

private:
    UniversePtr uni_;
    std::vector<DiffPoly> g_;
    Budget budget_;

    DiffPoly reduce(const DiffPoly& f, const std::vector<DiffPoly>& gens) const;
};

} // namespace jb

#endif
