// Sparse exact polynomials in jet coordinates: base variables x^i, jets of
// unknowns and parameters, and inverse symbols. Terms are kept sorted in the
// canonical monomial order (graded reverse lexicographic over the variable
// ranking), leading term first, so equal polynomials have equal
// representations and printing is canonical.
#ifndef JB_DIFFPOLY_HPP
#define JB_DIFFPOLY_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "jb/universe.hpp"
#include "jb/rational.hpp"

namespace jb {

// Exponent list sorted most-significant variable first, no zero exponents.
struct Monomial {
    std::vector<std::pair<uint32_t, uint32_t>> f; // (var id, exponent)

    int degree() const {
        int d = 0;
        for (auto& [v, e] : f)
            d += static_cast<int>(e);
        return d;
    }
    bool is_one() const { return f.empty(); }
    uint32_t exponent(uint32_t var) const {
        for (auto& [v, e] : f)
            if (v == var)
                return e;
        return 0;
    }
    bool operator==(const Monomial& o) const { return f == o.f; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
};

// Graded reverse lexicographic comparison; returns -1, 0, 1.
int mono_cmp(const Universe& u, const Monomial& a, const Monomial& b);
Monomial mono_mul(const Universe& u, const Monomial& a, const Monomial& b);
// Exact division; caller guarantees divisibility.
Monomial mono_div(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& a, const Monomial& b); // a | b
Monomial mono_lcm(const Universe& u, const Monomial& a, const Monomial& b);

class DiffPoly {
public:
    struct Term {
        Monomial m;
        Q c;
    };

    DiffPoly() = default; // invalid until given a universe
    explicit DiffPoly(UniversePtr u) : uni_(std::move(u)) {}

    static DiffPoly zero(UniversePtr u) { return DiffPoly(std::move(u)); }
    static DiffPoly constant(UniversePtr u, const Q& c);
    static DiffPoly variable(UniversePtr u, uint32_t var);
    static DiffPoly base(UniversePtr u, size_t i);
    // Jet of a symbol, with parameter rules applied: jets of a parameter in a
    // ruled direction are expanded through the rule. depth guards rule cycles.
    static DiffPoly jet(UniversePtr u, size_t symbol, const MultiIndex& idx, int depth = 0);

    const UniversePtr& universe() const { return uni_; }
    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
    const Term& leading() const;
    int degree() const; // total degree, -1 for zero

    DiffPoly operator-() const;
    DiffPoly operator+(const DiffPoly& o) const;
    DiffPoly operator-(const DiffPoly& o) const;
    DiffPoly operator*(const DiffPoly& o) const;
    DiffPoly operator*(const Q& c) const;
    DiffPoly pow(int k) const;
    bool operator==(const DiffPoly& o) const;
    bool operator!=(const DiffPoly& o) const { return !(*this == o); }

    // d/dv for a single interned variable.
    DiffPoly partial(uint32_t var) const;

    std::string str() const;

    // Assemble from arbitrary (monomial, coefficient) pairs.
    static DiffPoly from_terms(UniversePtr u, std::vector<Term> terms);

private:
    UniversePtr uni_;
    std::vector<Term> t_;

    void check_same(const DiffPoly& o) const;
    friend DiffPoly total_derivative(const DiffPoly&, size_t, int);
};

inline DiffPoly operator*(const Q& c, const DiffPoly& p) { return p * c; }

// Total derivative D_i: acts as d/dx^i on base variables, shifts jets of
// unknowns, and routes jets of parameters through their derivative rules.
// Recursion depth above 64 reports a rule cycle.
DiffPoly total_derivative(const DiffPoly& p, size_t dir, int depth = 0);
DiffPoly total_derivative_multi(const DiffPoly& p, const MultiIndex& tau, int depth = 0);

// Maximal jet order among unknown jet variables; parameter jets do not count.
// The zero polynomial has no order.
int order(const DiffPoly& p);

// Evaluate every variable through the assignment.
Q evaluate(const DiffPoly& p, const std::function<Q(uint32_t)>& value);

// A PDE system: universe plus named equations and declared invertibles.
struct Equation {
    std::string name;
    DiffPoly poly;
    int ord;
};

struct PDESystem {
    std::string name;
    UniversePtr uni;
    std::vector<Equation> eqs;
    std::vector<DiffPoly> invertibles;
    std::vector<size_t> unknowns; // symbol indices, declaration order
    std::vector<size_t> params;   // symbol indices, declaration order

    size_t n() const { return uni->dim(); }
    size_t m() const { return unknowns.size(); }
    size_t r() const { return eqs.size(); }
};

} // namespace jb

#endif
