// Scalar linear differential operators in total derivatives, with DiffPoly
// coefficients, and rows of them. Composition uses the Leibniz expansion
//   D_sigma o (b D_tau) = sum_{rho <= sigma} C(sigma,rho) D_rho(b) D_{sigma-rho+tau},
// so coefficients of operators never commute past total derivatives.
#ifndef JB_LINOPS_HPP
#define JB_LINOPS_HPP

#include <map>
#include <vector>

#include "jb/diffpoly.hpp"

namespace jb {

class LinDiffOp {
public:
    LinDiffOp() = default;
    explicit LinDiffOp(UniversePtr u) : uni_(std::move(u)) {}

    static LinDiffOp zero(UniversePtr u) { return LinDiffOp(std::move(u)); }
    // coeff * D_sigma
    static LinDiffOp monomial(const DiffPoly& coeff, const MultiIndex& sigma);
    static LinDiffOp identity(UniversePtr u);

    const UniversePtr& universe() const { return uni_; }
    const std::map<MultiIndex, DiffPoly, GradedLexLess>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // Max |sigma| with nonzero coefficient; -1 for the zero operator.
    int ord() const;

    LinDiffOp operator+(const LinDiffOp& o) const;
    LinDiffOp operator-(const LinDiffOp& o) const;
    LinDiffOp operator-() const;
    LinDiffOp operator*(const Q& c) const;
    // Left multiplication by a coefficient polynomial.
    LinDiffOp lmul(const DiffPoly& p) const;
    bool operator==(const LinDiffOp& o) const;
    bool operator!=(const LinDiffOp& o) const { return !(*this == o); }

    DiffPoly apply(const DiffPoly& f) const;

    std::string str() const;

    void set(const MultiIndex& sigma, const DiffPoly& coeff);

private:
    UniversePtr uni_;
    std::map<MultiIndex, DiffPoly, GradedLexLess> c_;
};

LinDiffOp compose(const LinDiffOp& a, const LinDiffOp& b);

// The principal symbol at filtration degree k: the |sigma| = k part, read as
// a polynomial in the cotangent symbols xi via D_sigma -> xi^sigma. Raising k
// above the order gives zero; k below the order is a filtration error.
LinDiffOp symbol(const LinDiffOp& a, int k);
// Commutative product of symbols (coefficients multiply, xi exponents add).
LinDiffOp symbol_mul(const LinDiffOp& a, const LinDiffOp& b);

// A row of scalar operators; the universal linearization of one equation.
struct VectorDiffOp {
    UniversePtr uni;
    std::vector<LinDiffOp> comp;

    size_t size() const { return comp.size(); }
    VectorDiffOp() = default;
    VectorDiffOp(UniversePtr u, size_t m) : uni(std::move(u)), comp(m, LinDiffOp(uni)) {}

    VectorDiffOp operator+(const VectorDiffOp& o) const;
    VectorDiffOp operator-(const VectorDiffOp& o) const;
    VectorDiffOp operator-() const;
    bool operator==(const VectorDiffOp& o) const;
    bool is_zero() const;
};

// Pre-compose every component with a scalar operator: (s o row).
VectorDiffOp compose(const LinDiffOp& s, const VectorDiffOp& row);

// Noncommutative determinant: sum over row permutations alpha of
// sign(alpha) * M[alpha(1)][1] o M[alpha(2)][2] o ... with factors ordered by
// increasing column index. Row operations behave as for determinants; column
// operations do not.
LinDiffOp ndet(const std::vector<std::vector<LinDiffOp>>& m);

// Universal linearization of F: component j is sum_sigma dF/dp^j_sigma D_sigma
// over the system's unknowns.
VectorDiffOp linearize(const PDESystem& sys, const DiffPoly& F);

// { nabla_1, ..., nabla_{m+1} } = sum_k (-1)^k Ndet[rows != k] o nabla_k,
// the linear multi-bracket of m+1 rows of length m.
VectorDiffOp multibracket_linear(const std::vector<VectorDiffOp>& rows);

// Place-holder-first variant: sum_k (-1)^(k-1) nabla_k o Ndet[rows != k],
// the first-column Laplace expansion. Coincides with multibracket_linear at
// m = 1; on constant-coefficient rows both brackets vanish identically.
VectorDiffOp opposite_multibracket_linear(const std::vector<VectorDiffOp>& rows);

} // namespace jb

#endif
