#include "jb/brackets.hpp"

#include <algorithm>
#include <map>

#include "jb/errors.hpp"

namespace jb {

namespace {

void check_arity(const PDESystem& sys, const std::vector<DiffPoly>& F) {
    if (F.size() != sys.m() + 1)
        throw shape_error("multi-bracket needs m+1 operators for m unknowns");
    for (const auto& f : F)
        if (f.universe() != sys.uni)
            throw universe_mismatch("bracket operand from a different universe");
}

int perm_sign(const std::vector<size_t>& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j])
                ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

// Derivatives D_tau F_e, filled incrementally and shared across the
// permutation sum.
class DerivativeCache {
public:
    explicit DerivativeCache(const std::vector<DiffPoly>& F) : F_(F) {}

    const DiffPoly& get(size_t e, const MultiIndex& tau) {
        auto key = std::make_pair(e, tau);
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;
        DiffPoly value;
        if (tau.is_zero()) {
            value = F_[e];
        } else {
            size_t dir = 0;
            while (tau[dir] == 0)
                ++dir;
            value = total_derivative(get(e, tau.minus(dir)), dir);
        }
        return cache_.emplace(std::move(key), std::move(value)).first->second;
    }

private:
    struct KeyLess {
        bool operator()(const std::pair<size_t, MultiIndex>& a,
                        const std::pair<size_t, MultiIndex>& b) const {
            if (a.first != b.first)
                return a.first < b.first;
            return graded_lex_less(a.second, b.second);
        }
    };
    const std::vector<DiffPoly>& F_;
    std::map<std::pair<size_t, MultiIndex>, DiffPoly, KeyLess> cache_;
};

DiffPoly det_poly(const UniversePtr& u, const std::vector<std::vector<DiffPoly>>& m) {
    size_t q = m.size();
    std::vector<size_t> perm(q);
    for (size_t i = 0; i < q; ++i)
        perm[i] = i;
    DiffPoly acc = DiffPoly::zero(u);
    do {
        DiffPoly prod = DiffPoly::constant(u, 1);
        bool dead = false;
        for (size_t j = 0; j < q; ++j) {
            if (m[j][perm[j]].is_zero()) {
                dead = true;
                break;
            }
            prod = prod * m[j][perm[j]];
        }
        if (!dead)
            acc = perm_sign(perm) > 0 ? acc + prod : acc - prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

} // namespace

DiffPoly multibracket(const PDESystem& sys, const std::vector<DiffPoly>& F) {
    check_arity(sys, F);
    std::vector<VectorDiffOp> rows;
    rows.reserve(F.size());
    for (const auto& f : F)
        rows.push_back(linearize(sys, f));
    DiffPoly acc = DiffPoly::zero(sys.uni);
    for (size_t k = 0; k < F.size(); ++k) {
        std::vector<std::vector<LinDiffOp>> minor;
        for (size_t i = 0; i < F.size(); ++i)
            if (i != k)
                minor.push_back(rows[i].comp);
        DiffPoly term = ndet(minor).apply(F[k]);
        // Sign (-1)^k for 1-based k.
        acc = (k % 2 == 0) ? acc - term : acc + term;
    }
    return acc;
}

DiffPoly coordinate_multibracket(const PDESystem& sys, const std::vector<DiffPoly>& F) {
    check_arity(sys, F);
    size_t m = sys.m();
    size_t n = sys.n();
    std::vector<int> ord(F.size());
    for (size_t i = 0; i < F.size(); ++i)
        ord[i] = order(F[i]);

    DerivativeCache dcache(F);
    DiffPoly acc = DiffPoly::zero(sys.uni);

    std::vector<size_t> zeta(m + 1);
    for (size_t i = 0; i <= m; ++i)
        zeta[i] = i;
    do {
        int sz = perm_sign(zeta);
        // Enumerate tuples (tau_1..tau_m) with |tau_j| = ord(F_zeta(j)).
        std::vector<std::vector<MultiIndex>> ranges(m);
        for (size_t j = 0; j < m; ++j)
            ranges[j] = multiindices_of_order(n, ord[zeta[j]]);
        std::vector<size_t> pick(m, 0);
        for (;;) {
            MultiIndex total(n);
            for (size_t j = 0; j < m; ++j)
                total = total + ranges[j][pick[j]];
            std::vector<std::vector<DiffPoly>> jac(m, std::vector<DiffPoly>(m));
            bool zero_row = false;
            for (size_t j = 0; j < m && !zero_row; ++j) {
                bool any = false;
                for (size_t k = 0; k < m; ++k) {
                    jac[j][k] = F[zeta[j]].partial(
                        sys.uni->jet_var(sys.unknowns[k], ranges[j][pick[j]]));
                    any = any || !jac[j][k].is_zero();
                }
                zero_row = !any;
            }
            if (!zero_row) {
                DiffPoly d = det_poly(sys.uni, jac);
                if (!d.is_zero()) {
                    DiffPoly term = d * dcache.get(zeta[m], total);
                    acc = sz > 0 ? acc + term : acc - term;
                }
            }
            // Advance the tuple odometer.
            size_t j = 0;
            while (j < m) {
                if (++pick[j] < ranges[j].size())
                    break;
                pick[j] = 0;
                ++j;
            }
            if (j == m)
                break;
        }
    } while (std::next_permutation(zeta.begin(), zeta.end()));

    return acc * (Q(1) / Q(factorial(m)));
}

DiffPoly mayer_bracket(const PDESystem& sys, const DiffPoly& F, const DiffPoly& G) {
    if (sys.m() != 1)
        throw shape_error("Mayer bracket is defined for one unknown");
    return multibracket(sys, {F, G});
}

} // namespace jb
