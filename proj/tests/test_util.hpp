// Shared helpers for the test suites: deterministic RNG, random polynomial
// and operator generators, and a couple of small systems used throughout.
#ifndef JB_TEST_UTIL_HPP
#define JB_TEST_UTIL_HPP

#include <random>
#include <vector>

#include "jb/diffpoly.hpp"
#include "jb/linops.hpp"
#include "jb/sysfile.hpp"

namespace jbtest {

using namespace jb;

inline std::mt19937_64 make_rng(uint64_t seed) {
    return std::mt19937_64(seed);
}

inline Q random_q(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    int n = num(rng);
    if (n == 0)
        n = 1;
    return frac(n, den(rng));
}

// A polynomial with small support drawn from the given variable pool.
inline DiffPoly random_poly(const UniversePtr& uni, const std::vector<uint32_t>& pool,
                            std::mt19937_64& rng, int max_terms = 3, int max_deg = 2) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<size_t> pick(0, pool.empty() ? 0 : pool.size() - 1);
    std::vector<DiffPoly::Term> terms;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Monomial m;
        int d = deg(rng);
        std::vector<uint32_t> vars;
        for (int j = 0; j < d && !pool.empty(); ++j)
            vars.push_back(pool[pick(rng)]);
        // Assemble the monomial respecting the significance order.
        std::sort(vars.begin(), vars.end(), [&](uint32_t a, uint32_t b) {
            return uni->more_significant(a, b);
        });
        for (uint32_t v : vars) {
            if (!m.f.empty() && m.f.back().first == v)
                m.f.back().second += 1;
            else
                m.f.emplace_back(v, 1);
        }
        terms.push_back({std::move(m), random_q(rng)});
    }
    return DiffPoly::from_terms(uni, std::move(terms));
}

// Pool of variables: base variables plus unknown jets up to the given order.
inline std::vector<uint32_t> jet_pool(const PDESystem& sys, int max_order,
                                      bool include_base = true) {
    std::vector<uint32_t> pool;
    if (include_base)
        for (size_t i = 0; i < sys.n(); ++i)
            pool.push_back(sys.uni->base_var(i));
    for (size_t s : sys.unknowns)
        for (auto& idx : multiindices_up_to(sys.n(), max_order))
            pool.push_back(sys.uni->jet_var(s, idx));
    return pool;
}

// A scalar operator with a few random D-monomials of order <= max_ord and
// coefficients drawn from the pool.
inline LinDiffOp random_linop(const UniversePtr& uni, const std::vector<uint32_t>& pool,
                              std::mt19937_64& rng, int max_ord, int terms = 2,
                              int coeff_deg = 1) {
    std::uniform_int_distribution<int> ordd(0, max_ord);
    std::uniform_int_distribution<size_t> dir(0, uni->dim() - 1);
    LinDiffOp r(uni);
    for (int t = 0; t < terms; ++t) {
        MultiIndex sigma(uni->dim());
        int d = ordd(rng);
        for (int j = 0; j < d; ++j)
            sigma.e[dir(rng)] += 1;
        r = r + LinDiffOp::monomial(random_poly(uni, pool, rng, 2, coeff_deg), sigma);
    }
    return r;
}

inline VectorDiffOp random_row(const UniversePtr& uni, const std::vector<uint32_t>& pool,
                               std::mt19937_64& rng, size_t m, int max_ord,
                               int coeff_deg = 1) {
    VectorDiffOp row(uni, m);
    for (size_t i = 0; i < m; ++i)
        row.comp[i] = random_linop(uni, pool, rng, max_ord, 2, coeff_deg);
    return row;
}

inline PDESystem demo_system() {
    return parse_system(
        "system demo\n"
        "base x y\n"
        "unknown u v\n"
        "param lam\n"
        "param E diff x -> E*lam[1,0], y -> E*lam[0,1]\n");
}

inline PDESystem scalar_system() {
    return parse_system(
        "system scalar\n"
        "base x y\n"
        "unknown u\n");
}

} // namespace jbtest

#endif
