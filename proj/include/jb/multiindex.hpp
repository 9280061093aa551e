// Multi-indices over the base directions: exponents of derivatives D_1..D_n
// and of symbol variables. Length always equals the universe dimension n.
#ifndef JB_MULTIINDEX_HPP
#define JB_MULTIINDEX_HPP

#include <vector>
#include <numeric>
#include <string>
#include <cstdint>

#include "jb/rational.hpp"
#include "jb/errors.hpp"

namespace jb {

struct MultiIndex {
    std::vector<int> e;

    MultiIndex() = default;
    explicit MultiIndex(size_t n) : e(n, 0) {}
    MultiIndex(std::initializer_list<int> init) : e(init) {}

    size_t size() const { return e.size(); }
    int operator[](size_t i) const { return e[i]; }
    int& operator[](size_t i) { return e[i]; }

    int order() const { return std::accumulate(e.begin(), e.end(), 0); }
    bool is_zero() const { return order() == 0; }

    bool operator==(const MultiIndex& o) const { return e == o.e; }
    bool operator!=(const MultiIndex& o) const { return !(*this == o); }

    MultiIndex plus(size_t dir) const {
        MultiIndex r = *this;
        r.e[dir] += 1;
        return r;
    }
    MultiIndex minus(size_t dir) const {
        MultiIndex r = *this;
        r.e[dir] -= 1;
        return r;
    }
    MultiIndex operator+(const MultiIndex& o) const {
        MultiIndex r = *this;
        for (size_t i = 0; i < e.size(); ++i)
            r.e[i] += o.e[i];
        return r;
    }
    MultiIndex operator-(const MultiIndex& o) const {
        MultiIndex r = *this;
        for (size_t i = 0; i < e.size(); ++i)
            r.e[i] -= o.e[i];
        return r;
    }
    // Componentwise <=, the divisibility order on derivatives.
    bool leq(const MultiIndex& o) const {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > o.e[i])
                return false;
        return true;
    }

    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < e.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e[i]);
        }
        return s + "]";
    }
};

// Graded lexicographic: total order first, then leftmost differing entry.
inline bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
    if (a.order() != b.order())
        return a.order() < b.order();
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return a[i] < b[i];
    return false;
}

struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        return graded_lex_less(a, b);
    }
};

// Product of per-entry binomials; the Leibniz coefficient for D_sigma.
inline Z multi_binomial(const MultiIndex& sigma, const MultiIndex& rho) {
    Z c = 1;
    for (size_t i = 0; i < sigma.size(); ++i)
        c *= binomial(sigma[i], rho[i]);
    return c;
}

// All multi-indices of length n with total order exactly d, in graded-lex order.
std::vector<MultiIndex> multiindices_of_order(size_t n, int d);
// All with total order <= d, in graded-lex order.
std::vector<MultiIndex> multiindices_up_to(size_t n, int d);

} // namespace jb

#endif
