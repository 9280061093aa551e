// Exact rational scalars. All arithmetic in the library is over Q; floats
// never appear.
#ifndef JB_RATIONAL_HPP
#define JB_RATIONAL_HPP

#include <gmpxx.h>
#include <string>

namespace jb {

using Q = mpq_class;
using Z = mpz_class;

// mpq_class(n, d) does not reduce the fraction on its own.
inline Q frac(long num, long den) {
    Q q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Q& q) {
    return q.get_str();
}

// Exact binomial coefficient, 0 outside the triangle.
inline Z binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n)
        return 0;
    Z b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

inline Z factorial(long n) {
    Z f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n));
    return f;
}

} // namespace jb

#endif
