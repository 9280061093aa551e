// Dense exact linear algebra over Q: reduced row echelon form, rank,
// nullspace, and linear solving. Sizes here are small (hundreds of rows at
// most), so plain Gaussian elimination with exact pivots is the right tool.
#ifndef JB_LINALG_HPP
#define JB_LINALG_HPP

#include <optional>
#include <vector>

#include "jb/rational.hpp"

namespace jb {

struct QMat {
    size_t rows = 0, cols = 0;
    std::vector<Q> a; // row-major

    QMat() = default;
    QMat(size_t r, size_t c) : rows(r), cols(c), a(r * c, Q(0)) {}

    Q& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Q& at(size_t i, size_t j) const { return a[i * cols + j]; }
};

// In-place reduced row echelon form; returns the pivot columns.
std::vector<size_t> rref(QMat& m);

size_t rank(const QMat& m);

// Columns spanning the kernel of m (as a rows x k matrix of column vectors).
std::vector<std::vector<Q>> nullspace(const QMat& m);

// One solution x of m x = b, or nullopt when inconsistent.
std::optional<std::vector<Q>> solve(const QMat& m, const std::vector<Q>& b);

} // namespace jb

#endif
