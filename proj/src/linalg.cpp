#include "jb/linalg.hpp"

namespace jb {

std::vector<size_t> rref(QMat& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        size_t p = row;
        while (p < m.rows && m.at(p, col) == 0)
            ++p;
        if (p == m.rows)
            continue;
        if (p != row)
            for (size_t j = 0; j < m.cols; ++j)
                std::swap(m.at(p, j), m.at(row, j));
        Q inv = Q(1) / m.at(row, col);
        for (size_t j = col; j < m.cols; ++j)
            m.at(row, j) *= inv;
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col) == 0)
                continue;
            Q f = m.at(i, col);
            for (size_t j = col; j < m.cols; ++j)
                m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

size_t rank(const QMat& m) {
    QMat c = m;
    return rref(c).size();
}

std::vector<std::vector<Q>> nullspace(const QMat& m) {
    QMat c = m;
    std::vector<size_t> pivots = rref(c);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t p : pivots)
        is_pivot[p] = true;
    std::vector<std::vector<Q>> basis;
    for (size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Q> v(m.cols, Q(0));
        v[free] = 1;
        for (size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -c.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Q>> solve(const QMat& m, const std::vector<Q>& b) {
    QMat aug(m.rows, m.cols + 1);
    for (size_t i = 0; i < m.rows; ++i) {
        for (size_t j = 0; j < m.cols; ++j)
            aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    std::vector<size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols)
        return std::nullopt; // a pivot in the constant column
    std::vector<Q> x(m.cols, Q(0));
    for (size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = aug.at(i, m.cols);
    return x;
}

} // namespace jb
