#pragma once

#include <vector>

#include "ritt/rational.hpp"

namespace ritt {

using Matrix = std::vector<std::vector<Rational>>;

// In-place reduced row echelon form by exact Gaussian elimination over Q
// (first nonzero entry in each column is the pivot). Returns the pivot
// column indices in increasing order. RREF is unique, so everything built
// from it is deterministic.
inline std::vector<size_t> rref(Matrix& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && m[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        Rational inv = Rational(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rational f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Canonical nullspace basis: one vector per free column in increasing column
// order, with 1 in the free position and the pivot rows back-substituted.
inline std::vector<std::vector<Rational>> nullspace(Matrix m, size_t cols) {
    std::vector<size_t> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<Rational> v(cols);
        v[free_c] = Rational(1);
        for (size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -m[i][free_c];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace ritt
