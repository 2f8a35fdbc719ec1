#pragma once

/// Dense linear algebra over F_p: rank, determinant, and exact linear solves.
/// Row-major matrices as vector<vector<uint32_t>> with entries in [0, p).

#include <cstdint>
#include <vector>

#include "cyclotrace/modp.hpp"

namespace cyclo {

using fp_matrix = std::vector<std::vector<uint32_t>>;

inline size_t fp_rank(fp_matrix m, uint32_t p) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size(), rk = 0;
    for (size_t c = 0; c < cols && rk < rows; ++c) {
        size_t piv = rk;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rk], m[piv]);
        uint32_t iv = mod_inv(m[rk][c], p);
        for (size_t j = c; j < cols; ++j) m[rk][j] = mod_mul(m[rk][j], iv, p);
        for (size_t i = 0; i < rows; ++i) {
            if (i == rk || m[i][c] == 0) continue;
            uint32_t f = m[i][c];
            for (size_t j = c; j < cols; ++j)
                m[i][j] = mod_sub(m[i][j], mod_mul(f, m[rk][j], p), p);
        }
        ++rk;
    }
    return rk;
}

inline uint32_t fp_det(fp_matrix m, uint32_t p) {
    size_t n = m.size();
    uint32_t det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) { std::swap(m[c], m[piv]); det = mod_neg(det, p); }
        det = mod_mul(det, m[c][c], p);
        uint32_t iv = mod_inv(m[c][c], p);
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            uint32_t f = mod_mul(m[i][c], iv, p);
            for (size_t j = c; j < n; ++j)
                m[i][j] = mod_sub(m[i][j], mod_mul(f, m[c][j], p), p);
        }
    }
    return det;
}

struct fp_solution {
    bool consistent = false;
    bool unique = false;
    std::vector<uint32_t> x;  // free variables pinned to 0
};

/// Solve A x = b exactly over F_p (A may be rectangular / rank deficient).
inline fp_solution fp_solve(const fp_matrix& a, const std::vector<uint32_t>& b, uint32_t p) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    fp_matrix m(rows);
    for (size_t i = 0; i < rows; ++i) {
        m[i] = a[i];
        m[i].push_back(b[i]);
    }
    std::vector<size_t> pivot_col;
    size_t rk = 0;
    for (size_t c = 0; c < cols && rk < rows; ++c) {
        size_t piv = rk;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rk], m[piv]);
        uint32_t iv = mod_inv(m[rk][c], p);
        for (size_t j = c; j <= cols; ++j) m[rk][j] = mod_mul(m[rk][j], iv, p);
        for (size_t i = 0; i < rows; ++i) {
            if (i == rk || m[i][c] == 0) continue;
            uint32_t f = m[i][c];
            for (size_t j = c; j <= cols; ++j)
                m[i][j] = mod_sub(m[i][j], mod_mul(f, m[rk][j], p), p);
        }
        pivot_col.push_back(c);
        ++rk;
    }
    fp_solution sol;
    for (size_t i = rk; i < rows; ++i)
        if (m[i][cols] != 0) return sol;  // 0 = nonzero: inconsistent
    sol.consistent = true;
    sol.unique = (rk == cols);
    sol.x.assign(cols, 0);
    for (size_t r = 0; r < rk; ++r) sol.x[pivot_col[r]] = m[r][cols];
    return sol;
}

} // namespace cyclo
