#pragma once

// Exact linear algebra over the rationals: fraction-free (Bareiss) rank and
// determinant, reduced row echelon form, kernel bases and linear solves.
// Matrices are plain row-major vectors of vectors.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mtd/rational.hpp"

namespace mtd {

using VecR = std::vector<Rational>;
using MatR = std::vector<VecR>;

inline MatR identity_matrix(std::size_t n) {
    MatR m(n, VecR(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline VecR mat_vec(const MatR& a, const VecR& x) {
    VecR y(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (a[i][j] != 0 && x[j] != 0) y[i] += a[i][j] * x[j];
    return y;
}

inline MatR transpose(const MatR& a) {
    if (a.empty()) return {};
    MatR t(a[0].size(), VecR(a.size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

namespace detail {

// Clears denominators row by row so Bareiss runs over integers.
inline std::vector<std::vector<Int>> to_integer_rows(const MatR& a) {
    std::vector<std::vector<Int>> rows;
    rows.reserve(a.size());
    for (const auto& row : a) {
        Int lcm = 1;
        for (const auto& x : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
        std::vector<Int> r;
        r.reserve(row.size());
        for (const auto& x : row) r.push_back(Int(x.get_num()) * (lcm / Int(x.get_den())));
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace detail

// Rank over Q via fraction-free Gaussian elimination (Bareiss).
inline std::size_t exact_rank(const MatR& a) {
    if (a.empty() || a[0].empty()) return 0;
    auto m = detail::to_integer_rows(a);
    const std::size_t nr = m.size(), nc = m[0].size();
    std::size_t rank = 0;
    Int prev = 1;
    for (std::size_t col = 0; col < nc && rank < nr; ++col) {
        std::size_t piv = rank;
        while (piv < nr && m[piv][col] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t i = rank + 1; i < nr; ++i) {
            for (std::size_t j = col + 1; j < nc; ++j)
                m[i][j] = (m[i][j] * m[rank][col] - m[i][col] * m[rank][j]) / prev;
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

// Determinant of a square matrix, exact.
inline Rational exact_det(const MatR& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    auto m = detail::to_integer_rows(a);
    Rational scale = 1;  // det(a) = det(m) / prod(row multipliers)
    for (std::size_t i = 0; i < n; ++i) {
        Int lcm = 1;
        for (const auto& x : a[i]) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
        scale *= Rational(lcm);
    }
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Rational det(m[n - 1][n - 1]);
    det /= scale;
    if (sign < 0) det = -det;
    det.canonicalize();
    return det;
}

// In-place reduced row echelon form; returns pivot column indices.
inline std::vector<std::size_t> rref(MatR& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t nr = m.size(), nc = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < nr; ++col) {
        std::size_t piv = row;
        while (piv < nr && m[piv][col] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(m[piv], m[row]);
        Rational inv = m[row][col];
        for (std::size_t j = col; j < nc; ++j) m[row][j] /= inv;
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (std::size_t j = col; j < nc; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    m.resize(row);  // drop zero rows
    return pivots;
}

// Basis of {x : a x = 0}, from the RREF free columns, ordered by pivot.
inline std::vector<VecR> kernel_basis(MatR a, std::size_t ncols) {
    auto pivots = rref(a);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<VecR> basis;
    for (std::size_t free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col]) continue;
        VecR v(ncols, 0);
        v[free_col] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -a[r][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of a x = b if consistent.
inline std::optional<VecR> solve_linear(const MatR& a, const VecR& b) {
    if (a.empty()) return VecR{};
    const std::size_t nc = a[0].size();
    MatR aug = a;
    for (std::size_t i = 0; i < a.size(); ++i) aug[i].push_back(b[i]);
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == nc) return std::nullopt;  // 0 = 1 row
    VecR x(nc, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][nc];
    return x;
}

// True iff row (v | rhs) lies in the rowspace of the rows of rref_rows
// (each of which is [coeffs | rhs] in reduced echelon form with given pivots).
inline bool in_rowspace(const MatR& rref_rows, const std::vector<std::size_t>& pivots,
                        VecR v) {
    for (std::size_t r = 0; r < rref_rows.size(); ++r) {
        const Rational c = v[pivots[r]];  // by value: the loop below mutates v
        if (c == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * rref_rows[r][j];
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace mtd
