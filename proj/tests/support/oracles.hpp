#pragma once

// Test-only reference computations. Nothing here calls into the Smith normal
// form code; these are the independent routes the library is checked against.

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "dualk/int_matrix.hpp"

namespace oracle {

using Small = std::vector<std::vector<std::int64_t>>;

/// Fraction-free Bareiss determinant over exact integers.
inline mpz_class determinant(const dualk::IntMatrix& a)
{
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = a(i, j);
    mpz_class sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0)
                ++swap;
            if (swap == n)
                return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = v;
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

/// Laplace expansion; fine for the <= 4x4 minors the oracle needs.
inline std::int64_t small_det(const Small& m)
{
    const std::size_t n = m.size();
    if (n == 1)
        return m[0][0];
    std::int64_t total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        Small minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<std::int64_t> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c)
                    row.push_back(m[r][k]);
            minor.push_back(row);
        }
        const std::int64_t term = m[0][c] * small_det(minor);
        total += (c % 2 == 0) ? term : -term;
    }
    return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

/// Invariant factors from d_k = g_k / g_{k-1}, g_k the gcd of all k x k minors.
inline std::vector<std::int64_t> invariant_factors_by_minors(const Small& a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::int64_t> out;
    std::int64_t prev = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(rows, k, 0, cur, rs);
        subsets(cols, k, 0, cur, cs);
        std::int64_t g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                Small m(k, std::vector<std::int64_t>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        m[i][j] = a[r[i]][c[j]];
                g = std::gcd(g, small_det(m));
            }
        if (g == 0)
            break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

/// Invariant factors of a direct sum of cyclic groups via prime-power
/// decomposition (the CRT route).
inline std::vector<std::int64_t> invariant_factors_by_primes(const std::vector<std::int64_t>& orders)
{
    std::map<std::int64_t, std::vector<std::int64_t>> powers; // prime -> prime powers
    for (std::int64_t o : orders) {
        std::int64_t v = o < 0 ? -o : o;
        for (std::int64_t p = 2; p * p <= v; ++p) {
            std::int64_t pk = 1;
            while (v % p == 0) {
                v /= p;
                pk *= p;
            }
            if (pk > 1)
                powers[p].push_back(pk);
        }
        if (v > 1)
            powers[v].push_back(v);
    }
    std::size_t length = 0;
    for (auto& [p, list] : powers) {
        std::sort(list.begin(), list.end());
        length = std::max(length, list.size());
    }
    std::vector<std::int64_t> out(length, 1);
    for (auto& [p, list] : powers) {
        // Largest powers go to the last invariant factors.
        for (std::size_t i = 0; i < list.size(); ++i)
            out[length - list.size() + i] *= list[i];
    }
    return out;
}

inline dualk::IntMatrix to_matrix(const Small& s)
{
    const std::size_t rows = s.size();
    const std::size_t cols = rows ? s[0].size() : 0;
    dualk::IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = static_cast<long>(s[i][j]);
    return m;
}

inline Small to_small(const dualk::IntMatrix& m)
{
    Small s(m.rows(), std::vector<std::int64_t>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            s[i][j] = m(i, j).get_si();
    return s;
}

inline Small random_small(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi)
{
    std::uniform_int_distribution<int> dist(lo, hi);
    Small s(rows, std::vector<std::int64_t>(cols));
    for (auto& row : s)
        for (auto& v : row)
            v = dist(rng);
    return s;
}

/// Like random_small but keeps its shape when a dimension is zero.
inline dualk::IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi)
{
    std::uniform_int_distribution<int> dist(lo, hi);
    dualk::IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = dist(rng);
    return m;
}

} // namespace oracle
