#pragma once

/**
 * @file exact_linalg.hpp
 * @brief Fraction-free (Bareiss) elimination over big integers.
 *
 * Every intermediate entry of the one-step Bareiss recurrence is a minor of
 * the input, so the divisions are exact and nothing leaves Z until the final
 * rational back-substitution.
 */

#include <cstddef>
#include <utility>
#include <vector>

#include "cyclepower/errors.hpp"
#include "cyclepower/graph_model.hpp"
#include "cyclepower/numeric.hpp"

namespace cyclepower {

namespace detail {

/// Runs Bareiss forward elimination on an n x cols working array in place.
/// Returns the sign from row swaps, or 0 if the leading n x n block is singular.
inline int bareiss_forward(std::vector<std::vector<BigInt>>& m, std::size_t n) {
    const std::size_t cols = n == 0 ? 0 : m[0].size();
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t p = 0; p < n; ++p) {
        if (m[p][p] == 0) {
            std::size_t swap_row = p + 1;
            while (swap_row < n && m[swap_row][p] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[p], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = p + 1; i < n; ++i) {
            for (std::size_t j = p + 1; j < cols; ++j) {
                BigInt v = m[i][j] * m[p][p] - m[i][p] * m[p][j];
                m[i][j] = v / prev;  // exact
            }
            m[i][p] = 0;
        }
        prev = m[p][p];
    }
    return sign;
}

inline std::vector<std::vector<BigInt>> to_rows(const IntMatrix& a, std::size_t extra_cols) {
    std::vector<std::vector<BigInt>> rows(a.dim(), std::vector<BigInt>(a.dim() + extra_cols));
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) rows[i][j] = a(i, j);
    return rows;
}

}  // namespace detail

/// Exact determinant. The empty matrix has determinant 1.
inline BigInt determinant(const IntMatrix& a) {
    const std::size_t n = a.dim();
    if (n == 0) return 1;
    auto m = detail::to_rows(a, 0);
    const int sign = detail::bareiss_forward(m, n);
    if (sign == 0) return 0;
    return sign * m[n - 1][n - 1];
}

/// Solves a x = b exactly. Throws ConsistencyError if a is singular.
inline std::vector<Rational> solve_exact(const IntMatrix& a, const std::vector<BigInt>& b) {
    const std::size_t n = a.dim();
    if (b.size() != n) throw ParameterError("solve_exact: dimension mismatch");
    if (n == 0) return {};
    auto m = detail::to_rows(a, 1);
    for (std::size_t i = 0; i < n; ++i) m[i][n] = b[i];
    if (detail::bareiss_forward(m, n) == 0) throw ConsistencyError("solve_exact: singular system");

    std::vector<Rational> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Rational acc(m[ii][n]);
        for (std::size_t j = ii + 1; j < n; ++j) acc -= Rational(m[ii][j]) * x[j];
        x[ii] = acc / Rational(m[ii][ii]);
    }
    return x;
}

}  // namespace cyclepower
