#pragma once

/**
 * @file graph_model.hpp
 * @brief The k-th power of the N-cycle, its Laplacian, and two-vertex
 *        contractions of it.
 *
 * C_N^k has vertex set Z_N and joins vertices at cyclic distance 1..k. For
 * N >= 2k+1 it is simple and 2k-regular with N*k edges; smaller N would fold
 * offsets onto each other and is rejected.
 */

#include <cstddef>
#include <string>
#include <vector>

#include "cyclepower/errors.hpp"
#include "cyclepower/numeric.hpp"

namespace cyclepower {

class GraphSpec {
public:
    /// Throws ParameterError unless k >= 1, N >= 3 and N >= 2k+1.
    static GraphSpec create(long long n, long long k) {
        if (k < 1) throw ParameterError("k must be >= 1 (got " + std::to_string(k) + ")");
        if (n < 3) throw ParameterError("N must be >= 3 (got " + std::to_string(n) + ")");
        if (n < 2 * k + 1) {
            throw ParameterError("standing assumption N >= 2k+1 violated: N=" + std::to_string(n) +
                                 ", k=" + std::to_string(k) + " (need N >= " +
                                 std::to_string(2 * k + 1) + ")");
        }
        if (n > 100000) throw ParameterError("N too large for dense exact arithmetic");
        return GraphSpec(static_cast<int>(n), static_cast<int>(k));
    }

    int n() const { return n_; }
    int k() const { return k_; }
    int degree() const { return 2 * k_; }
    long long edge_count() const { return static_cast<long long>(n_) * k_; }
    bool is_complete() const { return n_ == 2 * k_ + 1; }

    friend bool operator==(const GraphSpec&, const GraphSpec&) = default;

private:
    GraphSpec(int n, int k) : n_(n), k_(k) {}
    int n_;
    int k_;
};

/// Dense square matrix of big integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    std::size_t dim() const { return dim_; }

    BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    BigInt row_sum(std::size_t i) const {
        BigInt s = 0;
        for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j);
        return s;
    }

    BigInt total_sum() const {
        BigInt s = 0;
        for (const auto& v : data_) s += v;
        return s;
    }

    BigInt trace() const {
        BigInt s = 0;
        for (std::size_t i = 0; i < dim_; ++i) s += (*this)(i, i);
        return s;
    }

    bool is_symmetric() const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    /// Copy with row and column `index` deleted.
    IntMatrix minor(std::size_t index) const {
        if (index >= dim_) throw ParameterError("minor index out of range");
        IntMatrix out(dim_ - 1);
        for (std::size_t i = 0, oi = 0; i < dim_; ++i) {
            if (i == index) continue;
            for (std::size_t j = 0, oj = 0; j < dim_; ++j) {
                if (j == index) continue;
                out(oi, oj++) = (*this)(i, j);
            }
            ++oi;
        }
        return out;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<BigInt> data_;
};

/// Circulant Laplacian 2kI - sum_{r=1..k} (T^r + T^-r) of C_N^k.
inline IntMatrix build_laplacian(const GraphSpec& spec) {
    const int n = spec.n();
    IntMatrix lap(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        lap(i, i) = spec.degree();
        for (int r = 1; r <= spec.k(); ++r) {
            lap(i, (i + r) % n) -= 1;
            lap(i, (i - r + n) % n) -= 1;
        }
    }
    return lap;
}

/// Cyclic shift (Tf)(i) = f(i+1) as a permutation matrix.
inline IntMatrix shift_operator(int n) {
    IntMatrix t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t(i, (i + 1) % n) = 1;
    return t;
}

/// Laplacian of the multigraph obtained by identifying vertices u and v.
///
/// The merged vertex keeps u's position (shifted down by one if v < u) and
/// vertex v is dropped. Edges between u and v become loops and vanish from the
/// Laplacian; every other edge keeps its multiplicity.
inline IntMatrix contract_vertices(const IntMatrix& lap, std::size_t u, std::size_t v) {
    const std::size_t n = lap.dim();
    if (u >= n || v >= n) throw ParameterError("contract_vertices: vertex out of range");
    if (u == v) throw ParameterError("contract_vertices: cannot identify a vertex with itself");

    std::vector<std::size_t> index(n);
    for (std::size_t i = 0, next = 0; i < n; ++i) {
        if (i == v) continue;
        index[i] = next++;
    }
    index[v] = index[u];

    IntMatrix out(n - 1);
    // L(u,v) and L(v,u) both land on the merged diagonal, which removes the
    // u-v edges from the merged degree.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(index[i], index[j]) += lap(i, j);
    return out;
}

}  // namespace cyclepower
