#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace qhnf {

template <class S>
using Vec = std::vector<S>;

// Row-major dense matrix.
template <class S>
using Matrix = std::vector<std::vector<S>>;

// Reduced row echelon form in place; returns the pivot column indices.
// Exact scalars take the first nonzero pivot; floating scalars take the
// largest entry in the column and use a scale-relative zero threshold.
template <class S>
std::vector<int> rref_inplace(Matrix<S>& R) {
    const int nr = static_cast<int>(R.size());
    const int nc = nr ? static_cast<int>(R[0].size()) : 0;
    [[maybe_unused]] double eps = 0.0;
    if constexpr (is_floating_scalar<S>) {
        double scale = 0.0;
        for (const auto& row : R)
            for (const auto& x : row) scale = std::max(scale, std::fabs(static_cast<double>(x)));
        eps = 1e-12 * std::max(1.0, scale);
    }
    std::vector<int> pivots;
    int pr = 0;
    for (int pc = 0; pc < nc && pr < nr; ++pc) {
        int pv = -1;
        if constexpr (is_floating_scalar<S>) {
            double best = eps;
            for (int i = pr; i < nr; ++i) {
                double a = std::fabs(static_cast<double>(R[i][pc]));
                if (a > best) { best = a; pv = i; }
            }
        } else {
            for (int i = pr; i < nr; ++i)
                if (R[i][pc] != S(0)) { pv = i; break; }
        }
        if (pv < 0) continue;
        std::swap(R[pr], R[pv]);
        const S inv = S(1) / R[pr][pc];
        for (auto& x : R[pr]) x = x * inv;
        R[pr][pc] = S(1);
        for (int i = 0; i < nr; ++i) {
            if (i == pr) continue;
            bool zero;
            if constexpr (is_floating_scalar<S>)
                zero = std::fabs(static_cast<double>(R[i][pc])) <= eps;
            else
                zero = R[i][pc] == S(0);
            if (zero) { R[i][pc] = S(0); continue; }
            const S f = R[i][pc];
            for (int j = 0; j < nc; ++j) R[i][j] -= f * R[pr][j];
            R[i][pc] = S(0);
        }
        pivots.push_back(pc);
        ++pr;
    }
    return pivots;
}

// Solves A x = b where A is given by columns, setting every free variable to
// zero. Returns nullopt when the system is inconsistent. The candidate is
// checked against the inputs before it is returned (exactly for exact
// scalars, by residual for floating ones).
template <class S>
std::optional<Vec<S>> solve_min_support(const std::vector<Vec<S>>& cols, const Vec<S>& b) {
    const int nr = static_cast<int>(b.size());
    const int nc = static_cast<int>(cols.size());
    Matrix<S> M(nr, Vec<S>(nc + 1, S(0)));
    for (int j = 0; j < nc; ++j)
        for (int i = 0; i < nr; ++i) M[i][j] = cols[j][i];
    for (int i = 0; i < nr; ++i) M[i][nc] = b[i];
    const auto piv = rref_inplace(M);
    for (int pc : piv)
        if (pc == nc) return std::nullopt;
    Vec<S> x(nc, S(0));
    for (std::size_t row = 0; row < piv.size(); ++row) x[piv[row]] = M[row][nc];
    if constexpr (is_floating_scalar<S>) {
        double bn = 0.0, rn = 0.0;
        for (int i = 0; i < nr; ++i) {
            S acc = b[i];
            for (int j = 0; j < nc; ++j) acc -= cols[j][i] * x[j];
            rn = std::max(rn, std::fabs(static_cast<double>(acc)));
            bn = std::max(bn, std::fabs(static_cast<double>(b[i])));
        }
        if (rn > 1e-9 * (1.0 + bn)) return std::nullopt;
    } else {
        for (int i = 0; i < nr; ++i) {
            S acc = b[i];
            for (int j = 0; j < nc; ++j) acc -= cols[j][i] * x[j];
            if (acc != S(0)) return std::nullopt;
        }
    }
    return x;
}

// Basis of the null space of the matrix with the given columns (nr rows).
// Free variables are set one at a time, pivot variables back-substituted.
template <class S>
std::vector<Vec<S>> kernel_basis(const std::vector<Vec<S>>& cols, int nr) {
    const int nc = static_cast<int>(cols.size());
    Matrix<S> M(nr, Vec<S>(nc, S(0)));
    for (int j = 0; j < nc; ++j)
        for (int i = 0; i < nr; ++i) M[i][j] = cols[j][i];
    const auto piv = rref_inplace(M);
    std::vector<char> is_piv(nc, 0);
    for (int pc : piv) is_piv[pc] = 1;
    std::vector<Vec<S>> out;
    for (int j = 0; j < nc; ++j) {
        if (is_piv[j]) continue;
        Vec<S> v(nc, S(0));
        v[j] = S(1);
        for (std::size_t row = 0; row < piv.size(); ++row) v[piv[row]] = -M[row][j];
        out.push_back(std::move(v));
    }
    return out;
}

// Pivot coordinates of the column span: row-reduce the transpose, so the
// returned indices are codomain coordinates.
template <class S>
std::vector<int> range_pivot_coords(std::vector<Vec<S>> cols) {
    return rref_inplace(cols);
}

// Codomain coordinates whose unit vectors complement the column span.
template <class S>
std::vector<int> cokernel_indices(const std::vector<Vec<S>>& cols, int nr) {
    const auto piv = range_pivot_coords(cols);
    std::vector<char> hit(nr, 0);
    for (int i : piv) hit[i] = 1;
    std::vector<int> out;
    for (int i = 0; i < nr; ++i)
        if (!hit[i]) out.push_back(i);
    return out;
}

template <class S>
std::size_t rank(const std::vector<Vec<S>>& cols) {
    return range_pivot_coords(cols).size();
}

template <class S>
using Mat3 = std::array<std::array<S, 3>, 3>;

// Inverse by adjugate over the scalar ring; throws on zero determinant.
template <class S>
Mat3<S> inverse3(const Mat3<S>& A) {
    const S det = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
                - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
                + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
    if (det == S(0)) throw numeric_error("singular 3x3 matrix");
    Mat3<S> inv;
    inv[0][0] = (A[1][1] * A[2][2] - A[1][2] * A[2][1]) / det;
    inv[0][1] = (A[0][2] * A[2][1] - A[0][1] * A[2][2]) / det;
    inv[0][2] = (A[0][1] * A[1][2] - A[0][2] * A[1][1]) / det;
    inv[1][0] = (A[1][2] * A[2][0] - A[1][0] * A[2][2]) / det;
    inv[1][1] = (A[0][0] * A[2][2] - A[0][2] * A[2][0]) / det;
    inv[1][2] = (A[0][2] * A[1][0] - A[0][0] * A[1][2]) / det;
    inv[2][0] = (A[1][0] * A[2][1] - A[1][1] * A[2][0]) / det;
    inv[2][1] = (A[0][1] * A[2][0] - A[0][0] * A[2][1]) / det;
    inv[2][2] = (A[0][0] * A[1][1] - A[0][1] * A[1][0]) / det;
    return inv;
}

} // namespace qhnf
