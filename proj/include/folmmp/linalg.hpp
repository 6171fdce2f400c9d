#pragma once

// Exact 2x2 matrices for linear parts of germs, plus the dense rational
// solver / symmetric signature routine used on intersection matrices.

#include "folmmp/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace folmmp {

struct Mat2 {
    Rational a, b, c, d; // [[a, b], [c, d]]

    Rational trace() const { return a + d; }
    Rational det() const { return a * d - b * c; }
    bool is_zero() const { return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero(); }
    bool is_nilpotent() const { return trace().is_zero() && det().is_zero(); }

    // Rational eigenvalues when the characteristic polynomial splits over Q.
    std::optional<std::pair<Rational, Rational>> rational_eigenvalues() const {
        Rational tr = trace(), dt = det();
        Rational disc = tr * tr - dt * Rational(4);
        if (!disc.is_square()) return std::nullopt;
        Rational s = disc.sqrt();
        return std::make_pair((tr - s) / Rational(2), (tr + s) / Rational(2));
    }

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

using MatQ = std::vector<std::vector<Rational>>;

// Solves A x = b by Gaussian elimination with exact pivoting.
// Throws if A is singular.
inline std::vector<Rational> solve_linear(MatQ A, std::vector<Rational> b) {
    const size_t n = A.size();
    if (n == 0) return {};
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && A[piv][col].is_zero()) ++piv;
        if (piv == n) throw precondition_error("solve_linear: singular matrix");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col].is_zero()) continue;
            Rational f = A[r][col] / A[col][col];
            for (size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
    return x;
}

// Signature (n_plus, n_minus, n_zero) of a symmetric rational matrix via
// congruent diagonalization.
struct Signature {
    int positive = 0, negative = 0, zero = 0;
};

inline Signature symmetric_signature(MatQ A) {
    const size_t n = A.size();
    Signature sig;
    for (size_t k = 0; k < n; ++k) {
        if (A[k][k].is_zero()) {
            // Find a usable pivot below/right and mix it in.
            size_t j = k + 1;
            while (j < n && A[k][j].is_zero() && A[j][j].is_zero()) ++j;
            if (j == n) {
                ++sig.zero;
                continue;
            }
            if (!A[j][j].is_zero()) {
                std::swap(A[k], A[j]);
                for (size_t r = 0; r < n; ++r) std::swap(A[r][k], A[r][j]);
            } else {
                // A[k][j] != 0: add row/col j into k to create a pivot.
                for (size_t c = 0; c < n; ++c) A[k][c] += A[j][c];
                for (size_t r = 0; r < n; ++r) A[r][k] += A[r][j];
            }
        }
        if (A[k][k].is_zero()) {
            ++sig.zero;
            continue;
        }
        for (size_t r = k + 1; r < n; ++r) {
            if (A[r][k].is_zero()) continue;
            Rational f = A[r][k] / A[k][k];
            for (size_t c = 0; c < n; ++c) A[r][c] -= f * A[k][c];
            for (size_t c = 0; c < n; ++c) A[c][r] -= f * A[c][k];
        }
        if (A[k][k].sign() > 0)
            ++sig.positive;
        else
            ++sig.negative;
    }
    return sig;
}

} // namespace folmmp
