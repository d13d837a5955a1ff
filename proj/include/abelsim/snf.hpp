#pragma once

// Smith normal form over the integers with unimodular multipliers.
//
// snf(A) returns U, S, V with A = U*S*V, |det U| = |det V| = 1, S diagonal
// with nonnegative entries satisfying the divisibility chain
// S(0,0) | S(1,1) | ... . The inverses of U and V are tracked during the
// reduction and returned alongside, since most callers need them.
//
// Pivoting is deterministic: the nonzero entry of smallest absolute value in
// the working submatrix wins, ties broken by lexicographically smallest
// (row, col). Remainders are balanced (|r| <= |pivot|/2) to limit growth.

#include "abelsim/matrix.hpp"

#include <cstddef>
#include <optional>

namespace abelsim {

struct SnfResult {
    IntMat U;
    IntMat S;
    IntMat V;
    IntMat Uinv;
    IntMat Vinv;

    size_t rank() const {
        size_t r = 0;
        size_t d = S.rows() < S.cols() ? S.rows() : S.cols();
        for (size_t i = 0; i < d; i++) {
            if (S.at(i, i) != 0) {
                r++;
            }
        }
        return r;
    }
};

namespace detail {

// Quotient with balanced remainder: a - q*b in (-|b|/2, |b|/2].
inline Int balanced_quot(const Int &a, const Int &b) {
    Int q = floor_div(a, b);
    Int r = a - q * b;
    if (2 * r > int_abs(b)) {
        q += b > 0 ? 1 : -1;
    }
    return q;
}

struct SnfWork {
    IntMat S, U, Uinv, V, Vinv;

    explicit SnfWork(const IntMat &a)
        : S(a),
          U(IntMat::identity(a.rows())),
          Uinv(IntMat::identity(a.rows())),
          V(IntMat::identity(a.cols())),
          Vinv(IntMat::identity(a.cols())) {}

    void row_swap(size_t i, size_t k) {
        if (i == k) {
            return;
        }
        S.swap_rows(i, k);
        U.swap_cols(i, k);
        Uinv.swap_rows(i, k);
    }
    void col_swap(size_t j, size_t k) {
        if (j == k) {
            return;
        }
        S.swap_cols(j, k);
        V.swap_rows(j, k);
        Vinv.swap_cols(j, k);
    }
    // S: row_i += c * row_k
    void row_addmul(size_t i, size_t k, const Int &c) {
        S.addmul_row(i, k, c);
        U.addmul_col(k, i, -c);
        Uinv.addmul_row(i, k, c);
    }
    // S: col_j += c * col_k
    void col_addmul(size_t j, size_t k, const Int &c) {
        S.addmul_col(j, k, c);
        V.addmul_row(k, j, -c);
        Vinv.addmul_col(j, k, c);
    }
    void row_negate(size_t i) {
        S.scale_row(i, Int(-1));
        for (size_t r = 0; r < U.rows(); r++) {
            U.at(r, i) = -U.at(r, i);
        }
        for (size_t c = 0; c < Uinv.cols(); c++) {
            Uinv.at(i, c) = -Uinv.at(i, c);
        }
    }

    std::optional<std::pair<size_t, size_t>> find_pivot(size_t t) const {
        std::optional<std::pair<size_t, size_t>> best;
        Int best_abs(0);
        for (size_t i = t; i < S.rows(); i++) {
            for (size_t j = t; j < S.cols(); j++) {
                const Int &val = S.at(i, j);
                if (val == 0) {
                    continue;
                }
                Int a = int_abs(val);
                if (!best || a < best_abs) {
                    best = {i, j};
                    best_abs = a;
                }
            }
        }
        return best;
    }
};

}  // namespace detail

inline SnfResult snf(const IntMat &a) {
    detail::SnfWork w(a);
    size_t m = a.rows();
    size_t n = a.cols();
    size_t dmax = m < n ? m : n;

    for (size_t t = 0; t < dmax; t++) {
        for (;;) {
            auto piv = w.find_pivot(t);
            if (!piv) {
                // Remaining submatrix is zero; S is diagonal from here on.
                return SnfResult{w.U, w.S, w.V, w.Uinv, w.Vinv};
            }
            w.row_swap(t, piv->first);
            w.col_swap(t, piv->second);
            if (w.S.at(t, t) < 0) {
                w.row_negate(t);
            }
            const Int pivot = w.S.at(t, t);

            bool exact = true;
            for (size_t i = t + 1; i < m; i++) {
                if (w.S.at(i, t) != 0) {
                    Int q = detail::balanced_quot(w.S.at(i, t), pivot);
                    w.row_addmul(i, t, -q);
                    if (w.S.at(i, t) != 0) {
                        exact = false;
                    }
                }
            }
            for (size_t j = t + 1; j < n; j++) {
                if (w.S.at(t, j) != 0) {
                    Int q = detail::balanced_quot(w.S.at(t, j), pivot);
                    w.col_addmul(j, t, -q);
                    if (w.S.at(t, j) != 0) {
                        exact = false;
                    }
                }
            }
            if (!exact) {
                continue;  // smaller entries appeared; repick the pivot
            }

            // Row and column t are clear. Enforce that the pivot divides the
            // rest of the submatrix before moving on, so the diagonal comes
            // out in divisibility order.
            bool fixed = false;
            for (size_t i = t + 1; i < m && !fixed; i++) {
                for (size_t j = t + 1; j < n && !fixed; j++) {
                    if (w.S.at(i, j) % pivot != 0) {
                        w.row_addmul(t, i, Int(1));
                        fixed = true;
                    }
                }
            }
            if (!fixed) {
                break;
            }
        }
    }
    return SnfResult{w.U, w.S, w.V, w.Uinv, w.Vinv};
}

// Smallest positive d with d*A integral, together with d*A.
struct ClearedMatrix {
    IntMat mat;
    Int scale;
};

inline ClearedMatrix clear_denominators(const RatMat &a) {
    Int scale(1);
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            scale = int_lcm(scale, den(a.at(i, j)));
        }
    }
    IntMat out(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            Rat scaled = a.at(i, j) * Rat(scale);
            out.at(i, j) = num(scaled);
        }
    }
    return ClearedMatrix{out, scale};
}

}  // namespace abelsim
