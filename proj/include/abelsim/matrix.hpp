#pragma once

// Small dense matrices over exact scalars (row-major). Sized for the
// register counts this library works at, not for numerical linear algebra.

#include "abelsim/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace abelsim {

template <typename T>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}
    Mat(size_t rows, size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != rows_ * cols_) {
            throw std::invalid_argument("Mat: entry count does not match shape");
        }
    }

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; i++) {
            m.at(i, i) = T(1);
        }
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    T &at(size_t i, size_t j) {
        check(i, j);
        return a_[i * cols_ + j];
    }
    const T &at(size_t i, size_t j) const {
        check(i, j);
        return a_[i * cols_ + j];
    }

    bool operator==(const Mat &other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
    }
    bool operator!=(const Mat &other) const { return !(*this == other); }

    Mat operator*(const Mat &rhs) const {
        if (cols_ != rhs.rows_) {
            throw std::invalid_argument("Mat: shape mismatch in product");
        }
        Mat out(rows_, rhs.cols_);
        if constexpr (std::is_same_v<T, Rat>) {
            // Accumulate each entry over the running least common denominator
            // and reduce once at the end; normalizing the full rational on
            // every term dominates the cost on large operands otherwise. The
            // left factor drives the loop so its zero entries skip whole
            // inner rows (gate actions are mostly identity blocks).
            std::vector<Int> n(rhs.cols_), d(rhs.cols_);
            for (size_t i = 0; i < rows_; i++) {
                for (size_t j = 0; j < rhs.cols_; j++) {
                    n[j] = 0;
                    d[j] = 1;
                }
                for (size_t k = 0; k < cols_; k++) {
                    const Rat &a = a_[i * cols_ + k];
                    if (a == 0) {
                        continue;
                    }
                    const Int &na = num(a);
                    const Int &da = den(a);
                    for (size_t j = 0; j < rhs.cols_; j++) {
                        const Rat &b = rhs.at(k, j);
                        if (b == 0) {
                            continue;
                        }
                        Int p = na * num(b);
                        Int q = da * den(b);
                        if (q == d[j]) {
                            n[j] += p;
                            continue;
                        }
                        Int g = int_gcd(d[j], q);
                        n[j] = n[j] * (q / g) + p * (d[j] / g);
                        d[j] *= q / g;
                    }
                }
                for (size_t j = 0; j < rhs.cols_; j++) {
                    out.at(i, j) = d[j] == 1 ? Rat(n[j]) : Rat(n[j], d[j]);
                }
            }
            return out;
        } else {
            for (size_t i = 0; i < rows_; i++) {
                for (size_t k = 0; k < cols_; k++) {
                    const T &aik = a_[i * cols_ + k];
                    if (aik == T(0)) {
                        continue;
                    }
                    for (size_t j = 0; j < rhs.cols_; j++) {
                        out.at(i, j) += aik * rhs.at(k, j);
                    }
                }
            }
            return out;
        }
    }

    std::vector<T> operator*(const std::vector<T> &x) const {
        if (cols_ != x.size()) {
            throw std::invalid_argument("Mat: shape mismatch in matrix-vector product");
        }
        std::vector<T> out(rows_, T(0));
        if constexpr (std::is_same_v<T, Rat>) {
            for (size_t i = 0; i < rows_; i++) {
                Int n(0), d(1);
                for (size_t j = 0; j < cols_; j++) {
                    const Rat &a = a_[i * cols_ + j];
                    if (a == 0 || x[j] == 0) {
                        continue;
                    }
                    Int p = num(a) * num(x[j]);
                    Int q = den(a) * den(x[j]);
                    if (q == d) {
                        n += p;
                        continue;
                    }
                    Int g = int_gcd(d, q);
                    n = n * (q / g) + p * (d / g);
                    d *= q / g;
                }
                out[i] = d == 1 ? Rat(n) : Rat(n, d);
            }
        } else {
            for (size_t i = 0; i < rows_; i++) {
                for (size_t j = 0; j < cols_; j++) {
                    const T &aij = a_[i * cols_ + j];
                    if (aij != T(0)) {
                        out[i] += aij * x[j];
                    }
                }
            }
        }
        return out;
    }

    Mat operator+(const Mat &rhs) const {
        require_same_shape(rhs);
        Mat out = *this;
        for (size_t k = 0; k < a_.size(); k++) {
            out.a_[k] += rhs.a_[k];
        }
        return out;
    }

    Mat operator-(const Mat &rhs) const {
        require_same_shape(rhs);
        Mat out = *this;
        for (size_t k = 0; k < a_.size(); k++) {
            out.a_[k] -= rhs.a_[k];
        }
        return out;
    }

    Mat operator-() const {
        Mat out = *this;
        for (auto &v : out.a_) {
            v = -v;
        }
        return out;
    }

    Mat transposed() const {
        Mat out(cols_, rows_);
        for (size_t i = 0; i < rows_; i++) {
            for (size_t j = 0; j < cols_; j++) {
                out.at(j, i) = at(i, j);
            }
        }
        return out;
    }

    Mat block(size_t i0, size_t j0, size_t nrows, size_t ncols) const {
        if (i0 + nrows > rows_ || j0 + ncols > cols_) {
            throw std::out_of_range("Mat: block out of range");
        }
        Mat out(nrows, ncols);
        for (size_t i = 0; i < nrows; i++) {
            for (size_t j = 0; j < ncols; j++) {
                out.at(i, j) = at(i0 + i, j0 + j);
            }
        }
        return out;
    }

    void set_block(size_t i0, size_t j0, const Mat &m) {
        if (i0 + m.rows_ > rows_ || j0 + m.cols_ > cols_) {
            throw std::out_of_range("Mat: block assignment out of range");
        }
        for (size_t i = 0; i < m.rows_; i++) {
            for (size_t j = 0; j < m.cols_; j++) {
                at(i0 + i, j0 + j) = m.at(i, j);
            }
        }
    }

    std::vector<T> column(size_t j) const {
        std::vector<T> out(rows_);
        for (size_t i = 0; i < rows_; i++) {
            out[i] = at(i, j);
        }
        return out;
    }

    void swap_rows(size_t i, size_t k) {
        for (size_t j = 0; j < cols_; j++) {
            std::swap(at(i, j), at(k, j));
        }
    }

    void swap_cols(size_t j, size_t k) {
        for (size_t i = 0; i < rows_; i++) {
            std::swap(at(i, j), at(i, k));
        }
    }

    // row_i += c * row_k
    void addmul_row(size_t i, size_t k, const T &c) {
        for (size_t j = 0; j < cols_; j++) {
            at(i, j) += c * at(k, j);
        }
    }

    // col_j += c * col_k
    void addmul_col(size_t j, size_t k, const T &c) {
        for (size_t i = 0; i < rows_; i++) {
            at(i, j) += c * at(i, k);
        }
    }

    void scale_row(size_t i, const T &c) {
        for (size_t j = 0; j < cols_; j++) {
            at(i, j) *= c;
        }
    }

    bool is_zero() const {
        for (const auto &v : a_) {
            if (v != 0) {
                return false;
            }
        }
        return true;
    }

    std::string str() const {
        std::string out = "[";
        for (size_t i = 0; i < rows_; i++) {
            out += i == 0 ? "[" : " [";
            for (size_t j = 0; j < cols_; j++) {
                out += to_string(at(i, j));
                if (j + 1 < cols_) {
                    out += ", ";
                }
            }
            out += "]";
            if (i + 1 < rows_) {
                out += "\n";
            }
        }
        return out + "]";
    }

  private:
    void check(size_t i, size_t j) const {
        if (i >= rows_ || j >= cols_) {
            throw std::out_of_range("Mat: index out of range");
        }
    }
    void require_same_shape(const Mat &rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
            throw std::invalid_argument("Mat: shape mismatch");
        }
    }

    size_t rows_;
    size_t cols_;
    std::vector<T> a_;
};

using RatMat = Mat<Rat>;
using IntMat = Mat<Int>;
using RatVec = std::vector<Rat>;
using IntVec = std::vector<Int>;

inline RatMat to_rational(const IntMat &m) {
    RatMat out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); i++) {
        for (size_t j = 0; j < m.cols(); j++) {
            out.at(i, j) = Rat(m.at(i, j));
        }
    }
    return out;
}

inline bool is_integral(const RatMat &m) {
    for (size_t i = 0; i < m.rows(); i++) {
        for (size_t j = 0; j < m.cols(); j++) {
            if (!is_integer(m.at(i, j))) {
                return false;
            }
        }
    }
    return true;
}

inline IntMat to_integer(const RatMat &m) {
    IntMat out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); i++) {
        for (size_t j = 0; j < m.cols(); j++) {
            const Rat &q = m.at(i, j);
            if (!is_integer(q)) {
                throw std::invalid_argument("to_integer: non-integral entry");
            }
            out.at(i, j) = num(q);
        }
    }
    return out;
}

inline RatVec to_rational(const IntVec &v) {
    RatVec out(v.size());
    for (size_t k = 0; k < v.size(); k++) {
        out[k] = Rat(v[k]);
    }
    return out;
}

inline RatVec add(const RatVec &a, const RatVec &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("add: size mismatch");
    }
    RatVec out(a.size());
    for (size_t k = 0; k < a.size(); k++) {
        out[k] = a[k] + b[k];
    }
    return out;
}

inline RatVec sub(const RatVec &a, const RatVec &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("sub: size mismatch");
    }
    RatVec out(a.size());
    for (size_t k = 0; k < a.size(); k++) {
        out[k] = a[k] - b[k];
    }
    return out;
}

inline RatVec negate(const RatVec &a) {
    RatVec out(a.size());
    for (size_t k = 0; k < a.size(); k++) {
        out[k] = -a[k];
    }
    return out;
}

inline Rat dot(const RatVec &a, const RatVec &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dot: size mismatch");
    }
    Rat out(0);
    for (size_t k = 0; k < a.size(); k++) {
        out += a[k] * b[k];
    }
    return out;
}

inline bool is_zero(const RatVec &a) {
    for (const auto &v : a) {
        if (v != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace abelsim
