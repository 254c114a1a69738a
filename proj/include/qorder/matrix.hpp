#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qorder/error.hpp"

namespace qorder {

using Complex = std::complex<double>;

namespace detail {
inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
inline double conj_if_complex(double x) { return x; }
inline Complex conj_if_complex(const Complex& z) { return std::conj(z); }
} // namespace detail

/// Row-major dense matrix with finite entries.
template<typename T>
class DenseMatrix {
  public:
    using value_type = T;

    DenseMatrix() = default;

    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}

    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) {
            throw Error(ErrorCode::ShapeMismatch, "entry count " + std::to_string(data_.size()) + " does not match " +
                                                      std::to_string(rows_) + "x" + std::to_string(cols_));
        }
        for (const T& v : data_) {
            if (!detail::is_finite(v)) {
                throw Error(ErrorCode::NonFinite, "matrix entry is NaN or infinite");
            }
        }
    }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T{1};
        }
        return m;
    }

    static DenseMatrix diagonal(std::span<const T> diag) {
        DenseMatrix m(diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) {
            m(i, i) = diag[i];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> entries() noexcept { return data_; }
    std::span<const T> entries() const noexcept { return data_; }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            out[i] = (*this)(i, j);
        }
        return out;
    }

    void set_column(std::size_t j, std::span<const T> values) {
        for (std::size_t i = 0; i < rows_; ++i) {
            (*this)(i, j) = values[i];
        }
    }

    DenseMatrix transpose() const {
        DenseMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                out(j, i) = (*this)(i, j);
            }
        }
        return out;
    }

    /// Conjugate transpose; plain transpose for real matrices.
    DenseMatrix adjoint() const {
        DenseMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                out(j, i) = detail::conj_if_complex((*this)(i, j));
            }
        }
        return out;
    }

    T trace() const {
        T t{};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const T& v : data_) {
            s += std::norm(v);
        }
        return std::sqrt(s);
    }

    DenseMatrix& operator+=(const DenseMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += o.data_[k];
        }
        return *this;
    }

    DenseMatrix& operator-=(const DenseMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= o.data_[k];
        }
        return *this;
    }

    DenseMatrix& operator*=(T s) {
        for (T& v : data_) {
            v *= s;
        }
        return *this;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
    friend DenseMatrix operator*(DenseMatrix a, T s) { return a *= s; }
    friend DenseMatrix operator*(T s, DenseMatrix a) { return a *= s; }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.cols_ != b.rows_) {
            throw Error(ErrorCode::ShapeMismatch, "matrix product inner dimensions differ");
        }
        DenseMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T aik = a(i, k);
                if (aik == T{}) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

    friend std::vector<T> operator*(const DenseMatrix& a, std::span<const T> x) {
        if (a.cols_ != x.size()) {
            throw Error(ErrorCode::ShapeMismatch, "matrix-vector dimensions differ");
        }
        std::vector<T> out(a.rows_, T{});
        for (std::size_t i = 0; i < a.rows_; ++i) {
            T s{};
            for (std::size_t j = 0; j < a.cols_; ++j) {
                s += a(i, j) * x[j];
            }
            out[i] = s;
        }
        return out;
    }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

  private:
    void require_same_shape(const DenseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw Error(ErrorCode::ShapeMismatch, "matrix shapes differ");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ComplexMatrix = DenseMatrix<Complex>;
using RealMatrix = DenseMatrix<double>;

using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

/// Outer product x y^dagger.
inline ComplexMatrix outer(std::span<const Complex> x, std::span<const Complex> y) {
    ComplexMatrix m(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
            m(i, j) = x[i] * std::conj(y[j]);
        }
    }
    return m;
}

/// <x|y>, conjugate-linear in x.
inline Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
    Complex s{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += std::conj(x[i]) * y[i];
    }
    return s;
}

inline double norm2(std::span<const Complex> x) { return std::sqrt(std::real(inner(x, x))); }

/// Frobenius norm of M - M^dagger; infinite for non-square input.
inline double hermiticity_defect(const ComplexMatrix& m) {
    if (!m.is_square()) {
        return INFINITY;
    }
    return (m - m.adjoint()).frobenius_norm();
}

} // namespace qorder
