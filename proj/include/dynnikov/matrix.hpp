#pragma once

#include <gmpxx.h>
#include <string>
#include <vector>

#include "dynnikov/errors.hpp"

namespace dyn {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), d_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        r_ = rows.size();
        c_ = r_ ? rows.begin()->size() : 0;
        for (const auto& row : rows) {
            if (row.size() != c_) throw DomainError("ragged matrix literal");
            d_.insert(d_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool square() const { return r_ == c_; }

    T& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    bool operator<(const Matrix& o) const {
        if (r_ != o.r_) return r_ < o.r_;
        if (c_ != o.c_) return c_ < o.c_;
        for (std::size_t k = 0; k < d_.size(); ++k) {
            if (d_[k] < o.d_[k]) return true;
            if (o.d_[k] < d_[k]) return false;
        }
        return false;
    }

    Matrix operator*(const Matrix& o) const {
        if (c_ != o.r_) throw DomainError("matrix product dimension mismatch");
        Matrix out(r_, o.c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.c_; ++j) out(i, j) += a * o(k, j);
            }
        return out;
    }
    Matrix operator+(const Matrix& o) const { return zip(o, 1); }
    Matrix operator-(const Matrix& o) const { return zip(o, -1); }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(d_.begin() + long(i * c_), d_.begin() + long((i + 1) * c_));
    }

private:
    Matrix zip(const Matrix& o, int s) const {
        if (r_ != o.r_ || c_ != o.c_) throw DomainError("matrix sum dimension mismatch");
        Matrix out(*this);
        for (std::size_t k = 0; k < d_.size(); ++k) {
            if (s > 0) out.d_[k] += o.d_[k];
            else out.d_[k] -= o.d_[k];
        }
        return out;
    }

    std::size_t r_ = 0, c_ = 0;
    std::vector<T> d_;
};

using IntMatrix = Matrix<mpz_class>;
using RatMatrix = Matrix<mpq_class>;

IntMatrix matrix_power(const IntMatrix& m, unsigned e);
RatMatrix to_rational(const IntMatrix& m);
// Exact inverse; throws DomainError when singular.
RatMatrix inverse(const RatMatrix& m);
mpq_class determinant(const RatMatrix& m);
std::string format_matrix(const IntMatrix& m);
std::string format_matrix(const RatMatrix& m);

// Solve A x = b exactly; throws VerificationFailed if inconsistent, DomainError if not unique.
std::vector<mpq_class> solve_unique(const RatMatrix& a, const std::vector<mpq_class>& b);

}  // namespace dyn
