#pragma once

#include "ppri/error.hpp"
#include "ppri/rational.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ppri {

// Dense square matrix, row-major. T is Rational (exact) or double (real).
template <class T>
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), data_(n * n, T(0)) {}

    // Throws NonSquareMatrix unless every row has rows.size() entries.
    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        Matrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size())
                fail(ErrorKind::NonSquareMatrix, "row " + std::to_string(i) + " has " +
                                                     std::to_string(rows[i].size()) + " entries, expected " +
                                                     std::to_string(rows.size()));
            for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix diagonal(const std::vector<T>& d) {
        Matrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t size() const noexcept { return n_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
    std::vector<T> column(std::size_t j) const {
        std::vector<T> c(n_);
        for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    // Row-major entries; the flattening used when powers are compared as vectors.
    const std::vector<T>& entries() const noexcept { return data_; }

    Matrix transpose() const {
        Matrix t(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_size(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_size(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        a.require_same_size(b);
        const std::size_t n = a.n_;
        Matrix c(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend std::vector<T> operator*(const Matrix& a, std::span<const T> v) {
        if (v.size() != a.n_) fail(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
        std::vector<T> out(a.n_, T(0));
        for (std::size_t i = 0; i < a.n_; ++i)
            for (std::size_t j = 0; j < a.n_; ++j) out[i] += a(i, j) * v[j];
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    void require_same_size(const Matrix& o) const {
        if (o.n_ != n_) fail(ErrorKind::DimensionMismatch, "matrix sizes differ");
    }

    std::size_t n_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using RealMatrix = Matrix<double>;

inline RealMatrix to_real(const RationalMatrix& m) {
    RealMatrix r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) r(i, j) = m(i, j).get_d();
    return r;
}

} // namespace ppri
