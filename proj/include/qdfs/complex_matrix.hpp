#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qdfs/errors.hpp"

namespace qdfs {

using Complex = std::complex<double>;

// Dense row-major complex matrix. This is the one numeric carrier in the
// library: operators are n x n, kets are n x 1, subspace bases are n x k.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);
    // Column vector from an initializer list.
    static ComplexMatrix ket(std::initializer_list<Complex> amps);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Complex* data() { return data_.data(); }
    const Complex* data() const { return data_.data(); }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;

    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool is_finite() const;
    bool is_hermitian(double tol) const;
    // (m + m^dag) / 2
    ComplexMatrix hermitian_part() const;

    ComplexMatrix col(std::size_t j) const;
    void set_col(std::size_t j, const ComplexMatrix& v);

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= Complex(s, 0); }
    friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex(s, 0); }
    friend ComplexMatrix operator-(ComplexMatrix a) { return a *= Complex(-1, 0); }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

// a^dag * b without materializing the full adjoint of a.
ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b);
// a * b^dag
ComplexMatrix times_adjoint(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

// <u|v> for column vectors.
Complex dot(const ComplexMatrix& u, const ComplexMatrix& v);
double vec_norm(const ComplexMatrix& v);
// |u><v|
ComplexMatrix outer(const ComplexMatrix& u, const ComplexMatrix& v);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

} // namespace qdfs
