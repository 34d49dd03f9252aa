#include "qdfs/complex_matrix.hpp"

#include <cmath>
#include <limits>

#include "qdfs/kernels.hpp"

namespace qdfs {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1, 0);
    return m;
}

ComplexMatrix ComplexMatrix::ket(std::initializer_list<Complex> amps) {
    ComplexMatrix v(amps.size(), 1);
    std::size_t i = 0;
    for (Complex a : amps) v(i++, 0) = a;
    return v;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(j, i) = (*this)(i, j);
    return r;
}

Complex ComplexMatrix::trace() const {
    if (rows_ != cols_) throw NotSquare("trace: matrix is " + std::to_string(rows_) + "x" + std::to_string(cols_));
    Complex t(0, 0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0;
    for (const Complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
}

bool ComplexMatrix::is_finite() const {
    for (const Complex& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    double dev = 0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            dev = std::max(dev, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return dev <= tol * std::max(1.0, frobenius_norm());
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
    if (rows_ != cols_) throw NotSquare("hermitian_part: not square");
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return r;
}

ComplexMatrix ComplexMatrix::col(std::size_t j) const {
    ComplexMatrix v(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) v(i, 0) = (*this)(i, j);
    return v;
}

void ComplexMatrix::set_col(std::size_t j, const ComplexMatrix& v) {
    if (v.rows() != rows_ || v.cols() != 1)
        throw DimensionMismatch("set_col: vector shape mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v(i, 0);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("operator+=: shape mismatch");
    kernels::axpby({1, 0}, o.data(), {1, 0}, data(), size());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("operator-=: shape mismatch");
    kernels::axpby({-1, 0}, o.data(), {1, 0}, data(), size());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (Complex& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("operator*: inner dimensions differ");
    ComplexMatrix c(a.rows(), b.cols());
    kernels::gemm(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
    return c;
}

ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("adjoint_times: row counts differ");
    // a^dag b, accumulated directly; a is walked column-wise.
    ComplexMatrix c(a.cols(), b.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex s(0, 0);
            for (std::size_t p = 0; p < a.rows(); ++p)
                s += std::conj(a(p, i)) * b(p, j);
            c(i, j) = s;
        }
    return c;
}

ComplexMatrix times_adjoint(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("times_adjoint: column counts differ");
    ComplexMatrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j) {
            Complex s(0, 0);
            for (std::size_t p = 0; p < a.cols(); ++p)
                s += a(i, p) * std::conj(b(j, p));
            c(i, j) = s;
        }
    return c;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b + b * a;
}

Complex dot(const ComplexMatrix& u, const ComplexMatrix& v) {
    if (u.cols() != 1 || v.cols() != 1 || u.rows() != v.rows())
        throw DimensionMismatch("dot: expects equal-length column vectors");
    Complex s(0, 0);
    for (std::size_t i = 0; i < u.rows(); ++i) s += std::conj(u(i, 0)) * v(i, 0);
    return s;
}

double vec_norm(const ComplexMatrix& v) { return v.frobenius_norm(); }

ComplexMatrix outer(const ComplexMatrix& u, const ComplexMatrix& v) {
    if (u.cols() != 1 || v.cols() != 1)
        throw DimensionMismatch("outer: expects column vectors");
    ComplexMatrix r(u.rows(), v.rows());
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < v.rows(); ++j)
            r(i, j) = u(i, 0) * std::conj(v(j, 0));
    return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("max_abs_diff: shape mismatch");
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double v = std::abs(a.data()[i] - b.data()[i]);
        // NaN must poison the result (inf - inf would otherwise slip through
        // std::max and report perfect agreement).
        if (std::isnan(v)) return std::numeric_limits<double>::infinity();
        m = std::max(m, v);
    }
    return m;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

} // namespace qdfs
