#include "tbq/complex_matrix.hpp"

#include <cmath>
#include <utility>

namespace tbq {

Matrix::Matrix(std::size_t dim, cvec entries) : dim_(dim), a_(std::move(entries)) {
    if (a_.size() != dim_ * dim_)
        throw DimensionMismatch("matrix entry count does not match dimension");
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const cvec& entries) {
    Matrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, i) = entries[i];
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (dim_ != rhs.dim_) throw DimensionMismatch("matrix product dimension mismatch");
    Matrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t k = 0; k < dim_; ++k) {
            const cplx aik = at(i, k);
            if (aik == cplx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < dim_; ++j) r.at(i, j) += aik * rhs.at(k, j);
        }
    return r;
}

cvec Matrix::operator*(const cvec& v) const {
    if (v.size() != dim_) throw DimensionMismatch("matrix-vector dimension mismatch");
    cvec r(dim_, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (dim_ != rhs.dim_) throw DimensionMismatch("matrix difference dimension mismatch");
    Matrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= rhs.a_[i];
    return r;
}

Matrix& Matrix::operator*=(cplx s) {
    for (auto& e : a_) e *= s;
    return *this;
}

double frobenius_norm(const Matrix& m) {
    double s = 0.0;
    for (const auto& e : m.entries()) s += std::norm(e);
    return std::sqrt(s);
}

double frobenius_distance(const Matrix& a, const Matrix& b) { return frobenius_norm(a - b); }

bool check_unitary(const Matrix& m, double tol) {
    return frobenius_distance(m.adjoint() * m, Matrix::identity(m.dim())) <= tol;
}

double norm(const cvec& v) {
    double s = 0.0;
    for (const auto& e : v) s += std::norm(e);
    return std::sqrt(s);
}

cplx dot(const cvec& a, const cvec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector dot dimension mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    Matrix r(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l)
                    r.at(i * db + k, j * db + l) = a.at(i, j) * b.at(k, l);
    return r;
}

cvec kron(const cvec& a, const cvec& b) {
    cvec r(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) r[i * b.size() + k] = a[i] * b[k];
    return r;
}

UnitaryMatrix::UnitaryMatrix(Matrix m, double tol) : Matrix(std::move(m)) {
    const double residual = frobenius_distance(adjoint() * *this, Matrix::identity(dim()));
    if (!(residual <= tol))
        throw NotUnitary("matrix is not unitary: ||M^dagger M - I||_F = " +
                         std::to_string(residual));
}

} // namespace tbq
