#pragma once

// Dense complex matrices and vectors sized for mode-space work (d up to a
// few dozen). Row-major storage, value semantics throughout.

#include <complex>
#include <cstddef>
#include <vector>

#include "tbq/errors.hpp"

namespace tbq {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim), a_(dim * dim, cplx{0.0, 0.0}) {}
    Matrix(std::size_t dim, cvec entries);

    static Matrix identity(std::size_t dim);
    static Matrix diagonal(const cvec& entries);

    std::size_t dim() const { return dim_; }

    cplx& at(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

    const cvec& entries() const { return a_; }

    Matrix adjoint() const;
    Matrix operator*(const Matrix& rhs) const;
    cvec operator*(const cvec& v) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix& operator*=(cplx s);

  private:
    std::size_t dim_ = 0;
    cvec a_;
};

double frobenius_norm(const Matrix& m);
double frobenius_distance(const Matrix& a, const Matrix& b);

// true iff ||M^dagger M - I||_F <= tol
bool check_unitary(const Matrix& m, double tol);

double norm(const cvec& v);
cplx dot(const cvec& a, const cvec& b); // sum conj(a_k) b_k

Matrix kron(const Matrix& a, const Matrix& b);
cvec kron(const cvec& a, const cvec& b);

// A d x d matrix validated against ||M^dagger M - I||_F <= tol at
// construction; throws NotUnitary otherwise.
class UnitaryMatrix : public Matrix {
  public:
    static constexpr double kConstructionTol = 1e-10;

    explicit UnitaryMatrix(Matrix m, double tol = kConstructionTol);
    UnitaryMatrix(std::size_t dim, cvec entries, double tol = kConstructionTol)
        : UnitaryMatrix(Matrix(dim, std::move(entries)), tol) {}
};

} // namespace tbq
