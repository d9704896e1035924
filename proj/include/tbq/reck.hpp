#pragma once

// Triangular factorization of a d x d unitary into 2x2 coupler operations.
//
// Any U(d) is written as
//
//     U = P * F(2,1) * [F(3,1) F(3,2)] * ... * [F(d,1) ... F(d,d-1)]
//
// where F(m,n) is the d x d identity with the rails-(n,m) subspace replaced
// by a coupler matrix B(theta, phi), and P is a diagonal phase correction
// (one phase modulator per mode). The rightmost factor acts first on the
// input state, so the application order is (d,d-1), (d,d-2), ..., (d,1),
// (d-1,d-2), ..., (2,1): d(d-1)/2 couplers in total.
//
// The coupler is parametrized as
//
//     B(theta, phi) = | e^{i phi} sin(theta)   cos(theta) |
//                     | e^{i phi} cos(theta)  -sin(theta) |
//
// i.e. a phase modulator on the lower-indexed input rail followed by a
// real coupler with coupling angle theta. In the embedding, B's first
// row/column attaches to the lower-indexed rail n.

#include <cstddef>
#include <vector>

#include "tbq/complex_matrix.hpp"

namespace tbq {

struct CouplerStep {
    std::size_t m = 0;  // higher rail index, 1-based
    std::size_t n = 0;  // lower rail index, 1-based, n < m
    double theta = 0.0; // mixing angle in [0, pi/2]
    double phi = 0.0;   // input phase in (-pi, pi]
};

struct PhaseCorrection {
    std::vector<double> phases; // one per mode, each in (-pi, pi]
};

struct Decomposition {
    std::size_t dim = 0;
    std::vector<CouplerStep> steps; // application order: first element acts first
    PhaseCorrection correction;
};

// Wraps an angle into (-pi, pi].
double wrap_phase(double x);

// Number of couplers the construction produces for dimension d: d(d-1)/2.
// (A sometimes-quoted (d-1)(d-2)/2 undercounts the triangle; the d = 3
// gate takes three couplers, not one.)
std::size_t coupler_count(std::size_t d);

// The 2x2 coupler matrix B(theta, phi) described above.
UnitaryMatrix coupler_unitary(double theta, double phi);
UnitaryMatrix coupler_unitary(const CouplerStep& step);

// d x d identity with the (n,n),(n,m),(m,n),(m,m) entries replaced by
// b's (1,1),(1,2),(2,1),(2,2). Requires 1 <= n < m <= d.
Matrix embed(const Matrix& b, std::size_t m, std::size_t n, std::size_t d);

// Nulls the below-diagonal entries row by row (row d first, and within a
// row entry (k,k-1) first) by right-multiplying with inverse embedded
// couplers; the diagonal residue becomes P. Already-null entries get the
// bar-state convention theta = pi/2, phi = 0.
Decomposition decompose(const UnitaryMatrix& u);

// P * F(steps.back()) * ... * F(steps.front()).
UnitaryMatrix reconstruct(const Decomposition& dec);

// Throws Error if step count, ordering, or parameter ranges are off.
void validate(const Decomposition& dec);

} // namespace tbq
