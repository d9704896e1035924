#include "tbq/golden.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tbq/reck.hpp"

namespace tbq::golden {

namespace {
constexpr double kPi = std::numbers::pi;
cplx ephase(double x) { return std::polar(1.0, x); }
} // namespace

UnitaryMatrix qutrit_unitary() {
    const double r3 = 1.0 / std::sqrt(3.0);
    const cplx w = ephase(2.0 * kPi / 3.0);  // e^{2 pi i / 3}
    const cplx wb = std::conj(w);
    return UnitaryMatrix(3, {r3, r3, r3,
                             r3, r3 * wb, r3 * w,
                             r3, r3 * w, r3 * wb},
                         1e-14);
}

UnitaryMatrix coupler_32() {
    const double r2 = 1.0 / std::sqrt(2.0);
    return UnitaryMatrix(2, {r2 * ephase(kPi / 3.0), r2,
                             r2 * ephase(4.0 * kPi / 3.0), r2},
                         1e-14);
}

UnitaryMatrix coupler_31() {
    const double r3 = 1.0 / std::sqrt(3.0);
    const double s2 = std::sqrt(2.0);
    return UnitaryMatrix(2, {r3 * s2 * ephase(-kPi / 3.0), r3,
                             r3 * ephase(-kPi / 3.0), -r3 * s2},
                         1e-14);
}

UnitaryMatrix coupler_21() {
    const double r2 = 1.0 / std::sqrt(2.0);
    return UnitaryMatrix(2, {r2 * cplx{0.0, 1.0}, r2,
                             r2 * cplx{0.0, -1.0}, r2},
                         1e-14);
}

bool FactorizationReport::pass(double tol) const {
    return unitarity_u <= tol && unitarity_b32 <= tol && unitarity_b31 <= tol &&
           unitarity_b21 <= tol && correction_offdiag <= tol &&
           correction_modulus_err <= tol && residual <= tol && product_modulus_err <= tol;
}

FactorizationReport verify_factorization() {
    const UnitaryMatrix u = qutrit_unitary();
    const UnitaryMatrix b32 = coupler_32();
    const UnitaryMatrix b31 = coupler_31();
    const UnitaryMatrix b21 = coupler_21();

    auto residual_of = [](const Matrix& m) {
        return frobenius_distance(m.adjoint() * m, Matrix::identity(m.dim()));
    };

    FactorizationReport r;
    r.unitarity_u = residual_of(u);
    r.unitarity_b32 = residual_of(b32);
    r.unitarity_b31 = residual_of(b31);
    r.unitarity_b21 = residual_of(b21);

    const Matrix w = embed(b21, 2, 1, 3) * embed(b31, 3, 1, 3) * embed(b32, 3, 2, 3);
    const Matrix p = u * w.adjoint();

    r.correction.resize(3);
    for (std::size_t i = 0; i < 3; ++i) {
        r.correction[i] = p.at(i, i);
        r.correction_modulus_err =
            std::max(r.correction_modulus_err, std::abs(std::abs(p.at(i, i)) - 1.0));
        for (std::size_t j = 0; j < 3; ++j) {
            if (i != j)
                r.correction_offdiag = std::hypot(r.correction_offdiag, std::abs(p.at(i, j)));
            r.product_modulus_err = std::max(
                r.product_modulus_err, std::abs(std::abs(w.at(i, j)) - 1.0 / std::sqrt(3.0)));
        }
    }

    const Matrix p_diag = Matrix::diagonal(r.correction);
    r.residual = frobenius_distance(u, p_diag * w);
    return r;
}

} // namespace tbq::golden
