#include "tbq/reck.hpp"

#include <cmath>
#include <numbers>

namespace tbq {

namespace {
constexpr double kNullTol = 1e-14;
}

double wrap_phase(double x) {
    x = std::remainder(x, 2.0 * std::numbers::pi);
    if (x <= -std::numbers::pi) x += 2.0 * std::numbers::pi;
    return x;
}

std::size_t coupler_count(std::size_t d) {
    if (d < 2) throw DimensionMismatch("coupler_count requires d >= 2");
    return d * (d - 1) / 2;
}

UnitaryMatrix coupler_unitary(double theta, double phi) {
    const double s = std::sin(theta), c = std::cos(theta);
    const cplx e = std::polar(1.0, phi);
    return UnitaryMatrix(2, {e * s, c, e * c, -s}, 1e-14);
}

UnitaryMatrix coupler_unitary(const CouplerStep& step) {
    return coupler_unitary(step.theta, step.phi);
}

Matrix embed(const Matrix& b, std::size_t m, std::size_t n, std::size_t d) {
    if (b.dim() != 2) throw DimensionMismatch("embed expects a 2x2 block");
    if (n < 1 || m <= n || m > d)
        throw RailOutOfRange("embed requires 1 <= n < m <= d");
    Matrix r = Matrix::identity(d);
    r.at(n - 1, n - 1) = b.at(0, 0);
    r.at(n - 1, m - 1) = b.at(0, 1);
    r.at(m - 1, n - 1) = b.at(1, 0);
    r.at(m - 1, m - 1) = b.at(1, 1);
    return r;
}

Decomposition decompose(const UnitaryMatrix& u) {
    const std::size_t d = u.dim();
    if (d < 2) throw DimensionMismatch("decompose requires d >= 2");

    Matrix v = u;
    Decomposition dec;
    dec.dim = d;
    dec.steps.reserve(coupler_count(d));

    for (std::size_t k = d; k >= 2; --k) {
        for (std::size_t n = k - 1; n >= 1; --n) {
            const cplx a = v.at(k - 1, n - 1); // entry being nulled
            const cplx b = v.at(k - 1, k - 1); // diagonal accumulator
            double theta, phi;
            if (std::abs(a) <= kNullTol) {
                theta = std::numbers::pi / 2.0;
                phi = 0.0;
            } else {
                theta = std::atan2(std::abs(b), std::abs(a));
                phi = wrap_phase(std::arg(a) - std::arg(b) - std::numbers::pi);
            }
            // Right-multiply v by embed(B(theta,phi)^dagger, k, n): only
            // columns n and k change.
            const double s = std::sin(theta), c = std::cos(theta);
            const cplx em = std::polar(1.0, -phi);
            for (std::size_t i = 0; i < d; ++i) {
                const cplx vn = v.at(i, n - 1), vk = v.at(i, k - 1);
                v.at(i, n - 1) = em * s * vn + c * vk;
                v.at(i, k - 1) = em * c * vn - s * vk;
            }
            dec.steps.push_back({k, n, theta, phi});
        }
    }

    dec.correction.phases.resize(d);
    for (std::size_t i = 0; i < d; ++i)
        dec.correction.phases[i] = wrap_phase(std::arg(v.at(i, i)));
    return dec;
}

UnitaryMatrix reconstruct(const Decomposition& dec) {
    // Accepts partial step lists (e.g. the zero-step edge case); the full
    // ordering invariant is enforced by validate() on decompose output and
    // on the file format.
    const std::size_t d = dec.dim;
    if (d < 2) throw Error("decomposition dimension must be >= 2");
    if (!dec.correction.phases.empty() && dec.correction.phases.size() != d)
        throw Error("phase correction must be empty or have d entries");
    cvec diag(d, cplx{1.0, 0.0});
    for (std::size_t i = 0; i < dec.correction.phases.size(); ++i)
        diag[i] = std::polar(1.0, dec.correction.phases[i]);
    Matrix acc = Matrix::diagonal(diag);
    for (auto it = dec.steps.rbegin(); it != dec.steps.rend(); ++it)
        acc = acc * embed(coupler_unitary(*it), it->m, it->n, d);
    return UnitaryMatrix(std::move(acc));
}

void validate(const Decomposition& dec) {
    const std::size_t d = dec.dim;
    if (d < 2) throw Error("decomposition dimension must be >= 2");
    if (dec.steps.size() != coupler_count(d))
        throw Error("decomposition must have exactly d(d-1)/2 steps");
    if (dec.correction.phases.size() != d)
        throw Error("phase correction must have d entries");
    std::size_t idx = 0;
    for (std::size_t k = d; k >= 2; --k) {
        for (std::size_t n = k - 1; n >= 1; --n, ++idx) {
            const CouplerStep& s = dec.steps[idx];
            if (s.m != k || s.n != n)
                throw Error("step ordering must follow (d,d-1)...(d,1),(d-1,d-2),...,(2,1)");
            if (s.theta < 0.0 || s.theta > std::numbers::pi / 2.0 + 1e-12)
                throw Error("coupler angle out of [0, pi/2]");
        }
    }
}

} // namespace tbq
