#include "tbq/qudit.hpp"

#include <cmath>
#include <utility>

namespace tbq {

const char* to_string(Encoding e) {
    switch (e) {
        case Encoding::TimeBin: return "time-bin";
        case Encoding::Rail: return "rail";
        case Encoding::Polarization: return "polarization";
    }
    return "?";
}

QuditState::QuditState(cvec amplitudes, Encoding encoding, double bin_separation)
    : amps_(std::move(amplitudes)), encoding_(encoding), bin_separation_(bin_separation) {
    if (amps_.size() < 2) throw DimensionMismatch("state dimension must be >= 2");
    if (encoding_ == Encoding::Polarization && amps_.size() != 2)
        throw DimensionMismatch("polarization encoding requires dim == 2");
    for (const auto& a : amps_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw Error("non-finite amplitude");
    const double n = norm(amps_);
    if (n < kStateNormTol) throw ZeroVector("cannot normalize a (near-)zero vector");
    for (auto& a : amps_) a /= n;
}

QuditState QuditState::relabeled(Encoding e) const {
    return QuditState(amps_, e, bin_separation_);
}

QuditState QuditState::basis(std::size_t dim, std::size_t k, Encoding encoding,
                             double bin_separation) {
    cvec a(dim, cplx{0.0, 0.0});
    a.at(k) = 1.0;
    return QuditState(std::move(a), encoding, bin_separation);
}

QuditState make_state(cvec amplitudes, Encoding encoding, double bin_separation) {
    return QuditState(std::move(amplitudes), encoding, bin_separation);
}

cplx inner_product(const QuditState& a, const QuditState& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("inner product dimension mismatch");
    if (a.encoding() != b.encoding())
        throw DimensionMismatch("inner product encoding mismatch");
    return dot(a.amplitudes(), b.amplitudes());
}

double fidelity(const QuditState& a, const QuditState& b) {
    return std::norm(inner_product(a, b));
}

bool equal_up_to_phase(const QuditState& a, const QuditState& b, double tol) {
    return std::abs(std::abs(inner_product(a, b)) - 1.0) <= tol;
}

QuditState apply(const UnitaryMatrix& m, const QuditState& s) {
    if (m.dim() != s.dim()) throw DimensionMismatch("apply dimension mismatch");
    return QuditState(m * s.amplitudes(), s.encoding(), s.bin_separation());
}

} // namespace tbq
