#pragma once

// Pure states of a single photonic d-level system. A state is an immutable
// normalized amplitude vector tagged with its encoding; every operation
// returns a new value. Global phase is not canonicalized: equality is
// checked up to phase via |<a|b>| = 1.

#include <cstddef>

#include "tbq/complex_matrix.hpp"

namespace tbq {

enum class Encoding { TimeBin, Rail, Polarization };

const char* to_string(Encoding e);

// Default time-bin separation, seconds. A 10 GHz switch supports bins
// 100 ps apart.
inline constexpr double kDefaultBinSeparation = 100e-12;

inline constexpr double kStateNormTol = 1e-12;

class QuditState {
  public:
    // Normalizes the amplitudes. Throws ZeroVector if the input norm is
    // below 1e-12, DimensionMismatch for dim < 2 or Polarization with
    // dim != 2, and Error for non-finite amplitudes.
    QuditState(cvec amplitudes, Encoding encoding,
               double bin_separation = kDefaultBinSeparation);

    std::size_t dim() const { return amps_.size(); }
    const cvec& amplitudes() const { return amps_; }
    Encoding encoding() const { return encoding_; }
    double bin_separation() const { return bin_separation_; }

    // Same amplitudes, different encoding label (lossless relabeling
    // performed by switch/delay conversion stages).
    QuditState relabeled(Encoding e) const;

    // Computational basis state |k>, k in [0, dim).
    static QuditState basis(std::size_t dim, std::size_t k,
                            Encoding encoding = Encoding::TimeBin,
                            double bin_separation = kDefaultBinSeparation);

  private:
    cvec amps_;
    Encoding encoding_;
    double bin_separation_;
};

QuditState make_state(cvec amplitudes, Encoding encoding,
                      double bin_separation = kDefaultBinSeparation);

// <a|b>; requires equal dimension and encoding.
cplx inner_product(const QuditState& a, const QuditState& b);

// |<a|b>|^2
double fidelity(const QuditState& a, const QuditState& b);

bool equal_up_to_phase(const QuditState& a, const QuditState& b, double tol = 1e-9);

// M |s>; requires M.dim() == s.dim(). Norm is preserved by unitarity.
QuditState apply(const UnitaryMatrix& m, const QuditState& s);

} // namespace tbq
