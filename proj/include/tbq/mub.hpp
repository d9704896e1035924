#pragma once

// The four mutually unbiased qutrit bases used by the QKD harness:
// computational, the primed basis, and the two phase-shifted bases
// obtained by cyclic coefficient rotation. Any cross-basis overlap has
// |<x|y>|^2 = 1/3.

#include <vector>

#include "tbq/qudit.hpp"

namespace tbq {

struct MubSet {
    // bases[b][k]: basis b in 0..3, state k in 0..2
    std::vector<std::vector<QuditState>> bases;
};

// Basis 0: {|a>, |b>, |c>} (time of arrival). Basis 1: coefficient rows
// (1,1,1), (1,w,w*), (1,w*,w) with w = e^{2 pi i/3}, all over sqrt(3).
// Bases 2 and 3: forward cyclic rotations (a->b->c->a) of (w,1,1) and
// (w*,1,1) respectively. The rotation direction is a convention; the
// backward rotation would be a valid MUB set too, and this constructor is
// the single place fixing the choice.
MubSet mub_qutrit(double bin_separation = kDefaultBinSeparation);

} // namespace tbq
