#include "tbq/mub.hpp"

#include <cmath>
#include <numbers>

namespace tbq {

MubSet mub_qutrit(double bin_separation) {
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const cplx wb = std::conj(w);

    auto state = [&](cplx a, cplx b, cplx c) {
        return QuditState({a, b, c}, Encoding::TimeBin, bin_separation);
    };
    auto rotations = [&](cplx a, cplx b, cplx c) {
        return std::vector<QuditState>{state(a, b, c), state(c, a, b), state(b, c, a)};
    };

    MubSet m;
    m.bases.push_back({state(1, 0, 0), state(0, 1, 0), state(0, 0, 1)});
    m.bases.push_back({state(1, 1, 1), state(1, w, wb), state(1, wb, w)});
    m.bases.push_back(rotations(w, 1, 1));
    m.bases.push_back(rotations(wb, 1, 1));
    return m;
}

} // namespace tbq
