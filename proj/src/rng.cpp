#include "tbq/rng.hpp"

#include <cmath>
#include <numbers>

namespace tbq {

double SplitMix64::gaussian() {
    // Box-Muller; u clamped away from 0 so log stays finite.
    double u = uniform();
    if (u < 0x1.0p-60) u = 0x1.0p-60;
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t round_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 1));
}

UnitaryMatrix haar_unitary(std::size_t dim, SplitMix64& rng) {
    // Columns of a complex Ginibre matrix, orthonormalized by modified
    // Gram-Schmidt; multiplying each column by the phase of its pivot
    // makes the implied R diagonal real positive, which yields the Haar
    // measure.
    std::vector<cvec> cols(dim, cvec(dim));
    for (auto& col : cols)
        for (auto& e : col) e = cplx{rng.gaussian(), rng.gaussian()};

    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            const cplx proj = dot(cols[k], cols[j]);
            for (std::size_t i = 0; i < dim; ++i) cols[j][i] -= proj * cols[k][i];
        }
        const double n = norm(cols[j]);
        for (auto& e : cols[j]) e /= n;
    }

    Matrix m(dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = cols[j][i];
    return UnitaryMatrix(std::move(m));
}

} // namespace tbq
