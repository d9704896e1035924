#pragma once

// Deterministic, order-independent random streams for Monte Carlo runs.
//
// Stream-splitting rule: trial r of a run seeded with s draws from
// SplitMix64 seeded with mix64(s XOR mix64(r + 1)), so trials can be
// evaluated in any order (or concurrently) and reproduce the same
// statistics for a given master seed.

#include <cstdint>

#include "tbq/complex_matrix.hpp"

namespace tbq {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, k)
    std::uint64_t below(std::uint64_t k) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * k) >> 64);
    }

    // standard normal via Box-Muller (one value per call, no caching)
    double gaussian();

  private:
    std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t x);

// Seed for trial `index` of a run with master seed `master`.
std::uint64_t round_seed(std::uint64_t master, std::uint64_t index);

inline SplitMix64 round_rng(std::uint64_t master, std::uint64_t index) {
    return SplitMix64(round_seed(master, index));
}

// Haar-distributed random unitary (complex Ginibre followed by
// Gram-Schmidt with the R diagonal phase absorbed).
UnitaryMatrix haar_unitary(std::size_t dim, SplitMix64& rng);

} // namespace tbq
