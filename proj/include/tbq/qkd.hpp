#pragma once

// Four-basis qutrit key distribution harness. Alice draws one of the 12
// MUB states uniformly; the channel applies sampled depolarizing noise
// (with probability p the state is replaced by a uniformly random
// computational-basis state) and attenuates; Bob measures in one of the
// four bases through the coupler measurement circuits. Matched-basis
// rounds with a click are kept; QBER is counted over those. Under this
// sampling model the expected QBER is 2p/3.

#include <array>
#include <cstdint>
#include <vector>

#include "tbq/circuit.hpp"
#include "tbq/mub.hpp"

namespace tbq {

struct ChannelParams {
    double depolarizing_p = 0.0;   // sampled replacement probability
    double loss_db = 0.0;          // channel attenuation
    double detector_efficiency = 1.0;
};

struct QkdRecord {
    std::uint8_t alice_basis = 0;
    std::uint8_t alice_state = 0;
    std::uint8_t bob_basis = 0;
    std::int8_t outcome = -1; // -1 = no click
    bool sifted = false;      // bases matched and Bob clicked
    bool error = false;       // sifted and outcome != alice_state
};

struct QkdSession {
    std::uint64_t rounds = 0;
    ChannelParams channel;
    std::uint64_t seed = 0;

    std::uint64_t sifted_count = 0;
    std::uint64_t error_count = 0;
    double qber = 0.0;      // errors / sifted (0 when nothing sifted)
    double sift_rate = 0.0; // sifted / rounds

    // per Alice basis: {sifted, errors}
    std::array<std::array<std::uint64_t, 2>, 4> per_basis{};

    std::vector<QkdRecord> records; // empty unless requested
};

// Bob's measurement circuits are built lossless; all attenuation comes
// from the explicit channel parameters. Per-round draw order from the
// round RNG: Alice basis, Alice state, depolarization uniform,
// [replacement state], Bob basis, outcome uniform.
QkdSession qkd_run(std::uint64_t rounds, const ChannelParams& channel, std::uint64_t seed,
                   bool keep_records = false);

} // namespace tbq
