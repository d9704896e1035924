#pragma once

// CHSH harness over a pair of time-bin qubits. Each party measures its
// qubit with a two-detector measurement circuit whose basis is set by one
// angle; a detector fires with probability eta. Rounds with a missing
// click score the fixed local value +1 (no post-selection), which is what
// makes the detection efficiency threshold appear: for the maximally
// entangled state S(eta) = 2*sqrt(2)*eta^2 + 2*(1-eta)^2, crossing the
// classical bound 2 at eta = 2/(1+sqrt(2)) ~ 0.8284.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tbq/circuit.hpp"

namespace tbq {

struct ChshConfig {
    // two-qubit amplitudes over {short short, short long, long short,
    // long long}; normalized on use
    cvec state;
    std::array<double, 2> alice_angles; // settings a, a'
    std::array<double, 2> bob_angles;   // settings b, b'
    double efficiency = 1.0;            // per detector
    // When true, rounds with any missing click are discarded instead of
    // scored +1 (post-selection). Excluded from the loophole analysis;
    // off by default.
    bool fair_sampling = false;

    ChshConfig();
    static ChshConfig maximally_entangled(); // (|ss> + |ll>) / sqrt(2), quarter-spaced angles
};

struct ChshRecord {
    std::uint8_t alice_setting = 0, bob_setting = 0;
    std::uint8_t alice_outcome = 0, bob_outcome = 0; // sampled joint outcome
    bool alice_click = false, bob_click = false;
    std::int8_t alice_value = 0, bob_value = 0; // +1 / -1 after click logic
};

struct ChshResult {
    // indexed [alice setting][bob setting]
    std::array<std::array<double, 2>, 2> correlators{};
    std::array<std::array<double, 2>, 2> std_errors{};
    std::array<std::array<std::uint64_t, 2>, 2> counts{};
    double s_value = 0.0;     // E(a,b) + E(a,b') + E(a',b) - E(a',b')
    double s_std_error = 0.0;
};

// Monte Carlo estimate of S. Joint outcome distributions per setting pair
// come from the measurement-circuit transfer matrices (kron of the two
// local circuits applied to the state). Per-round draw order: Alice
// setting, Bob setting, joint outcome uniform, Alice click, Bob click.
// `stream_offset` shifts the per-round seed indices so that scans can use
// disjoint streams of one master seed.
ChshResult chsh_value(const ChshConfig& config, std::uint64_t rounds, std::uint64_t seed,
                      std::vector<ChshRecord>* records = nullptr,
                      std::uint64_t stream_offset = 0);

struct ThresholdPoint {
    double eta = 0.0;
    double s_value = 0.0;
    double s_std_error = 0.0;
};

struct ThresholdScan {
    std::vector<ThresholdPoint> points;
    std::optional<double> eta_star; // smallest scanned eta with S > 2
    double eta_star_std_error = 0.0;
};

// Scans eta over [lo, hi] in steps of `step` (rounds per point).
ThresholdScan chsh_threshold(const ChshConfig& config, double lo, double hi, double step,
                             std::uint64_t rounds, std::uint64_t seed);

} // namespace tbq
