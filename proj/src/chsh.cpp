#include "tbq/chsh.hpp"

#include <cmath>
#include <numbers>

namespace tbq {

ChshConfig::ChshConfig()
    : state({cplx{1.0 / std::sqrt(2.0), 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0},
             cplx{1.0 / std::sqrt(2.0), 0.0}}),
      alice_angles({0.0, std::numbers::pi / 4.0}),
      bob_angles({std::numbers::pi / 8.0, -std::numbers::pi / 8.0}) {}

ChshConfig ChshConfig::maximally_entangled() { return ChshConfig{}; }

namespace {

// Measurement basis for one party from its setting angle.
std::vector<QuditState> angle_basis(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {QuditState({c, s}, Encoding::TimeBin), QuditState({-s, c}, Encoding::TimeBin)};
}

struct JointDistributions {
    // p[i][j][x * 2 + y]: setting pair (i, j), outcomes (x, y)
    std::array<std::array<std::array<double, 4>, 2>, 2> p{};
};

JointDistributions joint_distributions(const ChshConfig& config) {
    if (config.state.size() != 4) throw DimensionMismatch("CHSH state must have 4 amplitudes");
    cvec psi = config.state;
    const double n = norm(psi);
    if (n < kStateNormTol) throw ZeroVector("CHSH state is (near-)zero");
    for (auto& a : psi) a /= n;

    std::array<Matrix, 2> ma, mb;
    for (int i = 0; i < 2; ++i) {
        ma[i] = transfer_matrix(
            MeasurementSetup(angle_basis(config.alice_angles[i])).circuit());
        mb[i] = transfer_matrix(
            MeasurementSetup(angle_basis(config.bob_angles[i])).circuit());
    }

    JointDistributions jd;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const cvec out = kron(ma[i], mb[j]) * psi;
            for (int o = 0; o < 4; ++o) jd.p[i][j][o] = std::norm(out[o]);
        }
    return jd;
}

} // namespace

ChshResult chsh_value(const ChshConfig& config, std::uint64_t rounds, std::uint64_t seed,
                      std::vector<ChshRecord>* records, std::uint64_t stream_offset) {
    if (rounds < 1) throw Error("chsh_value requires at least one round");
    const JointDistributions jd = joint_distributions(config);
    const double eta = config.efficiency;
    if (eta < 0.0 || eta > 1.0) throw Error("detector efficiency must be in [0,1]");

    std::array<std::array<double, 2>, 2> sums{};
    std::array<std::array<std::uint64_t, 2>, 2> counts{};
    if (records) records->reserve(rounds);

    for (std::uint64_t r = 0; r < rounds; ++r) {
        SplitMix64 rng = round_rng(seed, stream_offset + r);
        const std::size_t i = rng.below(2);
        const std::size_t j = rng.below(2);

        double u = rng.uniform();
        int outcome = 3;
        for (int o = 0; o < 3; ++o) {
            if (u < jd.p[i][j][o]) {
                outcome = o;
                break;
            }
            u -= jd.p[i][j][o];
        }
        const int x = outcome >> 1, y = outcome & 1;

        const bool click_a = rng.uniform() < eta;
        const bool click_b = rng.uniform() < eta;
        if (config.fair_sampling && !(click_a && click_b)) continue;
        const int va = click_a ? (x == 0 ? 1 : -1) : 1;
        const int vb = click_b ? (y == 0 ? 1 : -1) : 1;

        sums[i][j] += va * vb;
        ++counts[i][j];
        if (records)
            records->push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j),
                                static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y),
                                click_a, click_b, static_cast<std::int8_t>(va),
                                static_cast<std::int8_t>(vb)});
    }

    ChshResult res;
    res.counts = counts;
    double var_sum = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double nsamples = static_cast<double>(counts[i][j]);
            if (counts[i][j] == 0) throw Error("a setting pair received no samples");
            const double e = sums[i][j] / nsamples;
            res.correlators[i][j] = e;
            // products are +/-1, so Var = 1 - E^2
            res.std_errors[i][j] = std::sqrt(std::max(0.0, 1.0 - e * e) / nsamples);
            var_sum += res.std_errors[i][j] * res.std_errors[i][j];
        }
    res.s_value = res.correlators[0][0] + res.correlators[0][1] + res.correlators[1][0] -
                  res.correlators[1][1];
    res.s_std_error = std::sqrt(var_sum);
    return res;
}

ThresholdScan chsh_threshold(const ChshConfig& config, double lo, double hi, double step,
                             std::uint64_t rounds, std::uint64_t seed) {
    if (step <= 0.0) throw Error("scan step must be positive");
    if (lo <= 0.0 || hi > 1.0 || lo > hi) throw Error("scan range must satisfy 0 < lo <= hi <= 1");

    ThresholdScan scan;
    std::uint64_t point = 0;
    for (double eta = lo; eta <= hi + 1e-12; eta += step, ++point) {
        ChshConfig c = config;
        c.efficiency = std::min(eta, 1.0);
        const ChshResult r = chsh_value(c, rounds, seed, nullptr, point * rounds);
        scan.points.push_back({c.efficiency, r.s_value, r.s_std_error});
        if (!scan.eta_star && r.s_value > 2.0) {
            scan.eta_star = c.efficiency;
            scan.eta_star_std_error = r.s_std_error;
        }
    }
    return scan;
}

} // namespace tbq
