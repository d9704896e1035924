// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each criterion pins its tolerance and a wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "tbq/chsh.hpp"
#include "tbq/circuit.hpp"
#include "tbq/golden.hpp"
#include "tbq/mub.hpp"
#include "tbq/qkd.hpp"
#include "tbq/rng.hpp"

using namespace tbq;

namespace {

struct Harness {
    int failures = 0;

    void run(int index, const std::string& name, double time_budget_s,
             const std::function<std::string()>& body) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            detail = body();
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && detail.rfind("FAIL", 0) == 0) ok = false;
        if (elapsed >= time_budget_s) {
            ok = false;
            detail += " [over time budget]";
        }
        std::printf("[%s] criterion %d: %s — %s (%.2f s, budget %.0f s)\n",
                    ok ? "PASS" : "FAIL", index, name.c_str(), detail.c_str(), elapsed,
                    time_budget_s);
        if (!ok) ++failures;
    }
};

std::string fmt(double v) {
    char b[64];
    std::snprintf(b, sizeof b, "%.3g", v);
    return b;
}

QuditState random_state(std::size_t d, SplitMix64& rng) {
    cvec a(d);
    for (auto& e : a) e = cplx{rng.gaussian(), rng.gaussian()};
    return QuditState(std::move(a), Encoding::TimeBin);
}

std::string criterion_golden_factorization() {
    const golden::FactorizationReport rep = golden::verify_factorization();
    if (!rep.pass(1e-12))
        return "FAIL residual=" + fmt(rep.residual) +
               " offdiag=" + fmt(rep.correction_offdiag) +
               " moduli=" + fmt(rep.product_modulus_err);
    return "residual=" + fmt(rep.residual) + " unitarity<=" +
           fmt(std::max({rep.unitarity_u, rep.unitarity_b32, rep.unitarity_b31,
                         rep.unitarity_b21})) +
           " |entries|-3^-1/2<=" + fmt(rep.product_modulus_err);
}

std::string criterion_round_trip() {
    SplitMix64 rng(20240101);
    double worst = 0.0;
    for (std::size_t d = 2; d <= 8; ++d) {
        for (int rep = 0; rep < 200; ++rep) {
            const UnitaryMatrix u = haar_unitary(d, rng);
            const Decomposition dec = decompose(u);
            if (dec.steps.size() != d * (d - 1) / 2)
                return "FAIL step count " + std::to_string(dec.steps.size()) + " at d=" +
                       std::to_string(d);
            worst = std::max(worst, frobenius_distance(reconstruct(dec), u));
        }
    }
    if (worst > 1e-10) return "FAIL worst residual " + fmt(worst);
    return "1400 unitaries, worst residual " + fmt(worst);
}

std::string criterion_gate_equivalence() {
    SplitMix64 rng(424242);
    double worst_fid_gap = 0.0, worst_prob_gap = 0.0;
    for (std::size_t d = 2; d <= 4; ++d) {
        for (int rep = 0; rep < 100; ++rep) {
            const UnitaryMatrix u = haar_unitary(d, rng);
            const Decomposition dec = decompose(u);
            const QuditState psi = random_state(d, rng);
            const QuditState want = apply(u, psi);

            const SimulationResult with_p = simulate(build_gate(dec), psi);
            worst_fid_gap = std::max(worst_fid_gap, 1.0 - fidelity(with_p.output, want));

            GateOptions no_p;
            no_p.apply_phase_correction = false;
            const SimulationResult without_p = simulate(build_gate(dec, no_p), psi);
            for (std::size_t k = 0; k < d; ++k) {
                const double p_without = std::norm(without_p.output.amplitudes()[k]);
                worst_prob_gap = std::max(
                    worst_prob_gap, std::abs(p_without - std::norm(want.amplitudes()[k])));
                worst_prob_gap = std::max(
                    worst_prob_gap,
                    std::abs(p_without - std::norm(with_p.output.amplitudes()[k])));
            }
        }
    }
    if (worst_fid_gap > 1e-9) return "FAIL fidelity gap " + fmt(worst_fid_gap);
    if (worst_prob_gap > 1e-12) return "FAIL click probability gap " + fmt(worst_prob_gap);
    return "300 pairs, fidelity gap " + fmt(worst_fid_gap) + ", prob gap " +
           fmt(worst_prob_gap);
}

std::string criterion_mub() {
    const MubSet mub = mub_qutrit();
    double ortho = 0.0, cross = 0.0;
    int cross_count = 0;
    for (int b = 0; b < 4; ++b)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                ortho = std::max(ortho,
                                 std::abs(inner_product(mub.bases[b][i], mub.bases[b][j]) -
                                          (i == j ? cplx{1, 0} : cplx{0, 0})));
    for (int b1 = 0; b1 < 4; ++b1)
        for (int b2 = b1 + 1; b2 < 4; ++b2)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    ++cross_count;
                    cross = std::max(cross,
                                     std::abs(fidelity(mub.bases[b1][i], mub.bases[b2][j]) -
                                              1.0 / 3.0));
                }
    if (ortho > 1e-12 || cross > 1e-12 || cross_count != 54)
        return "FAIL ortho=" + fmt(ortho) + " cross=" + fmt(cross) + " pairs=" +
               std::to_string(cross_count);
    return "orthonormality " + fmt(ortho) + ", 54 overlaps off by " + fmt(cross);
}

std::string criterion_qkd() {
    const QkdSession ideal = qkd_run(100000, ChannelParams{}, 8675309);
    if (ideal.error_count != 0) return "FAIL ideal QBER nonzero";
    if (std::abs(ideal.sift_rate - 0.25) > 0.01)
        return "FAIL sift rate " + fmt(ideal.sift_rate);

    ChannelParams noisy;
    noisy.depolarizing_p = 0.1;
    const QkdSession dep = qkd_run(100000, noisy, 8675310);
    if (std::abs(dep.qber - 0.0667) > 0.01) return "FAIL depolarized QBER " + fmt(dep.qber);
    return "ideal QBER 0, sift " + fmt(ideal.sift_rate) + "; p=0.1 QBER " + fmt(dep.qber);
}

std::string criterion_chsh() {
    const ChshConfig config = ChshConfig::maximally_entangled();
    const ChshResult r = chsh_value(config, 1000000, 1234567);
    const double s_want = 2.0 * std::sqrt(2.0);
    if (std::abs(r.s_value - s_want) > 0.05) return "FAIL S " + fmt(r.s_value);

    const ThresholdScan scan = chsh_threshold(config, 0.78, 0.88, 0.005, 1000000, 7654321);
    if (!scan.eta_star) return "FAIL no threshold found";
    if (std::abs(*scan.eta_star - 0.828) > 0.01)
        return "FAIL eta* " + fmt(*scan.eta_star);
    return "S=" + fmt(r.s_value) + " (2sqrt2=" + fmt(s_want) + "), eta*=" +
           fmt(*scan.eta_star);
}

std::string criterion_loss_budget() {
    const LossBudget b =
        loss_budget({Component::switch_demux(2), Component::switch_mux(2)});
    if (std::abs(b.total_db - 3.0) > 1e-12) return "FAIL total " + fmt(b.total_db);
    if (std::abs(b.transmission - 0.5012) > 1e-4)
        return "FAIL transmission " + fmt(b.transmission);
    return "3.0 dB, transmission " + fmt(b.transmission);
}

std::string criterion_timing() {
    const TimingSpec t = timing_feasibility(100e-12, 10e9, 1.468);
    if (!t.feasible) return "FAIL infeasible";
    if (std::abs(t.path_difference - 0.02) > 0.002)
        return "FAIL path difference " + fmt(t.path_difference);
    return "feasible, path difference " + fmt(t.path_difference) + " m";
}

} // namespace

int main() {
    Harness h;
    h.run(1, "reference factorization at 1e-12", 1.0, criterion_golden_factorization);
    h.run(2, "synthesis round-trip, 200 Haar unitaries per d in 2..8", 10.0,
          criterion_round_trip);
    h.run(3, "gate-level equivalence with and without phase correction", 30.0,
          criterion_gate_equivalence);
    h.run(4, "MUB orthonormality and 54 cross overlaps at 1e-12", 1.0, criterion_mub);
    h.run(5, "QKD: ideal zero QBER, sift 0.25; p=0.1 QBER 0.0667", 30.0, criterion_qkd);
    h.run(6, "CHSH: S = 2sqrt2 at eta 1; threshold eta* = 0.828", 60.0, criterion_chsh);
    h.run(7, "loss budget: two switches = 3 dB, transmission 0.5012", 1.0,
          criterion_loss_budget);
    h.run(8, "timing: 100 ps at 10 GHz feasible, ~2 cm path difference", 1.0,
          criterion_timing);

    std::printf("%d/8 criteria passed\n", 8 - h.failures);
    return h.failures;
}
