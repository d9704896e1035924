// tbq: synthesize d x d unitaries into coupler circuits, simulate the
// resulting time-bin fiber gates, and run the QKD / CHSH harnesses.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "tbq/chsh.hpp"
#include "tbq/circuit.hpp"
#include "tbq/golden.hpp"
#include "tbq/io.hpp"
#include "tbq/mub.hpp"
#include "tbq/qkd.hpp"

namespace {

using tbq::format_number;

constexpr const char* kFormatHelp = R"(File formats (all numbers >= 12 significant digits, '#' starts a comment):

  matrix        first line "d", then d lines of d whitespace-separated
                entries, each entry "re,im", e.g.
                    2
                    0.707106781186548,0 0.707106781186548,0
                    0.707106781186548,0 -0.707106781186548,0

  state vector  first line "d", then d lines "re,im".

  decomposition line 1 "d"; one line "m n theta phi" per coupler step in
                application order (first line acts first on the input);
                final line "P: p1 ... pd" with the mode phases.

  netlist       one component per line, keywords case-insensitive:
                    SWITCH_DEMUX k=3 loss_db=1.5
                    DELAY rail=1 dt=1e-10
                    PHASE rail=2 phi=1.0471975511966
                    COUPLER m=2 n=1 theta=0.785398163397448 phi=0 loss_db=0.1
                    SWAP m=2 n=1
                    LOSS rail=all db=0.2
                    DETECTOR rail=1 eff=0.88
                    SWITCH_MUX k=3 loss_db=1.5 map=2,1,3
                SWITCH_MUX's optional map lists the output time bin for
                each physical rail (it absorbs residual rail swaps into
                the output delay lines). Unknown keys are errors.
)";

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t value) {
    if (opt->count() > 0) return value;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

tbq::QuditState load_state(const std::string& path) {
    return tbq::QuditState(tbq::read_state_file(path), tbq::Encoding::TimeBin);
}

std::vector<tbq::QuditState> load_basis(const std::string& path) {
    const tbq::Matrix m = tbq::read_matrix_file(path);
    std::vector<tbq::QuditState> basis;
    for (std::size_t k = 0; k < m.dim(); ++k) {
        tbq::cvec row(m.dim());
        for (std::size_t j = 0; j < m.dim(); ++j) row[j] = m.at(k, j);
        basis.emplace_back(std::move(row), tbq::Encoding::TimeBin);
    }
    return basis;
}

int cmd_decompose(const std::string& matrix_path, double tol) {
    const tbq::UnitaryMatrix u(tbq::read_matrix_file(matrix_path), tol);
    tbq::write_decomposition(std::cout, tbq::decompose(u));
    return 0;
}

int cmd_reconstruct(const std::string& dec_path) {
    tbq::write_matrix(std::cout, tbq::reconstruct(tbq::read_decomposition_file(dec_path)));
    return 0;
}

int cmd_build_gate(const std::string& matrix_path, bool no_phase_correction, double dt,
                   bool lossless, double tol) {
    const tbq::UnitaryMatrix u(tbq::read_matrix_file(matrix_path), tol);
    tbq::GateOptions opts = lossless ? tbq::GateOptions::lossless() : tbq::GateOptions{};
    opts.apply_phase_correction = !no_phase_correction;
    opts.bin_separation = dt;
    const tbq::GateCircuit circuit = tbq::build_gate(tbq::decompose(u), opts);
    tbq::write_netlist(std::cout, circuit.netlist);
    return 0;
}

int cmd_simulate(const std::string& netlist_path, const std::string& state_path,
                 const CLI::Option* seed_opt, std::uint64_t seed) {
    std::ifstream f(netlist_path);
    if (!f) throw tbq::ParseError("cannot open file: " + netlist_path);
    tbq::GateCircuit circuit;
    circuit.netlist = tbq::parse_netlist(f, netlist_path);
    circuit.dim = tbq::netlist_dim(circuit.netlist);
    const bool has_detectors =
        std::any_of(circuit.netlist.begin(), circuit.netlist.end(), [](const auto& c) {
            return c.kind == tbq::ComponentKind::Detector;
        });
    circuit.tmpl = has_detectors ? tbq::GateTemplate::MeasurementGate
                                 : tbq::GateTemplate::QuditGate;
    circuit.rail_of.clear();

    const tbq::QuditState input = load_state(state_path);
    const tbq::SimulationResult res = tbq::simulate(circuit, input);

    std::cout << "dim " << circuit.dim << '\n';
    std::cout << "transmission " << format_number(res.transmission) << '\n';
    std::cout << "output_state\n";
    tbq::write_state_vector(std::cout, res.output.amplitudes());
    for (std::size_t k = 0; k < res.click_probabilities.size(); ++k)
        std::cout << "click_prob " << k << ' ' << format_number(res.click_probabilities[k])
                  << '\n';
    if (has_detectors) {
        const std::uint64_t s = resolve_seed(seed_opt, seed);
        std::cout << "seed " << s << '\n';
        tbq::SplitMix64 rng = tbq::round_rng(s, 0);
        double u = rng.uniform();
        std::size_t outcome = res.click_probabilities.size();
        for (std::size_t k = 0; k < res.click_probabilities.size(); ++k) {
            if (u < res.click_probabilities[k]) {
                outcome = k;
                break;
            }
            u -= res.click_probabilities[k];
        }
        if (outcome < res.click_probabilities.size())
            std::cout << "outcome " << outcome << '\n';
        else
            std::cout << "outcome NOCLICK\n";
    }
    return 0;
}

int cmd_measure(const std::string& basis_path, const std::string& state_path, double eff,
                const CLI::Option* seed_opt, std::uint64_t seed) {
    const auto basis = load_basis(basis_path);
    const tbq::QuditState input = load_state(state_path);
    const std::uint64_t s = resolve_seed(seed_opt, seed);
    const tbq::MeasurementSetup setup(basis, eff);

    std::cout << "seed " << s << '\n';
    const auto probs = setup.click_probabilities(input);
    for (std::size_t k = 0; k < probs.size(); ++k)
        std::cout << "click_prob " << k << ' ' << format_number(probs[k]) << '\n';
    tbq::SplitMix64 rng = tbq::round_rng(s, 0);
    const auto outcome = setup.sample(input, rng);
    if (outcome)
        std::cout << "outcome " << *outcome << '\n';
    else
        std::cout << "outcome NOCLICK\n";
    return 0;
}

int cmd_qkd(std::uint64_t rounds, double p, double loss_db, double eff,
            const CLI::Option* seed_opt, std::uint64_t seed, const std::string& csv_path) {
    const std::uint64_t s = resolve_seed(seed_opt, seed);
    const tbq::ChannelParams channel{p, loss_db, eff};
    const tbq::QkdSession session = tbq::qkd_run(rounds, channel, s, !csv_path.empty());

    std::cout << "seed " << s << '\n'
              << "rounds " << session.rounds << '\n'
              << "depolarizing_p " << format_number(p) << '\n'
              << "channel_loss_db " << format_number(loss_db) << '\n'
              << "detector_efficiency " << format_number(eff) << '\n'
              << "sifted " << session.sifted_count << '\n'
              << "errors " << session.error_count << '\n'
              << "sift_rate " << format_number(session.sift_rate) << '\n'
              << "qber " << format_number(session.qber) << '\n';
    for (int b = 0; b < 4; ++b)
        std::cout << "basis " << b << " sifted " << session.per_basis[b][0] << " errors "
                  << session.per_basis[b][1] << '\n';

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw tbq::ParseError("cannot open file: " + csv_path);
        csv << "round,alice_basis,alice_state,bob_basis,outcome,sifted,error\n";
        for (std::size_t r = 0; r < session.records.size(); ++r) {
            const auto& rec = session.records[r];
            csv << r << ',' << int(rec.alice_basis) << ',' << int(rec.alice_state) << ','
                << int(rec.bob_basis) << ',' << int(rec.outcome) << ',' << rec.sifted << ','
                << rec.error << '\n';
        }
        std::cout << "csv " << csv_path << '\n';
    }
    return 0;
}

int cmd_bell(const CLI::Option* eta_opt, double eta, const std::string& scan,
             std::uint64_t rounds, const CLI::Option* seed_opt, std::uint64_t seed,
             const std::string& angles, bool fair_sampling, const std::string& csv_path) {
    tbq::ChshConfig config = tbq::ChshConfig::maximally_entangled();
    config.fair_sampling = fair_sampling;
    if (!angles.empty()) {
        std::stringstream ss(angles);
        char c1, c2, c3;
        if (!(ss >> config.alice_angles[0] >> c1 >> config.alice_angles[1] >> c2 >>
              config.bob_angles[0] >> c3 >> config.bob_angles[1]) ||
            c1 != ',' || c2 != ',' || c3 != ',')
            throw tbq::ParseError("--angles expects a0,a1,b0,b1");
    }
    const std::uint64_t s = resolve_seed(seed_opt, seed);
    std::cout << "seed " << s << '\n' << "rounds " << rounds << '\n';

    if (!scan.empty()) {
        double lo, hi, step;
        char c1, c2;
        std::stringstream ss(scan);
        if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':')
            throw tbq::ParseError("--scan expects lo:hi:step");
        const tbq::ThresholdScan result = tbq::chsh_threshold(config, lo, hi, step, rounds, s);
        for (const auto& pt : result.points)
            std::cout << "point " << format_number(pt.eta) << " S " << format_number(pt.s_value)
                      << " stderr " << format_number(pt.s_std_error) << '\n';
        if (result.eta_star)
            std::cout << "eta_star " << format_number(*result.eta_star) << " stderr "
                      << format_number(result.eta_star_std_error) << '\n';
        else
            std::cout << "eta_star NOT_VIOLATED\n";
        return 0;
    }

    if (eta_opt->count() > 0) config.efficiency = eta;
    std::vector<tbq::ChshRecord> records;
    const tbq::ChshResult result =
        tbq::chsh_value(config, rounds, s, csv_path.empty() ? nullptr : &records);
    std::cout << "eta " << format_number(config.efficiency) << '\n';
    const char* names[2][2] = {{"E_ab", "E_abp"}, {"E_apb", "E_apbp"}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            std::cout << names[i][j] << ' ' << format_number(result.correlators[i][j])
                      << " stderr " << format_number(result.std_errors[i][j]) << " n "
                      << result.counts[i][j] << '\n';
    std::cout << "S " << format_number(result.s_value) << '\n'
              << "S_stderr " << format_number(result.s_std_error) << '\n';

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw tbq::ParseError("cannot open file: " + csv_path);
        csv << "round,alice_setting,bob_setting,alice_outcome,bob_outcome,alice_click,"
               "bob_click,alice_value,bob_value\n";
        for (std::size_t r = 0; r < records.size(); ++r) {
            const auto& rec = records[r];
            csv << r << ',' << int(rec.alice_setting) << ',' << int(rec.bob_setting) << ','
                << int(rec.alice_outcome) << ',' << int(rec.bob_outcome) << ','
                << rec.alice_click << ',' << rec.bob_click << ',' << int(rec.alice_value) << ','
                << int(rec.bob_value) << '\n';
        }
        std::cout << "csv " << csv_path << '\n';
    }
    return 0;
}

int cmd_feasibility(double dt, double rate, double group_index) {
    const tbq::TimingSpec t = tbq::timing_feasibility(dt, rate, group_index);
    std::cout << "bin_separation_s " << format_number(t.bin_separation) << '\n'
              << "switch_rate_hz " << format_number(t.switch_rate) << '\n'
              << "group_index " << format_number(t.group_index) << '\n'
              << "path_difference_m " << format_number(t.path_difference) << '\n'
              << "thermal_tolerance_k " << format_number(t.thermal_tolerance) << '\n'
              << "feasible " << (t.feasible ? "yes" : "no") << '\n';
    return 0;
}

int cmd_verify_paper() {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << ' ' << detail << '\n';
        if (!ok) ++failures;
    };

    // reference factorization of the qutrit basis-change unitary
    const tbq::golden::FactorizationReport rep = tbq::golden::verify_factorization();
    const double tol = 1e-12;
    check("unitarity_U", rep.unitarity_u <= tol, format_number(rep.unitarity_u));
    check("unitarity_B32", rep.unitarity_b32 <= tol, format_number(rep.unitarity_b32));
    check("unitarity_B31", rep.unitarity_b31 <= tol, format_number(rep.unitarity_b31));
    check("unitarity_B21", rep.unitarity_b21 <= tol, format_number(rep.unitarity_b21));
    {
        std::string diag = "diag(";
        for (std::size_t i = 0; i < rep.correction.size(); ++i) {
            if (i) diag += ' ';
            diag += "e^i" + format_number(std::arg(rep.correction[i]));
        }
        diag += ")";
        check("correction_diagonal", rep.correction_offdiag <= tol,
              diag + " offdiag " + format_number(rep.correction_offdiag));
    }
    check("correction_unit_modulus", rep.correction_modulus_err <= tol,
          format_number(rep.correction_modulus_err));
    check("factorization_residual", rep.residual <= tol, format_number(rep.residual));
    check("product_moduli_1_over_sqrt3", rep.product_modulus_err <= tol,
          format_number(rep.product_modulus_err));

    // synthesis round-trip on the same unitary
    const tbq::UnitaryMatrix u = tbq::golden::qutrit_unitary();
    const tbq::Decomposition dec = tbq::decompose(u);
    const double rt = tbq::frobenius_distance(tbq::reconstruct(dec), u);
    check("synthesis_round_trip", rt <= 1e-10,
          format_number(rt) + " steps " + std::to_string(dec.steps.size()));

    // MUB invariants
    const tbq::MubSet mub = tbq::mub_qutrit();
    double ortho_err = 0.0, cross_err = 0.0;
    for (int b = 0; b < 4; ++b)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const tbq::cplx g = tbq::inner_product(mub.bases[b][i], mub.bases[b][j]);
                ortho_err = std::max(ortho_err,
                                     std::abs(g - (i == j ? tbq::cplx{1, 0} : tbq::cplx{})));
            }
    for (int b1 = 0; b1 < 4; ++b1)
        for (int b2 = 0; b2 < 4; ++b2) {
            if (b1 == b2) continue;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    cross_err = std::max(
                        cross_err, std::abs(tbq::fidelity(mub.bases[b1][i], mub.bases[b2][j]) -
                                            1.0 / 3.0));
        }
    check("mub_orthonormality", ortho_err <= 1e-12, format_number(ortho_err));
    check("mub_cross_overlaps", cross_err <= 1e-12, format_number(cross_err));

    // loss budget for the two-switch gate
    const std::vector<tbq::Component> gate = {tbq::Component::switch_demux(2),
                                              tbq::Component::switch_mux(2)};
    const tbq::LossBudget budget = tbq::loss_budget(gate);
    check("gate_loss_total_db", std::abs(budget.total_db - 3.0) <= 1e-12,
          format_number(budget.total_db));
    check("gate_transmission", std::abs(budget.transmission - 0.5012) <= 1e-4,
          format_number(budget.transmission));

    // timing budget: 100 ps bins at 10 GHz switching
    const tbq::TimingSpec t = tbq::timing_feasibility(100e-12, 10e9);
    check("timing_feasible", t.feasible, "dt 1e-10 rate 1e10");
    check("timing_path_difference", std::abs(t.path_difference - 0.02) <= 0.002,
          format_number(t.path_difference) + " m");

    std::cout << (failures == 0 ? "PASS" : "FAIL") << " overall\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-bin qudit gate synthesis, simulation, and protocol harnesses"};
    app.footer(kFormatHelp);
    app.require_subcommand(1);

    std::string matrix_path, dec_path, netlist_path, state_path, basis_path, csv_path, scan,
        angles;
    bool no_phase_correction = false, lossless = false, fair_sampling = false;
    double dt = tbq::kDefaultBinSeparation;
    double eff = 1.0, eta = 1.0, p = 0.0, loss_db = 0.0, rate = 0.0;
    double group_index = tbq::kDefaultGroupIndex;
    double tol = tbq::UnitaryMatrix::kConstructionTol;
    std::uint64_t rounds = 100000, seed = 0;

    auto* c_dec = app.add_subcommand("decompose", "factor a unitary into coupler steps");
    c_dec->add_option("matrix", matrix_path, "unitary matrix file")->required();
    c_dec->add_option("--tol", tol, "unitarity tolerance on the input (default 1e-10)");

    auto* c_rec = app.add_subcommand("reconstruct", "rebuild a matrix from coupler steps");
    c_rec->add_option("decomposition", dec_path, "decomposition file")->required();

    auto* c_gate = app.add_subcommand("build-gate", "compile a unitary to a fiber netlist");
    c_gate->add_option("--matrix", matrix_path, "unitary matrix file")->required();
    c_gate->add_flag("--no-phase-correction", no_phase_correction,
                     "omit the final phase-correction modulators");
    c_gate->add_option("--dt", dt, "time-bin separation in seconds (default 1e-10)");
    c_gate->add_flag("--lossless", lossless, "zero out all component insertion losses");
    c_gate->add_option("--tol", tol, "unitarity tolerance on the input (default 1e-10)");

    auto* c_sim = app.add_subcommand("simulate", "propagate a state through a netlist");
    c_sim->add_option("--netlist", netlist_path, "netlist file")->required();
    c_sim->add_option("--state", state_path, "input state file")->required();
    auto* sim_seed = c_sim->add_option("--seed", seed, "sampling seed (detectors only)");

    auto* c_meas = app.add_subcommand("measure", "single-shot measurement in a basis");
    c_meas->add_option("--basis", basis_path, "basis matrix file (row k = basis state k)")
        ->required();
    c_meas->add_option("--state", state_path, "input state file")->required();
    c_meas->add_option("--eff", eff, "detector efficiency (default 1)");
    auto* meas_seed = c_meas->add_option("--seed", seed, "sampling seed");

    auto* c_qkd = app.add_subcommand("qkd", "four-basis qutrit key distribution run");
    c_qkd->add_option("--rounds", rounds, "number of rounds (default 100000)");
    c_qkd->add_option("--p", p, "sampled depolarizing probability");
    c_qkd->add_option("--loss-db", loss_db, "channel loss in dB");
    c_qkd->add_option("--eff", eff, "detector efficiency (default 1)");
    auto* qkd_seed = c_qkd->add_option("--seed", seed, "master seed");
    c_qkd->add_option("--csv", csv_path, "write per-round records to this file");

    auto* c_bell = app.add_subcommand("bell", "CHSH run or detection-efficiency scan");
    auto* bell_eta = c_bell->add_option("--eta", eta, "detector efficiency (default 1)");
    c_bell->add_option("--scan", scan, "scan efficiencies lo:hi:step for S > 2");
    c_bell->add_option("--rounds", rounds, "rounds (per scan point)");
    auto* bell_seed = c_bell->add_option("--seed", seed, "master seed");
    c_bell->add_option("--angles", angles, "settings a0,a1,b0,b1 in radians");
    c_bell->add_flag("--fair-sampling", fair_sampling,
                     "post-select on both detectors clicking (loophole reopens)");
    c_bell->add_option("--csv", csv_path, "write per-round records to this file");

    auto* c_verify = app.add_subcommand(
        "verify-paper", "check the built-in reference factorization, MUB set, and budgets");

    auto* c_feas = app.add_subcommand("feasibility", "timing feasibility of a bin separation");
    c_feas->add_option("--dt", dt, "time-bin separation in seconds")->required();
    c_feas->add_option("--rate", rate, "switching rate in Hz")->required();
    c_feas->add_option("--group-index", group_index, "fiber group index (default 1.468)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_dec->parsed()) return cmd_decompose(matrix_path, tol);
        if (c_rec->parsed()) return cmd_reconstruct(dec_path);
        if (c_gate->parsed())
            return cmd_build_gate(matrix_path, no_phase_correction, dt, lossless, tol);
        if (c_sim->parsed()) return cmd_simulate(netlist_path, state_path, sim_seed, seed);
        if (c_meas->parsed())
            return cmd_measure(basis_path, state_path, eff, meas_seed, seed);
        if (c_qkd->parsed())
            return cmd_qkd(rounds, p, loss_db, eff, qkd_seed, seed, csv_path);
        if (c_bell->parsed())
            return cmd_bell(bell_eta, eta, scan, rounds, bell_seed, seed, angles, fair_sampling,
                            csv_path);
        if (c_verify->parsed()) return cmd_verify_paper();
        if (c_feas->parsed()) return cmd_feasibility(dt, rate, group_index);
    } catch (const tbq::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const tbq::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
