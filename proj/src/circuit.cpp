#include "tbq/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace tbq {

GateOptions GateOptions::lossless() {
    GateOptions o;
    o.switch_loss_db = 0.0;
    o.coupler_loss_db = 0.0;
    o.phase_loss_db = 0.0;
    o.pbsc_loss_db = 0.0;
    return o;
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Builder {
    std::size_t d;
    GateOptions opts;
    std::vector<Component> netlist;
    std::vector<std::size_t> pos; // pos[l-1] = physical rail of logical rail l

    Builder(std::size_t dim, const GateOptions& o) : d(dim), opts(o), pos(dim) {
        std::iota(pos.begin(), pos.end(), 1);
    }

    void front_section(double dt) {
        netlist.push_back(Component::switch_demux(d, opts.switch_loss_db));
        for (std::size_t k = 1; k < d; ++k)
            netlist.push_back(Component::delay(k, static_cast<double>(d - k) * dt));
    }

    void phase(std::size_t rail, double value) {
        if (value != 0.0)
            netlist.push_back(Component::phase_mod(rail, value, opts.phase_loss_db));
    }

    // Swap physical rails a and b; logical bookkeeping follows.
    void swap_rails(std::size_t a, std::size_t b) {
        netlist.push_back(Component::rail_swap(std::max(a, b), std::min(a, b)));
        for (auto& p : pos) {
            if (p == a) p = b;
            else if (p == b) p = a;
        }
    }

    void step(const CouplerStep& s) {
        std::size_t pm = pos[s.m - 1];
        std::size_t pn = pos[s.n - 1];
        if (pm > pn ? pm - pn > 1 : pn - pm > 1) {
            // bring logical rail n next to logical rail m
            const std::size_t target = pn < pm ? pm - 1 : pm + 1;
            swap_rails(pn, target);
            pn = target;
        }
        const std::size_t lo = std::min(pm, pn), hi = std::max(pm, pn);
        if (pn == lo) {
            phase(pn, s.phi);
            netlist.push_back(Component::coupler(hi, lo, s.theta, 0.0, opts.coupler_loss_db));
        } else {
            // The coupler's phased port must attach to the higher physical
            // rail. Swapping both ports of B(theta, phi) equals
            // diag(e^{i phi}, e^{i(phi-pi)}) * B(theta, pi-phi), so emit the
            // mirrored coupler with trailing phase modulators.
            phase(lo, wrap_phase(kPi - s.phi));
            netlist.push_back(Component::coupler(hi, lo, s.theta, 0.0, opts.coupler_loss_db));
            phase(lo, s.phi);
            phase(hi, wrap_phase(s.phi - kPi));
        }
    }

    void back_section(double dt) {
        // Output delay lines re-serialize rails into bins: the rail holding
        // logical bin l waits (l-1) * dt, which also absorbs any residual
        // rail permutation from the swaps.
        std::vector<std::size_t> map(d);
        for (std::size_t l = 1; l <= d; ++l) map[pos[l - 1] - 1] = l;
        for (std::size_t p = 1; p <= d; ++p)
            if (map[p - 1] > 1)
                netlist.push_back(
                    Component::delay(p, static_cast<double>(map[p - 1] - 1) * dt));
        netlist.push_back(Component::switch_mux(d, opts.switch_loss_db, std::move(map)));
    }
};

} // namespace

GateCircuit build_gate(const Decomposition& dec, const GateOptions& opts) {
    validate(dec);
    Builder b(dec.dim, opts);
    b.front_section(opts.bin_separation);
    for (const auto& s : dec.steps) b.step(s);
    if (opts.apply_phase_correction)
        for (std::size_t l = 1; l <= dec.dim; ++l)
            b.phase(b.pos[l - 1], dec.correction.phases[l - 1]);
    b.back_section(opts.bin_separation);

    GateCircuit c;
    c.dim = dec.dim;
    c.netlist = std::move(b.netlist);
    c.tmpl = dec.dim == 2 ? GateTemplate::DualRail : GateTemplate::QuditGate;
    c.bin_separation = opts.bin_separation;
    c.rail_of = std::move(b.pos);
    validate_structure(c);
    return c;
}

namespace {

UnitaryMatrix basis_change(const std::vector<QuditState>& basis) {
    if (basis.size() < 2) throw BasisNotOrthonormal("basis needs at least two states");
    const std::size_t d = basis.size();
    for (const auto& s : basis)
        if (s.dim() != d) throw BasisNotOrthonormal("basis state dimension mismatch");
    double gram_err = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const cplx g = dot(basis[i].amplitudes(), basis[j].amplitudes());
            gram_err = std::hypot(gram_err, std::abs(g - (i == j ? cplx{1.0, 0.0} : cplx{})));
        }
    if (gram_err > 1e-10)
        throw BasisNotOrthonormal("basis Gram matrix deviates from identity by " +
                                  std::to_string(gram_err));
    // Row k = conj(basis_k), so V |basis_k> = |k>.
    Matrix v(d);
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t j = 0; j < d; ++j) v.at(k, j) = std::conj(basis[k].amplitudes()[j]);
    return UnitaryMatrix(std::move(v));
}

} // namespace

GateCircuit build_measurement(const std::vector<QuditState>& basis, double detector_efficiency,
                              const GateOptions& opts) {
    const UnitaryMatrix v = basis_change(basis);
    const Decomposition dec = decompose(v);

    GateOptions o = opts;
    o.apply_phase_correction = false; // unobservable right before detection
    Builder b(dec.dim, o);
    b.front_section(o.bin_separation);
    for (const auto& s : dec.steps) b.step(s);
    // one detector per outcome, emitted in outcome order
    for (std::size_t k = 1; k <= dec.dim; ++k)
        b.netlist.push_back(Component::detector(b.pos[k - 1], detector_efficiency));

    GateCircuit c;
    c.dim = dec.dim;
    c.netlist = std::move(b.netlist);
    c.tmpl = GateTemplate::MeasurementGate;
    c.bin_separation = o.bin_separation;
    c.rail_of = std::move(b.pos);
    validate_structure(c);
    return c;
}

SimulationResult simulate(const GateCircuit& circuit, const QuditState& input) {
    const std::size_t d = circuit.dim;
    if (input.dim() != d) throw DimensionMismatch("simulate: input dimension mismatch");
    if (input.encoding() != Encoding::TimeBin)
        throw DimensionMismatch("simulate expects a time-bin input");

    cvec amps = input.amplitudes();
    std::vector<double> clicks;
    for (const auto& c : circuit.netlist) {
        switch (c.kind) {
            case ComponentKind::Loss: {
                const double f = std::pow(10.0, -c.db / 20.0);
                if (c.rail == 0)
                    for (auto& a : amps) a *= f;
                else {
                    if (c.rail > d) throw RailOutOfRange("loss rail out of range");
                    amps[c.rail - 1] *= f;
                }
                continue;
            }
            case ComponentKind::Detector: {
                if (c.rail < 1 || c.rail > d)
                    throw RailOutOfRange("detector rail out of range");
                clicks.push_back(c.efficiency * std::norm(amps[c.rail - 1]));
                continue;
            }
            default:
                break;
        }
        amps = component_matrix(c, d) * amps;
        if (c.loss_db != 0.0) {
            const double f = std::pow(10.0, -c.loss_db / 20.0);
            for (auto& a : amps) a *= f;
        }
    }

    double transmission = 0.0;
    for (const auto& a : amps) transmission += std::norm(a);

    const Encoding out_enc =
        circuit.tmpl == GateTemplate::MeasurementGate ? Encoding::Rail : Encoding::TimeBin;
    SimulationResult r{QuditState(std::move(amps), out_enc, circuit.bin_separation),
                       transmission, std::move(clicks)};
    return r;
}

UnitaryMatrix transfer_matrix(const GateCircuit& circuit) {
    const std::size_t d = circuit.dim;
    Matrix acc = Matrix::identity(d);
    for (const auto& c : circuit.netlist) {
        if (c.kind == ComponentKind::Loss || c.kind == ComponentKind::Detector) continue;
        acc = component_matrix(c, d) * acc;
    }
    if (circuit.tmpl == GateTemplate::MeasurementGate && !circuit.rail_of.empty()) {
        // re-index physical rails by outcome
        Matrix out(d);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j < d; ++j)
                out.at(k, j) = acc.at(circuit.rail_of[k] - 1, j);
        acc = std::move(out);
    }
    return UnitaryMatrix(std::move(acc));
}

void validate_structure(const GateCircuit& circuit) {
    const std::size_t d = circuit.dim;
    if (circuit.netlist.empty()) throw Error("empty netlist");
    if (circuit.netlist.front().kind != ComponentKind::SwitchDemux)
        throw Error("gate circuit must begin with a 1xd switch");
    const bool is_measurement = circuit.tmpl == GateTemplate::MeasurementGate;
    if (!is_measurement && circuit.netlist.back().kind != ComponentKind::SwitchMux)
        throw Error("gate circuit must end with a dx1 switch");

    // Arrival offsets: after the demux, bin k sits on rail k at (k-1) * dt.
    const double dt = circuit.bin_separation;
    std::vector<double> offset(d);
    for (std::size_t k = 0; k < d; ++k) offset[k] = static_cast<double>(k) * dt;
    const double tol = 1e-6 * dt;

    for (const auto& c : circuit.netlist) {
        switch (c.kind) {
            case ComponentKind::Delay:
                if (c.rail < 1 || c.rail > d) throw RailOutOfRange("delay rail out of range");
                offset[c.rail - 1] += c.dt;
                break;
            case ComponentKind::Coupler:
                if (c.m > d || c.n > d || c.n < 1 || c.n >= c.m)
                    throw RailOutOfRange("coupler rails out of range");
                if (std::abs(offset[c.m - 1] - offset[c.n - 1]) > tol)
                    throw Error("rails are not synchronized at a coupler");
                break;
            case ComponentKind::RailSwap:
                if (c.m > d || c.n > d || c.n < 1) throw RailOutOfRange("swap rails out of range");
                std::swap(offset[c.m - 1], offset[c.n - 1]);
                break;
            case ComponentKind::SwitchMux: {
                // delays must realize the bin spacing of the mux map
                const auto& map = c.mux_map;
                for (std::size_t p = 1; p <= d; ++p) {
                    const std::size_t bin = map.empty() ? p : map[p - 1];
                    const double want =
                        static_cast<double>(d - 1 + bin - 1) * dt; // sync + re-serialize
                    if (std::abs(offset[p - 1] - want) > tol)
                        throw Error("output delays do not realize the mux bin map");
                }
                break;
            }
            default:
                break;
        }
    }
}

MeasurementSetup::MeasurementSetup(std::vector<QuditState> basis, double detector_efficiency,
                                   const GateOptions& opts)
    : circuit_(build_measurement(basis, detector_efficiency, opts)),
      transfer_(transfer_matrix(circuit_)),
      efficiency_(detector_efficiency) {
    circuit_transmission_ = loss_budget(circuit_.netlist).transmission;
}

std::vector<double> MeasurementSetup::click_probabilities(const QuditState& input,
                                                          double extra_transmission) const {
    if (input.dim() != circuit_.dim)
        throw DimensionMismatch("measurement input dimension mismatch");
    const cvec out = transfer_ * input.amplitudes();
    std::vector<double> p(out.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        p[k] = efficiency_ * circuit_transmission_ * extra_transmission * std::norm(out[k]);
    return p;
}

std::optional<std::size_t> MeasurementSetup::sample(const QuditState& input, SplitMix64& rng,
                                                    double extra_transmission) const {
    const std::vector<double> p = click_probabilities(input, extra_transmission);
    double u = rng.uniform();
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (u < p[k]) return k;
        u -= p[k];
    }
    return std::nullopt;
}

std::optional<std::size_t> measure_in_basis(const std::vector<QuditState>& basis,
                                            const QuditState& input, double efficiency,
                                            std::uint64_t seed) {
    const MeasurementSetup setup(basis, efficiency);
    SplitMix64 rng = round_rng(seed, 0);
    return setup.sample(input, rng);
}

SimulationResult polarization_gate(const UnitaryMatrix& v, const QuditState& input,
                                   const GateOptions& opts) {
    if (v.dim() != 2 || input.dim() != 2)
        throw DimensionMismatch("polarization gate is a single-qubit gate");
    if (input.encoding() != Encoding::TimeBin)
        throw DimensionMismatch("polarization gate expects a time-bin input");

    // short -> V, long -> H, rotate, convert back: amplitude-wise this is
    // exactly v acting on the two-bin vector.
    const QuditState rotated =
        apply(v, input.relabeled(Encoding::Polarization)).relabeled(Encoding::TimeBin);

    // Loss inventory: switch, PBSC, polarization controller, PBSC, switch.
    // Only the switches cost anything by default.
    const double total_db = 2.0 * opts.switch_loss_db + 2.0 * opts.pbsc_loss_db;
    return SimulationResult{rotated, std::pow(10.0, -total_db / 10.0), {}};
}

} // namespace tbq
