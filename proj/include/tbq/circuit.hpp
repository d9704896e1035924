#pragma once

// Gate circuits built from coupler decompositions, single-photon amplitude
// propagation, and deterministic measurement in an arbitrary basis.
//
// Rail convention: the earliest time bin maps to rail 1; the input 1xd
// switch routes bin k to rail k, and rail k receives a synchronizing delay
// of (d-k) * dt. Coupler steps on rails that are not physically adjacent
// are realized by inserting a rail swap (the swap is not undone; the
// residual rail permutation is absorbed by the output delay lines, carried
// on the mux as its bin map).

#include <cstdint>
#include <optional>
#include <vector>

#include "tbq/components.hpp"
#include "tbq/qudit.hpp"
#include "tbq/reck.hpp"
#include "tbq/rng.hpp"

namespace tbq {

enum class GateTemplate { DualRail, PolarizationGate, MeasurementGate, QuditGate };

struct GateCircuit {
    std::size_t dim = 0;
    std::vector<Component> netlist;
    GateTemplate tmpl = GateTemplate::QuditGate;
    double bin_separation = kDefaultBinSeparation;
    // logical index k (1-based) lives on physical rail rail_of[k-1] at the
    // output stage; identity unless swaps were inserted
    std::vector<std::size_t> rail_of;
};

struct GateOptions {
    bool apply_phase_correction = true;
    double bin_separation = kDefaultBinSeparation;
    double switch_loss_db = kSwitchLossDb;
    double coupler_loss_db = kCouplerLossDb;
    double phase_loss_db = kPhaseModLossDb;
    double pbsc_loss_db = kPbscLossDb;

    static GateOptions lossless();
};

// Demux, synchronizing delays, one phase modulator + coupler per step (with
// rail swaps where needed), optional phase-correction modulators, output
// delays and mux.
GateCircuit build_gate(const Decomposition& dec, const GateOptions& opts = {});

// Same front end, but ends with one detector per basis outcome instead of
// re-multiplexing; implements the basis-change unitary that maps basis
// state k to rail k. The phase correction is omitted (detection happens
// right after the couplers, so diagonal phases are unobservable).
// Throws BasisNotOrthonormal if the basis Gram matrix is off by > 1e-10.
GateCircuit build_measurement(const std::vector<QuditState>& basis,
                              double detector_efficiency = 1.0,
                              const GateOptions& opts = GateOptions::lossless());

struct SimulationResult {
    QuditState output;           // normalized (unitary part only)
    double transmission = 1.0;   // survived fraction, all losses included
    // probability that detector k fires (detector efficiency included);
    // indexed by netlist detector order, which build_measurement arranges
    // to equal the basis-outcome index. Empty when there are no detectors.
    std::vector<double> click_probabilities;
};

// Propagates amplitudes through the netlist in order. Losses scale the
// (unnormalized) amplitudes; the returned state is renormalized and the
// lost weight reported as transmission.
SimulationResult simulate(const GateCircuit& circuit, const QuditState& input);

// Effective outcome-space transfer matrix of the lossless part, i.e. the
// product of component matrices re-indexed by the output rail map.
UnitaryMatrix transfer_matrix(const GateCircuit& circuit);

// Structural timing check: every coupler must see synchronized rails and
// the delays before the mux must realize its bin map. Throws Error.
void validate_structure(const GateCircuit& circuit);

// A measurement basis compiled once and sampled many times.
class MeasurementSetup {
  public:
    MeasurementSetup(std::vector<QuditState> basis, double detector_efficiency = 1.0,
                     const GateOptions& opts = GateOptions::lossless());

    const GateCircuit& circuit() const { return circuit_; }
    std::size_t dim() const { return circuit_.dim; }

    // Click probability per outcome for this input (detector efficiency
    // and any extra transmission factor included).
    std::vector<double> click_probabilities(const QuditState& input,
                                            double extra_transmission = 1.0) const;

    // One shot: walks the cumulative click probabilities against a single
    // uniform draw; nullopt = no click.
    std::optional<std::size_t> sample(const QuditState& input, SplitMix64& rng,
                                      double extra_transmission = 1.0) const;

  private:
    GateCircuit circuit_;
    Matrix transfer_;
    double efficiency_;
    double circuit_transmission_;
};

// One-shot measurement: outcome index in [0, d), or nullopt for no click.
// Deterministic for a fixed seed.
std::optional<std::size_t> measure_in_basis(const std::vector<QuditState>& basis,
                                            const QuditState& input, double efficiency,
                                            std::uint64_t seed);

// The polarization-encoded single-qubit gate: convert time-bin to
// polarization, rotate by v with a polarization controller, convert back.
// Amplitude behavior is identical to the dual-rail gate implementing v;
// the loss inventory is two switches and two PBSCs.
SimulationResult polarization_gate(const UnitaryMatrix& v, const QuditState& input,
                                   const GateOptions& opts = {});

} // namespace tbq
