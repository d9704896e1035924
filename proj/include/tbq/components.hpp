#pragma once

// Fiber-circuit components: transfer matrices for the lossless part,
// insertion loss in dB kept as separate bookkeeping, plus the timing and
// loss feasibility calculations.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tbq/complex_matrix.hpp"

namespace tbq {

// Default insertion losses, dB. Switch loss is dominated by fiber-to-
// waveguide mode mismatch; phase modulators (piezo) and PBSCs (fused
// couplers) are treated as lossless. All overridable per component.
inline constexpr double kSwitchLossDb = 1.5;
inline constexpr double kCouplerLossDb = 0.1;
inline constexpr double kPhaseModLossDb = 0.0;
inline constexpr double kPbscLossDb = 0.0;

inline constexpr double kSpeedOfLight = 299792458.0; // m/s
inline constexpr double kDefaultGroupIndex = 1.468;  // standard SMF near 1550 nm
inline constexpr double kDefaultThermalToleranceK = 0.1;

enum class ComponentKind {
    SwitchDemux, // 1xk switch: time bins to rails
    SwitchMux,   // kx1 switch: rails back to time bins
    Delay,
    Coupler,
    PhaseMod,
    RailSwap,
    Loss,
    Detector,
};

const char* to_string(ComponentKind k);

struct Component {
    ComponentKind kind{};
    std::size_t k = 0;        // demux/mux fan-out
    std::size_t m = 0, n = 0; // coupler (n < m) / swap rails, 1-based
    std::size_t rail = 0;     // delay/phase/detector rail; 0 = all rails (Loss only)
    double theta = 0.0;       // coupler mixing angle
    double phi = 0.0;         // coupler internal phase / phase modulator phase
    double dt = 0.0;          // delay, seconds
    double efficiency = 1.0;  // detector
    double db = 0.0;          // Loss component attenuation
    double loss_db = 0.0;     // insertion loss of any component
    std::vector<std::size_t> mux_map; // mux only: physical rail p -> output bin
                                      // (1-based); empty means identity

    static Component switch_demux(std::size_t k, double loss_db = kSwitchLossDb);
    static Component switch_mux(std::size_t k, double loss_db = kSwitchLossDb,
                                std::vector<std::size_t> map = {});
    static Component delay(std::size_t rail, double dt, double loss_db = 0.0);
    static Component coupler(std::size_t m, std::size_t n, double theta, double phi,
                             double loss_db = kCouplerLossDb);
    static Component phase_mod(std::size_t rail, double phi,
                               double loss_db = kPhaseModLossDb);
    static Component rail_swap(std::size_t m, std::size_t n, double loss_db = 0.0);
    static Component loss(std::size_t rail, double db); // rail 0 = all
    static Component detector(std::size_t rail, double efficiency);
};

// Unitary transfer matrix of the lossless part of a component in a d-rail
// circuit. Delay and switches act as identity in the synchronized-rail
// picture (a mux with a non-trivial map contributes its permutation).
// Throws NonUnitaryComponent for Loss and Detector.
UnitaryMatrix component_matrix(const Component& c, std::size_t d);

struct LossBudget {
    std::vector<std::pair<std::string, double>> per_component; // (label, dB)
    double total_db = 0.0;
    double transmission = 1.0; // 10^(-total_db/10)
};

LossBudget loss_budget(const std::vector<Component>& netlist);

struct TimingSpec {
    double bin_separation = 0.0;     // s
    double switch_rate = 0.0;        // Hz
    double group_index = kDefaultGroupIndex;
    double path_difference = 0.0;    // m, dt * c / n_g
    double thermal_tolerance = kDefaultThermalToleranceK; // K, configured figure
    bool feasible = false;           // dt >= 1 / switch_rate
};

TimingSpec timing_feasibility(double bin_separation, double switch_rate,
                              double group_index = kDefaultGroupIndex,
                              double thermal_tolerance = kDefaultThermalToleranceK);

// Line-oriented netlist text format; see the README for the grammar.
// Keywords and keys are case-insensitive, '#' starts a comment, unknown
// keys are errors.
std::vector<Component> parse_netlist(std::istream& in, std::string_view name = "netlist");
void write_netlist(std::ostream& out, const std::vector<Component>& netlist);
std::string format_component(const Component& c);

// Largest rail index a netlist touches (demux/mux fan-out included).
std::size_t netlist_dim(const std::vector<Component>& netlist);

} // namespace tbq
