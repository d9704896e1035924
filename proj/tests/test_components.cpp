#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "tbq/components.hpp"
#include "tbq/rng.hpp"

using namespace tbq;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("component matrices at pinned settings") {
    const UnitaryMatrix pm = component_matrix(Component::phase_mod(1, kPi), 2);
    CHECK(std::abs(pm.at(0, 0) - cplx{-1, 0}) < 1e-15);
    CHECK(pm.at(1, 1) == cplx{1, 0});

    const double r2 = 1.0 / std::sqrt(2.0);
    const UnitaryMatrix c = component_matrix(Component::coupler(2, 1, kPi / 4.0, 0.0), 2);
    CHECK(std::abs(c.at(0, 0) - r2) < 1e-15);
    CHECK(std::abs(c.at(0, 1) - r2) < 1e-15);
    CHECK(std::abs(c.at(1, 0) - r2) < 1e-15);
    CHECK(std::abs(c.at(1, 1) + r2) < 1e-15);

    const UnitaryMatrix sw = component_matrix(Component::rail_swap(3, 1), 3);
    CHECK(sw.at(0, 2) == cplx{1, 0});
    CHECK(sw.at(2, 0) == cplx{1, 0});
    CHECK(sw.at(1, 1) == cplx{1, 0});
    CHECK(sw.at(0, 0) == cplx{0, 0});
}

TEST_CASE("switches and delays are identity on synchronized amplitudes") {
    CHECK(frobenius_distance(component_matrix(Component::switch_demux(3), 3),
                             Matrix::identity(3)) == 0.0);
    CHECK(frobenius_distance(component_matrix(Component::delay(2, 1e-10), 3),
                             Matrix::identity(3)) == 0.0);
    const UnitaryMatrix mux = component_matrix(Component::switch_mux(3, 1.5, {2, 1, 3}), 3);
    CHECK(mux.at(1, 0) == cplx{1, 0}); // rail 1 lands in bin 2
    CHECK(mux.at(0, 1) == cplx{1, 0});
    CHECK(mux.at(2, 2) == cplx{1, 0});
}

TEST_CASE("every unitary component kind passes check_unitary") {
    SplitMix64 rng(12);
    for (int i = 0; i < 100; ++i) {
        const std::size_t d = 2 + rng.below(6);
        const std::size_t n = 1 + rng.below(d - 1);
        const std::size_t m = n + 1 + rng.below(d - n);
        const double theta = rng.uniform() * kPi / 2.0;
        const double phi = (2.0 * rng.uniform() - 1.0) * kPi;
        CHECK(check_unitary(component_matrix(Component::coupler(m, n, theta, phi), d), 1e-12));
        CHECK(check_unitary(component_matrix(Component::phase_mod(n, phi), d), 1e-12));
        CHECK(check_unitary(component_matrix(Component::rail_swap(m, n), d), 1e-12));
    }
}

TEST_CASE("loss and detector have no unitary matrix") {
    CHECK_THROWS_AS(component_matrix(Component::loss(0, 0.2), 2), NonUnitaryComponent);
    CHECK_THROWS_AS(component_matrix(Component::detector(1, 0.88), 2), NonUnitaryComponent);
}

TEST_CASE("rails are validated") {
    CHECK_THROWS_AS(component_matrix(Component::coupler(4, 1, 0.5, 0.0), 3), RailOutOfRange);
    CHECK_THROWS_AS(component_matrix(Component::phase_mod(4, 0.5), 3), RailOutOfRange);
    CHECK_THROWS_AS(component_matrix(Component::switch_mux(3, 1.5, {1, 1, 2}), 3),
                    RailOutOfRange);
}

TEST_CASE("loss budget of the two-switch gate") {
    const std::vector<Component> gate = {Component::switch_demux(2), Component::switch_mux(2)};
    const LossBudget b = loss_budget(gate);
    CHECK(b.total_db == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(b.transmission == doctest::Approx(0.5012).epsilon(2e-4));
    CHECK(b.transmission == doctest::Approx(std::pow(10.0, -0.3)).epsilon(1e-12));
}

TEST_CASE("loss budget edge cases and additivity") {
    CHECK(loss_budget({}).total_db == 0.0);
    CHECK(loss_budget({}).transmission == 1.0);

    const std::vector<Component> three = {Component::switch_demux(2),
                                          Component::coupler(2, 1, 0.3, 0.0),
                                          Component::switch_mux(2)};
    const LossBudget b = loss_budget(three);
    CHECK(b.total_db == doctest::Approx(3.1).epsilon(1e-12));
    CHECK(b.transmission == doctest::Approx(0.4898).epsilon(2e-4));

    // additive in dB, multiplicative in transmission
    const std::vector<Component> head = {Component::switch_demux(2)};
    std::vector<Component> combined = head;
    combined.insert(combined.end(), three.begin(), three.end());
    CHECK(loss_budget(combined).total_db ==
          doctest::Approx(loss_budget(head).total_db + loss_budget(three).total_db)
              .epsilon(1e-12));
}

TEST_CASE("timing feasibility") {
    const TimingSpec t = timing_feasibility(100e-12, 10e9);
    CHECK(t.feasible);
    CHECK(t.path_difference == doctest::Approx(100e-12 * kSpeedOfLight / 1.468).epsilon(1e-12));
    CHECK(std::abs(t.path_difference - 0.02) < 0.002); // about 2 cm
    CHECK(t.thermal_tolerance == doctest::Approx(0.1));

    CHECK_FALSE(timing_feasibility(50e-12, 10e9).feasible);
    CHECK(timing_feasibility(1e-9, 10e9).path_difference ==
          doctest::Approx(10.0 * t.path_difference).epsilon(1e-9));
    CHECK(timing_feasibility(100e-12, 10e9, 2.936).path_difference ==
          doctest::Approx(t.path_difference / 2.0).epsilon(1e-9));
    CHECK_THROWS_AS(timing_feasibility(0.0, 10e9), Error);
}

TEST_CASE("netlist parse round trip") {
    const std::vector<Component> original = {
        Component::switch_demux(3),
        Component::delay(1, 2e-10),
        Component::phase_mod(2, 1.0471975511966),
        Component::coupler(2, 1, 0.785398163397448, 0.25),
        Component::rail_swap(3, 1),
        Component::loss(0, 0.2),
        Component::loss(2, 0.1),
        Component::detector(1, 0.88),
        Component::switch_mux(3, 1.5, {2, 1, 3}),
    };
    std::stringstream ss;
    write_netlist(ss, original);
    const std::vector<Component> parsed = parse_netlist(ss, "roundtrip");
    REQUIRE(parsed.size() == original.size());
    std::stringstream again;
    write_netlist(again, parsed);
    std::stringstream first;
    write_netlist(first, original);
    CHECK(again.str() == first.str());
    CHECK(netlist_dim(parsed) == 3);
}

TEST_CASE("netlist parsing is case-insensitive and skips comments") {
    std::stringstream ss("# a comment\n"
                         "switch_demux K=2 Loss_DB=1.5\n"
                         "coupler m=2 n=1 THETA=0.5 phi=0 loss_db=0.1 # trailing\n"
                         "\n"
                         "Switch_Mux k=2\n");
    const auto parsed = parse_netlist(ss, "mixed");
    REQUIRE(parsed.size() == 3);
    CHECK(parsed[0].kind == ComponentKind::SwitchDemux);
    CHECK(parsed[1].theta == doctest::Approx(0.5));
    CHECK(parsed[2].loss_db == doctest::Approx(kSwitchLossDb));
}

TEST_CASE("netlist parse errors carry file and line") {
    std::stringstream unknown("WIBBLE k=2\n");
    CHECK_THROWS_AS(parse_netlist(unknown, "bad"), ParseError);

    std::stringstream badkey("\nCOUPLER m=2 n=1 theta=0.5 wobble=1\n");
    try {
        parse_netlist(badkey, "bad");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("bad:2") != std::string::npos);
        CHECK(std::string(e.what()).find("wobble") != std::string::npos);
    }

    std::stringstream badnum("DELAY rail=1 dt=abc\n");
    CHECK_THROWS_AS(parse_netlist(badnum, "bad"), ParseError);
    std::stringstream missing("PHASE rail=1\n");
    CHECK_THROWS_AS(parse_netlist(missing, "bad"), ParseError);
}

TEST_CASE("component invariants are enforced") {
    CHECK_THROWS_AS(Component::switch_demux(2, -0.5), Error);
    CHECK_THROWS_AS(Component::coupler(2, 1, 0.5, 0.0, -0.1), Error);
    CHECK_THROWS_AS(Component::loss(0, -1.0), Error);
    CHECK_THROWS_AS(Component::detector(1, 1.5), Error);
    CHECK_THROWS_AS(Component::detector(1, -0.1), Error);
}
