#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tbq/golden.hpp"
#include "tbq/mub.hpp"
#include "tbq/qudit.hpp"
#include "tbq/rng.hpp"

using namespace tbq;

namespace {
constexpr double kPi = std::numbers::pi;

QuditState random_state(std::size_t d, SplitMix64& rng) {
    cvec a(d);
    for (auto& e : a) e = cplx{rng.gaussian(), rng.gaussian()};
    return QuditState(std::move(a), Encoding::TimeBin);
}
} // namespace

TEST_CASE("state construction normalizes and records metadata") {
    const QuditState s({cplx{1, 0}, cplx{0, 0}}, Encoding::TimeBin, 100e-12);
    CHECK(s.dim() == 2);
    CHECK(s.amplitudes()[0] == cplx{1, 0});
    CHECK(s.bin_separation() == doctest::Approx(100e-12));
    CHECK(s.encoding() == Encoding::TimeBin);

    const QuditState t({cplx{1, 0}, cplx{1, 0}}, Encoding::TimeBin);
    CHECK(t.amplitudes()[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(t.amplitudes()[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("state construction matches the second-basis row") {
    const cplx w = std::polar(1.0, 2.0 * kPi / 3.0);
    const QuditState bp({cplx{1, 0}, w, std::conj(w)}, Encoding::TimeBin);
    const MubSet mub = mub_qutrit();
    CHECK(std::abs(inner_product(bp, mub.bases[1][1]) - cplx{1, 0}) < 1e-14);
}

TEST_CASE("state construction validates input") {
    CHECK_THROWS_AS(QuditState({cplx{0, 0}, cplx{0, 0}}, Encoding::TimeBin), ZeroVector);
    CHECK_THROWS_AS(QuditState({cplx{1e-13, 0}, cplx{0, 0}}, Encoding::TimeBin), ZeroVector);
    CHECK_THROWS_AS(QuditState({cplx{1, 0}}, Encoding::TimeBin), DimensionMismatch);
    CHECK_THROWS_AS(QuditState({cplx{1, 0}, cplx{0, 0}, cplx{0, 0}}, Encoding::Polarization),
                    DimensionMismatch);
    const double nan = std::nan("");
    CHECK_THROWS_AS(QuditState({cplx{nan, 0}, cplx{1, 0}}, Encoding::TimeBin), Error);
}

TEST_CASE("normalization invariant over random states") {
    SplitMix64 rng(41);
    for (std::size_t d = 2; d <= 8; ++d) {
        for (int rep = 0; rep < 20; ++rep) {
            const QuditState s = random_state(d, rng);
            double n = 0.0;
            for (const auto& a : s.amplitudes()) n += std::norm(a);
            CHECK(std::abs(n - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("inner products of basis states") {
    const QuditState sh = QuditState::basis(2, 0);
    const QuditState lo = QuditState::basis(2, 1);
    CHECK(inner_product(sh, sh) == cplx{1, 0});
    CHECK(inner_product(sh, lo) == cplx{0, 0});

    const MubSet mub = mub_qutrit();
    CHECK(fidelity(mub.bases[1][0], mub.bases[0][0]) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("inner product requires matching dimension and encoding") {
    const QuditState a = QuditState::basis(2, 0);
    const QuditState b = QuditState::basis(3, 0);
    CHECK_THROWS_AS(inner_product(a, b), DimensionMismatch);
    CHECK_THROWS_AS(inner_product(a, a.relabeled(Encoding::Rail)), DimensionMismatch);
}

TEST_CASE("check_unitary") {
    CHECK(check_unitary(Matrix::identity(4), 1e-12));
    CHECK(check_unitary(golden::coupler_32(), 1e-12));
    CHECK_FALSE(check_unitary(Matrix::diagonal({cplx{1, 0}, cplx{2, 0}}), 1e-12));
    CHECK_THROWS_AS(UnitaryMatrix(Matrix::diagonal({cplx{1, 0}, cplx{2, 0}})), NotUnitary);
}

TEST_CASE("apply: identity and the qutrit basis change") {
    const QuditState sh = QuditState::basis(2, 0);
    const UnitaryMatrix eye(Matrix::identity(2));
    CHECK(equal_up_to_phase(apply(eye, sh), sh, 1e-14));

    const UnitaryMatrix u = golden::qutrit_unitary();
    const MubSet mub = mub_qutrit();
    // the basis-change unitary maps each primed state onto a single bin
    for (int k = 0; k < 3; ++k) {
        const QuditState out = apply(u, mub.bases[1][k]);
        CHECK(std::abs(std::abs(out.amplitudes()[k]) - 1.0) < 1e-13);
    }
    CHECK_THROWS_AS(apply(eye, QuditState::basis(3, 0)), DimensionMismatch);
}

TEST_CASE("unitary application preserves inner products") {
    SplitMix64 rng(99);
    for (std::size_t d = 2; d <= 8; ++d) {
        const UnitaryMatrix u = haar_unitary(d, rng);
        for (int rep = 0; rep < 5; ++rep) {
            const QuditState a = random_state(d, rng);
            const QuditState b = random_state(d, rng);
            const cplx before = inner_product(a, b);
            const cplx after = inner_product(apply(u, a), apply(u, b));
            CHECK(std::abs(after - before) <= 1e-10);
        }
    }
}

TEST_CASE("equality up to global phase") {
    SplitMix64 rng(7);
    const QuditState a = random_state(4, rng);
    cvec shifted = a.amplitudes();
    for (auto& e : shifted) e *= std::polar(1.0, 1.234);
    CHECK(equal_up_to_phase(a, QuditState(shifted, Encoding::TimeBin), 1e-12));
    CHECK_FALSE(equal_up_to_phase(a, random_state(4, rng), 1e-3));
}
