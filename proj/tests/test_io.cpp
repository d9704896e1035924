#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tbq/io.hpp"
#include "tbq/rng.hpp"

using namespace tbq;

TEST_CASE("matrix text format round trip") {
    SplitMix64 rng(4);
    for (std::size_t d = 2; d <= 6; ++d) {
        const UnitaryMatrix u = haar_unitary(d, rng);
        std::stringstream ss;
        write_matrix(ss, u);
        const Matrix back = read_matrix(ss, "roundtrip");
        CHECK(frobenius_distance(u, back) <= 1e-12);
    }
}

TEST_CASE("state vector text format round trip") {
    std::stringstream ss;
    write_state_vector(ss, {cplx{0.6, 0.0}, cplx{0.0, -0.8}});
    const cvec v = read_state_vector(ss, "roundtrip");
    REQUIRE(v.size() == 2);
    CHECK(v[0] == cplx{0.6, 0.0});
    CHECK(v[1] == cplx{0.0, -0.8});
}

TEST_CASE("decompose-reconstruct through the text format stays within 1e-9") {
    SplitMix64 rng(6);
    for (std::size_t d = 2; d <= 6; ++d) {
        const UnitaryMatrix u = haar_unitary(d, rng);
        std::stringstream dec_text;
        write_decomposition(dec_text, decompose(u));
        const Decomposition dec = read_decomposition(dec_text, "roundtrip");
        std::stringstream mat_text;
        write_matrix(mat_text, reconstruct(dec));
        const Matrix back = read_matrix(mat_text, "roundtrip");
        CHECK(frobenius_distance(u, back) <= 1e-9);
    }
}

TEST_CASE("matrix parse errors name the line") {
    std::stringstream bad_dim("1\n0,0\n");
    CHECK_THROWS_AS(read_matrix(bad_dim, "m"), ParseError);

    std::stringstream short_row("2\n1,0 0,0\n1,0\n");
    try {
        read_matrix(short_row, "m");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("m:3") != std::string::npos);
    }

    std::stringstream bad_entry("2\n1,0 0;0\n0,0 1,0\n");
    CHECK_THROWS_AS(read_matrix(bad_entry, "m"), ParseError);
    std::stringstream long_row("2\n1,0 0,0 0,0\n0,0 1,0\n");
    CHECK_THROWS_AS(read_matrix(long_row, "m"), ParseError);
    std::stringstream truncated("3\n1,0 0,0 0,0\n");
    CHECK_THROWS_AS(read_matrix(truncated, "m"), ParseError);
}

TEST_CASE("decomposition parser insists on the step ordering") {
    std::stringstream good("2\n2 1 0.5 0.25\nP: 0.1 -0.2\n");
    const Decomposition dec = read_decomposition(good, "d");
    CHECK(dec.steps.size() == 1);
    CHECK(dec.steps[0].theta == doctest::Approx(0.5));

    std::stringstream wrong_pair("2\n1 2 0.5 0.25\nP: 0.1 -0.2\n");
    CHECK_THROWS_AS(read_decomposition(wrong_pair, "d"), Error);
    std::stringstream missing_p("2\n2 1 0.5 0.25\n");
    CHECK_THROWS_AS(read_decomposition(missing_p, "d"), ParseError);
    std::stringstream short_p("2\n2 1 0.5 0.25\nP: 0.1\n");
    CHECK_THROWS_AS(read_decomposition(short_p, "d"), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
    std::stringstream ss("# header\n2\n\n1,0 0,0 # identity row\n0,0 1,0\n");
    const Matrix m = read_matrix(ss, "c");
    CHECK(frobenius_distance(m, Matrix::identity(2)) == 0.0);
}

TEST_CASE("missing files raise ParseError") {
    CHECK_THROWS_AS(read_matrix_file("/nonexistent/matrix.txt"), ParseError);
}
