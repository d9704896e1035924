#pragma once

// Text formats. Matrix: first line "d", then d lines of d whitespace-
// separated entries, each "re,im". State vector: "d", then d lines
// "re,im". Decomposition: "d", one "m n theta phi" line per step in
// application order, then "P: p1 ... pd". All numbers are written with 15
// significant digits.

#include <iosfwd>
#include <string>
#include <string_view>

#include "tbq/complex_matrix.hpp"
#include "tbq/qudit.hpp"
#include "tbq/reck.hpp"

namespace tbq {

Matrix read_matrix(std::istream& in, std::string_view name = "matrix");
void write_matrix(std::ostream& out, const Matrix& m);

cvec read_state_vector(std::istream& in, std::string_view name = "state");
void write_state_vector(std::ostream& out, const cvec& v);

Decomposition read_decomposition(std::istream& in, std::string_view name = "decomposition");
void write_decomposition(std::ostream& out, const Decomposition& dec);

// File helpers; throw ParseError when the file cannot be opened.
Matrix read_matrix_file(const std::string& path);
cvec read_state_file(const std::string& path);
Decomposition read_decomposition_file(const std::string& path);

std::string format_number(double v); // %.15g

} // namespace tbq
