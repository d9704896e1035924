#include "tbq/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace tbq {

namespace {

std::string next_content_line(std::istream& in, std::string_view name, std::size_t& lineno) {
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r\n") != std::string::npos) return line;
    }
    throw ParseError(std::string(name), lineno, "unexpected end of input");
}

std::size_t parse_dim(const std::string& line, std::string_view name, std::size_t lineno) {
    std::stringstream ss(line);
    long d = 0;
    std::string extra;
    if (!(ss >> d) || d < 2 || (ss >> extra))
        throw ParseError(std::string(name), lineno, "expected a dimension >= 2");
    return static_cast<std::size_t>(d);
}

cplx parse_entry(const std::string& token, std::string_view name, std::size_t lineno) {
    const auto comma = token.find(',');
    if (comma == std::string::npos)
        throw ParseError(std::string(name), lineno, "expected re,im entry: " + token);
    try {
        std::size_t p1 = 0, p2 = 0;
        const std::string re = token.substr(0, comma), im = token.substr(comma + 1);
        const double r = std::stod(re, &p1);
        const double i = std::stod(im, &p2);
        if (p1 != re.size() || p2 != im.size()) throw std::invalid_argument(token);
        return {r, i};
    } catch (const std::exception&) {
        throw ParseError(std::string(name), lineno, "bad complex entry: " + token);
    }
}

} // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

Matrix read_matrix(std::istream& in, std::string_view name) {
    std::size_t lineno = 0;
    const std::size_t d = parse_dim(next_content_line(in, name, lineno), name, lineno);
    Matrix m(d);
    for (std::size_t r = 0; r < d; ++r) {
        std::stringstream row(next_content_line(in, name, lineno));
        std::string token;
        for (std::size_t c = 0; c < d; ++c) {
            if (!(row >> token))
                throw ParseError(std::string(name), lineno, "matrix row has too few entries");
            m.at(r, c) = parse_entry(token, name, lineno);
        }
        std::string extra;
        if (row >> extra)
            throw ParseError(std::string(name), lineno, "matrix row has too many entries");
    }
    return m;
}

void write_matrix(std::ostream& out, const Matrix& m) {
    out << m.dim() << '\n';
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            if (c) out << ' ';
            out << format_number(m.at(r, c).real()) << ',' << format_number(m.at(r, c).imag());
        }
        out << '\n';
    }
}

cvec read_state_vector(std::istream& in, std::string_view name) {
    std::size_t lineno = 0;
    const std::size_t d = parse_dim(next_content_line(in, name, lineno), name, lineno);
    cvec v(d);
    for (std::size_t k = 0; k < d; ++k) {
        std::stringstream row(next_content_line(in, name, lineno));
        std::string token, extra;
        if (!(row >> token) || (row >> extra))
            throw ParseError(std::string(name), lineno, "expected one re,im entry per line");
        v[k] = parse_entry(token, name, lineno);
    }
    return v;
}

void write_state_vector(std::ostream& out, const cvec& v) {
    out << v.size() << '\n';
    for (const auto& a : v)
        out << format_number(a.real()) << ',' << format_number(a.imag()) << '\n';
}

Decomposition read_decomposition(std::istream& in, std::string_view name) {
    std::size_t lineno = 0;
    const std::size_t d = parse_dim(next_content_line(in, name, lineno), name, lineno);
    Decomposition dec;
    dec.dim = d;
    for (std::size_t i = 0; i < coupler_count(d); ++i) {
        std::stringstream row(next_content_line(in, name, lineno));
        CouplerStep s;
        std::string extra;
        if (!(row >> s.m >> s.n >> s.theta >> s.phi) || (row >> extra))
            throw ParseError(std::string(name), lineno, "expected 'm n theta phi'");
        dec.steps.push_back(s);
    }
    std::stringstream last(next_content_line(in, name, lineno));
    std::string tag;
    if (!(last >> tag) || tag != "P:")
        throw ParseError(std::string(name), lineno, "expected final 'P: p1 ... pd' line");
    dec.correction.phases.resize(d);
    for (std::size_t i = 0; i < d; ++i)
        if (!(last >> dec.correction.phases[i]))
            throw ParseError(std::string(name), lineno, "phase correction needs d values");
    std::string extra;
    if (last >> extra)
        throw ParseError(std::string(name), lineno, "trailing tokens after phase correction");
    validate(dec);
    return dec;
}

void write_decomposition(std::ostream& out, const Decomposition& dec) {
    out << dec.dim << '\n';
    for (const auto& s : dec.steps)
        out << s.m << ' ' << s.n << ' ' << format_number(s.theta) << ' '
            << format_number(s.phi) << '\n';
    out << "P:";
    for (const double p : dec.correction.phases) out << ' ' << format_number(p);
    out << '\n';
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open file: " + path);
    return f;
}

} // namespace

Matrix read_matrix_file(const std::string& path) {
    std::ifstream f = open_or_throw(path);
    return read_matrix(f, path);
}

cvec read_state_file(const std::string& path) {
    std::ifstream f = open_or_throw(path);
    return read_state_vector(f, path);
}

Decomposition read_decomposition_file(const std::string& path) {
    std::ifstream f = open_or_throw(path);
    return read_decomposition(f, path);
}

} // namespace tbq
