#include "tbq/components.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "tbq/reck.hpp"

namespace tbq {

const char* to_string(ComponentKind k) {
    switch (k) {
        case ComponentKind::SwitchDemux: return "SWITCH_DEMUX";
        case ComponentKind::SwitchMux: return "SWITCH_MUX";
        case ComponentKind::Delay: return "DELAY";
        case ComponentKind::Coupler: return "COUPLER";
        case ComponentKind::PhaseMod: return "PHASE";
        case ComponentKind::RailSwap: return "SWAP";
        case ComponentKind::Loss: return "LOSS";
        case ComponentKind::Detector: return "DETECTOR";
    }
    return "?";
}

namespace {
double checked_loss(double db) {
    if (db < 0.0) throw Error("insertion loss must be >= 0 dB");
    return db;
}
} // namespace

Component Component::switch_demux(std::size_t k, double loss_db) {
    Component c;
    c.kind = ComponentKind::SwitchDemux;
    c.k = k;
    c.loss_db = checked_loss(loss_db);
    return c;
}

Component Component::switch_mux(std::size_t k, double loss_db, std::vector<std::size_t> map) {
    Component c;
    c.kind = ComponentKind::SwitchMux;
    c.k = k;
    c.loss_db = checked_loss(loss_db);
    c.mux_map = std::move(map);
    return c;
}

Component Component::delay(std::size_t rail, double dt, double loss_db) {
    Component c;
    c.kind = ComponentKind::Delay;
    c.rail = rail;
    c.dt = dt;
    c.loss_db = checked_loss(loss_db);
    return c;
}

Component Component::coupler(std::size_t m, std::size_t n, double theta, double phi,
                             double loss_db) {
    Component c;
    c.kind = ComponentKind::Coupler;
    c.m = m;
    c.n = n;
    c.theta = theta;
    c.phi = phi;
    c.loss_db = checked_loss(loss_db);
    return c;
}

Component Component::phase_mod(std::size_t rail, double phi, double loss_db) {
    Component c;
    c.kind = ComponentKind::PhaseMod;
    c.rail = rail;
    c.phi = phi;
    c.loss_db = checked_loss(loss_db);
    return c;
}

Component Component::rail_swap(std::size_t m, std::size_t n, double loss_db) {
    Component c;
    c.kind = ComponentKind::RailSwap;
    c.m = m;
    c.n = n;
    c.loss_db = checked_loss(loss_db);
    return c;
}

Component Component::loss(std::size_t rail, double db) {
    Component c;
    c.kind = ComponentKind::Loss;
    c.rail = rail;
    c.db = checked_loss(db);
    return c;
}

Component Component::detector(std::size_t rail, double efficiency) {
    if (efficiency < 0.0 || efficiency > 1.0)
        throw Error("detector efficiency must be in [0, 1]");
    Component c;
    c.kind = ComponentKind::Detector;
    c.rail = rail;
    c.efficiency = efficiency;
    return c;
}

namespace {

void require_rail(std::size_t rail, std::size_t d, const char* what) {
    if (rail < 1 || rail > d) throw RailOutOfRange(std::string(what) + ": rail out of range");
}

} // namespace

UnitaryMatrix component_matrix(const Component& c, std::size_t d) {
    switch (c.kind) {
        case ComponentKind::SwitchDemux:
        case ComponentKind::Delay:
            if (c.kind == ComponentKind::Delay) require_rail(c.rail, d, "delay");
            return UnitaryMatrix(Matrix::identity(d), 1e-14);
        case ComponentKind::SwitchMux: {
            if (c.mux_map.empty()) return UnitaryMatrix(Matrix::identity(d), 1e-14);
            if (c.mux_map.size() != d)
                throw RailOutOfRange("mux map must list every rail");
            Matrix m(d);
            std::vector<bool> seen(d, false);
            for (std::size_t p = 1; p <= d; ++p) {
                const std::size_t bin = c.mux_map[p - 1];
                require_rail(bin, d, "mux map");
                if (seen[bin - 1]) throw RailOutOfRange("mux map is not a permutation");
                seen[bin - 1] = true;
                m.at(bin - 1, p - 1) = 1.0;
            }
            return UnitaryMatrix(std::move(m), 1e-14);
        }
        case ComponentKind::Coupler:
            require_rail(c.n, d, "coupler");
            require_rail(c.m, d, "coupler");
            return UnitaryMatrix(embed(coupler_unitary(c.theta, c.phi), c.m, c.n, d), 1e-13);
        case ComponentKind::PhaseMod: {
            require_rail(c.rail, d, "phase modulator");
            Matrix m = Matrix::identity(d);
            m.at(c.rail - 1, c.rail - 1) = std::polar(1.0, c.phi);
            return UnitaryMatrix(std::move(m), 1e-14);
        }
        case ComponentKind::RailSwap: {
            require_rail(c.n, d, "rail swap");
            require_rail(c.m, d, "rail swap");
            Matrix m = Matrix::identity(d);
            m.at(c.m - 1, c.m - 1) = m.at(c.n - 1, c.n - 1) = 0.0;
            m.at(c.m - 1, c.n - 1) = m.at(c.n - 1, c.m - 1) = 1.0;
            return UnitaryMatrix(std::move(m), 1e-14);
        }
        case ComponentKind::Loss:
            throw NonUnitaryComponent("loss has no unitary transfer matrix");
        case ComponentKind::Detector:
            throw NonUnitaryComponent("detector has no unitary transfer matrix");
    }
    throw Error("unknown component kind");
}

LossBudget loss_budget(const std::vector<Component>& netlist) {
    LossBudget b;
    std::size_t idx = 0;
    for (const auto& c : netlist) {
        ++idx;
        const double db = c.kind == ComponentKind::Loss ? c.db : c.loss_db;
        b.per_component.emplace_back(std::string(to_string(c.kind)) + "#" + std::to_string(idx),
                                     db);
        b.total_db += db;
    }
    b.transmission = std::pow(10.0, -b.total_db / 10.0);
    return b;
}

TimingSpec timing_feasibility(double bin_separation, double switch_rate, double group_index,
                              double thermal_tolerance) {
    if (bin_separation <= 0.0 || switch_rate <= 0.0 || group_index <= 0.0)
        throw Error("timing_feasibility requires positive arguments");
    TimingSpec t;
    t.bin_separation = bin_separation;
    t.switch_rate = switch_rate;
    t.group_index = group_index;
    t.path_difference = bin_separation * kSpeedOfLight / group_index;
    t.thermal_tolerance = thermal_tolerance;
    t.feasible = bin_separation >= 1.0 / switch_rate;
    return t;
}

// ---------------------------------------------------------------------------
// Netlist text format

namespace {

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    return s;
}

struct Attrs {
    std::vector<std::pair<std::string, std::string>> kv;
    std::string where;
    std::size_t line;

    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : kv)
            if (k == key) return &v;
        return nullptr;
    }

    std::string str(const std::string& key) const {
        const std::string* v = find(key);
        if (!v) throw ParseError(where, line, "missing key '" + key + "'");
        return *v;
    }

    double num(const std::string& key) const {
        const std::string s = str(key);
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ParseError(where, line, "bad numeric value for '" + key + "': " + s);
        }
    }

    double num_or(const std::string& key, double fallback) const {
        return find(key) ? num(key) : fallback;
    }

    std::size_t index(const std::string& key) const {
        const double v = num(key);
        if (v < 1.0 || v != std::floor(v))
            throw ParseError(where, line, "'" + key + "' must be a positive integer");
        return static_cast<std::size_t>(v);
    }

    void allow(std::initializer_list<const char*> keys) const {
        for (const auto& [k, v] : kv) {
            (void)v;
            if (std::none_of(keys.begin(), keys.end(),
                             [&](const char* a) { return k == a; }))
                throw ParseError(where, line, "unknown key '" + k + "'");
        }
    }
};

std::vector<std::size_t> parse_map(const Attrs& a, const std::string& value) {
    std::vector<std::size_t> map;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            map.push_back(static_cast<std::size_t>(std::stoul(item)));
        } catch (const std::exception&) {
            throw ParseError(a.where, a.line, "bad mux map entry: " + item);
        }
    }
    return map;
}

} // namespace

std::vector<Component> parse_netlist(std::istream& in, std::string_view name) {
    std::vector<Component> netlist;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::stringstream ss(line);
        std::string word;
        if (!(ss >> word)) continue;

        Attrs attrs;
        attrs.where = std::string(name);
        attrs.line = lineno;
        std::string token;
        while (ss >> token) {
            const auto eq = token.find('=');
            if (eq == std::string::npos)
                throw ParseError(attrs.where, lineno, "expected key=value, got '" + token + "'");
            std::string key = token.substr(0, eq);
            std::transform(key.begin(), key.end(), key.begin(),
                           [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
            attrs.kv.emplace_back(std::move(key), token.substr(eq + 1));
        }

        const std::string kw = upper(word);
        if (kw == "SWITCH_DEMUX") {
            attrs.allow({"k", "loss_db"});
            netlist.push_back(
                Component::switch_demux(attrs.index("k"), attrs.num_or("loss_db", kSwitchLossDb)));
        } else if (kw == "SWITCH_MUX") {
            attrs.allow({"k", "loss_db", "map"});
            std::vector<std::size_t> map;
            if (const std::string* v = attrs.find("map")) map = parse_map(attrs, *v);
            netlist.push_back(Component::switch_mux(
                attrs.index("k"), attrs.num_or("loss_db", kSwitchLossDb), std::move(map)));
        } else if (kw == "DELAY") {
            attrs.allow({"rail", "dt", "loss_db"});
            netlist.push_back(Component::delay(attrs.index("rail"), attrs.num("dt"),
                                               attrs.num_or("loss_db", 0.0)));
        } else if (kw == "COUPLER") {
            attrs.allow({"m", "n", "theta", "phi", "loss_db"});
            netlist.push_back(Component::coupler(attrs.index("m"), attrs.index("n"),
                                                 attrs.num("theta"), attrs.num_or("phi", 0.0),
                                                 attrs.num_or("loss_db", kCouplerLossDb)));
        } else if (kw == "PHASE") {
            attrs.allow({"rail", "phi", "loss_db"});
            netlist.push_back(Component::phase_mod(attrs.index("rail"), attrs.num("phi"),
                                                   attrs.num_or("loss_db", kPhaseModLossDb)));
        } else if (kw == "SWAP") {
            attrs.allow({"m", "n", "loss_db"});
            netlist.push_back(Component::rail_swap(attrs.index("m"), attrs.index("n"),
                                                   attrs.num_or("loss_db", 0.0)));
        } else if (kw == "LOSS") {
            attrs.allow({"rail", "db"});
            std::size_t rail = 0; // all rails
            if (const std::string* v = attrs.find("rail"); v && upper(*v) != "ALL")
                rail = attrs.index("rail");
            netlist.push_back(Component::loss(rail, attrs.num("db")));
        } else if (kw == "DETECTOR") {
            attrs.allow({"rail", "eff"});
            netlist.push_back(Component::detector(attrs.index("rail"), attrs.num_or("eff", 1.0)));
        } else {
            throw ParseError(attrs.where, lineno, "unknown component '" + word + "'");
        }
    }
    return netlist;
}

std::string format_component(const Component& c) {
    char buf[256];
    auto num = [](double v) {
        char b[64];
        std::snprintf(b, sizeof b, "%.15g", v);
        return std::string(b);
    };
    switch (c.kind) {
        case ComponentKind::SwitchDemux:
            std::snprintf(buf, sizeof buf, "SWITCH_DEMUX k=%zu loss_db=%s", c.k,
                          num(c.loss_db).c_str());
            return buf;
        case ComponentKind::SwitchMux: {
            std::string s = "SWITCH_MUX k=" + std::to_string(c.k) + " loss_db=" + num(c.loss_db);
            if (!c.mux_map.empty()) {
                s += " map=";
                for (std::size_t i = 0; i < c.mux_map.size(); ++i) {
                    if (i) s += ',';
                    s += std::to_string(c.mux_map[i]);
                }
            }
            return s;
        }
        case ComponentKind::Delay:
            std::snprintf(buf, sizeof buf, "DELAY rail=%zu dt=%s", c.rail, num(c.dt).c_str());
            return buf;
        case ComponentKind::Coupler:
            std::snprintf(buf, sizeof buf, "COUPLER m=%zu n=%zu theta=%s phi=%s loss_db=%s", c.m,
                          c.n, num(c.theta).c_str(), num(c.phi).c_str(), num(c.loss_db).c_str());
            return buf;
        case ComponentKind::PhaseMod:
            std::snprintf(buf, sizeof buf, "PHASE rail=%zu phi=%s", c.rail, num(c.phi).c_str());
            return buf;
        case ComponentKind::RailSwap:
            std::snprintf(buf, sizeof buf, "SWAP m=%zu n=%zu", c.m, c.n);
            return buf;
        case ComponentKind::Loss:
            if (c.rail == 0)
                std::snprintf(buf, sizeof buf, "LOSS rail=all db=%s", num(c.db).c_str());
            else
                std::snprintf(buf, sizeof buf, "LOSS rail=%zu db=%s", c.rail, num(c.db).c_str());
            return buf;
        case ComponentKind::Detector:
            std::snprintf(buf, sizeof buf, "DETECTOR rail=%zu eff=%s", c.rail,
                          num(c.efficiency).c_str());
            return buf;
    }
    throw Error("unknown component kind");
}

void write_netlist(std::ostream& out, const std::vector<Component>& netlist) {
    for (const auto& c : netlist) out << format_component(c) << '\n';
}

std::size_t netlist_dim(const std::vector<Component>& netlist) {
    std::size_t d = 0;
    for (const auto& c : netlist)
        d = std::max({d, c.k, c.m, c.n, c.rail});
    return d;
}

} // namespace tbq
