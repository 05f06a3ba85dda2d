/// @file config.cpp

#include "hyperturb/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace hyperturb {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line;
};

using SectionMap = std::map<std::string, std::map<std::string, Entry>>;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

[[noreturn]] void fail_line(int line, const std::string& msg) {
    fail("line " + std::to_string(line) + ": " + msg);
}

double parse_double(const Entry& e, const std::string& key) {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        fail_line(e.line, key + ": expected a number, got '" + e.value + "'");
    return v;
}

long parse_long(const Entry& e, const std::string& key) {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        fail_line(e.line, key + ": expected an integer, got '" + e.value + "'");
    return v;
}

std::vector<double> parse_double_list(const Entry& e, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail_line(e.line, key + ": empty list element");
        const char* begin = item.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0' || !std::isfinite(v))
            fail_line(e.line, key + ": expected a number, got '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) fail_line(e.line, key + ": empty list");
    return out;
}

/// Tracks which keys were consumed so unknown keys become hard errors.
struct SectionReader {
    const std::map<std::string, Entry>* entries;
    std::map<std::string, bool> consumed;

    explicit SectionReader(const SectionMap& sections, const std::string& name) {
        auto it = sections.find(name);
        entries = it == sections.end() ? nullptr : &it->second;
        if (entries)
            for (const auto& [k, v] : *entries) consumed[k] = false;
    }

    const Entry* get(const std::string& key) {
        if (!entries) return nullptr;
        auto it = entries->find(key);
        if (it == entries->end()) return nullptr;
        consumed[key] = true;
        return &it->second;
    }

    void finish(const std::string& section_name) const {
        if (!entries) return;
        for (const auto& [k, used] : consumed)
            if (!used)
                fail_line(entries->at(k).line,
                          "unknown key '" + k + "' in section [" + section_name + "]");
    }
};

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
    return mode == o.mode && seed == o.seed && samples == o.samples &&
           params.alpha1 == o.params.alpha1 && params.alpha2 == o.params.alpha2 &&
           params.alpha3 == o.params.alpha3 && params.xi == o.params.xi &&
           params.beta == o.params.beta && params.c_d == o.params.c_d && params.l == o.params.l &&
           params.nu == o.params.nu && params.epsilon == o.params.epsilon &&
           params.eos.c == o.params.eos.c && params.eos.rho0 == o.params.eos.rho0 &&
           grid.dim == o.grid.dim && grid.nx == o.grid.nx && grid.ny == o.grid.ny &&
           grid.lx == o.grid.lx && grid.ly == o.grid.ly && controls.cfl == o.controls.cfl &&
           controls.t_final == o.controls.t_final && controls.max_steps == o.controls.max_steps &&
           controls.flux == o.controls.flux && controls.relaxation == o.controls.relaxation &&
           controls.k_substeps == o.controls.k_substeps &&
           controls.snapshots == o.controls.snapshots && flux_explicit == o.flux_explicit &&
           sweep_eps == o.sweep_eps && ref_steps == o.ref_steps && init == o.init &&
           amplitude == o.amplitude && k0 == o.k0 && direction == o.direction &&
           out_dir == o.out_dir;
}

RunConfig parse_config(const std::string& text) {
    SectionMap sections;
    std::string current;  // "" is the global section
    static const std::vector<std::string> known_sections = {"model", "grid",  "time",
                                                            "sweep", "init", "output"};

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail_line(line_no, "malformed section header '" + line + "'");
            const std::string name = trim(line.substr(1, line.size() - 2));
            bool known = false;
            for (const auto& s : known_sections) known = known || s == name;
            if (!known) fail_line(line_no, "unknown section [" + name + "]");
            current = name;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) fail_line(line_no, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail_line(line_no, "empty key");
        if (value.empty()) fail_line(line_no, "empty value for key '" + key + "'");

        auto& section = sections[current];
        auto it = section.find(key);
        if (it != section.end())
            fail("duplicate key '" + key + "' at lines " + std::to_string(it->second.line) +
                 " and " + std::to_string(line_no));
        section[key] = {value, line_no};
    }

    RunConfig cfg;

    SectionReader global(sections, "");
    if (const Entry* e = global.get("mode")) {
        cfg.mode = e->value;
        cfg.mode_explicit = true;
        if (cfg.mode != "run" && cfg.mode != "sweep" && cfg.mode != "check" && cfg.mode != "eigen")
            fail_line(e->line, "mode must be one of: run, sweep, check, eigen");
    }
    if (const Entry* e = global.get("seed")) {
        const long s = parse_long(*e, "seed");
        if (s < 0) fail_line(e->line, "seed must be >= 0");
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    if (const Entry* e = global.get("samples")) {
        cfg.samples = parse_long(*e, "samples");
        if (cfg.samples < 0) fail_line(e->line, "samples must be >= 0");
    }
    global.finish("(top level)");

    SectionReader model(sections, "model");
    if (const Entry* e = model.get("alpha1")) cfg.params.alpha1 = parse_double(*e, "alpha1");
    if (const Entry* e = model.get("alpha2")) cfg.params.alpha2 = parse_double(*e, "alpha2");
    if (const Entry* e = model.get("alpha3")) cfg.params.alpha3 = parse_double(*e, "alpha3");
    if (const Entry* e = model.get("xi")) cfg.params.xi = parse_double(*e, "xi");
    if (const Entry* e = model.get("beta")) cfg.params.beta = parse_double(*e, "beta");
    if (const Entry* e = model.get("c_d")) cfg.params.c_d = parse_double(*e, "c_d");
    if (const Entry* e = model.get("l")) cfg.params.l = parse_double(*e, "l");
    if (const Entry* e = model.get("nu")) cfg.params.nu = parse_double(*e, "nu");
    if (const Entry* e = model.get("epsilon")) cfg.params.epsilon = parse_double(*e, "epsilon");
    if (const Entry* e = model.get("c")) cfg.params.eos.c = parse_double(*e, "c");
    if (const Entry* e = model.get("rho0")) cfg.params.eos.rho0 = parse_double(*e, "rho0");
    model.finish("model");

    SectionReader grid(sections, "grid");
    {
        Grid g;
        g.dim = 2;
        g.nx = 32;
        g.ny = 32;
        g.lx = 2.0 * M_PI;
        g.ly = 2.0 * M_PI;
        if (const Entry* e = grid.get("dim")) g.dim = static_cast<int>(parse_long(*e, "dim"));
        if (const Entry* e = grid.get("nx")) g.nx = static_cast<int>(parse_long(*e, "nx"));
        if (const Entry* e = grid.get("ny")) g.ny = static_cast<int>(parse_long(*e, "ny"));
        if (const Entry* e = grid.get("lx")) g.lx = parse_double(*e, "lx");
        if (const Entry* e = grid.get("ly")) g.ly = parse_double(*e, "ly");
        if (g.dim == 1) g.ny = 1;
        cfg.grid = g;
    }
    grid.finish("grid");

    SectionReader time(sections, "time");
    if (const Entry* e = time.get("cfl")) cfg.controls.cfl = parse_double(*e, "cfl");
    if (const Entry* e = time.get("t_final")) cfg.controls.t_final = parse_double(*e, "t_final");
    if (const Entry* e = time.get("max_steps")) cfg.controls.max_steps = parse_long(*e, "max_steps");
    if (const Entry* e = time.get("flux")) {
        try {
            cfg.controls.flux = flux_scheme_from_string(e->value);
        } catch (const std::exception& ex) {
            fail_line(e->line, ex.what());
        }
        cfg.flux_explicit = true;
    }
    if (const Entry* e = time.get("relaxation")) cfg.controls.relaxation = e->value;
    if (const Entry* e = time.get("k_substeps"))
        cfg.controls.k_substeps = static_cast<int>(parse_long(*e, "k_substeps"));
    time.finish("time");

    SectionReader sweep(sections, "sweep");
    if (const Entry* e = sweep.get("epsilons")) cfg.sweep_eps = parse_double_list(*e, "epsilons");
    if (const Entry* e = sweep.get("ref_steps")) {
        cfg.ref_steps = parse_long(*e, "ref_steps");
        if (cfg.ref_steps <= 0) fail_line(e->line, "ref_steps must be > 0");
    }
    sweep.finish("sweep");

    SectionReader init(sections, "init");
    if (const Entry* e = init.get("kind")) {
        try {
            cfg.init = init_kind_from_string(e->value);
        } catch (const std::exception& ex) {
            fail_line(e->line, ex.what());
        }
    }
    if (const Entry* e = init.get("amplitude")) cfg.amplitude = parse_double(*e, "amplitude");
    if (const Entry* e = init.get("k0")) cfg.k0 = parse_double(*e, "k0");
    if (const Entry* e = init.get("direction")) {
        const auto v = parse_double_list(*e, "direction");
        if (v.size() != 3) fail_line(e->line, "direction must have 3 components");
        cfg.direction = {v[0], v[1], v[2]};
    }
    init.finish("init");

    SectionReader output(sections, "output");
    if (const Entry* e = output.get("dir")) cfg.out_dir = e->value;
    if (const Entry* e = output.get("snapshots"))
        cfg.controls.snapshots = static_cast<int>(parse_long(*e, "snapshots"));
    output.finish("output");

    // Semantic validation; errors name the violated invariant.
    try {
        cfg.params.validate();
        cfg.grid.validate();
        cfg.controls.validate();
    } catch (const std::exception& ex) {
        fail(ex.what());
    }
    if (cfg.k0 < 0.0) fail("k0 must be >= 0");
    if (cfg.mode == "sweep") {
        if (cfg.sweep_eps.size() < 3) fail("sweep requires >= 3 epsilon values");
        for (std::size_t i = 0; i < cfg.sweep_eps.size(); ++i) {
            if (!(cfg.sweep_eps[i] > 0.0) || cfg.sweep_eps[i] > 1.0)
                fail("sweep epsilons must lie in (0, 1]");
            if (i > 0 && !(cfg.sweep_eps[i] < cfg.sweep_eps[i - 1]))
                fail("sweep epsilon list must be strictly decreasing");
        }
    }
    return cfg;
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    out << "mode = " << c.mode << "\n";
    out << "seed = " << c.seed << "\n";
    out << "samples = " << c.samples << "\n";
    out << "\n[model]\n";
    out << "alpha1 = " << format_number(c.params.alpha1) << "\n";
    out << "alpha2 = " << format_number(c.params.alpha2) << "\n";
    out << "alpha3 = " << format_number(c.params.alpha3) << "\n";
    out << "xi = " << format_number(c.params.xi) << "\n";
    out << "beta = " << format_number(c.params.beta) << "\n";
    out << "c_d = " << format_number(c.params.c_d) << "\n";
    out << "l = " << format_number(c.params.l) << "\n";
    out << "nu = " << format_number(c.params.nu) << "\n";
    out << "epsilon = " << format_number(c.params.epsilon) << "\n";
    out << "c = " << format_number(c.params.eos.c) << "\n";
    out << "rho0 = " << format_number(c.params.eos.rho0) << "\n";
    out << "\n[grid]\n";
    out << "dim = " << c.grid.dim << "\n";
    out << "nx = " << c.grid.nx << "\n";
    out << "ny = " << c.grid.ny << "\n";
    out << "lx = " << format_number(c.grid.lx) << "\n";
    out << "ly = " << format_number(c.grid.ly) << "\n";
    out << "\n[time]\n";
    out << "cfl = " << format_number(c.controls.cfl) << "\n";
    out << "t_final = " << format_number(c.controls.t_final) << "\n";
    out << "max_steps = " << c.controls.max_steps << "\n";
    if (c.flux_explicit) out << "flux = " << to_string(c.controls.flux) << "\n";
    out << "relaxation = " << c.controls.relaxation << "\n";
    out << "k_substeps = " << c.controls.k_substeps << "\n";
    out << "\n[sweep]\n";
    out << "epsilons = ";
    for (std::size_t i = 0; i < c.sweep_eps.size(); ++i)
        out << (i ? ", " : "") << format_number(c.sweep_eps[i]);
    out << "\n";
    out << "ref_steps = " << c.ref_steps << "\n";
    out << "\n[init]\n";
    out << "kind = " << to_string(c.init) << "\n";
    out << "amplitude = " << format_number(c.amplitude) << "\n";
    out << "k0 = " << format_number(c.k0) << "\n";
    out << "direction = " << format_number(c.direction[0]) << ", "
        << format_number(c.direction[1]) << ", " << format_number(c.direction[2]) << "\n";
    out << "\n[output]\n";
    out << "dir = " << c.out_dir << "\n";
    out << "snapshots = " << c.controls.snapshots << "\n";
    return out.str();
}

}  // namespace hyperturb
