/// @file test_config_io.cpp
/// @brief Config parsing/serialization, CSV formats, report emission and the
///        run command's determinism contract.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "hyperturb/commands.hpp"
#include "hyperturb/diagnostics.hpp"
#include "hyperturb/io.hpp"

using namespace hyperturb;

namespace {

std::string temp_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("hyperturb_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

}  // namespace

TEST_CASE("parse_config: minimal file takes defaults") {
    const RunConfig c = parse_config("mode = check\nseed = 1\n");
    CHECK(c.mode == "check");
    CHECK(c.seed == 1);
    CHECK(c.params.alpha1 == 1.0);
    CHECK(c.params.c_d == 0.08);
    CHECK(c.params.l == 0.1);
    CHECK(c.params.nu == 0.01);
    CHECK(c.grid.nx == 32);
    CHECK(c.controls.cfl == 0.45);
    CHECK(c.controls.flux == FluxScheme::rusanov);
    CHECK_FALSE(c.flux_explicit);
    CHECK(c.out_dir == "out");
}

TEST_CASE("parse_config: validation and syntax errors") {
    CHECK_THROWS_WITH_AS(parse_config("[model]\nalpha1 = -1\n"), "alpha1 must be > 0",
                         ConfigError);

    // Duplicate keys name both lines.
    try {
        parse_config("[model]\nnu = 0.1\nnu = 0.2\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("duplicate key 'nu'") != std::string::npos);
        CHECK(msg.find("2") != std::string::npos);
        CHECK(msg.find("3") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_config("[model]\nbogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[nosuch]\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("justtext\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[model]\nnu = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode = fly\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode = sweep\n[sweep]\nepsilons = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[time]\ncfl = 1.5\n"), ConfigError);
}

TEST_CASE("parse_config: comments, sections and lists") {
    const std::string text =
        "# run configuration\n"
        "mode = sweep\n"
        "seed = 9\n"
        "[model]\n"
        "epsilon = 0.5  # overridden per sweep run\n"
        "[sweep]\n"
        "epsilons = 0.2, 0.1, 0.05\n"
        "[init]\n"
        "kind = shear-layer\n"
        "amplitude = 0.75\n"
        "k0 = 0.5\n"
        "[time]\n"
        "flux = lw\n";
    const RunConfig c = parse_config(text);
    CHECK(c.mode == "sweep");
    CHECK(c.sweep_eps == std::vector<double>{0.2, 0.1, 0.05});
    CHECK(c.init == InitKind::shear_layer);
    CHECK(c.amplitude == 0.75);
    CHECK(c.controls.flux == FluxScheme::lw);
    CHECK(c.flux_explicit);
}

TEST_CASE("config round trip: parse(serialize(parse(text))) == parse(text)") {
    const std::string text =
        "mode = run\nseed = 3\n[model]\nalpha1 = 1.25\nnu = 0.007\nepsilon = 0.31\n"
        "[grid]\ndim = 1\nnx = 64\nlx = 3.3333333333333335\n"
        "[time]\ncfl = 0.37\nt_final = 0.123456789012345678\nflux = lw\n"
        "[init]\nkind = acoustic-pulse\namplitude = 0.01\n"
        "[output]\ndir = results\nsnapshots = 3\n";
    const RunConfig a = parse_config(text);
    const RunConfig b = parse_config(serialize_config(a));
    CHECK(a == b);
}

TEST_CASE("format_g17 round-trips binary64 values") {
    for (double v : {0.1, 1.0 / 3.0, M_PI, 1e-17, 123456.789012345678, -2.2250738585072014e-308}) {
        const std::string s = format_g17(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("fields_csv: pinned header and shape") {
    Grid g = Grid::make_1d(4, 1.0);
    Field f(g);
    const std::string csv = fields_csv(f);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# hyperturb fields v1");
    std::getline(in, line);
    CHECK(line == "x,y,phi,u1,u2,u3,s11,s12,s13,s22,s23,s33,k,y1,y2,y3");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 4);
}

TEST_CASE("fnv1a64: reference values") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
}

TEST_CASE("command_run: rest run reports zero clamps and fixed final state") {
    RunConfig c = parse_config(
        "mode = run\n[grid]\ndim = 1\nnx = 16\n[time]\nt_final = 0.1\n[init]\nkind = rest\n");
    c.out_dir = temp_dir("rest");
    std::ostringstream log;
    CHECK(command_run(c, log) == kExitOk);

    const std::string report = read_text_file(c.out_dir + "/report.json");
    CHECK(report.find("\"clamp_count\": 0") != std::string::npos);
    CHECK(report.find("\"aborted\": false") != std::string::npos);

    const std::string f0 = read_text_file(c.out_dir + "/fields_0000.csv");
    const std::string f1 = read_text_file(c.out_dir + "/fields_0001.csv");
    CHECK(f0 == f1);  // equilibrium is a fixed point
}

TEST_CASE("command_run: snapshot files exist at requested times") {
    RunConfig c = parse_config(
        "mode = run\n[grid]\ndim = 1\nnx = 32\n[model]\nepsilon = 0.5\n"
        "[time]\nt_final = 0.1\n[init]\nkind = acoustic-pulse\namplitude = 0.01\n"
        "[output]\nsnapshots = 2\n");
    c.out_dir = temp_dir("pulse");
    std::ostringstream log;
    CHECK(command_run(c, log) == kExitOk);
    CHECK(std::filesystem::exists(c.out_dir + "/fields_0001.csv"));
    CHECK(std::filesystem::exists(c.out_dir + "/fields_0002.csv"));
    CHECK(std::filesystem::exists(c.out_dir + "/diagnostics.csv"));
}

TEST_CASE("command_run: identical configs give byte-identical outputs") {
    const std::string text =
        "mode = run\n[grid]\ndim = 1\nnx = 48\n[model]\nepsilon = 0.5\n"
        "[time]\nt_final = 0.05\n[init]\nkind = acoustic-pulse\namplitude = 0.02\n";
    RunConfig a = parse_config(text);
    RunConfig b = parse_config(text);
    a.out_dir = temp_dir("det_a");
    b.out_dir = temp_dir("det_b");
    std::ostringstream log;
    CHECK(command_run(a, log) == kExitOk);
    CHECK(command_run(b, log) == kExitOk);
    CHECK(read_text_file(a.out_dir + "/fields_0001.csv") ==
          read_text_file(b.out_dir + "/fields_0001.csv"));
    CHECK(read_text_file(a.out_dir + "/diagnostics.csv") ==
          read_text_file(b.out_dir + "/diagnostics.csv"));
}

TEST_CASE("command_eigen: sorted real speeds; bad direction rejected") {
    RunConfig c = parse_config("mode = eigen\n[init]\nk0 = 0.5\ndirection = 1, 0, 0\n");
    std::ostringstream out;
    CHECK(command_eigen(c, out) == kExitOk);
    std::istringstream in(out.str());
    std::vector<double> ev;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ev.push_back(std::strtod(line.c_str(), nullptr));
    CHECK(ev.size() == 14);
    for (std::size_t i = 1; i < ev.size(); ++i) CHECK(ev[i] >= ev[i - 1]);

    RunConfig bad = parse_config("mode = eigen\n[init]\ndirection = 1, 1, 0\n");
    std::ostringstream out2;
    CHECK(command_eigen(bad, out2) == kExitConfigError);
}

TEST_CASE("command_check: default parameters pass") {
    RunConfig c = parse_config("mode = check\nsamples = 200\nseed = 4\n");
    c.out_dir = temp_dir("check");
    std::ostringstream out;
    CHECK(command_check(c, out) == kExitOk);
    CHECK(out.str().find("PASS") != std::string::npos);
    CHECK(std::filesystem::exists(c.out_dir + "/check_report.json"));
}

TEST_CASE("command_sweep: rejects incompatible parameters before running") {
    RunConfig c = parse_config(
        "mode = sweep\n[model]\nbeta = 2\n[init]\nkind = shear-layer\nk0 = 0.5\n");
    std::ostringstream out;
    CHECK(command_sweep(c, out) == kExitConfigError);
    CHECK(out.str().find("limit-compatible") != std::string::npos);
}

TEST_CASE("command_sweep: tiny grid produces three rows and a fitted slope") {
    RunConfig c = parse_config(
        "mode = sweep\n[grid]\nnx = 16\nny = 16\n[time]\nt_final = 0.05\n"
        "[sweep]\nepsilons = 0.2, 0.1, 0.05\nref_steps = 30\n"
        "[init]\nkind = shear-layer\namplitude = 0.5\nk0 = 0.5\n");
    c.out_dir = temp_dir("sweep_tiny");
    std::ostringstream out;
    CHECK(command_sweep(c, out) == kExitOk);
    const std::string report = read_text_file(c.out_dir + "/sweep_report.json");
    CHECK(report.find("\"core_slope_m0\"") != std::string::npos);
    int rows = 0;
    for (std::size_t pos = 0; (pos = report.find("\"eps\":", pos)) != std::string::npos; ++pos)
        ++rows;
    CHECK(rows == 3);
}

TEST_CASE("command_sweep: zero horizon leaves prepared-data errors at round-off") {
    RunConfig c = parse_config(
        "mode = sweep\n[grid]\nnx = 16\nny = 16\n[time]\nt_final = 0\n"
        "[sweep]\nepsilons = 0.2, 0.1, 0.05\nref_steps = 30\n"
        "[init]\nkind = shear-layer\namplitude = 0.5\nk0 = 0.5\n");
    SweepSpec spec;
    spec.grid = c.grid;
    spec.params = c.params;
    spec.eps_list = c.sweep_eps;
    spec.controls = c.controls;
    spec.init = c.init;
    spec.amplitude = c.amplitude;
    spec.k0 = c.k0;
    spec.ref_steps = c.ref_steps;
    // fit_order needs positive errors, so evaluate rows directly.
    for (double eps : spec.eps_list) {
        ModelParams p = spec.params;
        p.epsilon = eps;
        IncompressibleState init =
            incompressible_initial(spec.init, spec.grid, spec.amplitude, spec.k0);
        const Field f0 = well_prepared_initial_data(init, p);
        project_divfree(init);
        const TheoremError e = theorem_error(f0, init, p, 0);
        CHECK(e.core <= 1e-12);
        CHECK(e.relax <= 1e-12);
    }
}

TEST_CASE("command_run: numerical abort exits with code 3") {
    // An order-one negative pressure fluctuation reconstructs a nonpositive
    // pressure immediately.
    RunConfig c = parse_config(
        "mode = run\n[grid]\ndim = 1\nnx = 16\n[model]\nepsilon = 1\n"
        "[time]\nt_final = 0.1\n[init]\nkind = acoustic-pulse\namplitude = -1.5\n");
    c.out_dir = temp_dir("abort");
    std::ostringstream out;
    CHECK(command_run(c, out) == kExitNumericalAbort);
    const std::string report = read_text_file(c.out_dir + "/report.json");
    CHECK(report.find("\"aborted\": true") != std::string::npos);
}
