/// @file acceptance_main.cpp
/// @brief Acceptance suite: runs every criterion at its stated tolerance and
///        prints one pass/fail line per criterion.
///
/// Usage: acceptance [--data-dir DIR] [--update-baselines] [N ...]
/// With criterion numbers given, only those run.  --update-baselines rewrites
/// the determinism baseline hashes (criterion 7) instead of checking them.

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hyperturb/commands.hpp"
#include "hyperturb/diagnostics.hpp"
#include "hyperturb/io.hpp"
#include "hyperturb/model.hpp"

using namespace hyperturb;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(4);
    ss << v;
    return ss.str();
}

std::string temp_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("hyperturb_acceptance_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

// ---------------------------------------------------------------------------
// Criterion 1: structural suite on 1000 random states and directions.
// ---------------------------------------------------------------------------
Outcome criterion_structural() {
    const double t0 = now_seconds();
    ModelParams p;
    const SweepReport rep = structural_sweep(1000, 1, p);
    const double elapsed = now_seconds() - t0;

    const bool double_ok = rep.double_violators == 0 || rep.double_violators_negative_mineig > 0;
    const bool pass = rep.symmetry_violations == 0 && rep.spectrum_violations == 0 &&
                      rep.h_violations == 0 && rep.pd_violations == 0 &&
                      rep.concavity_violations == 0 && double_ok && elapsed < 10.0;
    std::ostringstream d;
    d << "sym=" << rep.symmetry_violations << " spec=" << rep.spectrum_violations
      << " H=" << rep.h_violations << " pd=" << rep.pd_violations
      << " concavity=" << rep.concavity_violations << " dbl=" << rep.double_violators << "/"
      << rep.double_violators_negative_mineig
      << " src-mismatch(logged)=" << rep.h_source_sign_mismatches << " time=" << fmt(elapsed)
      << "s";
    return {pass, d.str()};
}

// ---------------------------------------------------------------------------
// Criterion 2: relaxation ODE closed form k(1) = 4/9.
// ---------------------------------------------------------------------------
Outcome criterion_relaxation_ode() {
    const double t0 = now_seconds();
    ModelParams p;
    p.c_d = 1.0;
    p.l = 1.0;
    p.epsilon = 1.0;

    Grid g = Grid::make_1d(8, 1.0);
    Field f(g);
    for (long c = 0; c < g.n_cells(); ++c) {
        RescaledState s;
        s.k = 1.0;
        f.set_state(c, s);
    }
    TimeControls controls;
    controls.t_final = 1.0;
    const RunResult r = run_simulation(f, p, controls);
    const double got = r.final_field.state(0).k;
    const double want = 4.0 / 9.0;
    const double err = std::abs(got - want);
    const double elapsed = now_seconds() - t0;
    return {err < 1e-6 && elapsed < 1.0,
            "k(1)=" + format_g17(got) + " err=" + fmt(err) + " time=" + fmt(elapsed) + "s"};
}

// ---------------------------------------------------------------------------
// Criterion 3: incompressible reference oracle.
// ---------------------------------------------------------------------------
Outcome criterion_incompressible() {
    const double t0 = now_seconds();
    ModelParams p;
    p.c_d = 1.0;
    p.l = 1.0;

    Grid g8 = Grid::make_2d(8, 8, 2.0 * M_PI, 2.0 * M_PI);
    IncompressibleState uk(g8);
    for (auto& v : uk.k) v = 1.0;
    const LimitTrajectory decay = run_limit(uk, p, 1.0, 200);
    double k_err = 0.0;
    for (double v : decay.final_state.k) k_err = std::max(k_err, std::abs(v - 4.0 / 9.0));

    ModelParams ptg;  // default closure constants for the Taylor-Green run
    Grid g32 = Grid::make_2d(32, 32, 2.0 * M_PI, 2.0 * M_PI);
    const IncompressibleState tg = incompressible_initial(InitKind::taylor_green, g32, 1.0, 0.0);
    const LimitTrajectory traj = run_limit(tg, ptg, 2.0, 200);

    const double elapsed = now_seconds() - t0;
    const bool pass = k_err <= 1e-6 && traj.max_divergence <= 1e-10 && elapsed < 30.0;
    return {pass, "k_err=" + fmt(k_err) + " max_div=" + fmt(traj.max_divergence) +
                      " time=" + fmt(elapsed) + "s"};
}

// ---------------------------------------------------------------------------
// Criterion 4: Maxwell-iteration consistency on a frozen shear field.
// ---------------------------------------------------------------------------
Outcome criterion_maxwell() {
    const double t0 = now_seconds();
    ModelParams p;
    p.epsilon = 0.05;

    Grid g = Grid::make_2d(32, 32, 2.0 * M_PI, 2.0 * M_PI);
    Field f(g);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            RescaledState s;
            s.u = {std::sin(g.y(j)), 0.0, 0.0};
            s.k = 0.5;
            f.set_state(g.index(i, j), s);
        }
    }
    const Field frozen = f;

    const double nu_t = p.eddy_nu(0.5);
    const double tau = p.epsilon * p.alpha1 * (nu_t + p.nu);
    const double t_end = 5.0 * tau;

    TimeControls controls;
    controls.cfl = 0.45;
    controls.flux = FluxScheme::rusanov;

    double t = 0.0;
    Field cur = f;
    while (t < t_end) {
        const double dt = std::min(cfl_dt(cur, p, controls.cfl), t_end - t);
        cur = strang_step(cur, p, dt, controls);
        // Freeze everything except sigma.
        for (long c = 0; c < g.n_cells(); ++c) {
            RescaledState s = cur.state(c);
            const RescaledState s0 = frozen.state(c);
            s.phi = s0.phi;
            s.u = s0.u;
            s.k = s0.k;
            s.y = s0.y;
            cur.set_state(c, s);
        }
        t += dt;
    }

    const MaxwellResidual r = maxwell_residual(cur, p);
    const double rel = r.sigma_residual / r.sigma_quasi_norm;
    const double elapsed = now_seconds() - t0;
    return {rel <= 0.1 && elapsed < 30.0,
            "rel_sigma_residual=" + fmt(rel) + " time=" + fmt(elapsed) + "s"};
}

// ---------------------------------------------------------------------------
// Criteria 5 and 6 share the low Mach sweep.
// ---------------------------------------------------------------------------
SweepSpec acceptance_sweep_spec() {
    SweepSpec spec;
    spec.grid = Grid::make_2d(32, 32, 2.0 * M_PI, 2.0 * M_PI);
    spec.params = ModelParams{};
    spec.params.alpha1 = 2.0;
    spec.params.alpha3 = 2.0;
    spec.eps_list = {0.2, 0.1, 0.05};
    spec.controls.cfl = 0.25;
    spec.controls.t_final = 0.25;
    spec.controls.flux = FluxScheme::lw;
    spec.init = InitKind::shear_layer;
    spec.amplitude = 1.0;
    spec.k0 = 0.5;
    spec.ref_steps = 500;
    return spec;
}

const ConvergenceReport& acceptance_sweep_report() {
    static const ConvergenceReport report = run_convergence_study(acceptance_sweep_spec());
    return report;
}

Outcome criterion_low_mach() {
    const double t0 = now_seconds();
    const ConvergenceReport& rep = acceptance_sweep_report();
    const double elapsed = now_seconds() - t0;

    std::ostringstream d;
    d << "slope(m0)=" << fmt(rep.core_slope_m0) << " (>= 0.8)"
      << " E_core=[";
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        d << (i ? ", " : "") << fmt(rep.rows[i].core_m0);
    d << "] E_relax=[";
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        d << (i ? ", " : "") << fmt(rep.rows[i].relax_m0);
    d << "] monotone=" << (rep.pass_relax_monotone ? "yes" : "no") << " time=" << fmt(elapsed)
      << "s";
    return {rep.pass_core_slope && rep.pass_relax_monotone && elapsed < 600.0, d.str()};
}

Outcome criterion_entropy() {
    const ConvergenceReport& rep = acceptance_sweep_report();
    const SweepRow* row = nullptr;
    for (const SweepRow& r : rep.rows)
        if (std::abs(r.eps - 0.1) < 1e-12) row = &r;
    if (!row) return {false, "eps = 0.1 run missing from the sweep"};

    const bool pass = row->worst_entropy_dip <= 1e-8 && row->min_h_constrained >= -1e-14 &&
                      row->constraint_violations == 0;
    std::ostringstream d;
    d << "worst_dip=" << fmt(row->worst_entropy_dip) << " (<= 1e-8)"
      << " min_H=" << fmt(row->min_h_constrained) << " (>= -1e-14)"
      << " violations=" << row->constraint_violations << " (== 0)";
    return {pass, d.str()};
}

// ---------------------------------------------------------------------------
// Criterion 7: determinism regression with recorded baseline hashes.
// ---------------------------------------------------------------------------
std::string g_data_dir = ".";
bool g_update_baselines = false;

Outcome criterion_determinism() {
    const std::string config_text =
        "mode = run\n"
        "[grid]\ndim = 1\nnx = 128\nlx = 6.2831853071795862\n"
        "[model]\nepsilon = 0.5\n"
        "[time]\nt_final = 0.2\ncfl = 0.45\n"
        "[init]\nkind = acoustic-pulse\namplitude = 0.01\n";
    RunConfig a = parse_config(config_text);
    RunConfig b = parse_config(config_text);
    a.out_dir = temp_dir("det_a");
    b.out_dir = temp_dir("det_b");
    std::ostringstream log;
    if (command_run(a, log) != kExitOk || command_run(b, log) != kExitOk)
        return {false, "canonical run failed"};

    const std::string fields_a = read_text_file(a.out_dir + "/fields_0001.csv");
    const std::string fields_b = read_text_file(b.out_dir + "/fields_0001.csv");
    const std::string diag_a = read_text_file(a.out_dir + "/diagnostics.csv");
    const std::string diag_b = read_text_file(b.out_dir + "/diagnostics.csv");
    if (fields_a != fields_b || diag_a != diag_b)
        return {false, "repeated runs differ byte-for-byte"};

    const std::string fields_hash = fnv1a64_hex(fields_a);
    const std::string diag_hash = fnv1a64_hex(diag_a);
    const std::string baseline_path = g_data_dir + "/baseline_hashes.txt";

    if (g_update_baselines) {
        write_text_file(baseline_path, "fields_0001.csv " + fields_hash + "\n" +
                                           "diagnostics.csv " + diag_hash + "\n");
        return {true, "baselines updated: fields=" + fields_hash + " diag=" + diag_hash};
    }

    std::map<std::string, std::string> baseline;
    std::ifstream in(baseline_path);
    if (!in) return {false, "baseline file missing: " + baseline_path};
    std::string name, hash;
    while (in >> name >> hash) baseline[name] = hash;

    const bool pass =
        baseline["fields_0001.csv"] == fields_hash && baseline["diagnostics.csv"] == diag_hash;
    return {pass, "fields=" + fields_hash + " diag=" + diag_hash +
                      (pass ? " match recorded baselines" : " MISMATCH vs recorded baselines")};
}

// ---------------------------------------------------------------------------
// Criterion 8: 1D L1 self-convergence of the transport substep.
// ---------------------------------------------------------------------------
Field smooth_profile_1d(const Grid& g) {
    Field f(g);
    for (int i = 0; i < g.nx; ++i) {
        const double x = 2.0 * M_PI * g.x(i) / g.lx;
        RescaledState s;
        s.phi = 0.1 * std::sin(x);
        s.u = {0.1 * std::sin(x), 0.05 * std::cos(x), 0.0};
        s.k = 0.1 + 0.05 * std::cos(x);
        f.set_state(g.index(i, 0), s);
    }
    return f;
}

/// Restrict a fine field to the next-coarser grid by averaging cell pairs.
Field restrict_half(const Field& fine) {
    Grid coarse = Grid::make_1d(fine.grid.nx / 2, fine.grid.lx);
    Field out(coarse);
    for (int i = 0; i < coarse.nx; ++i) {
        const double* a = fine.cell(fine.grid.index(2 * i, 0));
        const double* b = fine.cell(fine.grid.index(2 * i + 1, 0));
        double* dst = out.cell(coarse.index(i, 0));
        for (int v = 0; v < kNumVars; ++v) dst[v] = 0.5 * (a[v] + b[v]);
    }
    return out;
}

double l1_diff(const Field& a, const Field& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) acc += std::abs(a.data[i] - b.data[i]);
    return acc * a.grid.cell_volume();
}

Outcome criterion_self_convergence() {
    const double t0 = now_seconds();
    ModelParams p;
    p.epsilon = 0.5;
    TimeControls controls;
    controls.t_final = 0.1;
    controls.flux = FluxScheme::rusanov;

    std::map<int, Field> finals;
    for (int n : {128, 256, 512}) {
        Grid g = Grid::make_1d(n, 2.0 * M_PI);
        finals.emplace(n, run_simulation(smooth_profile_1d(g), p, controls).final_field);
    }
    const double e1 = l1_diff(restrict_half(finals.at(256)), finals.at(128));
    const double e2 = l1_diff(restrict_half(finals.at(512)), finals.at(256));
    const double order = std::log2(e1 / e2);
    const double elapsed = now_seconds() - t0;
    return {order >= 0.8 && elapsed < 60.0,
            "L1 self-convergence order=" + fmt(order) + " time=" + fmt(elapsed) + "s"};
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--data-dir") == 0 && i + 1 < argc) {
            g_data_dir = argv[++i];
        } else if (std::strcmp(argv[i], "--update-baselines") == 0) {
            g_update_baselines = true;
        } else {
            selected.push_back(std::atoi(argv[i]));
        }
    }

    struct Entry {
        int number;
        const char* title;
        Outcome (*fn)();
    };
    const std::vector<Entry> criteria = {
        {1, "structural suite (symmetrizability, spectra, H, PD constraint)", criterion_structural},
        {2, "relaxation ODE closed form", criterion_relaxation_ode},
        {3, "incompressible reference oracle", criterion_incompressible},
        {4, "Maxwell-iteration consistency", criterion_maxwell},
        {5, "low Mach convergence rate", criterion_low_mach},
        {6, "entropy behavior on the eps = 0.1 run", criterion_entropy},
        {7, "determinism regression", criterion_determinism},
        {8, "1D transport self-convergence", criterion_self_convergence},
    };

    int failures = 0;
    for (const Entry& e : criteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), e.number) == selected.end())
            continue;
        Outcome o{false, "exception"};
        try {
            o = e.fn();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << e.number << ": " << e.title
                  << " -- " << o.detail << "\n";
        if (!o.pass) ++failures;
    }
    std::cout << (failures == 0 ? "ALL ACCEPTANCE CRITERIA PASSED" : "ACCEPTANCE FAILURES: ")
              << (failures == 0 ? "" : std::to_string(failures)) << "\n";
    return failures == 0 ? 0 : 1;
}
