/// @file commands.cpp

#include "hyperturb/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "hyperturb/diagnostics.hpp"
#include "hyperturb/io.hpp"
#include "hyperturb/model.hpp"

namespace hyperturb {

namespace {

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory: " + dir);
}

std::string snapshot_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fields_%04zu.csv", index);
    return buf;
}

}  // namespace

int command_run(const RunConfig& config, std::ostream& out) {
    ensure_out_dir(config.out_dir);
    const Field initial = compressible_initial(config.init, config.grid, config.amplitude, config.k0);

    RunResult result;
    bool aborted = false;
    std::string abort_reason;
    long abort_step = -1;
    try {
        result = run_simulation(initial, config.params, config.controls);
    } catch (const SolverAbort& e) {
        aborted = true;
        abort_reason = e.what();
        abort_step = e.step;
    }

    if (!aborted) {
        write_fields_csv(config.out_dir + "/fields_0000.csv", initial);
        for (std::size_t s = 0; s < result.snapshots.size(); ++s)
            write_fields_csv(config.out_dir + "/" + snapshot_name(s + 1), result.snapshots[s].field);
        write_text_file(config.out_dir + "/diagnostics.csv", diagnostics_csv(result.log));
    }
    write_text_file(config.out_dir + "/report.json",
                    run_report_json(result, aborted, abort_reason, abort_step));

    if (aborted) {
        out << "run aborted: " << abort_reason << "\n";
        return kExitNumericalAbort;
    }
    out << "run complete: " << result.total_steps << " steps, t = "
        << format_g17(result.log.back().time) << ", clamp_count = " << result.clamp_count << "\n";
    return kExitOk;
}

int command_sweep(const RunConfig& config, std::ostream& out) {
    if (!config.params.limit_compatible()) {
        out << "configuration error: sweep requires limit-compatible parameters "
               "(alpha2 = beta = xi^2, rho0 = 1)\n";
        return kExitConfigError;
    }
    if (config.init != InitKind::shear_layer && config.init != InitKind::taylor_green) {
        out << "configuration error: sweep requires a divergence-free initial condition "
               "(shear-layer or taylor-green)\n";
        return kExitConfigError;
    }
    ensure_out_dir(config.out_dir);

    SweepSpec spec;
    spec.grid = config.grid;
    spec.params = config.params;
    spec.eps_list = config.sweep_eps;
    spec.controls = config.controls;
    // The first-order interface dissipation scales like dx/eps and swamps the
    // O(eps) signal; sweeps default to the low-dissipation flux unless the
    // config pins one explicitly.
    if (!config.flux_explicit) spec.controls.flux = FluxScheme::lw;
    spec.init = config.init;
    spec.amplitude = config.amplitude;
    spec.k0 = config.k0;
    spec.ref_steps = config.ref_steps;

    ConvergenceReport report;
    try {
        report = run_convergence_study(spec);
    } catch (const SolverAbort& e) {
        out << "sweep aborted: " << e.what() << "\n";
        return kExitNumericalAbort;
    }

    write_text_file(config.out_dir + "/sweep_report.json", sweep_report_json(report));
    for (const SweepRow& r : report.rows)
        out << "eps = " << format_g17(r.eps) << "  E_core(m0) = " << format_g17(r.core_m0)
            << "  E_relax(m0) = " << format_g17(r.relax_m0) << "\n";
    out << "core slope (m0) = " << format_g17(report.core_slope_m0)
        << "  relax monotone = " << (report.pass_relax_monotone ? "yes" : "no") << "\n";
    return kExitOk;
}

int command_check(const RunConfig& config, std::ostream& out) {
    ensure_out_dir(config.out_dir);
    const SweepReport report = structural_sweep(config.samples, config.seed, config.params);
    write_text_file(config.out_dir + "/check_report.json", check_report_json(report));
    out << "structural sweep: " << report.n_samples << " samples, seed " << report.seed << "\n"
        << "  symmetry violations:  " << report.symmetry_violations << "\n"
        << "  spectrum violations:  " << report.spectrum_violations << "\n"
        << "  H violations:         " << report.h_violations << "\n"
        << "  PD violations:        " << report.pd_violations << "\n"
        << "  concavity violations: " << report.concavity_violations << "\n"
        << "  source-form H sign mismatches (logged): " << report.h_source_sign_mismatches << "\n"
        << (report.pass() ? "PASS" : "FAIL") << "\n";
    return report.pass() ? kExitOk : kExitCheckFailure;
}

int command_eigen(const RunConfig& config, std::ostream& out) {
    const double n2 = norm2(config.direction);
    if (std::abs(n2 - 1.0) > 1e-9) {
        out << "configuration error: direction must be a unit vector\n";
        return kExitConfigError;
    }
    RescaledState state;
    state.k = config.k0;

    const SquareMatrix14 a = flux_jacobian(state, config.direction, config.params);
    const SquareMatrix14 a0 = symmetrizer(state, config.params);
    std::array<double, kNumVars> d_sqrt;
    for (int i = 0; i < kNumVars; ++i) d_sqrt[i] = std::sqrt(a0(i, i));
    SquareMatrix14 s;
    for (int i = 0; i < kNumVars; ++i)
        for (int j = 0; j < kNumVars; ++j) s(i, j) = d_sqrt[i] * a(i, j) / d_sqrt[j];
    const auto ev = symmetric_eigenvalues(s);
    for (double v : ev) out << format_g17(v) << "\n";
    return kExitOk;
}

int run_command(const RunConfig& config, std::ostream& out) {
    try {
        if (config.mode == "run") return command_run(config, out);
        if (config.mode == "sweep") return command_sweep(config, out);
        if (config.mode == "check") return command_check(config, out);
        if (config.mode == "eigen") return command_eigen(config, out);
    } catch (const ConfigError& e) {
        out << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::domain_error& e) {
        out << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        out << "error: " << e.what() << "\n";
        return kExitNumericalAbort;
    }
    out << "configuration error: unknown mode '" << config.mode << "'\n";
    return kExitConfigError;
}

}  // namespace hyperturb
