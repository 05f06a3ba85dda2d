/// @file diagnostics.cpp

#include "hyperturb/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hyperturb/model.hpp"

namespace hyperturb {

namespace {

/// Central difference along an axis, periodic.
ScalarGrid central_derivative(const ScalarGrid& f, const Grid& g, int axis) {
    ScalarGrid d(f.size());
    const double inv2h = 1.0 / (2.0 * g.spacing(axis));
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const long c = g.index(i, j);
            long cp, cm;
            if (axis == 0) {
                cp = g.index(g.wrap_x(i + 1), j);
                cm = g.index(g.wrap_x(i - 1), j);
            } else {
                cp = g.index(i, g.wrap_y(j + 1));
                cm = g.index(i, g.wrap_y(j - 1));
            }
            d[c] = (f[cp] - f[cm]) * inv2h;
        }
    }
    return d;
}

double l2_sq(const ScalarGrid& f, double vol) {
    double acc = 0.0;
    for (double v : f) acc += v * v;
    return acc * vol;
}

}  // namespace

double discrete_norm(const std::vector<NormComponent>& components, const Grid& grid, int m) {
    if (m < 0 || m > 2) throw std::domain_error("discrete_norm: order must be 0, 1 or 2");
    const double vol = grid.cell_volume();
    double acc = 0.0;
    for (const NormComponent& comp : components) {
        // Derivative lists per order: order 0 is the field itself, order 1 the
        // first central differences, order 2 all second combinations.
        std::vector<ScalarGrid> level = {*comp.f};
        acc += comp.weight * l2_sq(level[0], vol);
        for (int order = 1; order <= m; ++order) {
            std::vector<ScalarGrid> next;
            if (grid.dim == 1) {
                for (const ScalarGrid& f : level) next.push_back(central_derivative(f, grid, 0));
            } else {
                // Unique multi-indices: differentiate along x, plus y of the
                // last entry chain to avoid duplicating mixed derivatives.
                for (const ScalarGrid& f : level) next.push_back(central_derivative(f, grid, 0));
                next.push_back(central_derivative(level.back(), grid, 1));
            }
            for (const ScalarGrid& f : next) acc += comp.weight * l2_sq(f, vol);
            level = std::move(next);
        }
    }
    return std::sqrt(acc);
}

double discrete_norm(const ScalarGrid& f, const Grid& grid, int m) {
    return discrete_norm({{&f, 1.0}}, grid, m);
}

namespace {

/// Pull one state component out of a field as a scalar grid.
ScalarGrid extract(const Field& f, int comp) {
    ScalarGrid g(static_cast<std::size_t>(f.grid.n_cells()));
    for (long c = 0; c < f.grid.n_cells(); ++c) g[c] = f.cell(c)[comp];
    return g;
}

}  // namespace

TheoremError theorem_error(const Field& field, const IncompressibleState& reference,
                           const ModelParams& params, int m) {
    const Grid& g = field.grid;
    if (g.nx != reference.grid.nx || g.ny != reference.grid.ny || g.dim != reference.grid.dim)
        throw std::invalid_argument("theorem_error: grid mismatch");

    const std::size_t n = static_cast<std::size_t>(g.n_cells());
    const double eps = params.epsilon;
    const double sqrt_eps = std::sqrt(eps);
    const double rho0 = params.eos.rho0;

    IncompressibleState ref = reference;
    ref.pi = limit_rhs(ref, params).pi;
    const auto s6 = strain_tensor(ref);
    const Spectral2D sp(ref.grid);
    const ScalarGrid d1k = sp.derivative(ref.k, 0);
    const ScalarGrid d2k = sp.derivative(ref.k, 1);

    ScalarGrid dphi(n), du1(n), du2(n), du3(n), dk(n);
    std::array<ScalarGrid, 6> dsig;
    for (auto& s : dsig) s.resize(n);
    ScalarGrid dy1(n), dy2(n), dy3(n);

    for (std::size_t c = 0; c < n; ++c) {
        const RescaledState s = field.state(static_cast<long>(c));
        dphi[c] = s.phi - eps * ref.pi[c];
        du1[c] = s.u[0] - ref.u1[c];
        du2[c] = s.u[1] - ref.u2[c];
        du3[c] = s.u[2] - ref.u3[c];
        dk[c] = s.k - ref.k[c];
        const double visc = params.l * std::sqrt(std::max(ref.k[c], 0.0)) + params.nu;
        for (int q = 0; q < 6; ++q) dsig[q][c] = rho0 * s.sigma[q] + sqrt_eps * visc * s6[q][c];
        dy1[c] = rho0 * s.y[0] + sqrt_eps * params.xi * params.alpha3 * visc * d1k[c];
        dy2[c] = rho0 * s.y[1] + sqrt_eps * params.xi * params.alpha3 * visc * d2k[c];
        dy3[c] = rho0 * s.y[2];
    }

    TheoremError e;
    e.core = discrete_norm({{&dphi, 1.0}, {&du1, 1.0}, {&du2, 1.0}, {&du3, 1.0}, {&dk, 1.0}},
                           g, m);
    e.relax = discrete_norm({{&dsig[0], kSymWeights[0]},
                             {&dsig[1], kSymWeights[1]},
                             {&dsig[2], kSymWeights[2]},
                             {&dsig[3], kSymWeights[3]},
                             {&dsig[4], kSymWeights[4]},
                             {&dsig[5], kSymWeights[5]},
                             {&dy1, 1.0},
                             {&dy2, 1.0},
                             {&dy3, 1.0}},
                            g, m);
    return e;
}

MaxwellResidual maxwell_residual(const Field& field, const ModelParams& params) {
    const Grid& g = field.grid;
    const std::size_t n = static_cast<std::size_t>(g.n_cells());
    const double eps = params.epsilon;
    const double sqrt_eps = std::sqrt(eps);

    IncompressibleState view(g);
    view.u1 = extract(field, var::u + 0);
    view.u2 = extract(field, var::u + 1);
    view.u3 = extract(field, var::u + 2);
    view.k = extract(field, var::k);
    const auto s6 = strain_tensor(view);
    const Spectral2D sp(g);
    const ScalarGrid d1k = sp.derivative(view.k, 0);
    const ScalarGrid d2k = sp.derivative(view.k, 1);

    std::array<ScalarGrid, 6> res_sig, quasi_sig;
    for (int q = 0; q < 6; ++q) {
        res_sig[q].resize(n);
        quasi_sig[q].resize(n);
    }
    ScalarGrid res_y1(n), res_y2(n), res_y3(n), quasi_y1(n), quasi_y2(n), quasi_y3(n, 0.0);

    for (std::size_t c = 0; c < n; ++c) {
        const RescaledState s = field.state(static_cast<long>(c));
        const EosPoint pt = eos_point(s.phi, params);
        const double nu_t = params.eddy_nu(std::max(s.k, 0.0));
        const double fac = -sqrt_eps * (nu_t + params.nu) / pt.rho;
        for (int q = 0; q < 6; ++q) {
            quasi_sig[q][c] = fac * s6[q][c];
            res_sig[q][c] = s.sigma[q] - quasi_sig[q][c];
        }
        const double fy = -sqrt_eps * params.xi * params.alpha3 * (nu_t + params.nu) / pt.rho;
        quasi_y1[c] = fy * d1k[c];
        quasi_y2[c] = fy * d2k[c];
        res_y1[c] = s.y[0] - quasi_y1[c];
        res_y2[c] = s.y[1] - quasi_y2[c];
        res_y3[c] = s.y[2];
    }

    auto sig_norm = [&](const std::array<ScalarGrid, 6>& ss) {
        return discrete_norm({{&ss[0], kSymWeights[0]},
                              {&ss[1], kSymWeights[1]},
                              {&ss[2], kSymWeights[2]},
                              {&ss[3], kSymWeights[3]},
                              {&ss[4], kSymWeights[4]},
                              {&ss[5], kSymWeights[5]}},
                             g, 0);
    };
    MaxwellResidual r;
    r.sigma_residual = sig_norm(res_sig);
    r.sigma_quasi_norm = sig_norm(quasi_sig);
    r.y_residual = discrete_norm({{&res_y1, 1.0}, {&res_y2, 1.0}, {&res_y3, 1.0}}, g, 0);
    r.y_quasi_norm = discrete_norm({{&quasi_y1, 1.0}, {&quasi_y2, 1.0}, {&quasi_y3, 1.0}}, g, 0);
    return r;
}

Rand::Rand(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {
    // Warm up the splitmix-style state.
    for (int i = 0; i < 4; ++i) uniform();
}

double Rand::uniform() {
    // splitmix64 step; top 53 bits mapped to [0, 1).
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

double Rand::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

namespace {

RescaledState sample_state(Rand& rng, const ModelParams& params) {
    RescaledState s;
    do {
        s.phi = rng.uniform(-0.5, 0.5);
    } while (!(params.p0() + params.epsilon * s.phi > 0.0));
    do {
        for (int i = 0; i < 3; ++i) s.u[i] = rng.uniform(-1.0, 1.0);
    } while (norm2(s.u) > 1.0);
    for (int m = 0; m < 6; ++m) s.sigma[m] = rng.uniform(-0.3, 0.3);
    s.k = rng.uniform(0.0, 2.0);
    for (int i = 0; i < 3; ++i) s.y[i] = rng.uniform(-0.5, 0.5);
    return s;
}

Vec3 sample_direction(Rand& rng) {
    Vec3 n;
    double r2;
    do {
        for (int i = 0; i < 3; ++i) n[i] = rng.uniform(-1.0, 1.0);
        r2 = norm2(n);
    } while (r2 < 1e-4 || r2 > 1.0);
    const double inv = 1.0 / std::sqrt(r2);
    for (int i = 0; i < 3; ++i) n[i] *= inv;
    return n;
}

/// Finite-difference Hessian of the CDF entropy at a sampled point; returns
/// its largest eigenvalue (strict concavity wants it negative).
double concavity_max_eig(const PhysState& p, const ModelParams& params) {
    const double mu_t = params.eddy_mu(p.k);
    std::array<double, 14> x;
    x[0] = 1.0 / p.rho;
    for (int i = 0; i < 3; ++i) x[1 + i] = p.u[i];
    for (int m = 0; m < 6; ++m) x[4 + m] = -params.alpha1 * (mu_t + 1.0) * p.sigma[m];
    x[10] = -params.alpha2 * p.k;
    for (int i = 0; i < 3; ++i) x[11 + i] = p.y[i];

    auto eval = [&](const std::array<double, 14>& z) {
        const Vec3 u = {z[1], z[2], z[3]};
        const Sym6 c_var = {z[4], z[5], z[6], z[7], z[8], z[9]};
        const Vec3 y = {z[11], z[12], z[13]};
        return entropy_cdf(z[0], u, c_var, z[10], y, params);
    };

    const double h = 1e-4;
    SquareMatrix14 hess;
    for (int i = 0; i < 14; ++i) {
        for (int j = i; j < 14; ++j) {
            std::array<double, 14> z = x;
            double val;
            if (i == j) {
                const double f0 = eval(z);
                z[i] = x[i] + h;
                const double fp = eval(z);
                z[i] = x[i] - h;
                const double fm = eval(z);
                val = (fp - 2.0 * f0 + fm) / (h * h);
            } else {
                z[i] = x[i] + h;
                z[j] = x[j] + h;
                const double fpp = eval(z);
                z[j] = x[j] - h;
                const double fpm = eval(z);
                z[i] = x[i] - h;
                z[j] = x[j] + h;
                const double fmp = eval(z);
                z[j] = x[j] - h;
                const double fmm = eval(z);
                val = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            }
            hess(i, j) = val;
            hess(j, i) = val;
        }
    }
    const auto ev = symmetric_eigenvalues(hess);
    return ev.back();
}

}  // namespace

namespace {

PhysState to_phys_sample(const RescaledState& state, const ModelParams& params) {
    PhysState phys;
    phys.rho = density_from_pressure(params.p0() + params.epsilon * state.phi, params.eos);
    phys.u = state.u;
    phys.sigma = state.sigma;
    phys.k = state.k;
    phys.y = state.y;
    return phys;
}

/// Scale sigma into the constrained region.  With small molecular viscosity
/// the box-rejection acceptance probability is astronomically small, so the
/// stress magnitude is drawn uniformly below the constraint threshold instead.
void rescale_into_constraint(PhysState& phys, const ModelParams& params, Rand& rng) {
    const double nu_t = params.eddy_nu(phys.k);
    if (nu_t == 0.0) return;  // constraint holds for any sigma at k = 0
    const double x2 = sym_norm2(phys.sigma);
    if (x2 == 0.0) return;
    const double threshold = params.c_d * (1.0 + 2.0 * params.beta * nu_t * phys.k / params.nu) *
                             params.nu * params.nu * (nu_t + params.nu) /
                             (4.0 * params.beta * nu_t * params.l * params.l);
    const double target = rng.uniform(0.0, 0.999) * threshold;
    if (x2 > target) {
        const double scale = std::sqrt(target / x2);
        for (auto& v : phys.sigma) v *= scale;
    }
}

}  // namespace

SweepReport structural_sweep(long n_samples, std::uint64_t seed, const ModelParams& params) {
    if (n_samples < 0) throw std::domain_error("structural_sweep: n_samples must be >= 0");
    SweepReport rep;
    rep.n_samples = n_samples;
    rep.seed = seed;
    rep.min_h_constrained = std::numeric_limits<double>::infinity();
    rep.min_mineig_constrained = std::numeric_limits<double>::infinity();
    rep.max_concavity_eig = -std::numeric_limits<double>::infinity();
    Rand rng(seed);

    for (long s = 0; s < n_samples; ++s) {
        const RescaledState state = sample_state(rng, params);
        const Vec3 n = sample_direction(rng);

        // Condition (i): A0*A symmetric, spectrum real after symmetrized solve.
        try {
            const SquareMatrix14 a = flux_jacobian(state, n, params);
            const SquareMatrix14 a0 = symmetrizer(state, params);
            const SquareMatrix14 p = a0 * a;
            const double scale = p.max_abs();
            const double rel_asym = scale > 0.0 ? p.asymmetry() / scale : 0.0;
            rep.max_rel_asymmetry = std::max(rep.max_rel_asymmetry, rel_asym);
            if (rel_asym > 1e-12) ++rep.symmetry_violations;
        } catch (const std::exception&) {
            ++rep.symmetry_violations;
        }
        try {
            const WaveSpeedResult ws = max_wave_speed(state, n, params);
            rep.max_spectrum_asymmetry = std::max(rep.max_spectrum_asymmetry, ws.asymmetry);
            if (ws.asymmetry > 1e-10 * std::max(1.0, ws.lambda_max)) ++rep.spectrum_violations;
        } catch (const std::exception&) {
            ++rep.spectrum_violations;
        }

        // Condition (ii), unconstrained stream: strong violators of the
        // constraint must include indefinite dissipation matrices.
        const PhysState phys = to_phys_sample(state, params);
        try {
            if (!pd_constraint(phys, params)) {
                const double nu_t = params.eddy_nu(phys.k);
                const double lhs = 4.0 * params.beta * nu_t * params.l * params.l /
                                   (params.nu * params.nu * (nu_t + params.nu)) *
                                   sym_norm2(phys.sigma);
                const double rhs =
                    params.c_d * (1.0 + 2.0 * params.beta * nu_t * phys.k / params.nu);
                if (lhs >= 2.0 * rhs) {
                    ++rep.double_violators;
                    if (min_eigenvalue(dissipation_matrix(phys, params)) < 0.0)
                        ++rep.double_violators_negative_mineig;
                }
            }
        } catch (const std::exception&) {
            ++rep.pd_violations;
        }

        try {
            const double ce = concavity_max_eig(phys, params);
            rep.max_concavity_eig = std::max(rep.max_concavity_eig, ce);
            if (ce > -1e-8) ++rep.concavity_violations;
        } catch (const std::exception&) {
            ++rep.concavity_violations;
        }
    }

    // Condition (ii), constrained stream: H >= 0 and M positive definite on
    // states satisfying the constraint.
    for (long s = 0; s < n_samples; ++s) {
        const RescaledState state = sample_state(rng, params);
        PhysState phys = to_phys_sample(state, params);
        try {
            rescale_into_constraint(phys, params, rng);
            if (!pd_constraint(phys, params)) continue;
            ++rep.constraint_satisfied;

            const double h = entropy_production(phys, params);
            rep.min_h_constrained = std::min(rep.min_h_constrained, h);
            if (h < -1e-14) ++rep.h_violations;

            const SquareMatrix10 m = dissipation_matrix(phys, params);
            const double mineig = min_eigenvalue(m);
            rep.min_mineig_constrained = std::min(rep.min_mineig_constrained, mineig);
            if (mineig < -1e-12 * std::max(1.0, m.max_abs())) ++rep.pd_violations;

            if (entropy_production_source(phys, params) < -1e-14) ++rep.h_source_sign_mismatches;
        } catch (const std::exception&) {
            ++rep.h_violations;
        }
    }

    if (!std::isfinite(rep.min_h_constrained)) rep.min_h_constrained = 0.0;
    if (!std::isfinite(rep.min_mineig_constrained)) rep.min_mineig_constrained = 0.0;
    if (!std::isfinite(rep.max_concavity_eig)) rep.max_concavity_eig = 0.0;
    return rep;
}

OrderFit fit_order(const std::vector<double>& eps, const std::vector<double>& errors) {
    if (eps.size() != errors.size()) throw std::invalid_argument("fit_order: size mismatch");
    if (eps.size() < 3) throw std::invalid_argument("fit_order: need at least 3 points");
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0.0)) throw std::invalid_argument("fit_order: eps must be positive");
        if (i > 0 && !(eps[i] < eps[i - 1]))
            throw std::invalid_argument("fit_order: eps must be strictly decreasing");
        if (!(errors[i] > 0.0)) throw std::invalid_argument("fit_order: errors must be positive");
    }
    const std::size_t n = eps.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(eps[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    OrderFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

ConvergenceReport run_convergence_study(const SweepSpec& spec) {
    if (!spec.params.limit_compatible())
        throw std::domain_error(
            "sweep requires limit-compatible parameters (alpha2 = beta = xi^2, rho0 = 1)");
    if (spec.eps_list.size() < 3) throw std::domain_error("sweep requires >= 3 epsilon values");
    for (std::size_t i = 1; i < spec.eps_list.size(); ++i)
        if (!(spec.eps_list[i] < spec.eps_list[i - 1]))
            throw std::domain_error("sweep epsilon list must be strictly decreasing");

    const IncompressibleState init =
        incompressible_initial(spec.init, spec.grid, spec.amplitude, spec.k0);
    IncompressibleState ref;
    if (spec.controls.t_final > 0.0) {
        ref = run_limit(init, spec.params, spec.controls.t_final, spec.ref_steps).final_state;
    } else {
        ref = init;
        project_divfree(ref);
    }

    ConvergenceReport report;
    std::vector<double> core_m0, core_m1, relax_m0;
    for (double eps : spec.eps_list) {
        ModelParams p = spec.params;
        p.epsilon = eps;
        const Field f0 = well_prepared_initial_data(init, p);
        const RunResult run = run_simulation(f0, p, spec.controls);
        const TheoremError e0 = theorem_error(run.final_field, ref, p, 0);
        const TheoremError e1 = theorem_error(run.final_field, ref, p, 1);

        SweepRow row;
        row.eps = eps;
        row.core_m0 = e0.core;
        row.core_m1 = e1.core;
        row.relax_m0 = e0.relax;
        row.relax_m1 = e1.relax;
        row.steps = run.total_steps;
        row.clamp_count = run.clamp_count;
        row.worst_entropy_dip = run.worst_entropy_dip;
        row.min_h_constrained = run.min_h_constrained;
        row.constraint_violations = run.constraint_violations;
        report.rows.push_back(row);
        core_m0.push_back(e0.core);
        core_m1.push_back(e1.core);
        relax_m0.push_back(e0.relax);
    }

    report.core_slope_m0 = fit_order(spec.eps_list, core_m0).slope;
    report.core_slope_m1 = fit_order(spec.eps_list, core_m1).slope;
    report.relax_slope_m0 = fit_order(spec.eps_list, relax_m0).slope;
    report.pass_core_slope = report.core_slope_m0 >= report.core_slope_threshold;
    report.pass_relax_monotone = true;
    for (std::size_t i = 1; i < relax_m0.size(); ++i)
        if (!(relax_m0[i] < relax_m0[i - 1])) report.pass_relax_monotone = false;
    return report;
}

}  // namespace hyperturb
