/// @file solver.cpp
/// @brief Strang-split finite-volume integrator for the rescaled system.

#include "hyperturb/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hyperturb/model.hpp"

namespace hyperturb {

namespace {

struct StepRejected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr double kBlowupLimit = 1e12;
constexpr double kCflSlack = 1.0 + 1e-9;

Vec3 axis_unit(int axis) {
    Vec3 n = {0.0, 0.0, 0.0};
    n[axis] = 1.0;
    return n;
}

std::array<double, kNumVars> load_cell(const Field& f, long c) {
    std::array<double, kNumVars> a;
    const double* p = f.cell(c);
    for (int v = 0; v < kNumVars; ++v) a[v] = p[v];
    return a;
}

/// Interface fluctuations: D_minus goes to the left cell, D_plus to the right.
/// Shared by the unsplit Rusanov update and the dimension-split LW sweeps.
void accumulate_interface(const std::array<double, kNumVars>& ul,
                          const std::array<double, kNumVars>& ur, int axis,
                          const ModelParams& params, FluxScheme flux, double lambda_loc,
                          double dt_over_dx, double* delta_l, double* delta_r) {
    std::array<double, kNumVars> avg;
    std::array<double, kNumVars> du;
    for (int v = 0; v < kNumVars; ++v) {
        avg[v] = 0.5 * (ul[v] + ur[v]);
        du[v] = ur[v] - ul[v];
    }
    avg[var::k] = std::max(avg[var::k], 0.0);

    const SquareMatrix14 a = flux_jacobian(RescaledState::from_array(avg), axis_unit(axis), params);
    const std::array<double, kNumVars> adu = a.apply(du);

    std::array<double, kNumVars> diss;
    if (flux == FluxScheme::rusanov) {
        for (int v = 0; v < kNumVars; ++v) diss[v] = lambda_loc * du[v];
    } else {
        const std::array<double, kNumVars> a2du = a.apply(adu);
        for (int v = 0; v < kNumVars; ++v) diss[v] = dt_over_dx * a2du[v];
    }
    for (int v = 0; v < kNumVars; ++v) {
        const double central = 0.5 * adu[v];
        const double half_diss = 0.5 * diss[v];
        delta_l[v] -= dt_over_dx * (central - half_diss);
        delta_r[v] -= dt_over_dx * (central + half_diss);
    }
}

/// One transport sweep along a single axis over time h.
void sweep_axis(const Field& in, Field& out, const ModelParams& params, double h, int axis,
                FluxScheme flux, const WaveSpeedTable& speeds, SubstepStats* stats) {
    const Grid& g = in.grid;
    const double dx = g.spacing(axis);
    const double r = h / dx;

    std::vector<double> delta(in.data.size(), 0.0);
    const int ni = g.nx;
    const int nj = g.ny;
    for (int j = 0; j < nj; ++j) {
        for (int i = 0; i < ni; ++i) {
            const long cl = g.index(i, j);
            const long cr = axis == 0 ? g.index(g.wrap_x(i + 1), j) : g.index(i, g.wrap_y(j + 1));
            const auto ul = load_cell(in, cl);
            const auto ur = load_cell(in, cr);
            const double lambda_loc = std::max(speeds.at(cl, axis), speeds.at(cr, axis));
            accumulate_interface(ul, ur, axis, params, flux, lambda_loc, r,
                                 delta.data() + static_cast<std::size_t>(cl) * kNumVars,
                                 delta.data() + static_cast<std::size_t>(cr) * kNumVars);
        }
    }

    for (long c = 0; c < g.n_cells(); ++c) {
        const double* src = in.cell(c);
        const double* d = delta.data() + static_cast<std::size_t>(c) * kNumVars;
        double* dst = out.cell(c);
        for (int v = 0; v < kNumVars; ++v) dst[v] = src[v] + d[v];
        if (dst[var::k] < 0.0) {
            dst[var::k] = 0.0;
            if (stats) ++stats->clamp_count;
        }
    }
}

double axis_cfl_number(const WaveSpeedTable& speeds, const Grid& g, double dt, int axis) {
    double lam = 0.0;
    for (long c = 0; c < g.n_cells(); ++c) lam = std::max(lam, speeds.at(c, axis));
    return dt * lam / g.spacing(axis);
}

}  // namespace

FluxScheme flux_scheme_from_string(const std::string& name) {
    if (name == "rusanov") return FluxScheme::rusanov;
    if (name == "lw") return FluxScheme::lw;
    throw std::domain_error("flux must be one of: rusanov, lw");
}

std::string to_string(FluxScheme f) { return f == FluxScheme::rusanov ? "rusanov" : "lw"; }

void TimeControls::validate() const {
    if (!(cfl > 0.0 && cfl < 1.0)) throw std::domain_error("cfl must be in (0, 1)");
    if (!(t_final >= 0.0)) throw std::domain_error("t_final must be >= 0");
    if (max_steps < 0) throw std::domain_error("max_steps must be >= 0");
    if (k_substeps < 10) throw std::domain_error("k_substeps must be >= 10");
    if (relaxation != "exact") throw std::domain_error("relaxation must be 'exact'");
    if (snapshots < 0) throw std::domain_error("snapshots must be >= 0");
}

WaveSpeedTable compute_wave_speeds(const Field& field, const ModelParams& params) {
    const Grid& g = field.grid;
    WaveSpeedTable t;
    t.dim = g.dim;
    t.lambda.resize(static_cast<std::size_t>(g.n_cells()) * g.dim);
    for (long c = 0; c < g.n_cells(); ++c) {
        const RescaledState s = field.state(c);
        for (int axis = 0; axis < g.dim; ++axis) {
            const double lam = max_wave_speed_value(s, axis_unit(axis), params);
            if (!std::isfinite(lam)) throw std::runtime_error("non-finite wave speed");
            t.lambda[static_cast<std::size_t>(c) * g.dim + axis] = lam;
            t.max_value = std::max(t.max_value, lam);
        }
    }
    return t;
}

double cfl_dt(const Field& field, const ModelParams& params, double cfl) {
    const Grid& g = field.grid;
    const WaveSpeedTable t = compute_wave_speeds(field, params);
    double dt = std::numeric_limits<double>::infinity();
    for (long c = 0; c < g.n_cells(); ++c)
        for (int axis = 0; axis < g.dim; ++axis)
            dt = std::min(dt, g.spacing(axis) / t.at(c, axis));
    dt *= cfl;
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::runtime_error("non-finite CFL time step");
    return dt;
}

Field hyperbolic_substep(const Field& field, const ModelParams& params, double dt,
                         FluxScheme flux, SubstepStats* stats) {
    const Grid& g = field.grid;
    const WaveSpeedTable speeds = compute_wave_speeds(field, params);

    if (flux == FluxScheme::rusanov) {
        // Unsplit update; stability needs sum over axes of dt*lambda/dx <= 1.
        double total = 0.0;
        for (int axis = 0; axis < g.dim; ++axis) total += axis_cfl_number(speeds, g, dt, axis);
        if (total > kCflSlack) throw StepRejected("step rejected: CFL violation in transport substep");

        Field out(g);
        std::vector<double> delta(field.data.size(), 0.0);
        for (int axis = 0; axis < g.dim; ++axis) {
            const double r = dt / g.spacing(axis);
            for (int j = 0; j < g.ny; ++j) {
                for (int i = 0; i < g.nx; ++i) {
                    const long cl = g.index(i, j);
                    const long cr =
                        axis == 0 ? g.index(g.wrap_x(i + 1), j) : g.index(i, g.wrap_y(j + 1));
                    const auto ul = load_cell(field, cl);
                    const auto ur = load_cell(field, cr);
                    const double lambda_loc = std::max(speeds.at(cl, axis), speeds.at(cr, axis));
                    accumulate_interface(ul, ur, axis, params, flux, lambda_loc, r,
                                         delta.data() + static_cast<std::size_t>(cl) * kNumVars,
                                         delta.data() + static_cast<std::size_t>(cr) * kNumVars);
                }
            }
        }
        for (long c = 0; c < g.n_cells(); ++c) {
            const double* src = field.cell(c);
            const double* d = delta.data() + static_cast<std::size_t>(c) * kNumVars;
            double* dst = out.cell(c);
            for (int v = 0; v < kNumVars; ++v) dst[v] = src[v] + d[v];
            if (dst[var::k] < 0.0) {
                dst[var::k] = 0.0;
                if (stats) ++stats->clamp_count;
            }
        }
        return out;
    }

    // LW dissipation is applied in dimension-split sweeps (x(dt/2) y(dt) x(dt/2)
    // in 2D); each sweep is stable for a per-axis CFL number up to one.
    for (int axis = 0; axis < g.dim; ++axis)
        if (axis_cfl_number(speeds, g, dt, axis) > kCflSlack)
            throw StepRejected("step rejected: CFL violation in transport substep");

    if (g.dim == 1) {
        Field out(g);
        sweep_axis(field, out, params, dt, 0, flux, speeds, stats);
        return out;
    }
    // The LW dissipation is built from A(U_avg), so the interface speed table
    // is not consumed inside the sweeps; reuse the entry table throughout.
    Field tmp1(g), tmp2(g), out(g);
    sweep_axis(field, tmp1, params, 0.5 * dt, 0, flux, speeds, stats);
    sweep_axis(tmp1, tmp2, params, dt, 1, flux, speeds, stats);
    sweep_axis(tmp2, out, params, 0.5 * dt, 0, flux, speeds, stats);
    return out;
}

Field relaxation_substep(const Field& field, const ModelParams& params, double dt,
                         int k_substeps, SubstepStats* stats) {
    const Grid& g = field.grid;
    const double eps = params.epsilon;
    const double nu = params.nu;
    Field out(g);

    for (long c = 0; c < g.n_cells(); ++c) {
        RescaledState s = field.state(c);
        bool clamped = false;
        if (s.k < 0.0) throw std::domain_error("negative turbulent kinetic energy");

        const double nu_t0 = params.eddy_nu(s.k);
        const double tau_sigma = eps * params.alpha1 * (nu_t0 + nu);
        const double tau_y = eps * params.alpha3 * (nu_t0 + nu);
        const double decay_sigma = std::exp(-dt / tau_sigma);
        const double decay_y = std::exp(-dt / tau_y);

        const double sig2_0 = sym_norm2(s.sigma);
        const double diss_coeff = params.beta * params.c_d / (params.alpha2 * params.l);

        double k_new;
        if (sig2_0 == 0.0) {
            // dk/dt = -diss_coeff * k^(3/2) has the closed-form flow map.
            const double a = 0.5 * diss_coeff;
            const double denom = 1.0 + a * std::sqrt(s.k) * dt;
            k_new = s.k / (denom * denom);
        } else {
            // Production feeds on the exponentially decaying sigma(t); Heun
            // substeps resolve the decay time scale.
            const double prod_coeff = 2.0 * params.beta / (eps * params.alpha2);
            const double x_rate = 2.0 / tau_sigma;
            auto rhs = [&](double t, double k) {
                const double kk = std::max(k, 0.0);
                const double nu_t = params.l * std::sqrt(kk);
                const double denom = (nu_t + nu) * (nu_t + nu);
                const double x_t = sig2_0 * std::exp(-x_rate * t);
                return prod_coeff * nu_t / denom * x_t - diss_coeff * kk * std::sqrt(kk);
            };
            int n_sub = std::max<long>(k_substeps,
                                       std::min<long>(400, static_cast<long>(std::ceil(3.0 * dt * x_rate))));
            const double h = dt / n_sub;
            double k = s.k;
            for (int n = 0; n < n_sub; ++n) {
                const double t = n * h;
                const double f0 = rhs(t, k);
                double k_pred = k + h * f0;
                if (k_pred < 0.0) {
                    k_pred = 0.0;
                    clamped = true;
                }
                const double f1 = rhs(t + h, k_pred);
                k += 0.5 * h * (f0 + f1);
                if (k < 0.0) {
                    k = 0.0;
                    clamped = true;
                }
            }
            k_new = k;
        }

        for (int m = 0; m < 6; ++m) s.sigma[m] *= decay_sigma;
        for (int i = 0; i < 3; ++i) s.y[i] *= decay_y;
        s.k = k_new;
        if (!std::isfinite(s.k)) throw std::runtime_error("non-finite state in relaxation substep");
        out.set_state(c, s);
        if (clamped && stats) ++stats->clamp_count;
    }
    return out;
}

Field strang_step(const Field& field, const ModelParams& params, double dt,
                  const TimeControls& controls, SubstepStats* stats) {
    Field a = relaxation_substep(field, params, 0.5 * dt, controls.k_substeps, stats);
    Field b = hyperbolic_substep(a, params, dt, controls.flux, stats);
    return relaxation_substep(b, params, 0.5 * dt, controls.k_substeps, stats);
}

StepRecord measure_step(const Field& field, const ModelParams& params, long step, double time,
                        double dt, long clamp_count) {
    const Grid& g = field.grid;
    const double vol = g.cell_volume();
    StepRecord r;
    r.step = step;
    r.time = time;
    r.dt = dt;
    r.clamp_count = clamp_count;
    r.min_h_constrained = std::numeric_limits<double>::infinity();
    for (long c = 0; c < g.n_cells(); ++c) {
        const RescaledState s = field.state(c);
        const PhysState p = unscale_map(s, params);
        r.mass += p.rho * vol;
        for (int i = 0; i < 3; ++i) r.momentum[i] += p.rho * p.u[i] * vol;
        r.entropy_total += entropy(p, params) * vol;
        r.max_sigma = std::max(r.max_sigma, std::sqrt(sym_norm2(s.sigma)));
        if (pd_constraint(p, params)) {
            r.min_h_constrained = std::min(r.min_h_constrained, entropy_production(p, params));
        } else {
            ++r.constraint_violations;
        }
    }
    if (!std::isfinite(r.min_h_constrained)) r.min_h_constrained = 0.0;
    return r;
}

namespace {

void check_state_bounds(const Field& field, long step) {
    for (double v : field.data) {
        if (!std::isfinite(v)) throw SolverAbort(step, "aborted run: non-finite state");
        if (std::abs(v) > kBlowupLimit) throw SolverAbort(step, "aborted run: blow-up detected");
    }
}

}  // namespace

RunResult run_simulation(const Field& initial, const ModelParams& params,
                         const TimeControls& controls) {
    params.validate();
    controls.validate();
    initial.grid.validate();

    RunResult result;
    result.final_field = initial;
    result.min_h_constrained = std::numeric_limits<double>::infinity();

    check_state_bounds(initial, 0);
    StepRecord rec0;
    try {
        rec0 = measure_step(initial, params, 0, 0.0, 0.0, 0);
    } catch (const std::exception& e) {
        throw SolverAbort(0, e.what());
    }
    result.log.push_back(rec0);
    result.min_h_constrained = std::min(result.min_h_constrained, rec0.min_h_constrained);
    result.constraint_violations += rec0.constraint_violations;

    // Snapshot times are laid out evenly over (0, t_final].
    std::vector<double> snap_times;
    for (int s = 1; s <= controls.snapshots; ++s)
        snap_times.push_back(controls.t_final * s / controls.snapshots);
    std::size_t next_snap = 0;

    if (controls.t_final <= 0.0) {
        result.snapshots.push_back({0.0, initial});
        return result;
    }

    double t = 0.0;
    long step = 0;
    double entropy_prev = rec0.entropy_total;
    SubstepStats stats;

    while (t < controls.t_final && step < controls.max_steps) {
        double dt;
        try {
            dt = cfl_dt(result.final_field, params, controls.cfl);
        } catch (const std::exception& e) {
            throw SolverAbort(step, e.what());
        }
        bool hits_end = false;
        double t_next = t + dt;
        if (next_snap < snap_times.size() && t_next >= snap_times[next_snap] - 1e-14) {
            dt = snap_times[next_snap] - t;
            t_next = snap_times[next_snap];
            hits_end = true;
        }
        if (t_next >= controls.t_final - 1e-14) {
            dt = controls.t_final - t;
            t_next = controls.t_final;
        }

        try {
            result.final_field = strang_step(result.final_field, params, dt, controls, &stats);
        } catch (const SolverAbort&) {
            throw;
        } catch (const std::exception& e) {
            throw SolverAbort(step + 1, e.what());
        }
        ++step;
        t = t_next;
        check_state_bounds(result.final_field, step);

        StepRecord rec;
        try {
            rec = measure_step(result.final_field, params, step, t, dt, stats.clamp_count);
        } catch (const std::exception& e) {
            throw SolverAbort(step, e.what());
        }
        result.log.push_back(rec);
        result.min_h_constrained = std::min(result.min_h_constrained, rec.min_h_constrained);
        result.constraint_violations += rec.constraint_violations;
        const double dip = (entropy_prev - rec.entropy_total) /
                           std::max(std::abs(entropy_prev), 1e-30);
        result.worst_entropy_dip = std::max(result.worst_entropy_dip, dip);
        entropy_prev = rec.entropy_total;

        if (hits_end || (next_snap < snap_times.size() && t >= snap_times[next_snap] - 1e-14)) {
            result.snapshots.push_back({t, result.final_field});
            ++next_snap;
        }
    }

    result.total_steps = step;
    result.clamp_count = stats.clamp_count;
    return result;
}

}  // namespace hyperturb
