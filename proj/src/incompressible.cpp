/// @file incompressible.cpp
/// @brief Spectral limit-system solver and well-prepared data construction.

#include "hyperturb/incompressible.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace hyperturb {

namespace {

void require_compatible(const ModelParams& params) {
    if (!params.limit_compatible())
        throw std::domain_error(
            "limit system requires limit-compatible parameters (alpha2 = beta = xi^2, rho0 = 1)");
}

ScalarGrid eddy_nu_grid(const ScalarGrid& k, const ModelParams& params) {
    ScalarGrid nu_t(k.size());
    for (std::size_t c = 0; c < k.size(); ++c) nu_t[c] = params.l * std::sqrt(std::max(k[c], 0.0));
    return nu_t;
}

}  // namespace

std::array<ScalarGrid, 6> strain_tensor(const IncompressibleState& state) {
    const Spectral2D sp(state.grid);
    const ScalarGrid d1u1 = sp.derivative(state.u1, 0);
    const ScalarGrid d2u1 = sp.derivative(state.u1, 1);
    const ScalarGrid d1u2 = sp.derivative(state.u2, 0);
    const ScalarGrid d2u2 = sp.derivative(state.u2, 1);
    const ScalarGrid d1u3 = sp.derivative(state.u3, 0);
    const ScalarGrid d2u3 = sp.derivative(state.u3, 1);

    const std::size_t n = state.u1.size();
    std::array<ScalarGrid, 6> s;
    for (auto& g : s) g.assign(n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        s[0][c] = d1u1[c];                        // S11
        s[1][c] = 0.5 * (d1u2[c] + d2u1[c]);      // S12
        s[2][c] = 0.5 * d1u3[c];                  // S13
        s[3][c] = d2u2[c];                        // S22
        s[4][c] = 0.5 * d2u3[c];                  // S23
        s[5][c] = 0.0;                            // S33
    }
    return s;
}

void project_divfree(IncompressibleState& state) {
    const Spectral2D sp(state.grid);
    sp.project_div_free(state.u1, state.u2);
}

IncompressibleRhs limit_rhs(const IncompressibleState& state, const ModelParams& params) {
    require_compatible(params);
    const Spectral2D sp(state.grid);
    const std::size_t n = state.u1.size();

    const auto s6 = strain_tensor(state);
    const ScalarGrid nu_t = eddy_nu_grid(state.k, params);

    // sigma = -(nu_T + nu) S; assemble its divergence spectrally.
    std::array<ScalarGrid, 6> sigma;
    for (int m = 0; m < 6; ++m) {
        sigma[m].resize(n);
        for (std::size_t c = 0; c < n; ++c) sigma[m][c] = -(nu_t[c] + params.nu) * s6[m][c];
    }
    const ScalarGrid d1s11 = sp.derivative(sigma[0], 0);
    const ScalarGrid d2s12 = sp.derivative(sigma[1], 1);
    const ScalarGrid d1s12 = sp.derivative(sigma[1], 0);
    const ScalarGrid d2s22 = sp.derivative(sigma[3], 1);
    const ScalarGrid d1s13 = sp.derivative(sigma[2], 0);
    const ScalarGrid d2s23 = sp.derivative(sigma[4], 1);

    const ScalarGrid d1k = sp.derivative(state.k, 0);
    const ScalarGrid d2k = sp.derivative(state.k, 1);
    const ScalarGrid d1u1 = sp.derivative(state.u1, 0);
    const ScalarGrid d2u1 = sp.derivative(state.u1, 1);
    const ScalarGrid d1u2 = sp.derivative(state.u2, 0);
    const ScalarGrid d2u2 = sp.derivative(state.u2, 1);
    const ScalarGrid d1u3 = sp.derivative(state.u3, 0);
    const ScalarGrid d2u3 = sp.derivative(state.u3, 1);

    // Unprojected momentum right-hand side F = -u.grad(u) - div(sigma) - (2/3)grad(k).
    ScalarGrid f1(n), f2(n), f3(n);
    for (std::size_t c = 0; c < n; ++c) {
        const double adv1 = state.u1[c] * d1u1[c] + state.u2[c] * d2u1[c];
        const double adv2 = state.u1[c] * d1u2[c] + state.u2[c] * d2u2[c];
        const double adv3 = state.u1[c] * d1u3[c] + state.u2[c] * d2u3[c];
        f1[c] = -adv1 - (d1s11[c] + d2s12[c]) - (2.0 / 3.0) * d1k[c];
        f2[c] = -adv2 - (d1s12[c] + d2s22[c]) - (2.0 / 3.0) * d2k[c];
        f3[c] = -adv3 - (d1s13[c] + d2s23[c]);
    }

    // Pressure from the projection: laplace(pi) = div(F), zero mean.
    const ScalarGrid d1f1 = sp.derivative(f1, 0);
    const ScalarGrid d2f2 = sp.derivative(f2, 1);
    ScalarGrid divf(n);
    for (std::size_t c = 0; c < n; ++c) divf[c] = d1f1[c] + d2f2[c];
    ScalarGrid pi = sp.poisson(divf);

    const ScalarGrid d1pi = sp.derivative(pi, 0);
    const ScalarGrid d2pi = sp.derivative(pi, 1);

    // One-equation form of the k dynamics (Prandtl): advection, production,
    // dissipation, gradient diffusion.
    ScalarGrid q1(n), q2(n);
    for (std::size_t c = 0; c < n; ++c) {
        q1[c] = (params.nu + nu_t[c]) * d1k[c];
        q2[c] = (params.nu + nu_t[c]) * d2k[c];
    }
    const ScalarGrid d1q1 = sp.derivative(q1, 0);
    const ScalarGrid d2q2 = sp.derivative(q2, 1);

    IncompressibleRhs rhs;
    rhs.du1.resize(n);
    rhs.du2.resize(n);
    rhs.du3.resize(n);
    rhs.dk.resize(n);
    rhs.pi = std::move(pi);
    for (std::size_t c = 0; c < n; ++c) {
        rhs.du1[c] = f1[c] - d1pi[c];
        rhs.du2[c] = f2[c] - d2pi[c];
        rhs.du3[c] = f3[c];
        Sym6 s = {s6[0][c], s6[1][c], s6[2][c], s6[3][c], s6[4][c], s6[5][c]};
        const double ss = sym_norm2(s);
        const double kk = std::max(state.k[c], 0.0);
        rhs.dk[c] = -(state.u1[c] * d1k[c] + state.u2[c] * d2k[c]) + 2.0 * nu_t[c] * ss -
                    params.c_d * kk * std::sqrt(kk) / params.l + (d1q1[c] + d2q2[c]);
    }
    return rhs;
}

ScalarGrid limit_rhs_k_from_sigma_y(const IncompressibleState& state, const ModelParams& params) {
    require_compatible(params);
    const Spectral2D sp(state.grid);
    const std::size_t n = state.u1.size();

    const auto s6 = strain_tensor(state);
    const ScalarGrid nu_t = eddy_nu_grid(state.k, params);
    const ScalarGrid d1k = sp.derivative(state.k, 0);
    const ScalarGrid d2k = sp.derivative(state.k, 1);

    // sigma = -(nu_T + nu) S, y = -xi alpha3 (nu_T + nu) grad(k).
    ScalarGrid y1(n), y2(n);
    for (std::size_t c = 0; c < n; ++c) {
        y1[c] = -params.xi * params.alpha3 * (nu_t[c] + params.nu) * d1k[c];
        y2[c] = -params.xi * params.alpha3 * (nu_t[c] + params.nu) * d2k[c];
    }
    const ScalarGrid d1y1 = sp.derivative(y1, 0);
    const ScalarGrid d2y2 = sp.derivative(y2, 1);

    ScalarGrid dk(n);
    for (std::size_t c = 0; c < n; ++c) {
        Sym6 sig;
        for (int m = 0; m < 6; ++m) sig[m] = -(nu_t[c] + params.nu) * s6[m][c];
        const double sig2 = sym_norm2(sig);
        const double denom = (nu_t[c] + params.nu) * (nu_t[c] + params.nu);
        const double kk = std::max(state.k[c], 0.0);
        dk[c] = -(state.u1[c] * d1k[c] + state.u2[c] * d2k[c]) -
                params.xi / (params.alpha2 * params.alpha3) * (d1y1[c] + d2y2[c]) +
                2.0 * params.beta / params.alpha2 * nu_t[c] / denom * sig2 -
                params.beta * params.c_d / (params.alpha2 * params.l) * kk * std::sqrt(kk);
    }
    return dk;
}

LimitTrajectory run_limit(const IncompressibleState& initial, const ModelParams& params,
                          double t_final, long n_steps) {
    require_compatible(params);
    if (n_steps <= 0) throw std::domain_error("run_limit: n_steps must be > 0");
    const Spectral2D sp(initial.grid);
    const std::size_t n = initial.u1.size();
    const double dt = t_final / static_cast<double>(n_steps);

    IncompressibleState state = initial;
    project_divfree(state);

    auto euler_stage = [&](const IncompressibleState& s, double h) {
        const IncompressibleRhs rhs = limit_rhs(s, params);
        IncompressibleState out = s;
        for (std::size_t c = 0; c < n; ++c) {
            out.u1[c] = s.u1[c] + h * rhs.du1[c];
            out.u2[c] = s.u2[c] + h * rhs.du2[c];
            out.u3[c] = s.u3[c] + h * rhs.du3[c];
            out.k[c] = std::max(s.k[c] + h * rhs.dk[c], 0.0);
        }
        sp.project_div_free(out.u1, out.u2);
        return out;
    };

    LimitTrajectory traj;
    for (long step = 0; step < n_steps; ++step) {
        // SSP-RK3 with projection and k clamp each stage.
        IncompressibleState s1 = euler_stage(state, dt);
        IncompressibleState s2 = euler_stage(s1, dt);
        for (std::size_t c = 0; c < n; ++c) {
            s2.u1[c] = 0.75 * state.u1[c] + 0.25 * s2.u1[c];
            s2.u2[c] = 0.75 * state.u2[c] + 0.25 * s2.u2[c];
            s2.u3[c] = 0.75 * state.u3[c] + 0.25 * s2.u3[c];
            s2.k[c] = std::max(0.75 * state.k[c] + 0.25 * s2.k[c], 0.0);
        }
        sp.project_div_free(s2.u1, s2.u2);
        IncompressibleState s3 = euler_stage(s2, dt);
        for (std::size_t c = 0; c < n; ++c) {
            s3.u1[c] = state.u1[c] / 3.0 + 2.0 / 3.0 * s3.u1[c];
            s3.u2[c] = state.u2[c] / 3.0 + 2.0 / 3.0 * s3.u2[c];
            s3.u3[c] = state.u3[c] / 3.0 + 2.0 / 3.0 * s3.u3[c];
            s3.k[c] = std::max(state.k[c] / 3.0 + 2.0 / 3.0 * s3.k[c], 0.0);
        }
        sp.project_div_free(s3.u1, s3.u2);
        state = std::move(s3);

        for (double v : state.u1)
            if (!std::isfinite(v)) throw std::runtime_error("run_limit: blow-up detected");
        traj.max_divergence = std::max(traj.max_divergence, sp.divergence_max(state.u1, state.u2));
        ++traj.steps;
    }

    state.pi = limit_rhs(state, params).pi;
    traj.final_state = std::move(state);
    return traj;
}

Field well_prepared_initial_data(const IncompressibleState& state, const ModelParams& params) {
    const Spectral2D sp(state.grid);
    const std::size_t n = state.u1.size();
    const double eps = params.epsilon;
    const double sqrt_eps = std::sqrt(eps);
    const double rho0 = params.eos.rho0;

    IncompressibleState s = state;
    s.pi = limit_rhs(s, params).pi;

    const auto s6 = strain_tensor(s);
    const ScalarGrid d1k = sp.derivative(s.k, 0);
    const ScalarGrid d2k = sp.derivative(s.k, 1);

    Field field(state.grid);
    for (std::size_t c = 0; c < n; ++c) {
        RescaledState r;
        r.phi = eps * s.pi[c];
        r.u = {s.u1[c], s.u2[c], s.u3[c]};
        const double visc = params.l * std::sqrt(std::max(s.k[c], 0.0)) + params.nu;
        for (int m = 0; m < 6; ++m) r.sigma[m] = -sqrt_eps / rho0 * visc * s6[m][c];
        r.k = std::max(s.k[c], 0.0);
        r.y = {-sqrt_eps * params.xi * params.alpha3 / rho0 * visc * d1k[c],
               -sqrt_eps * params.xi * params.alpha3 / rho0 * visc * d2k[c], 0.0};
        field.set_state(static_cast<long>(c), r);
    }
    return field;
}

}  // namespace hyperturb
