/// @file test_incompressible.cpp
/// @brief Spectral reference solver tests: projection identities, dual
///        assembly of the k equation, closed-form k decay, viscous decay
///        rates and well-prepared data construction.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperturb/diagnostics.hpp"
#include "hyperturb/incompressible.hpp"
#include "hyperturb/initial.hpp"

using namespace hyperturb;

namespace {

ModelParams compatible_params() {
    ModelParams p;  // defaults are limit-compatible
    p.epsilon = 0.1;
    return p;
}

Grid torus(int n) { return Grid::make_2d(n, n, 2.0 * M_PI, 2.0 * M_PI); }

/// Smooth random low-mode fields for property tests.
IncompressibleState random_smooth_state(const Grid& g, Rand& rng) {
    IncompressibleState s(g);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t c = static_cast<std::size_t>(g.index(i, j));
            const double x = g.x(i), y = g.y(j);
            double u1 = 0.0, u2 = 0.0, k = 0.6;
            for (int m = 1; m <= 2; ++m) {
                u1 += rng.uniform(-0.3, 0.3) * std::sin(m * y + rng.uniform(0.0, 6.28)) +
                      rng.uniform(-0.3, 0.3) * std::cos(m * x + rng.uniform(0.0, 6.28));
                u2 += rng.uniform(-0.3, 0.3) * std::sin(m * x + rng.uniform(0.0, 6.28));
                k += rng.uniform(-0.1, 0.1) * std::cos(m * x + rng.uniform(0.0, 6.28)) *
                     std::cos(m * y + rng.uniform(0.0, 6.28));
            }
            s.u1[c] = u1;
            s.u2[c] = u2;
            s.k[c] = std::max(k, 0.05);
        }
    }
    project_divfree(s);
    return s;
}

}  // namespace

TEST_CASE("project_divfree: identity on solenoidal fields, kills gradients, idempotent") {
    Grid g = torus(32);
    const Spectral2D sp(g);

    // Taylor-Green is divergence-free: projection leaves it unchanged.
    IncompressibleState tg = incompressible_initial(InitKind::taylor_green, g, 1.0, 0.0);
    IncompressibleState tg2 = tg;
    project_divfree(tg2);
    double diff = 0.0;
    for (std::size_t c = 0; c < tg.u1.size(); ++c)
        diff = std::max({diff, std::abs(tg.u1[c] - tg2.u1[c]), std::abs(tg.u2[c] - tg2.u2[c])});
    CHECK(diff <= 1e-12);

    // A pure gradient projects to zero.
    IncompressibleState grad(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t c = static_cast<std::size_t>(g.index(i, j));
            grad.u1[c] = std::cos(g.x(i)) * std::cos(g.y(j));   // d/dx of sin(x)cos(y)
            grad.u2[c] = -std::sin(g.x(i)) * std::sin(g.y(j));  // d/dy of sin(x)cos(y)
        }
    project_divfree(grad);
    double mx = 0.0;
    for (std::size_t c = 0; c < grad.u1.size(); ++c)
        mx = std::max({mx, std::abs(grad.u1[c]), std::abs(grad.u2[c])});
    CHECK(mx <= 1e-12);

    // Projecting twice equals projecting once; divergence below 1e-10.
    Rand rng(11);
    IncompressibleState s(g);
    for (std::size_t c = 0; c < s.u1.size(); ++c) {
        s.u1[c] = rng.uniform(-1.0, 1.0);
        s.u2[c] = rng.uniform(-1.0, 1.0);
    }
    project_divfree(s);
    CHECK(sp.divergence_max(s.u1, s.u2) <= 1e-10);
    IncompressibleState twice = s;
    project_divfree(twice);
    double d2 = 0.0;
    for (std::size_t c = 0; c < s.u1.size(); ++c)
        d2 = std::max({d2, std::abs(s.u1[c] - twice.u1[c]), std::abs(s.u2[c] - twice.u2[c])});
    CHECK(d2 <= 1e-13);
}

TEST_CASE("limit_rhs: uniform k decays pointwise, du vanishes at rest") {
    ModelParams p = compatible_params();
    Grid g = torus(16);
    IncompressibleState s(g);
    for (auto& v : s.k) v = 0.8;

    const IncompressibleRhs rhs = limit_rhs(s, p);
    const double expected = -p.c_d * std::pow(0.8, 1.5) / p.l;
    for (std::size_t c = 0; c < s.k.size(); ++c) {
        CHECK(rhs.du1[c] == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(rhs.du2[c] == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(rhs.dk[c] == doctest::Approx(expected).epsilon(1e-12));
    }

    ModelParams bad = p;
    bad.beta = 2.0;
    CHECK_THROWS_AS(limit_rhs(s, bad), std::domain_error);
}

TEST_CASE("limit_rhs: k diffusion matches the discrete product rule") {
    ModelParams p = compatible_params();
    Grid g = torus(32);
    const Spectral2D sp(g);
    IncompressibleState s(g);
    const double delta = 1e-4;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            s.k[g.index(i, j)] = 1.0 + delta * std::cos(g.x(i));

    const IncompressibleRhs rhs = limit_rhs(s, p);

    // Hand assembly with the same discrete operators:
    // (nu + nu_T) d2k/dx2 + (d nu_T/dx)(dk/dx) - C_D k^(3/2)/l.
    ScalarGrid nu_t(s.k.size());
    for (std::size_t c = 0; c < s.k.size(); ++c) nu_t[c] = p.l * std::sqrt(s.k[c]);
    const ScalarGrid dk = sp.derivative(s.k, 0);
    const ScalarGrid d2k = sp.derivative(dk, 0);
    const ScalarGrid dnut = sp.derivative(nu_t, 0);
    for (std::size_t c = 0; c < s.k.size(); ++c) {
        const double diff = (p.nu + nu_t[c]) * d2k[c] + dnut[c] * dk[c];
        const double want = diff - p.c_d * std::pow(s.k[c], 1.5) / p.l;
        CHECK(rhs.dk[c] == doctest::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("limit_rhs: dual assembly through sigma and y matches to 1e-12") {
    ModelParams p = compatible_params();
    Grid g = torus(32);
    Rand rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const IncompressibleState s = random_smooth_state(g, rng);
        const IncompressibleRhs direct = limit_rhs(s, p);
        const ScalarGrid via_sigma_y = limit_rhs_k_from_sigma_y(s, p);
        double scale = 1.0;
        for (double v : direct.dk) scale = std::max(scale, std::abs(v));
        double worst = 0.0;
        for (std::size_t c = 0; c < via_sigma_y.size(); ++c)
            worst = std::max(worst, std::abs(direct.dk[c] - via_sigma_y[c]));
        CHECK(worst <= 1e-12 * scale);
    }
}

TEST_CASE("run_limit: closed-form k decay to 1e-6 at t = 1") {
    ModelParams p = compatible_params();
    p.c_d = 1.0;
    p.l = 1.0;
    Grid g = torus(8);
    IncompressibleState s(g);
    for (auto& v : s.k) v = 1.0;

    const LimitTrajectory traj = run_limit(s, p, 1.0, 200);
    const double expected = 4.0 / 9.0;  // k0/(1 + sqrt(k0)/2)^2
    for (double v : traj.final_state.k) CHECK(std::abs(v - expected) <= 1e-6);
}

TEST_CASE("run_limit: Taylor-Green with k = 0 keeps k = 0 and stays solenoidal") {
    ModelParams p = compatible_params();
    Grid g = torus(32);
    const IncompressibleState tg = incompressible_initial(InitKind::taylor_green, g, 1.0, 0.0);
    const LimitTrajectory traj = run_limit(tg, p, 0.5, 50);
    for (double v : traj.final_state.k) CHECK(v == 0.0);
    CHECK(traj.max_divergence <= 1e-10);
}

TEST_CASE("run_limit: single-mode viscous decay rate matches the spectral oracle") {
    ModelParams p = compatible_params();
    Grid g = torus(16);
    IncompressibleState s(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) s.u1[g.index(i, j)] = std::sin(g.y(j));

    const double t_end = 0.5;
    const LimitTrajectory traj = run_limit(s, p, t_end, 100);

    // With k = 0 the stress term gives (nu/2) laplace(u): mode |k|^2 = 1
    // decays at rate nu/2.
    const double expected = std::exp(-0.5 * p.nu * t_end);
    double e0 = 0.0, e1 = 0.0;
    for (std::size_t c = 0; c < s.u1.size(); ++c) {
        e0 += s.u1[c] * s.u1[c];
        e1 += traj.final_state.u1[c] * traj.final_state.u1[c];
    }
    CHECK(std::sqrt(e1 / e0) == doctest::Approx(expected).epsilon(1e-6));

    // Energy is non-increasing when k = 0 and nu > 0.
    CHECK(e1 <= e0);
}

TEST_CASE("well_prepared_initial_data: gradients vanish, sqrt(eps) scaling, shear profile") {
    ModelParams p = compatible_params();
    Grid g = torus(32);

    // Uniform k and no flow: phi = sigma = y = 0, k copied.
    IncompressibleState s(g);
    for (auto& v : s.k) v = 0.7;
    const Field f = well_prepared_initial_data(s, p);
    for (long c = 0; c < g.n_cells(); ++c) {
        const RescaledState r = f.state(c);
        CHECK(std::abs(r.phi) <= 1e-13);
        CHECK(sym_norm2(r.sigma) <= 1e-26);
        CHECK(norm2(r.y) <= 1e-26);
        CHECK(r.k == doctest::Approx(0.7).epsilon(1e-15));
    }

    // sigma scales like sqrt(eps).
    IncompressibleState shear(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) shear.u1[g.index(i, j)] = std::sin(g.y(j));
    for (auto& v : shear.k) v = 0.5;

    ModelParams p2 = p;
    p2.epsilon = 2.0 * p.epsilon;
    const Field fa = well_prepared_initial_data(shear, p);
    const Field fb = well_prepared_initial_data(shear, p2);
    double na = 0.0, nb = 0.0;
    for (long c = 0; c < g.n_cells(); ++c) {
        na += sym_norm2(fa.state(c).sigma);
        nb += sym_norm2(fb.state(c).sigma);
    }
    CHECK(std::sqrt(nb / na) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));

    // Hand-differentiated sigma12 for u = (sin(x2), 0, 0), k = k0.
    const double visc = p.l * std::sqrt(0.5) + p.nu;
    for (long c = 0; c < g.n_cells(); ++c) {
        const int j = static_cast<int>(c) / g.nx;
        const RescaledState r = fa.state(c);
        const double want = -std::sqrt(p.epsilon) * 0.5 * visc * std::cos(g.y(j));
        CHECK(r.sigma[1] == doctest::Approx(want).epsilon(1e-9));
        CHECK(std::abs(r.sigma[0]) <= 1e-10);
        CHECK(std::abs(r.sigma[3]) <= 1e-10);
    }
}
