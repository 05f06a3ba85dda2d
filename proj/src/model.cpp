/// @file model.cpp
/// @brief Flux Jacobian assembly, symmetrizer, sources, dissipation matrix,
///        entropy and wave speeds of the CDF turbulence model.

#include "hyperturb/model.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperturb {

namespace {

/// Off-diagonal coupling C_{3x6}: row i gives the sigma entries appearing in
/// the divergence of sigma in the u_i equation.
double coupling_c(int row, int col, const Vec3& z) {
    switch (row) {
        case 0:
            switch (col) { case 0: return z[0]; case 1: return z[1]; case 2: return z[2]; default: return 0.0; }
        case 1:
            switch (col) { case 1: return z[0]; case 3: return z[1]; case 4: return z[2]; default: return 0.0; }
        case 2:
            switch (col) { case 2: return z[0]; case 4: return z[1]; case 5: return z[2]; default: return 0.0; }
        default:
            return 0.0;
    }
}

/// Strain coupling D_{6x3}: row m gives the velocity entries appearing in the
/// symmetric gradient feeding sigma_m.
double coupling_d(int row, int col, const Vec3& z) {
    switch (row) {
        case 0: return col == 0 ? z[0] : 0.0;
        case 1:
            switch (col) { case 0: return 0.5 * z[1]; case 1: return 0.5 * z[0]; default: return 0.0; }
        case 2:
            switch (col) { case 0: return 0.5 * z[2]; case 2: return 0.5 * z[0]; default: return 0.0; }
        case 3: return col == 1 ? z[1] : 0.0;
        case 4:
            switch (col) { case 1: return 0.5 * z[2]; case 2: return 0.5 * z[1]; default: return 0.0; }
        case 5: return col == 2 ? z[2] : 0.0;
        default: return 0.0;
    }
}

}  // namespace

EddyViscosity eddy_viscosity(double k, const ModelParams& params) {
    const double nu_t = params.eddy_nu(k);
    return {nu_t, nu_t / params.nu};
}

EosPoint eos_point(double phi, const ModelParams& params) {
    const double p = params.p0() + params.epsilon * phi;
    if (!(p > 0.0)) throw std::domain_error("state: reconstructed pressure is nonpositive");
    return {p, density_from_pressure(p, params.eos), q_of_p(p, params.eos)};
}

RescaledState scale_map(const PhysState& phys, const ModelParams& params) {
    if (!(params.epsilon > 0.0)) throw std::domain_error("epsilon must be > 0");
    if (phys.k < 0.0) throw std::domain_error("negative turbulent kinetic energy");
    const double eps = params.epsilon;
    const double sqrt_eps = std::sqrt(eps);

    RescaledState r;
    r.phi = (pressure(phys.rho, params.eos) - params.p0()) / eps;
    for (int i = 0; i < 3; ++i) r.u[i] = phys.u[i] / eps;
    r.k = phys.k / (eps * eps);
    for (int i = 0; i < 3; ++i) r.y[i] = phys.y[i] / sqrt_eps;
    // sigma^eps = (mu_T + 1) sigma / eps^(3/2), mu_T evaluated at the rescaled k
    const double mu_t = params.eddy_mu(r.k);
    const double fac = (mu_t + 1.0) / (eps * sqrt_eps);
    for (int m = 0; m < 6; ++m) r.sigma[m] = fac * phys.sigma[m];
    return r;
}

PhysState unscale_map(const RescaledState& resc, const ModelParams& params) {
    if (!(params.epsilon > 0.0)) throw std::domain_error("epsilon must be > 0");
    if (resc.k < 0.0) throw std::domain_error("negative turbulent kinetic energy");
    const double eps = params.epsilon;
    const double sqrt_eps = std::sqrt(eps);
    const EosPoint pt = eos_point(resc.phi, params);

    PhysState p;
    p.rho = pt.rho;
    for (int i = 0; i < 3; ++i) p.u[i] = eps * resc.u[i];
    p.k = eps * eps * resc.k;
    for (int i = 0; i < 3; ++i) p.y[i] = sqrt_eps * resc.y[i];
    const double mu_t = params.eddy_mu(resc.k);
    const double fac = eps * sqrt_eps / (mu_t + 1.0);
    for (int m = 0; m < 6; ++m) p.sigma[m] = fac * resc.sigma[m];
    return p;
}

SquareMatrix14 flux_jacobian(const RescaledState& state, const Vec3& zeta,
                             const ModelParams& params) {
    if (state.k < 0.0) throw std::domain_error("negative turbulent kinetic energy");
    const EosPoint pt = eos_point(state.phi, params);
    const double eps = params.epsilon;
    const double sqrt_eps = std::sqrt(eps);
    const double rho = pt.rho;

    SquareMatrix14 a;
    const double u_dot_zeta = dot(state.u, zeta);
    for (int i = 0; i < kNumVars; ++i) a(i, i) = u_dot_zeta;

    // phi row <-> u columns and u rows <-> phi column (acoustic block)
    for (int j = 0; j < 3; ++j) {
        a(var::phi, var::u + j) += zeta[j] / (eps * pt.q);
        a(var::u + j, var::phi) += zeta[j] / (eps * rho);
    }
    // u rows <-> sigma columns, u rows <-> k column
    for (int i = 0; i < 3; ++i) {
        for (int m = 0; m < 6; ++m)
            a(var::u + i, var::sig + m) += coupling_c(i, m, zeta) / (sqrt_eps * rho);
        a(var::u + i, var::k) += 2.0 * zeta[i] / (3.0 * rho);
    }
    // sigma rows <-> u columns
    for (int m = 0; m < 6; ++m)
        for (int j = 0; j < 3; ++j)
            a(var::sig + m, var::u + j) += coupling_d(m, j, zeta) / (sqrt_eps * params.alpha1 * rho);
    // k row <-> u and y columns; y rows <-> k column
    for (int j = 0; j < 3; ++j) {
        a(var::k, var::u + j) += 2.0 * zeta[j] / (3.0 * params.alpha2 * rho);
        a(var::k, var::y + j) += params.xi * zeta[j] / (sqrt_eps * params.alpha2 * params.alpha3 * rho);
        a(var::y + j, var::k) += params.xi * zeta[j] / (sqrt_eps * rho);
    }
    return a;
}

SquareMatrix14 symmetrizer(const RescaledState& state, const ModelParams& params) {
    const EosPoint pt = eos_point(state.phi, params);
    SquareMatrix14 a0;
    a0(var::phi, var::phi) = pt.q / pt.rho;
    for (int i = 0; i < 3; ++i) a0(var::u + i, var::u + i) = 1.0;
    for (int m = 0; m < 6; ++m) a0(var::sig + m, var::sig + m) = params.alpha1 * kSymWeights[m];
    a0(var::k, var::k) = params.alpha2;
    for (int i = 0; i < 3; ++i) a0(var::y + i, var::y + i) = 1.0 / params.alpha3;
    return a0;
}

std::array<double, kNumVars> source(const RescaledState& state, const ModelParams& params) {
    const double nu_t = params.eddy_nu(state.k);
    const double nu = params.nu;
    const double eps = params.epsilon;

    std::array<double, kNumVars> q{};
    const double sigma_rate = 1.0 / (eps * params.alpha1 * (nu_t + nu));
    for (int m = 0; m < 6; ++m) q[var::sig + m] = -sigma_rate * state.sigma[m];

    const double sig2 = sym_norm2(state.sigma);
    q[var::k] = (2.0 * params.beta / (eps * params.alpha2)) * nu_t / ((nu_t + nu) * (nu_t + nu)) * sig2 -
                (params.beta * params.c_d / (params.alpha2 * params.l)) * std::pow(state.k, 1.5);

    const double y_rate = 1.0 / (eps * params.alpha3 * (nu_t + nu));
    for (int i = 0; i < 3; ++i) q[var::y + i] = -y_rate * state.y[i];
    return q;
}

namespace {

/// Scalar blocks of the dissipation matrix; shared by the assembled matrix,
/// the constraint and the entropy-production quadratic form.
struct DissipationBlocks {
    double a;   // sigma-block diagonal scalar
    double cp;  // magnitude of the sigma/k coupling: column = -cp * sigma
    double d;   // k-block scalar
    double m;   // y-block diagonal scalar
    double nu_t;
    double mu_t;
};

DissipationBlocks dissipation_blocks(const PhysState& s, const ModelParams& p) {
    if (!(s.rho > 0.0)) throw std::domain_error("state: nonpositive density");
    const double nu_t = p.eddy_nu(s.k);
    const double mu_t = nu_t / p.nu;
    DissipationBlocks b;
    b.nu_t = nu_t;
    b.mu_t = mu_t;
    b.a = s.rho / (p.nu * (mu_t + 1.0)) * (1.0 + 2.0 * p.beta * nu_t * s.k / p.nu);
    b.cp = 2.0 * p.beta * s.rho * nu_t / (p.nu * p.nu * (mu_t + 1.0));
    b.d = p.c_d * p.beta * s.rho * nu_t / (p.l * p.l);
    b.m = s.rho / (p.nu + nu_t);
    return b;
}

}  // namespace

SquareMatrix10 dissipation_matrix(const PhysState& state, const ModelParams& params) {
    const DissipationBlocks b = dissipation_blocks(state, params);
    SquareMatrix10 m;
    for (int i = 0; i < 6; ++i) m(i, i) = b.a;
    for (int i = 0; i < 6; ++i) {
        m(i, 6) = -b.cp * state.sigma[i];
        m(6, i) = -b.cp * state.sigma[i];
    }
    m(6, 6) = b.d;
    for (int i = 0; i < 3; ++i) m(7 + i, 7 + i) = b.m;
    return m;
}

bool pd_constraint(const PhysState& state, const ModelParams& params) {
    if (!(state.rho > 0.0)) throw std::domain_error("state: nonpositive density");
    const double nu_t = params.eddy_nu(state.k);
    const double nu = params.nu;
    const double lhs = 4.0 * params.beta * nu_t * params.l * params.l /
                       (nu * nu * (nu_t + nu)) * sym_norm2(state.sigma);
    const double rhs = params.c_d * (1.0 + 2.0 * params.beta * nu_t * state.k / nu);
    return lhs < rhs;
}

double entropy(const PhysState& state, const ModelParams& params) {
    if (!(state.rho > 0.0)) throw std::domain_error("state: nonpositive density");
    const double mu_t = params.eddy_mu(state.k);
    const double mp1 = mu_t + 1.0;
    const double s = s_eq(1.0 / state.rho, params.eos) - 0.5 * norm2(state.u) -
                     0.5 * params.alpha1 * mp1 * mp1 * sym_norm2(state.sigma) -
                     0.5 * params.alpha2 * state.k * state.k -
                     0.5 * norm2(state.y) / params.alpha3;
    return state.rho * s;
}

double entropy_cdf(double v, const Vec3& u, const Sym6& c_var, double w, const Vec3& y,
                   const ModelParams& params) {
    return s_eq(v, params.eos) - 0.5 * norm2(u) - 0.5 * sym_norm2(c_var) / params.alpha1 -
           0.5 * w * w / params.alpha2 - 0.5 * norm2(y) / params.alpha3;
}

double entropy_production(const PhysState& state, const ModelParams& params) {
    const DissipationBlocks b = dissipation_blocks(state, params);
    const double mp1 = b.mu_t + 1.0;
    const double sig2 = sym_norm2(state.sigma);
    // <theta_sigma, a theta_sigma>_w + 2 k <coupling, theta_sigma>_w + d k^2 + m |y/alpha3|^2
    const double h_sigma = b.a * mp1 * mp1 * sig2;
    const double h_cross = -2.0 * b.cp * mp1 * state.k * sig2;
    const double h_k = b.d * state.k * state.k;
    const double h_y = b.m * norm2(state.y) / (params.alpha3 * params.alpha3);
    return h_sigma + h_cross + h_k + h_y;
}

double entropy_production_source(const PhysState& state, const ModelParams& params) {
    if (!(state.rho > 0.0)) throw std::domain_error("state: nonpositive density");
    const double nu_t = params.eddy_nu(state.k);
    const double nu = params.nu;
    const double mp1 = nu_t / nu + 1.0;
    const double sig2 = sym_norm2(state.sigma);
    const double h_sigma = mp1 * state.rho / nu * sig2;
    const double h_cross = -2.0 * params.beta * state.rho * nu_t * state.k / (nu * nu) * sig2;
    const double h_k = params.beta * params.c_d * state.rho / params.l * std::pow(state.k, 2.5);
    const double h_y = state.rho * norm2(state.y) / (params.alpha3 * params.alpha3 * (nu + nu_t));
    return h_sigma + h_cross + h_k + h_y;
}

WaveSpeedResult max_wave_speed(const RescaledState& state, const Vec3& n,
                               const ModelParams& params) {
    const SquareMatrix14 a = flux_jacobian(state, n, params);
    const SquareMatrix14 a0 = symmetrizer(state, params);

    // A0 is diagonal positive, so A0^(1/2) A A0^(-1/2) is a diagonal scaling.
    std::array<double, kNumVars> d_sqrt;
    for (int i = 0; i < kNumVars; ++i) d_sqrt[i] = std::sqrt(a0(i, i));
    SquareMatrix14 s;
    for (int i = 0; i < kNumVars; ++i)
        for (int j = 0; j < kNumVars; ++j) s(i, j) = d_sqrt[i] * a(i, j) / d_sqrt[j];

    WaveSpeedResult r;
    r.asymmetry = s.asymmetry();
    const double scale = s.max_abs();
    r.relative_asymmetry = scale > 0.0 ? r.asymmetry / scale : 0.0;
    r.lambda_max = spectral_radius_symmetric(s);
    if (!std::isfinite(r.lambda_max)) throw std::runtime_error("max_wave_speed: non-finite result");
    return r;
}

double max_wave_speed_value(const RescaledState& state, const Vec3& n,
                            const ModelParams& params) {
    return max_wave_speed(state, n, params).lambda_max;
}

}  // namespace hyperturb
