/// @file model.hpp
/// @brief The closed CDF turbulence model: scaling maps, flux Jacobians,
///        symmetrizer, relaxation source, dissipation matrix, entropy and
///        entropy production, and wave-speed queries.
///
/// The authoritative formulation is the rescaled primitive system in the
/// variables U = (phi, u, sigma, k, y); the unscaled physical system is
/// reached through unscale_map.  Pure functions throughout, safe to call
/// concurrently.

#pragma once

#include <array>

#include "hyperturb/matrix.hpp"
#include "hyperturb/params.hpp"
#include "hyperturb/types.hpp"

namespace hyperturb {

struct EddyViscosity {
    double nu_t;  // l * sqrt(k)
    double mu_t;  // nu_t / nu
};

EddyViscosity eddy_viscosity(double k, const ModelParams& params);

/// phi -> (p, rho, q) of the rescaled state; throws on nonpositive pressure.
struct EosPoint {
    double p;
    double rho;
    double q;
};
EosPoint eos_point(double phi, const ModelParams& params);

RescaledState scale_map(const PhysState& phys, const ModelParams& params);
PhysState unscale_map(const RescaledState& resc, const ModelParams& params);

/// Directional flux Jacobian A(U, zeta) of the rescaled quasilinear system.
/// zeta need not be a unit vector; the assembly is linear in zeta.
SquareMatrix14 flux_jacobian(const RescaledState& state, const Vec3& zeta,
                             const ModelParams& params);

/// Diagonal symmetrizer A0(U) = diag{q/rho, I3, alpha1*diag(1,2,2,1,2,1),
/// alpha2, I3/alpha3}; A0*A(U,zeta) is symmetric for all admissible states.
SquareMatrix14 symmetrizer(const RescaledState& state, const ModelParams& params);

/// Relaxation source Q(U): zero in the phi and u slots, exponential-decay
/// terms for sigma and y, production minus dissipation for k.
std::array<double, kNumVars> source(const RescaledState& state, const ModelParams& params);

/// Dissipation matrix M over (sigma 6-block, k, y 3-block), assembled exactly
/// as printed: symmetric, block structure with the sigma/k coupling column.
SquareMatrix10 dissipation_matrix(const PhysState& state, const ModelParams& params);

/// Positive-definiteness constraint for M:
///   4 beta nu_T l^2 / (nu^2 (nu_T + nu)) * |sigma|_w^2 < C_D (1 + 2 beta nu_T k / nu)
/// with the weighted tensor contraction |sigma|_w^2.  In the weighted-vector
/// geometry this is exactly the Schur-complement condition for M.
bool pd_constraint(const PhysState& state, const ModelParams& params);

/// Entropy density eta = rho * s with the quadratic non-equilibrium entropy;
/// the CDF variables are C = -alpha1 (mu_T + 1) sigma and w = -alpha2 k.
double entropy(const PhysState& state, const ModelParams& params);

/// Entropy in the CDF variables (v, u, C, w, y); strictly concave for
/// positive alphas.  Used by the concavity sweep.
double entropy_cdf(double v, const Vec3& u, const Sym6& c_var, double w, const Vec3& y,
                   const ModelParams& params);

/// Entropy production as the dissipation-matrix quadratic form
/// H = <theta, M theta> over the weighted sigma geometry, with
/// theta = ((mu_T+1) sigma, k, -y/alpha3).  Nonnegative exactly when
/// pd_constraint holds.
double entropy_production(const PhysState& state, const ModelParams& params);

/// Entropy production paired directly with the model's relaxation sources
/// (theta . q).  Differs from entropy_production by
/// 2 beta rho nu_T^2 k |sigma|_w^2 / nu^3 >= 0; the structural sweep logs
/// states where the two disagree in sign.
double entropy_production_source(const PhysState& state, const ModelParams& params);

struct WaveSpeedResult {
    double lambda_max;       // spectral radius of A(U, n)
    double asymmetry;        // max-abs asymmetry of the symmetrized Jacobian
    double relative_asymmetry;
};

/// Largest wave speed in direction n (|n| = 1).  Solved on the symmetrized
/// Jacobian A0^(1/2) A A0^(-1/2); the recorded asymmetry bounds the imaginary
/// parts of the true spectrum.
WaveSpeedResult max_wave_speed(const RescaledState& state, const Vec3& n,
                               const ModelParams& params);

double max_wave_speed_value(const RescaledState& state, const Vec3& n,
                            const ModelParams& params);

}  // namespace hyperturb
