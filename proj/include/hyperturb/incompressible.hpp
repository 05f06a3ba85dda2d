/// @file incompressible.hpp
/// @brief Spectral reference solver for the low Mach limit system
///        (incompressible RANS coupled with the one-equation k closure) and
///        construction of well-prepared compressible initial data.

#pragma once

#include <vector>

#include "hyperturb/fft.hpp"
#include "hyperturb/grid.hpp"
#include "hyperturb/params.hpp"

namespace hyperturb {

/// Divergence-free velocity, zero-mean pressure and turbulent kinetic energy
/// on a periodic 2D grid.  u3 is carried for completeness (out-of-plane
/// derivatives vanish).
struct IncompressibleState {
    Grid grid;
    ScalarGrid u1, u2, u3;
    ScalarGrid pi;
    ScalarGrid k;

    IncompressibleState() = default;
    explicit IncompressibleState(const Grid& g)
        : grid(g),
          u1(static_cast<std::size_t>(g.n_cells()), 0.0),
          u2(static_cast<std::size_t>(g.n_cells()), 0.0),
          u3(static_cast<std::size_t>(g.n_cells()), 0.0),
          pi(static_cast<std::size_t>(g.n_cells()), 0.0),
          k(static_cast<std::size_t>(g.n_cells()), 0.0) {}
};

struct IncompressibleRhs {
    ScalarGrid du1, du2, du3, dk;
    ScalarGrid pi;  // pressure recovered as the projection multiplier
};

/// Fourier-space Leray projection of the velocity; idempotent, kills pure
/// gradients.
void project_divfree(IncompressibleState& state);

/// Right-hand side of the limit system for limit-compatible parameters
/// (alpha2 = beta = xi^2, rho0 = 1).  The pressure is recovered from the
/// projection and normalized to zero mean.
IncompressibleRhs limit_rhs(const IncompressibleState& state, const ModelParams& params);

/// Same k equation assembled through the sigma and y substitutions instead of
/// the direct one-equation form; used as the dual-assembly oracle.
ScalarGrid limit_rhs_k_from_sigma_y(const IncompressibleState& state, const ModelParams& params);

struct LimitTrajectory {
    IncompressibleState final_state;
    double max_divergence = 0.0;  // worst discrete divergence seen
    long steps = 0;
};

/// SSP-RK3 integration with projection each stage and k clamped at zero.
LimitTrajectory run_limit(const IncompressibleState& initial, const ModelParams& params,
                          double t_final, long n_steps);

/// Well-prepared compressible data sitting on the relaxation manifold:
/// phi = eps*pi, u copied, sigma = -(sqrt(eps)/rho0)(l sqrt(k) + nu) S(u),
/// y = -(sqrt(eps) xi alpha3 / rho0)(l sqrt(k) + nu) grad(k).
Field well_prepared_initial_data(const IncompressibleState& state, const ModelParams& params);

/// Symmetric velocity gradient as six scalar grids (2D derivatives).
std::array<ScalarGrid, 6> strain_tensor(const IncompressibleState& state);

}  // namespace hyperturb
