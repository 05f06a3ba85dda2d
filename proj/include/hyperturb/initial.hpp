/// @file initial.hpp
/// @brief Built-in initial conditions for runs and sweeps.

#pragma once

#include <string>

#include "hyperturb/grid.hpp"
#include "hyperturb/incompressible.hpp"
#include "hyperturb/params.hpp"

namespace hyperturb {

enum class InitKind { rest, acoustic_pulse, shear_layer, taylor_green };

InitKind init_kind_from_string(const std::string& name);
std::string to_string(InitKind k);

/// Divergence-free 2D velocity + uniform k for the limit solver.
///   shear-layer:  u = (A sin(2*pi*y/ly), A/2 sin(2*pi*x/lx), 0)
///   taylor-green: u = A (sin X cos Y, -cos X sin Y, 0), X = 2*pi*x/lx
IncompressibleState incompressible_initial(InitKind kind, const Grid& grid, double amplitude,
                                           double k0);

/// Raw (unprepared) compressible field: velocity/k as above with
/// phi = sigma = y = 0; acoustic-pulse is a 1D Gaussian phi bump at rest.
Field compressible_initial(InitKind kind, const Grid& grid, double amplitude, double k0);

}  // namespace hyperturb
