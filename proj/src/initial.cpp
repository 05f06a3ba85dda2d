/// @file initial.cpp

#include "hyperturb/initial.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperturb {

InitKind init_kind_from_string(const std::string& name) {
    if (name == "rest") return InitKind::rest;
    if (name == "acoustic-pulse") return InitKind::acoustic_pulse;
    if (name == "shear-layer") return InitKind::shear_layer;
    if (name == "taylor-green") return InitKind::taylor_green;
    throw std::domain_error("init kind must be one of: rest, acoustic-pulse, shear-layer, taylor-green");
}

std::string to_string(InitKind k) {
    switch (k) {
        case InitKind::rest: return "rest";
        case InitKind::acoustic_pulse: return "acoustic-pulse";
        case InitKind::shear_layer: return "shear-layer";
        case InitKind::taylor_green: return "taylor-green";
    }
    return "rest";
}

IncompressibleState incompressible_initial(InitKind kind, const Grid& grid, double amplitude,
                                           double k0) {
    if (grid.dim != 2) throw std::domain_error("incompressible initial data requires a 2D grid");
    if (k0 < 0.0) throw std::domain_error("k0 must be >= 0");
    IncompressibleState s(grid);
    const double two_pi = 2.0 * M_PI;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const std::size_t c = static_cast<std::size_t>(grid.index(i, j));
            const double xs = two_pi * grid.x(i) / grid.lx;
            const double ys = two_pi * grid.y(j) / grid.ly;
            switch (kind) {
                case InitKind::rest:
                    break;
                case InitKind::shear_layer:
                    s.u1[c] = amplitude * std::sin(ys);
                    s.u2[c] = 0.5 * amplitude * std::sin(xs);
                    break;
                case InitKind::taylor_green:
                    s.u1[c] = amplitude * std::sin(xs) * std::cos(ys);
                    s.u2[c] = -amplitude * std::cos(xs) * std::sin(ys);
                    break;
                case InitKind::acoustic_pulse:
                    throw std::domain_error("acoustic-pulse is a compressible initial condition");
            }
            s.k[c] = k0;
        }
    }
    return s;
}

Field compressible_initial(InitKind kind, const Grid& grid, double amplitude, double k0) {
    if (k0 < 0.0) throw std::domain_error("k0 must be >= 0");
    Field f(grid);
    const double two_pi = 2.0 * M_PI;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const long c = grid.index(i, j);
            RescaledState r;
            r.k = k0;
            const double xs = two_pi * grid.x(i) / grid.lx;
            const double ys = two_pi * grid.y(j) / grid.ly;
            switch (kind) {
                case InitKind::rest:
                    break;
                case InitKind::acoustic_pulse: {
                    const double w = grid.lx / 20.0;
                    const double dxp = grid.x(i) - 0.5 * grid.lx;
                    r.phi = amplitude * std::exp(-dxp * dxp / (2.0 * w * w));
                    break;
                }
                case InitKind::shear_layer:
                    if (grid.dim != 2) throw std::domain_error("shear-layer requires a 2D grid");
                    r.u = {amplitude * std::sin(ys), 0.5 * amplitude * std::sin(xs), 0.0};
                    break;
                case InitKind::taylor_green:
                    if (grid.dim != 2) throw std::domain_error("taylor-green requires a 2D grid");
                    r.u = {amplitude * std::sin(xs) * std::cos(ys),
                           -amplitude * std::cos(xs) * std::sin(ys), 0.0};
                    break;
            }
            f.set_state(c, r);
        }
    }
    return f;
}

}  // namespace hyperturb
