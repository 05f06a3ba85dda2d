/// @file grid.hpp
/// @brief Periodic structured grids (1D/2D) and the per-cell state field.
///
/// Nodes sit at x_i = i*dx, y_j = j*dy on [0, lx) x [0, ly); cells are stored
/// row-major (j slow, i fast).  All boundaries are periodic.

#pragma once

#include <stdexcept>
#include <vector>

#include "hyperturb/types.hpp"

namespace hyperturb {

struct Grid {
    int dim = 1;
    int nx = 4;
    int ny = 1;
    double lx = 6.283185307179586477;
    double ly = 6.283185307179586477;

    static Grid make_1d(int nx, double lx) {
        Grid g;
        g.dim = 1;
        g.nx = nx;
        g.ny = 1;
        g.lx = lx;
        g.ly = lx;
        g.validate();
        return g;
    }

    static Grid make_2d(int nx, int ny, double lx, double ly) {
        Grid g;
        g.dim = 2;
        g.nx = nx;
        g.ny = ny;
        g.lx = lx;
        g.ly = ly;
        g.validate();
        return g;
    }

    void validate() const {
        if (dim != 1 && dim != 2) throw std::domain_error("grid: dim must be 1 or 2");
        if (nx < 4) throw std::domain_error("grid: nx must be >= 4");
        if (dim == 2 && ny < 4) throw std::domain_error("grid: ny must be >= 4");
        if (dim == 1 && ny != 1) throw std::domain_error("grid: ny must be 1 in 1D");
        if (!(lx > 0.0) || !(ly > 0.0)) throw std::domain_error("grid: domain lengths must be > 0");
    }

    double dx() const { return lx / nx; }
    double dy() const { return ly / ny; }
    double spacing(int axis) const { return axis == 0 ? dx() : dy(); }
    double cell_volume() const { return dim == 1 ? dx() : dx() * dy(); }
    long n_cells() const { return static_cast<long>(nx) * ny; }

    long index(int i, int j) const { return static_cast<long>(j) * nx + i; }
    int wrap_x(int i) const { return (i % nx + nx) % nx; }
    int wrap_y(int j) const { return (j % ny + ny) % ny; }

    double x(int i) const { return i * dx(); }
    double y(int j) const { return j * dy(); }
};

/// Per-cell RescaledState array over a grid.
struct Field {
    Grid grid;
    std::vector<double> data;  // n_cells * kNumVars, cell-major

    Field() = default;
    explicit Field(const Grid& g) : grid(g), data(static_cast<std::size_t>(g.n_cells()) * kNumVars, 0.0) {}

    double* cell(long c) { return data.data() + static_cast<std::size_t>(c) * kNumVars; }
    const double* cell(long c) const { return data.data() + static_cast<std::size_t>(c) * kNumVars; }

    RescaledState state(long c) const {
        const double* p = cell(c);
        std::array<double, kNumVars> a;
        for (int v = 0; v < kNumVars; ++v) a[v] = p[v];
        return RescaledState::from_array(a);
    }

    void set_state(long c, const RescaledState& s) {
        const auto a = s.to_array();
        double* p = cell(c);
        for (int v = 0; v < kNumVars; ++v) p[v] = a[v];
    }
};

}  // namespace hyperturb
