/// @file config.hpp
/// @brief Line-oriented "key = value" run configuration with [section]
///        headers, '#' comments, hard errors on unknown or duplicate keys.
///
/// Sections: model, grid, time, sweep, init, output.  The keys mode, seed and
/// samples live above the first section header.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperturb/grid.hpp"
#include "hyperturb/initial.hpp"
#include "hyperturb/params.hpp"
#include "hyperturb/solver.hpp"

namespace hyperturb {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string mode = "check";  // run | sweep | check | eigen
    bool mode_explicit = false;  // parse metadata, not part of equality
    std::uint64_t seed = 1;
    long samples = 1000;  // structural sweep sample count (check mode)

    ModelParams params;
    Grid grid = Grid::make_2d(32, 32, 2.0 * M_PI, 2.0 * M_PI);
    TimeControls controls;
    bool flux_explicit = false;  // [time] flux was given explicitly

    std::vector<double> sweep_eps = {0.2, 0.1, 0.05};
    long ref_steps = 400;

    InitKind init = InitKind::rest;
    double amplitude = 1.0;
    double k0 = 0.0;
    Vec3 direction = {1.0, 0.0, 0.0};  // eigen mode direction

    std::string out_dir = "out";

    bool operator==(const RunConfig& o) const;
};

/// Parse and fully validate a configuration.  Syntax errors carry the line
/// number; validation errors name the violated invariant.
RunConfig parse_config(const std::string& text);

/// Canonical text form; parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& config);

}  // namespace hyperturb
