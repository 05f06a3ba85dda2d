/// @file solver.hpp
/// @brief Time integration of the rescaled quasilinear system on periodic
///        grids: path-conservative transport substep plus stiff relaxation
///        substep, composed by Strang splitting.

#pragma once

#include <string>
#include <vector>

#include "hyperturb/grid.hpp"
#include "hyperturb/params.hpp"

namespace hyperturb {

/// Interface dissipation choice for the transport substep.
///   rusanov: first-order local Lax-Friedrichs fluctuations.
///   lw:      Lax-Wendroff-type matrix dissipation (dt/dx) A^2, dimension-split;
///            its dissipation on the slow fields stays O(dx) uniformly in
///            epsilon, which the low Mach sweep needs.
enum class FluxScheme { rusanov, lw };

FluxScheme flux_scheme_from_string(const std::string& name);
std::string to_string(FluxScheme f);

struct TimeControls {
    double cfl = 0.45;
    double t_final = 1.0;
    long max_steps = 100000;
    FluxScheme flux = FluxScheme::rusanov;
    std::string relaxation = "exact";  // relaxation substep strategy tag
    int k_substeps = 10;               // >= 10 explicit substeps for the k ODE
    int snapshots = 1;                 // evenly spaced snapshot count incl. final

    void validate() const;
};

/// Thrown when a run must stop: blow-up, rejected step, non-finite state.
struct SolverAbort : std::runtime_error {
    long step;
    SolverAbort(long step_, const std::string& what_)
        : std::runtime_error(what_ + " (step " + std::to_string(step_) + ")"), step(step_) {}
};

/// Largest wave speed per cell and axis; reused across CFL and interface loops.
struct WaveSpeedTable {
    std::vector<double> lambda;  // n_cells * dim, cell-major
    int dim = 1;
    double max_value = 0.0;
    double at(long c, int axis) const { return lambda[static_cast<std::size_t>(c) * dim + axis]; }
};

WaveSpeedTable compute_wave_speeds(const Field& field, const ModelParams& params);

/// dt = cfl * min over cells and axes of dx_axis / lambda_max(U, e_axis).
double cfl_dt(const Field& field, const ModelParams& params, double cfl);

struct SubstepStats {
    long clamp_count = 0;
};

/// One transport substep of the quasilinear form.  Per interface the
/// fluctuation is 0.5*A(U_avg)*dU -/+ 0.5*D*dU with D = lambda_loc*I for
/// rusanov and D = (dt/dx)*A^2 for lw; k is clamped at zero afterwards.
Field hyperbolic_substep(const Field& field, const ModelParams& params, double dt,
                         FluxScheme flux, SubstepStats* stats = nullptr);

/// Pointwise stiff relaxation over dt with nu_T frozen at the substep start:
/// sigma and y decay exactly, k is integrated by Heun substeps against the
/// decaying sigma(t) (closed form when sigma = 0).
Field relaxation_substep(const Field& field, const ModelParams& params, double dt,
                         int k_substeps = 10, SubstepStats* stats = nullptr);

/// relaxation(dt/2) o hyperbolic(dt) o relaxation(dt/2).
Field strang_step(const Field& field, const ModelParams& params, double dt,
                  const TimeControls& controls, SubstepStats* stats = nullptr);

/// Per-step diagnostics recorded by run_simulation.  Mass, momentum and
/// entropy are reconstructed through unscale_map; min_h_constrained and
/// constraint_violations audit the entropy production cell by cell.
struct StepRecord {
    long step = 0;
    double time = 0.0;
    double dt = 0.0;
    double mass = 0.0;
    Vec3 momentum = {0.0, 0.0, 0.0};
    double entropy_total = 0.0;
    double max_sigma = 0.0;
    long clamp_count = 0;  // cumulative
    double min_h_constrained = 0.0;
    long constraint_violations = 0;
};

struct Snapshot {
    double time = 0.0;
    Field field;
};

struct RunResult {
    Field final_field;
    std::vector<Snapshot> snapshots;
    std::vector<StepRecord> log;
    long total_steps = 0;
    long clamp_count = 0;
    /// Worst per-step relative entropy dip, max over steps of
    /// (S_n - S_{n+1}) / |S_n| when positive; <= 0 means monotone.
    double worst_entropy_dip = 0.0;
    double min_h_constrained = 0.0;
    long constraint_violations = 0;
};

StepRecord measure_step(const Field& field, const ModelParams& params, long step, double time,
                        double dt, long clamp_count);

/// Integrate to t_final or max_steps.  Throws SolverAbort on blow-up
/// (any |component| > 1e12) or rejected steps.
RunResult run_simulation(const Field& initial, const ModelParams& params,
                         const TimeControls& controls);

}  // namespace hyperturb
