/// @file diagnostics.hpp
/// @brief Discrete norms, structural-invariant sweeps, Maxwell-iteration
///        residuals, theorem-error evaluation and convergence-order fitting.

#pragma once

#include <cstdint>
#include <vector>

#include "hyperturb/incompressible.hpp"
#include "hyperturb/initial.hpp"
#include "hyperturb/solver.hpp"

namespace hyperturb {

/// One scalar component entering a stacked discrete norm; weight carries the
/// tensor contraction weight for sigma components.
struct NormComponent {
    const ScalarGrid* f;
    double weight = 1.0;
};

/// Volume-weighted discrete Sobolev surrogate of order m in {0, 1, 2}:
/// m = 0 is the cell ell^2 norm, each higher order adds all central-difference
/// derivative combinations of that order.
double discrete_norm(const std::vector<NormComponent>& components, const Grid& grid, int m);
double discrete_norm(const ScalarGrid& f, const Grid& grid, int m);

struct TheoremError {
    double core;   // ||(phi - eps*pi, u - u_ref, k - k_ref)||_m
    double relax;  // ||(rho0 sigma + sqrt(eps)(l sqrt(k)+nu) S, rho0 y + sqrt(eps) xi alpha3 (l sqrt(k)+nu) grad k)||_m
};

/// Theorem error groups between a compressible field and the incompressible
/// reference at the same time; reference derivatives are spectral.
TheoremError theorem_error(const Field& field, const IncompressibleState& reference,
                           const ModelParams& params, int m);

struct MaxwellResidual {
    double sigma_residual;
    double sigma_quasi_norm;
    double y_residual;
    double y_quasi_norm;
};

/// Distance of sigma and y from their Maxwell-iteration quasi-equilibria
/// assembled from the field's own u and k.
MaxwellResidual maxwell_residual(const Field& field, const ModelParams& params);

/// Deterministic uniform sampler (fixed bit-stream mapping, no library
/// distribution objects) so sweeps reproduce across toolchains.
struct Rand {
    std::uint64_t state;
    explicit Rand(std::uint64_t seed);
    double uniform();  // [0, 1)
    double uniform(double lo, double hi);
};

struct SweepReport {
    long n_samples = 0;
    std::uint64_t seed = 0;

    long symmetry_violations = 0;
    long spectrum_violations = 0;
    long h_violations = 0;
    long pd_violations = 0;
    long concavity_violations = 0;

    long constraint_satisfied = 0;
    long double_violators = 0;
    long double_violators_negative_mineig = 0;
    /// States where the source-paired entropy production goes negative while
    /// the quadratic form stays nonnegative (logged, not a failure).
    long h_source_sign_mismatches = 0;

    double max_rel_asymmetry = 0.0;
    double max_spectrum_asymmetry = 0.0;
    double min_h_constrained = 0.0;
    double min_mineig_constrained = 0.0;
    double max_concavity_eig = 0.0;

    bool pass() const {
        const bool double_check = double_violators == 0 || double_violators_negative_mineig > 0;
        return symmetry_violations == 0 && spectrum_violations == 0 && h_violations == 0 &&
               pd_violations == 0 && concavity_violations == 0 && double_check;
    }
};

/// Random-state sweep of the structural checks: symmetrizer product symmetry,
/// real spectra, H >= 0 under the PD constraint, constraint/PD consistency and
/// entropy concavity in the CDF variables.
SweepReport structural_sweep(long n_samples, std::uint64_t seed, const ModelParams& params);

struct OrderFit {
    double slope;
    double intercept;
};

/// Least-squares slope of log(error) against log(eps).
OrderFit fit_order(const std::vector<double>& eps, const std::vector<double>& errors);

/// One epsilon entry of the convergence study.
struct SweepRow {
    double eps;
    double core_m0, core_m1;
    double relax_m0, relax_m1;
    long steps;
    long clamp_count;
    double worst_entropy_dip;
    double min_h_constrained;
    long constraint_violations;
};

struct ConvergenceReport {
    std::vector<SweepRow> rows;  // eps strictly decreasing
    double core_slope_m0 = 0.0;
    double core_slope_m1 = 0.0;
    double relax_slope_m0 = 0.0;
    double core_slope_threshold = 0.8;
    bool pass_core_slope = false;
    bool pass_relax_monotone = false;

    bool pass() const { return pass_core_slope && pass_relax_monotone; }
};

struct SweepSpec {
    Grid grid;
    ModelParams params;  // epsilon is overridden per run
    std::vector<double> eps_list;
    TimeControls controls;
    InitKind init = InitKind::shear_layer;
    double amplitude = 1.0;
    double k0 = 0.5;
    long ref_steps = 400;
};

/// Runs the incompressible reference once, then for each epsilon integrates
/// the prepared compressible data to the same rescaled time and evaluates the
/// theorem error groups.
ConvergenceReport run_convergence_study(const SweepSpec& spec);

}  // namespace hyperturb
