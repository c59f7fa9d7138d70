#pragma once

// Deterministic minimization of n_tot over the controller parameters:
// log-spaced grid scan followed by golden-section refinement in log space.
// Joint (sigma, alpha) optimization nests the alpha search inside the sigma
// search and cross-checks the result against a coarse 2-D grid.

#include <string>
#include <vector>

#include "feedcool/occupancy.hpp"
#include "feedcool/params.hpp"

namespace feedcool {

enum class ThetaMode {
    optimal,           // theta = Arccot(c_cl eta / (alpha sigma))
    phase_quadrature,  // theta = pi/2
};

enum class OccupancyPath {
    automatic,   // bad_cavity when beta == 0, exact otherwise
    bad_cavity,  // requires beta == 0
    exact,
    numeric,
};

std::string to_string(ThetaMode m);
std::string to_string(OccupancyPath p);

OccupancyPath resolve_path(const SystemParams& sys, OccupancyPath p);

// Breakdown along the chosen path; exact/numeric paths throw InstabilityError
// for infeasible parameters.
OccupancyBreakdown evaluate_occupancy(const SystemParams& sys, const FeedbackParams& fb, OccupancyPath path);

struct GridSearch {
    double lo;
    double hi;
    int points;
    double rel_tol;  // final bracket width in log(x)
};

struct OptimizerOptions {
    GridSearch alpha{1e-3, 1e3, 400, 1e-6};
    GridSearch sigma{1e-1, 1e10, 111, 1e-6};
    int sanity_points = 25;  // per axis of the coarse (sigma, alpha) check
    OccupancyPath path = OccupancyPath::automatic;
    unsigned threads = 1;    // sweep concurrency
};

struct OptimumRecord {
    FeedbackParams fb;
    double n_tot;
    OccupancyBreakdown breakdown;
    ThetaMode mode;
    bool sigma_free;  // false: sigma was held fixed
    double rh_margin;
};

// Minimizes over alpha at fixed sigma. Ties resolve to the smallest alpha.
OptimumRecord optimize_alpha(const SystemParams& sys, double sigma, ThetaMode mode,
                             const OptimizerOptions& opts = {});

// Minimizes over (sigma, alpha).
OptimumRecord optimize_joint(const SystemParams& sys, ThetaMode mode, const OptimizerOptions& opts = {});

struct SweepRow {
    double axis_value;
    OptimumRecord optimized;         // ThetaMode::optimal
    OptimumRecord phase_quadrature;  // theta = pi/2 comparison
};

struct SweepTable {
    std::string axis;  // "sigma" or "c_q"
    std::vector<SweepRow> rows;
};

// Per-sigma optimum over alpha in both theta modes.
SweepTable sweep_sigma(const SystemParams& sys, const std::vector<double>& sigma_grid,
                       const OptimizerOptions& opts = {});

// Per-c_q joint optimum; n_bar is held fixed and c_cl = c_q * n_bar.
SweepTable sweep_cq(const SystemParams& sys_template, const std::vector<double>& cq_grid,
                    const OptimizerOptions& opts = {});

std::vector<double> log_grid(double lo, double hi, int points);
std::vector<double> linear_grid(double lo, double hi, int points);

// FEEDCOOL_THREADS if set and positive, else the hardware concurrency.
unsigned default_thread_count();

}  // namespace feedcool
