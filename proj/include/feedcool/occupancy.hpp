#pragma once

// Steady-state phonon occupancy n_tot and its breakdown by noise source,
//   n_tot = n_th + n_ba + n_fb + n_co + n_v - 1/2,
// computed three ways:
//   * occupancy_bad_cavity: closed forms in the kappa -> infinity limit under
//     Q_m >> alpha, 1/alpha. Exact in its own formulas; its deviation from the
//     exact beta = 0 integral is O(1/(alpha Q_m)).
//   * occupancy_exact: closed forms valid for any stable kappa, with the
//     position/momentum split (n_X != n_P in general).
//   * occupancy_numeric: direct integration of the closed-loop spectra via the
//     determinant formula for rational integrals.

#include <optional>

#include "feedcool/model.hpp"
#include "feedcool/params.hpp"

namespace feedcool {

struct Contributions {
    double th{0.0};
    double ba{0.0};
    double fb{0.0};
    double co{0.0};
    double v{0.0};

    double sum() const { return th + ba + fb + co + v; }
};

struct OccupancyBreakdown {
    double n_th{0.0};
    double n_ba{0.0};
    double n_fb{0.0};
    double n_co{0.0};
    double n_v{0.0};
    double n_tot{0.0};
    // Per-source contributions to <X_m^2> and <P_m^2>; n_i = (x.i + p.i) / 2.
    std::optional<Contributions> x;
    std::optional<Contributions> p;

    double n_x() const { return x ? x->sum() : n_tot + 0.5; }
    double n_p() const { return p ? p->sum() : n_tot + 0.5; }
};

// Builds the breakdown from X/P parts.
OccupancyBreakdown combine(const Contributions& x, const Contributions& p);

// Requires beta == 0 and a valid theta.
OccupancyBreakdown occupancy_bad_cavity(const SystemParams& sys, const FeedbackParams& fb);

// Arccot(c_cl eta / (alpha sigma)) in (0, pi/2]. At sigma == 0 the feedback is
// absent and the angle is irrelevant; pi/2 is returned by convention (the
// sigma -> 0+ limit of the formula is 0).
double theta_opt(const SystemParams& sys, double sigma, double alpha);

// Closed form of n_tot at theta_opt. At sigma == 0 returns the no-feedback
// value n_bar + c_cl/4; the optimized occupancy is discontinuous there.
double occupancy_at_theta_opt(const SystemParams& sys, double sigma, double alpha);

// S_m, the common denominator of the arbitrary-kappa closed forms.
double exact_denominator(const SystemParams& sys, const FeedbackParams& fb);

// Throws InstabilityError when the Routh-Hurwitz margin is not safely positive.
OccupancyBreakdown occupancy_exact(const SystemParams& sys, const FeedbackParams& fb);

// Same closed forms with a caller-supplied S_m (used by the self-check harness).
OccupancyBreakdown occupancy_exact_with_denominator(const SystemParams& sys, const FeedbackParams& fb,
                                                    double s_m);

// Throws InstabilityError when the closed-loop poles leave the stable half plane.
OccupancyBreakdown occupancy_numeric(const SystemParams& sys, const FeedbackParams& fb);

struct SpectrumPoint {
    double omega;
    double s_x;
    double s_p;
    model::ForcePsd s_x_by_source;  // |chi_eff|^2 S_i for each source
};

SpectrumPoint spectra_pointwise(double omega, const SystemParams& sys, const FeedbackParams& fb);

}  // namespace feedcool
