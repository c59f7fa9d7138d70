#pragma once

// Closed-loop stability, decided two ways: the Routh-Hurwitz inequality in
// closed form, and the location of the roots of the characteristic polynomial.

#include <complex>
#include <span>
#include <vector>

#include "feedcool/params.hpp"

namespace feedcool::stability {

inline constexpr double marginal_band = 1e-9;

// Individual terms of the inequality (positive groups by power of beta, then
// the negative group), in the printed order. Their sum is Q_m * alpha times
// the third Hurwitz determinant of R(s).
std::vector<double> routh_hurwitz_terms(const SystemParams& sys, const FeedbackParams& fb);

// Neumaier-compensated sum of the terms above. Positive means stable.
double routh_hurwitz_margin(const SystemParams& sys, const FeedbackParams& fb);

// Roots of R(s) in the Laplace variable s = -i omega; stable poles have
// Re s < 0. Degree 4 for beta > 0, 3 at beta == 0.
std::vector<std::complex<double>> closed_loop_poles(const SystemParams& sys, const FeedbackParams& fb);

struct StabilityReport {
    double rh_margin;
    bool stable_rh;
    bool marginal;  // |rh_margin| < marginal_band
    std::vector<std::complex<double>> poles;
    bool stable_poles;
    bool agree;  // verdicts coincide; only required outside the marginal band

    // Feasible for optimization: stable and not marginal.
    bool feasible() const { return stable_rh && !marginal; }
};

StabilityReport assess(const SystemParams& sys, const FeedbackParams& fb);

// Throws InstabilityError unless the configuration is feasible.
void require_stable(const SystemParams& sys, const FeedbackParams& fb);

double compensated_sum(std::span<const double> terms);

}  // namespace feedcool::stability
