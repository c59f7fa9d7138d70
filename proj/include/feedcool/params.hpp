#pragma once

// Dimensionless configuration of the feedback-cooled oscillator.
//
// Units: hbar = k_B = 1, frequencies in units of the mechanical frequency
// omega_m, damping rates in units of gamma_m where that is the natural scale.
// The optomechanical coupling, cavity linewidth, filter cutoff and raw gain
// never appear directly; they are absorbed into c_cl, beta, alpha and sigma.

#include <numbers>

namespace feedcool {

inline constexpr double half_pi = std::numbers::pi / 2.0;

struct SystemParams {
    double q_m{1e6};    // omega_m / gamma_m
    double beta{0.0};   // 2 omega_m / kappa; 0 is the bad-cavity limit
    double c_cl{4.2e5}; // classical cooperativity 4 g^2 / (kappa gamma_m)
    double n_bar{2.1e4};
    double eta{1.0};    // detection efficiency

    // Throws ParameterError on any violated invariant.
    void validate() const;
};

struct FeedbackParams {
    double sigma{0.0};       // rescaled gain 2 mu_fb g omega_m / (kappa gamma_m)
    double alpha{1.0};       // omega_fb / omega_m
    double theta{half_pi};   // local-oscillator angle, radians, in (0, pi/2]

    void validate() const;
};

struct DerivedParams {
    double c_q;                      // c_cl / n_bar, +inf when n_bar = 0 < c_cl
    double gamma_meas_over_gamma_m;  // equals c_cl
    double sigma_abs;                // sigma / (sqrt(kappa eta) sin theta), omega_m^{-1/2} units
};

DerivedParams derive(const SystemParams& sys, const FeedbackParams& fb);

// System with c_cl = c_q * n_bar.
SystemParams system_from_cq(double q_m, double beta, double c_q, double n_bar, double eta);

// The feedback noise terms need a measurement record: sigma > 0 requires c_cl > 0.
void validate_pair(const SystemParams& sys, const FeedbackParams& fb);

// cot(theta) with cot(pi/2) = 0 exactly.
double cot_exact(double theta);

inline double degrees_to_radians(double deg) { return deg / 180.0 * std::numbers::pi; }
inline double radians_to_degrees(double rad) { return rad / std::numbers::pi * 180.0; }

}  // namespace feedcool
