#pragma once

// Frequency-domain transfer functions of the linearized optomechanical loop.
//
// All frequencies are in units of omega_m; force spectral densities are
// symmetrized two-sided PSDs in omega_m units, so that
//   S_X(omega) = |chi_eff(omega)|^2 * sum_i S_i(omega)
// and the variance is  <X^2> = int S_X domega / 2pi.
//
// Sign conventions follow F(t) = (1/2pi) int f(omega) e^{-i omega t} domega.
// In the Laplace variable s = -i omega the closed-loop characteristic
// polynomial is
//   R(s) = (1 + s/Q_m + s^2)(1 + s/alpha)(1 + beta s) + sigma s / Q_m,
// and chi_eff(omega) = (1 - i omega/alpha)(1 - i beta omega) / R(-i omega).

#include <complex>

#include "feedcool/params.hpp"
#include "feedcool/polynomial.hpp"

namespace feedcool::model {

using cplx = std::complex<double>;

// Feedback filter sigma * (-i omega) / (1 - i omega/alpha), in units of
// gamma_m. Dividing by Q_m gives the term entering chi_eff^{-1} in bad-cavity
// form. Tends to sigma*alpha as omega -> infinity.
cplx gain_spectral(double omega, const FeedbackParams& fb);

// Time-domain kernel sigma * d/dt[Theta(t) alpha e^{-alpha t}], split into the
// delta at t = 0 and the smooth tail -sigma alpha^2 e^{-alpha t} for t >= 0.
struct GainKernel {
    double impulse_weight;
    double rate;   // alpha
    double scale;  // sigma

    double tail(double t) const;
};

GainKernel gain_time(const FeedbackParams& fb);
double gain_time_tail(double t, const FeedbackParams& fb);

// 1 / (1 - omega^2 - i omega / Q_m).
cplx intrinsic_susceptibility(double omega, double q_m);

// Effective susceptibility. beta > 0 keeps the cavity factor 1/(1 - i beta omega);
// beta == 0 uses the effective frequency and damping form.
cplx chi_eff(double omega, const SystemParams& sys, const FeedbackParams& fb);

struct EffectiveResponse {
    double omega_eff;  // omega_m units
    double gamma_eff;  // gamma_m units
};

// Bad-cavity limit only; throws ParameterError for beta > 0.
EffectiveResponse effective_freq_damping(double omega, const SystemParams& sys,
                                         const FeedbackParams& fb);

struct ForcePsd {
    double s_th{0.0};
    double s_ba{0.0};
    double s_fb{0.0};
    double s_co{0.0};  // back-action / feedback cross term, may be negative
    double s_v{0.0};

    double total() const { return s_th + s_ba + s_fb + s_co + s_v; }
};

ForcePsd noise_force_psds(double omega, const SystemParams& sys, const FeedbackParams& fb);

// Coefficients of X_c^in and Y_c^in in the net optical force at large quantum
// cooperativity, in units of sqrt(gamma_m). The thermal force is left out, so
// this is a diagnostic and must not be used for occupancies.
// Requires beta == 0 and eta == 1.
struct InterferenceCoefficients {
    cplx coef_x;
    cplx coef_y;
};

InterferenceCoefficients interference_coefficients(double omega, const SystemParams& sys,
                                                   const FeedbackParams& fb);

// R(s) in ascending powers of s; degree 4 for beta > 0, 3 at beta == 0.
poly::RealPoly characteristic_polynomial(const SystemParams& sys, const FeedbackParams& fb);

}  // namespace feedcool::model
