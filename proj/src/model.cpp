#include "feedcool/model.hpp"

#include <array>
#include <cmath>

#include "feedcool/errors.hpp"

namespace feedcool::model {

namespace {

constexpr cplx I{0.0, 1.0};

// Low-pass derivative filter without the gain: (-i omega)/(1 - i omega/alpha).
cplx filter_shape(double omega, double alpha) { return -I * omega / (1.0 - I * omega / alpha); }

}  // namespace

cplx gain_spectral(double omega, const FeedbackParams& fb) {
    return fb.sigma * filter_shape(omega, fb.alpha);
}

double GainKernel::tail(double t) const {
    if (t < 0.0) return 0.0;
    return -scale * rate * rate * std::exp(-rate * t);
}

GainKernel gain_time(const FeedbackParams& fb) {
    return GainKernel{fb.sigma * fb.alpha, fb.alpha, fb.sigma};
}

double gain_time_tail(double t, const FeedbackParams& fb) { return gain_time(fb).tail(t); }

cplx intrinsic_susceptibility(double omega, double q_m) {
    return 1.0 / (1.0 - omega * omega - I * omega / q_m);
}

cplx chi_eff(double omega, const SystemParams& sys, const FeedbackParams& fb) {
    if (sys.beta == 0.0) {
        const auto eff = effective_freq_damping(omega, sys, fb);
        const double w2 = eff.omega_eff * eff.omega_eff;
        return 1.0 / (w2 - omega * omega - I * (eff.gamma_eff / sys.q_m) * omega);
    }
    const cplx feedback =
        gain_spectral(omega, fb) / sys.q_m / (1.0 - I * sys.beta * omega);
    return 1.0 / (1.0 - omega * omega - I * omega / sys.q_m + feedback);
}

EffectiveResponse effective_freq_damping(double omega, const SystemParams& sys,
                                         const FeedbackParams& fb) {
    if (sys.beta != 0.0)
        throw ParameterError("effective_freq_damping is defined only in the bad-cavity limit");
    const double a2 = fb.alpha * fb.alpha;
    const double w2 = omega * omega;
    const double lowpass = 1.0 / (a2 + w2);
    EffectiveResponse r{};
    r.omega_eff = std::sqrt(1.0 + fb.sigma / sys.q_m * fb.alpha * w2 * lowpass);
    r.gamma_eff = 1.0 + fb.sigma * a2 * lowpass;
    return r;
}

ForcePsd noise_force_psds(double omega, const SystemParams& sys, const FeedbackParams& fb) {
    validate_pair(sys, fb);
    const double w2 = omega * omega;
    const double inv_q = 1.0 / sys.q_m;
    const double cavity = 1.0 / (1.0 + sys.beta * sys.beta * w2);
    const double lowpass = 1.0 / (1.0 + w2 / (fb.alpha * fb.alpha));
    const double sin_t = std::sin(fb.theta);
    const double cot_t = cot_exact(fb.theta);

    ForcePsd s;
    s.s_th = (2.0 * sys.n_bar + 1.0) * inv_q;
    s.s_ba = sys.c_cl * inv_q * cavity / 2.0;
    if (fb.sigma > 0.0) {
        s.s_fb = fb.sigma * fb.sigma * w2 * lowpass * inv_q / (2.0 * sys.c_cl * sin_t * sin_t);
        s.s_co = -fb.sigma * cot_t * (sys.beta + 1.0 / fb.alpha) * w2 * lowpass * cavity * inv_q;
        s.s_v = s.s_fb * (1.0 / sys.eta - 1.0);
    }
    return s;
}

InterferenceCoefficients interference_coefficients(double omega, const SystemParams& sys,
                                                   const FeedbackParams& fb) {
    validate_pair(sys, fb);
    if (sys.beta != 0.0 || sys.eta != 1.0)
        throw ParameterError("interference_coefficients requires beta == 0 and eta == 1");
    // mu / sqrt(kappa) = sigma sqrt(gamma_m / C_cl) * filter shape.
    const double root_c = std::sqrt(sys.c_cl);
    const cplx mu_scaled = fb.sigma > 0.0 ? fb.sigma / root_c * filter_shape(omega, fb.alpha) : 0.0;
    return {root_c - mu_scaled * cot_exact(fb.theta), -mu_scaled};
}

poly::RealPoly characteristic_polynomial(const SystemParams& sys, const FeedbackParams& fb) {
    const std::array<double, 3> oscillator{1.0, 1.0 / sys.q_m, 1.0};
    const std::array<double, 2> filter{1.0, 1.0 / fb.alpha};
    const std::array<double, 2> cavity{1.0, sys.beta};
    auto r = poly::multiply(poly::multiply(oscillator, filter), cavity);
    r[1] += fb.sigma / sys.q_m;
    return poly::trimmed(std::move(r));
}

}  // namespace feedcool::model
