#include "feedcool/occupancy.hpp"

#include <cmath>
#include <numbers>

#include "feedcool/closed_loop.hpp"
#include "feedcool/errors.hpp"
#include "feedcool/rational_integral.hpp"
#include "feedcool/stability.hpp"

namespace feedcool {

OccupancyBreakdown combine(const Contributions& x, const Contributions& p) {
    OccupancyBreakdown out;
    out.n_th = 0.5 * (x.th + p.th);
    out.n_ba = 0.5 * (x.ba + p.ba);
    out.n_fb = 0.5 * (x.fb + p.fb);
    out.n_co = 0.5 * (x.co + p.co);
    out.n_v = 0.5 * (x.v + p.v);
    out.n_tot = out.n_th + out.n_ba + out.n_fb + out.n_co + out.n_v - 0.5;
    out.x = x;
    out.p = p;
    return out;
}

OccupancyBreakdown occupancy_bad_cavity(const SystemParams& sys, const FeedbackParams& fb) {
    validate_pair(sys, fb);
    if (sys.beta != 0.0) throw ParameterError("occupancy_bad_cavity requires beta == 0");

    const double s = fb.sigma;
    const double a = fb.alpha;
    const double q = sys.q_m;
    const double d = 1.0 + s + 1.0 / (a * a);
    const double thermal_shape = 1.0 + 1.0 / (a * a) + s / (2.0 * a * q);
    const double feedback_shape = 1.0 + a * s / (2.0 * q);

    OccupancyBreakdown out;
    out.n_th = (sys.n_bar + 0.5) * thermal_shape / d;
    out.n_ba = sys.c_cl / (4.0 * d) * thermal_shape;
    if (s > 0.0) {
        const double sin_t = std::sin(fb.theta);
        out.n_fb = s * s / (4.0 * sys.c_cl * d) * feedback_shape / (sin_t * sin_t);
        out.n_co = -s / (2.0 * a * d) * feedback_shape * cot_exact(fb.theta);
        out.n_v = out.n_fb * (1.0 / sys.eta - 1.0);
    }
    out.n_tot = out.n_th + out.n_ba + out.n_fb + out.n_co + out.n_v - 0.5;
    return out;
}

double theta_opt(const SystemParams& sys, double sigma, double alpha) {
    if (!(alpha > 0.0)) throw ParameterError("theta_opt: alpha must be > 0");
    if (!(sigma >= 0.0)) throw ParameterError("theta_opt: sigma must be >= 0");
    if (sigma == 0.0) return half_pi;
    // Arccot(x) = atan(1/x) on the principal branch (0, pi/2] for x >= 0.
    return std::atan2(alpha * sigma, sys.c_cl * sys.eta);
}

double occupancy_at_theta_opt(const SystemParams& sys, double sigma, double alpha) {
    FeedbackParams fb{sigma, alpha, half_pi};
    validate_pair(sys, fb);
    const double a = alpha;
    const double s = sigma;
    const double q = sys.q_m;
    const double d = 1.0 + s + 1.0 / (a * a);
    const double thermal_shape = 1.0 + 1.0 / (a * a) + s / (2.0 * a * q);
    double bracket = (sys.n_bar + 0.5 + sys.c_cl / 4.0) * thermal_shape;
    if (s > 0.0) {
        const double ce = sys.c_cl * sys.eta;
        bracket += (s * s / (4.0 * ce) - ce / (4.0 * a * a)) * (1.0 + a * s / (2.0 * q));
    }
    return -0.5 + bracket / d;
}

double exact_denominator(const SystemParams& sys, const FeedbackParams& fb) {
    const double s = fb.sigma;
    const double a = fb.alpha;
    const double b = sys.beta;
    const double q = 1.0 / sys.q_m;
    const double ia = 1.0 / a;
    const double ia2 = ia * ia;
    return 1.0 + s + ia2 + ia * q * (1.0 + s) +
           b * (ia * (1.0 - s) + (a + ia * q * q) * (1.0 + s) + q * (2.0 + ia2 + s - s * s)) +
           b * b * (1.0 + ia2 - s + q * (q + a) * (1.0 + s) + ia * q * (2.0 + s)) +
           b * b * b * (ia + a + q);
}

OccupancyBreakdown occupancy_exact_with_denominator(const SystemParams& sys, const FeedbackParams& fb,
                                                    double s_m) {
    validate_pair(sys, fb);
    const double s = fb.sigma;
    const double a = fb.alpha;
    const double b = sys.beta;
    const double b2 = b * b;
    const double b3 = b2 * b;
    const double q = 1.0 / sys.q_m;
    const double q2 = q * q;
    const double ia = 1.0 / a;
    const double ia2 = ia * ia;
    const double a2 = a * a;

    const double th_x = 1.0 + ia2 + ia * q + b * (ia + a + q * (2.0 + ia2 - s) + ia * q2) +
                        b2 * (1.0 + ia2 + q * (2.0 * ia + a + s * ia) + q2) + b3 * (a + ia + q);
    const double th_p = 1.0 + ia2 + ia * q * (1.0 + s) +
                        b * (ia + a + q * (2.0 + ia2 + s) + ia * q2 * (1.0 + s)) +
                        b2 * (1.0 + ia2 + q * (2.0 * ia + a + s * ia + a * s) + q2 * (1.0 + s)) +
                        b3 * (a + ia + q);
    const double ba_x = 1.0 + ia2 + ia * q + b * (ia + a + q * (2.0 + ia2 - s) + ia * q2) +
                        b2 * (q * (ia + a) + q2);
    const double ba_p = 1.0 + ia2 + ia * q * (1.0 + s) + b * (ia + a + q);
    const double fb_x = 1.0 + b * (a + q) + b2 * (1.0 + a * q * (1.0 + s)) + b3 * a;
    const double fb_p = 1.0 + a * q * (1.0 + s) + b * (a + q * (1.0 + a2 + a2 * s) + a * q2 * (1.0 + s)) +
                        b2 * (1.0 + a * q * (2.0 + s) + a2 * q2 * (1.0 + s)) + b3 * (a + a2 * q);
    const double co_x = 1.0 + b * (2.0 * a + q) + b2 * (a2 + a * q);
    const double co_p = 1.0 + a * q * (1.0 + s) + b * (2.0 * a + a2 * q * (1.0 + s)) + b2 * a2;

    const double thermal = (sys.n_bar + 0.5) / s_m;
    const double back_action = sys.c_cl / (4.0 * s_m);
    Contributions x{thermal * th_x, back_action * ba_x, 0.0, 0.0, 0.0};
    Contributions p{thermal * th_p, back_action * ba_p, 0.0, 0.0, 0.0};
    if (s > 0.0) {
        const double sin_t = std::sin(fb.theta);
        const double imprecision = s * s / (4.0 * sys.c_cl * s_m) / (sin_t * sin_t);
        const double cross = -s / (2.0 * a * s_m) * cot_exact(fb.theta);
        const double loss = 1.0 / sys.eta - 1.0;
        x.fb = imprecision * fb_x;
        p.fb = imprecision * fb_p;
        x.co = cross * co_x;
        p.co = cross * co_p;
        x.v = x.fb * loss;
        p.v = p.fb * loss;
    }
    return combine(x, p);
}

OccupancyBreakdown occupancy_exact(const SystemParams& sys, const FeedbackParams& fb) {
    validate_pair(sys, fb);
    stability::require_stable(sys, fb);
    return occupancy_exact_with_denominator(sys, fb, exact_denominator(sys, fb));
}

OccupancyBreakdown occupancy_numeric(const SystemParams& sys, const FeedbackParams& fb) {
    const ClosedLoopModel model = build_closed_loop(sys, fb);

    integral::RationalIntegrand probe = model.integrand(Source::thermal, Variance::position);
    if (!integral::satisfies_root_condition(probe))
        throw InstabilityError("occupancy_numeric: closed-loop pole outside the stable half plane",
                               stability::routh_hurwitz_margin(sys, fb));

    integral::IntegralOptions opts;
    opts.check_roots = false;
    const double norm = 1.0 / (2.0 * std::numbers::pi);
    auto integrate = [&](Source src, Variance v) {
        return integral::integrate_rational(model.integrand(src, v), opts) * norm;
    };

#ifndef NDEBUG
    {
        const auto padded = integral::pad_integrand(probe, 1.0);
        const double direct = integral::integrate_rational(probe, opts);
        const double via_pad = integral::integrate_rational(padded, opts);
        if (std::abs(direct - via_pad) > 1e-9 * std::abs(direct))
            throw NumericalError("occupancy_numeric: lambda-padding invariance violated");
    }
#endif

    Contributions x{integrate(Source::thermal, Variance::position), integrate(Source::back_action, Variance::position),
                    integrate(Source::feedback, Variance::position), integrate(Source::cross, Variance::position),
                    integrate(Source::vacuum, Variance::position)};
    Contributions p{integrate(Source::thermal, Variance::momentum), integrate(Source::back_action, Variance::momentum),
                    integrate(Source::feedback, Variance::momentum), integrate(Source::cross, Variance::momentum),
                    integrate(Source::vacuum, Variance::momentum)};
    return combine(x, p);
}

SpectrumPoint spectra_pointwise(double omega, const SystemParams& sys, const FeedbackParams& fb) {
    const model::ForcePsd f = model::noise_force_psds(omega, sys, fb);
    const double chi2 = std::norm(model::chi_eff(omega, sys, fb));
    SpectrumPoint out{};
    out.omega = omega;
    out.s_x_by_source = {chi2 * f.s_th, chi2 * f.s_ba, chi2 * f.s_fb, chi2 * f.s_co, chi2 * f.s_v};
    out.s_x = out.s_x_by_source.total();
    out.s_p = omega * omega * out.s_x;
    return out;
}

}  // namespace feedcool
