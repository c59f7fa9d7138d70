#include "feedcool/stability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "feedcool/errors.hpp"
#include "feedcool/model.hpp"
#include "feedcool/polynomial.hpp"

namespace feedcool::stability {

std::vector<double> routh_hurwitz_terms(const SystemParams& sys, const FeedbackParams& fb) {
    const double s = fb.sigma;
    const double a = fb.alpha;
    const double b = sys.beta;
    const double q = 1.0 / sys.q_m;
    const double b2 = b * b;
    const double b3 = b2 * b;

    return {
        // beta^0
        1.0, s, 1.0 / (a * a), q / a, s * q / a,
        // beta^3 {1/Q + 1/alpha + alpha}
        b3 * q, b3 / a, b3 * a,
        // beta^2 {1 + 1/Q^2 + 1/alpha^2 + 2/(Q alpha) + alpha/Q + sigma/Q (1/Q + 1/alpha + alpha)}
        b2, b2 * q * q, b2 / (a * a), 2.0 * b2 * q / a, b2 * a * q, b2 * s * q * q, b2 * s * q / a,
        b2 * s * q * a,
        // beta {alpha + alpha sigma + 2/Q + 1/(Q alpha^2) + 1/alpha + 1/(Q^2 alpha) + sigma/Q (1 + 1/(Q alpha))}
        b * a, b * a * s, 2.0 * b * q, b * q / (a * a), b / a, b * q * q / a, b * s * q, b * s * q * q / a,
        // negative group: sigma beta^2 + beta sigma / alpha + beta sigma^2 / Q
        -s * b2, -b * s / a, -b * s * s * q,
    };
}

double compensated_sum(std::span<const double> terms) {
    double sum = 0.0, c = 0.0;
    for (double t : terms) {
        const double u = sum + t;
        if (std::abs(sum) >= std::abs(t))
            c += (sum - u) + t;
        else
            c += (t - u) + sum;
        sum = u;
    }
    return sum + c;
}

double routh_hurwitz_margin(const SystemParams& sys, const FeedbackParams& fb) {
    const auto terms = routh_hurwitz_terms(sys, fb);
    return compensated_sum(terms);
}

std::vector<std::complex<double>> closed_loop_poles(const SystemParams& sys, const FeedbackParams& fb) {
    const auto r = model::characteristic_polynomial(sys, fb);
    return poly::roots(std::span<const double>(r));
}

StabilityReport assess(const SystemParams& sys, const FeedbackParams& fb) {
    StabilityReport rep;
    rep.rh_margin = routh_hurwitz_margin(sys, fb);
    rep.stable_rh = rep.rh_margin > 0.0;
    rep.marginal = std::abs(rep.rh_margin) < marginal_band;
    rep.poles = closed_loop_poles(sys, fb);
    rep.stable_poles = std::all_of(rep.poles.begin(), rep.poles.end(),
                                   [](const std::complex<double>& p) { return p.real() < 0.0; });
    rep.agree = rep.stable_rh == rep.stable_poles;
    return rep;
}

void require_stable(const SystemParams& sys, const FeedbackParams& fb) {
    const double m = routh_hurwitz_margin(sys, fb);
    if (m > 0.0 && std::abs(m) >= marginal_band) return;
    throw InstabilityError(std::string(m > 0.0 ? "closed loop is marginally stable"
                                               : "closed loop is unstable") +
                               " (Routh-Hurwitz margin " + std::to_string(m) + ")",
                           m);
}

}  // namespace feedcool::stability
