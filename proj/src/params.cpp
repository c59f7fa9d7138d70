#include "feedcool/params.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "feedcool/errors.hpp"

namespace feedcool {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ParameterError(msg);
}

}  // namespace

void SystemParams::validate() const {
    require(std::isfinite(q_m) && q_m > 0.0, "q_m must be finite and > 0");
    require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and >= 0");
    require(std::isfinite(c_cl) && c_cl >= 0.0, "c_cl must be finite and >= 0");
    require(std::isfinite(n_bar) && n_bar >= 0.0, "n_bar must be finite and >= 0");
    require(std::isfinite(eta) && eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
}

void FeedbackParams::validate() const {
    require(std::isfinite(sigma) && sigma >= 0.0, "sigma must be finite and >= 0");
    require(std::isfinite(alpha) && alpha > 0.0, "alpha must be finite and > 0");
    require(std::isfinite(theta) && theta > 0.0 && theta <= half_pi,
            "theta must lie in (0, pi/2]");
}

void validate_pair(const SystemParams& sys, const FeedbackParams& fb) {
    sys.validate();
    fb.validate();
    require(fb.sigma == 0.0 || sys.c_cl > 0.0, "sigma > 0 requires c_cl > 0");
}

DerivedParams derive(const SystemParams& sys, const FeedbackParams& fb) {
    DerivedParams d{};
    if (sys.n_bar > 0.0) {
        d.c_q = sys.c_cl / sys.n_bar;
    } else {
        d.c_q = sys.c_cl > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    d.gamma_meas_over_gamma_m = sys.c_cl;
    // kappa = 2 / beta in omega_m units.
    d.sigma_abs = fb.sigma * std::sqrt(sys.beta / (2.0 * sys.eta)) / std::sin(fb.theta);
    return d;
}

SystemParams system_from_cq(double q_m, double beta, double c_q, double n_bar, double eta) {
    SystemParams s{q_m, beta, c_q * n_bar, n_bar, eta};
    s.validate();
    return s;
}

double cot_exact(double theta) {
    if (theta == half_pi) return 0.0;
    return std::cos(theta) / std::sin(theta);
}

}  // namespace feedcool
