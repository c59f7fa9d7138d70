#include "feedcool/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "feedcool/closed_loop.hpp"
#include "feedcool/errors.hpp"
#include "feedcool/stability.hpp"

namespace feedcool {

namespace {

using integral::cplx;
using integral::RationalIntegrand;

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

struct Point {
    SystemParams sys;
    FeedbackParams fb;
};

// Fixed, stable, well-conditioned configurations spanning both regimes.
std::vector<Point> finite_kappa_points() {
    return {
        {{1e3, 0.2, 50.0, 10.0, 0.8}, {50.0, 2.0, 1.0}},
        {{1e4, 0.05, 2e3, 100.0, 1.0}, {300.0, 0.5, 0.7}},
        {{1e2, 0.5, 5.0, 2.0, 0.6}, {3.0, 1.5, half_pi}},
        {{1e5, 0.01, 1e4, 1e3, 0.9}, {1e3, 0.2, 1.2}},
    };
}

std::vector<Point> bad_cavity_points() {
    return {
        {{1e6, 0.0, 4.2e5, 2.1e4, 1.0}, {1e5, 0.03, 0.9}},
        {{1e6, 0.0, 1e3, 1e2, 1.0}, {30.0, 1.0, 1.0}},
        {{1e6, 0.0, 10.0, 50.0, 0.7}, {5.0, 5.0, half_pi}},
    };
}

OccupancyBreakdown numeric_with(const SelfcheckHooks& hooks, const SystemParams& sys, const FeedbackParams& fb) {
    const ClosedLoopModel model = build_closed_loop(sys, fb);
    auto part = [&](Variance v) {
        double out[5];
        for (Source s : all_sources)
            out[static_cast<int>(s)] = hooks.integrate(model.integrand(s, v)) / (2.0 * std::numbers::pi);
        return Contributions{out[0], out[1], out[2], out[3], out[4]};
    };
    return combine(part(Variance::position), part(Variance::momentum));
}

double worst_breakdown_diff(const OccupancyBreakdown& a, const OccupancyBreakdown& b) {
    // Contributions that cancel to ~0 (n_co at pi/2) are compared on the n_tot scale.
    const double scale = std::abs(a.n_tot) + std::abs(b.n_tot);
    auto d = [&](double x, double y) {
        const double m = std::max({std::abs(x), std::abs(y), 1e-3 * scale});
        return m == 0.0 ? 0.0 : std::abs(x - y) / m;
    };
    return std::max({d(a.n_th, b.n_th), d(a.n_ba, b.n_ba), d(a.n_fb, b.n_fb), d(a.n_co, b.n_co),
                     d(a.n_v, b.n_v), rel_diff(a.n_tot, b.n_tot)});
}

template <typename Body>
CheckResult guarded(std::string name, double tol, Body&& body) {
    CheckResult r{std::move(name), false, 0.0, tol, ""};
    try {
        r.worst = body(r.detail);
        r.passed = r.worst <= tol;
    } catch (const std::exception& e) {
        r.passed = false;
        r.worst = std::numeric_limits<double>::infinity();
        r.detail = e.what();
    }
    return r;
}

CheckResult convention_lock(const SelfcheckHooks& hooks) {
    return guarded("convention lock", 1e-12, [&](std::string& detail) {
        // int dw / (1 + w^2) = pi, written as h(w) = w - i, g = -1
        const RationalIntegrand ri{{cplx{1.0, 0.0}, cplx{0.0, -1.0}}, {-1.0}};
        const double v = hooks.integrate(ri);
        detail = "a=(1,-i) b=(-1)";
        return rel_diff(v, std::numbers::pi);
    });
}

CheckResult numeric_vs_exact(const SelfcheckHooks& hooks) {
    return guarded("numeric vs exact", 1e-6, [&](std::string& detail) {
        double worst = 0.0;
        for (const auto& p : finite_kappa_points())
            worst = std::max(worst, worst_breakdown_diff(numeric_with(hooks, p.sys, p.fb), hooks.exact(p.sys, p.fb)));
        detail = std::to_string(finite_kappa_points().size()) + " finite-kappa points";
        return worst;
    });
}

CheckResult exact_at_zero_beta(const SelfcheckHooks& hooks) {
    return guarded("numeric vs exact, beta = 0", 1e-6, [&](std::string& detail) {
        double worst = 0.0;
        for (const auto& p : bad_cavity_points())
            worst = std::max(worst, worst_breakdown_diff(numeric_with(hooks, p.sys, p.fb), hooks.exact(p.sys, p.fb)));
        detail = std::to_string(bad_cavity_points().size()) + " bad-cavity points";
        return worst;
    });
}

CheckResult bad_cavity_limit(const SelfcheckHooks& hooks) {
    // The closed forms drop O(1/(alpha Q_m)) terms; compare n_tot only.
    return guarded("bad-cavity forms vs exact", 1e-3, [&](std::string& detail) {
        double worst = 0.0;
        for (const auto& p : bad_cavity_points())
            worst = std::max(worst, rel_diff(occupancy_bad_cavity(p.sys, p.fb).n_tot, hooks.exact(p.sys, p.fb).n_tot));
        detail = "n_tot, Q_m = 1e6";
        return worst;
    });
}

CheckResult stability_oracle() {
    return guarded("stability oracle agreement", 0.0, [&](std::string& detail) {
        std::mt19937_64 rng(20240611);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        auto log_u = [&](double lo, double hi) { return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * u(rng)); };
        int disagreements = 0, compared = 0;
        for (int k = 0; k < 300; ++k) {
            const SystemParams sys{log_u(1e1, 1e6), log_u(1e-3, 2.0), log_u(1e-1, 1e5), log_u(1e-1, 1e4), 1.0};
            const FeedbackParams fb{log_u(1e-2, 1e5), log_u(1e-2, 1e2), half_pi};
            const auto rep = stability::assess(sys, fb);
            if (rep.marginal) continue;
            ++compared;
            if (!rep.agree) ++disagreements;
        }
        detail = std::to_string(compared) + " draws, " + std::to_string(disagreements) + " disagreements";
        return static_cast<double>(disagreements);
    });
}

CheckResult padding_invariance(const SelfcheckHooks& hooks) {
    return guarded("lambda-padding invariance", 1e-9, [&](std::string& detail) {
        double worst = 0.0;
        int n = 0;
        for (const auto& p : finite_kappa_points()) {
            const ClosedLoopModel model = build_closed_loop(p.sys, p.fb);
            for (Variance v : {Variance::position, Variance::momentum})
                for (Source s : {Source::thermal, Source::back_action, Source::feedback}) {
                    const auto ri = model.integrand(s, v);
                    const double base = hooks.integrate(ri);
                    for (double lambda : {0.3, 1.0, 7.0}) {
                        worst = std::max(worst, rel_diff(base, hooks.integrate(integral::pad_integrand(ri, lambda))));
                        ++n;
                    }
                }
        }
        detail = std::to_string(n) + " padded integrals";
        return worst;
    });
}

}  // namespace

SelfcheckHooks make_hooks(Mutation m) {
    SelfcheckHooks hooks;
    if (m == Mutation::sign_flip)
        hooks.integrate = [](const RationalIntegrand& ri) { return -integral::integrate_rational(ri); };
    else
        hooks.integrate = [](const RationalIntegrand& ri) { return integral::integrate_rational(ri); };

    if (m == Mutation::s_m_shift)
        hooks.exact = [](const SystemParams& sys, const FeedbackParams& fb) {
            stability::require_stable(sys, fb);
            const double s_m = exact_denominator(sys, fb) + sys.beta * sys.beta * fb.sigma;
            return occupancy_exact_with_denominator(sys, fb, s_m);
        };
    else
        hooks.exact = [](const SystemParams& sys, const FeedbackParams& fb) { return occupancy_exact(sys, fb); };
    return hooks;
}

std::vector<CheckResult> run_selfcheck(const SelfcheckHooks& hooks) {
    return {convention_lock(hooks),       numeric_vs_exact(hooks), exact_at_zero_beta(hooks),
            bad_cavity_limit(hooks),      stability_oracle(),      padding_invariance(hooks)};
}

}  // namespace feedcool
