#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "feedcool/errors.hpp"
#include "feedcool/stability.hpp"

using namespace feedcool;
using namespace feedcool::stability;

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

bool poles_stable(const SystemParams& sys, double sigma, double alpha) {
    const auto p = closed_loop_poles(sys, {sigma, alpha, half_pi});
    return std::all_of(p.begin(), p.end(), [](auto z) { return z.real() < 0.0; });
}

template <typename Pred>
double bisect_onset(Pred stable, double lo, double hi) {
    for (int k = 0; k < 200 && hi - lo > 1e-12 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        (stable(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("bad-cavity margin is always positive") {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 500; ++k) {
        const SystemParams sys{log_uniform(rng, 1.0, 1e9), 0.0, 1.0, 1.0, 1.0};
        const FeedbackParams fb{log_uniform(rng, 1e-3, 1e9), log_uniform(rng, 1e-3, 1e3), half_pi};
        const double expect = 1.0 + fb.sigma + 1.0 / (fb.alpha * fb.alpha) + (1.0 + fb.sigma) / (sys.q_m * fb.alpha);
        CHECK(routh_hurwitz_margin(sys, fb) == doctest::Approx(expect).epsilon(1e-14));
        CHECK(assess(sys, fb).feasible());
    }
}

TEST_CASE("no feedback is always stable") {
    std::mt19937_64 rng(2);
    for (int k = 0; k < 300; ++k) {
        const SystemParams sys{log_uniform(rng, 1.0, 1e7), log_uniform(rng, 1e-4, 1e2), 1.0, 1.0, 1.0};
        const FeedbackParams fb{0.0, log_uniform(rng, 1e-3, 1e3), half_pi};
        CHECK(routh_hurwitz_margin(sys, fb) > 0.0);
    }
}

TEST_CASE("intrinsic poles") {
    const SystemParams sys{1e4, 0.0, 1.0, 1.0, 1.0};
    const auto p = closed_loop_poles(sys, {0.0, 2.0, half_pi});
    CHECK(p.size() == 3);
    int oscillator = 0;
    for (const auto& z : p)
        if (std::abs(z.imag()) > 0.5) {
            CHECK(z.real() == doctest::Approx(-0.5 / sys.q_m).epsilon(1e-9));
            ++oscillator;
        }
    CHECK(oscillator == 2);
    CHECK(closed_loop_poles({1e4, 0.1, 1.0, 1.0, 1.0}, {1.0, 2.0, 1.0}).size() == 4);
}

TEST_CASE("instability onset agrees between the two predicates") {
    const SystemParams sys{1e3, 0.5, 1.0, 1.0, 1.0};
    const double alpha = 1.0;
    CHECK(routh_hurwitz_margin(sys, {1.0, alpha, half_pi}) > 0.0);
    CHECK(routh_hurwitz_margin(sys, {1e5, alpha, half_pi}) < 0.0);
    const double rh = bisect_onset([&](double s) { return routh_hurwitz_margin(sys, {s, alpha, half_pi}) > 0.0; }, 1.0, 1e5);
    const double pole = bisect_onset([&](double s) { return poles_stable(sys, s, alpha); }, 1.0, 1e5);
    CHECK(std::abs(rh - pole) < 1e-6 * rh);
}

TEST_CASE("randomized oracle agreement") {
    std::mt19937_64 rng(3);
    int compared = 0;
    for (int k = 0; k < 1000; ++k) {
        const SystemParams sys{log_uniform(rng, 1.0, 1e6), log_uniform(rng, 1e-3, 10.0), 1.0, 1.0, 1.0};
        const FeedbackParams fb{log_uniform(rng, 1e-2, 1e6), log_uniform(rng, 1e-2, 1e2), half_pi};
        const auto rep = assess(sys, fb);
        CHECK(rep.poles.size() == 4);
        if (rep.marginal) continue;
        ++compared;
        CHECK(rep.agree);
    }
    CHECK(compared > 900);
}

TEST_CASE("term order does not change the margin") {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 100; ++k) {
        const SystemParams sys{log_uniform(rng, 1.0, 1e6), log_uniform(rng, 1e-3, 10.0), 1.0, 1.0, 1.0};
        const FeedbackParams fb{log_uniform(rng, 1e-2, 1e6), log_uniform(rng, 1e-2, 1e2), half_pi};
        auto terms = routh_hurwitz_terms(sys, fb);
        const double base = compensated_sum(terms);
        double scale = 0.0;
        for (double t : terms) scale += std::abs(t);
        std::shuffle(terms.begin(), terms.end(), rng);
        CHECK(std::abs(compensated_sum(terms) - base) <= 1e-12 * scale);
        std::reverse(terms.begin(), terms.end());
        CHECK(std::abs(compensated_sum(terms) - base) <= 1e-12 * scale);
    }
}

TEST_CASE("marginal band is treated as infeasible") {
    const SystemParams sys{1e3, 0.5, 1.0, 1.0, 1.0};
    const double onset = bisect_onset([&](double s) { return routh_hurwitz_margin(sys, {s, 1.0, half_pi}) > 0.0; }, 1.0, 1e5);
    const FeedbackParams fb{onset, 1.0, half_pi};
    const auto rep = assess(sys, fb);
    if (rep.marginal) {
        CHECK_FALSE(rep.feasible());
        CHECK_THROWS_AS(require_stable(sys, fb), InstabilityError);
    }
    CHECK_THROWS_AS(require_stable(sys, {2.0 * onset, 1.0, half_pi}), InstabilityError);
    try {
        require_stable(sys, {2.0 * onset, 1.0, half_pi});
    } catch (const InstabilityError& e) {
        CHECK(e.margin() < 0.0);
    }
}
