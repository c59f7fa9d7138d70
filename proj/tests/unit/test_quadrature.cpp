#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "feedcool/errors.hpp"
#include "feedcool/quadrature.hpp"

using namespace feedcool::integral;

TEST_CASE("standard Lorentzian") {
    const auto r = integrate_real_line([](double w) { return 2.5 / (1.0 + w * w); });
    CHECK(std::abs(r.value - 2.5 * std::numbers::pi) < 1e-10 * 2.5 * std::numbers::pi);
    CHECK(r.error_estimate >= 0.0);
}

TEST_CASE("half line doubles to the full line for even integrands") {
    auto f = [](double w) { return 1.0 / (std::pow(w * w - 1.0, 2) + 0.04 * w * w); };
    QuadratureOptions full;
    full.breakpoints = {-1.0, 1.0};
    QuadratureOptions half = full;
    half.domain = Domain::half_line;
    const double a = quadrature_oracle(f, 1e-10, full);
    const double b = 2.0 * quadrature_oracle(f, 1e-10, half);
    CHECK(std::abs(a - b) < 1e-9 * a);
    CHECK(a == doctest::Approx(std::numbers::pi / 0.2).epsilon(1e-9));
}

TEST_CASE("narrow resonance with breakpoints") {
    const double g = 1e-4;
    auto f = [&](double w) { return g * g / (std::pow(w * w - 1.0, 2) + g * g * w * w); };
    QuadratureOptions q;
    q.breakpoints = {-1.0, 1.0};
    CHECK(quadrature_oracle(f, 1e-10, q) == doctest::Approx(std::numbers::pi * g).epsilon(1e-8));
}

TEST_CASE("non-convergence reports a partial value") {
    QuadratureOptions q;
    q.max_intervals = 3;
    auto f = [](double w) { return 1.0 / (1e-12 + w * w) * 1e-6 + 1.0 / (1.0 + w * w); };
    try {
        integrate_real_line(f, 1e-14, q);
        FAIL("expected QuadratureError");
    } catch (const feedcool::QuadratureError& e) {
        CHECK(std::isfinite(e.partial_value()));
        CHECK(e.error_estimate() > 0.0);
    }
}
