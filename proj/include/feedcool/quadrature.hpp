#pragma once

// Adaptive quadrature over the real line via w = tan(u), u in (-pi/2, pi/2).
// Used as an independent check on the closed-form rational integrals.

#include <functional>
#include <vector>

namespace feedcool::integral {

enum class Domain { full_line, half_line };  // (-inf, inf) or [0, inf)

struct QuadratureOptions {
    Domain domain = Domain::full_line;
    // Extra split points in w (e.g. resonances); outside the domain they are ignored.
    std::vector<double> breakpoints;
    double abs_floor = 0.0;
    int max_intervals = 20000;
};

struct QuadratureResult {
    double value;
    double error_estimate;
    int intervals;
};

// Integrand must decay at least as w^-2. Throws QuadratureError carrying the
// partial value when the error target is not met within max_intervals.
QuadratureResult integrate_real_line(const std::function<double(double)>& f, double rel_tol = 1e-10,
                                     const QuadratureOptions& opts = {});

inline double quadrature_oracle(const std::function<double(double)>& f, double rel_tol = 1e-10,
                                const QuadratureOptions& opts = {}) {
    return integrate_real_line(f, rel_tol, opts).value;
}

}  // namespace feedcool::integral
