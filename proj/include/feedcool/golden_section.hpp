#pragma once

#include <cmath>
#include <utility>

namespace feedcool {

struct ScalarMinimum {
    double x;
    double f;
};

// Golden-section search on [lo, hi] until the bracket is narrower than tol.
// Deterministic: the same inputs evaluate f at the same points.
template <typename F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498948482;
    if (hi < lo) std::swap(lo, hi);
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? ScalarMinimum{x1, f1} : ScalarMinimum{x2, f2};
}

}  // namespace feedcool
