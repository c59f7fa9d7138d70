#include "feedcool/closed_loop.hpp"

#include <cmath>
#include <stdexcept>

#include "feedcool/model.hpp"

namespace feedcool {

ClosedLoopModel build_closed_loop(const SystemParams& sys, const FeedbackParams& fb) {
    validate_pair(sys, fb);
    ClosedLoopModel m;
    m.characteristic = model::characteristic_polynomial(sys, fb);

    // h(omega) = sum_k r_k (i omega)^k; store highest power first.
    const std::size_t n = m.characteristic.size() - 1;
    m.denominator.resize(n + 1);
    std::complex<double> ik{1.0, 0.0};
    for (std::size_t k = 0; k <= n; ++k) {
        m.denominator[n - k] = m.characteristic[k] * ik;
        ik *= std::complex<double>{0.0, 1.0};
    }

    const double inv_q = 1.0 / sys.q_m;
    const double inv_a2 = 1.0 / (fb.alpha * fb.alpha);
    const double b2 = sys.beta * sys.beta;
    const poly::RealPoly lowpass{1.0, inv_a2};  // |1 - i omega/alpha|^2
    const poly::RealPoly cavity{1.0, b2};       // |1 - i beta omega|^2

    auto scaled = [](poly::RealPoly p, double c) {
        for (double& v : p) v *= c;
        return p;
    };

    auto& nums = m.numerators;
    nums[static_cast<int>(Source::thermal)] =
        scaled(poly::multiply(lowpass, cavity), (2.0 * sys.n_bar + 1.0) * inv_q);
    nums[static_cast<int>(Source::back_action)] = scaled(lowpass, sys.c_cl * inv_q / 2.0);
    if (fb.sigma > 0.0) {
        const double sin_t = std::sin(fb.theta);
        const poly::RealPoly w2_cavity{0.0, 1.0, b2};  // omega^2 (1 + beta^2 omega^2)
        nums[static_cast<int>(Source::feedback)] =
            scaled(w2_cavity, fb.sigma * fb.sigma * inv_q / (2.0 * sys.c_cl * sin_t * sin_t));
        nums[static_cast<int>(Source::cross)] =
            poly::RealPoly{0.0, -fb.sigma * cot_exact(fb.theta) * (sys.beta + 1.0 / fb.alpha) * inv_q};
        nums[static_cast<int>(Source::vacuum)] =
            scaled(nums[static_cast<int>(Source::feedback)], 1.0 / sys.eta - 1.0);
    } else {
        nums[static_cast<int>(Source::feedback)] = {0.0};
        nums[static_cast<int>(Source::cross)] = {0.0};
        nums[static_cast<int>(Source::vacuum)] = {0.0};
    }
    return m;
}

integral::RationalIntegrand ClosedLoopModel::integrand(Source src, Variance v) const {
    const std::size_t n = order();
    poly::RealPoly num = numerators[static_cast<int>(src)];
    if (v == Variance::momentum) num.insert(num.begin(), 0.0);
    num = poly::trimmed(std::move(num));
    if (num.size() > n)
        throw std::logic_error("closed loop numerator exceeds degree 2n-2; the integral diverges");

    integral::RationalIntegrand ri;
    ri.a = denominator;
    ri.b.assign(n, 0.0);
    for (std::size_t k = 0; k < num.size(); ++k) ri.b[n - 1 - k] = num[k];
    return ri;
}

double ClosedLoopModel::spectrum(Source src, double omega) const {
    const double w2 = omega * omega;
    const auto h = poly::evaluate(std::span<const std::complex<double>>(
                                      std::vector<std::complex<double>>(denominator.rbegin(), denominator.rend())),
                                  std::complex<double>{omega, 0.0});
    return poly::evaluate(std::span<const double>(numerators[static_cast<int>(src)]), w2) / std::norm(h);
}

}  // namespace feedcool
