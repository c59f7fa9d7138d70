#pragma once

// Rational representation of the position spectrum: for every noise source,
//   S_X,i(omega) = N_i(omega^2) / |h(omega)|^2,
// with h(omega) = R(i omega) the conjugate-reflected characteristic
// polynomial, whose roots lie in the upper half plane when the loop is stable.
// The cavity and low-pass factors of chi_eff and of the force PSDs cancel
// exactly, so every numerator stays within the degree the rational integral
// accepts, for S_X and for S_P = omega^2 S_X alike.

#include <array>
#include <complex>
#include <vector>

#include "feedcool/params.hpp"
#include "feedcool/polynomial.hpp"
#include "feedcool/rational_integral.hpp"

namespace feedcool {

enum class Source { thermal = 0, back_action, feedback, cross, vacuum };
inline constexpr std::array<Source, 5> all_sources{Source::thermal, Source::back_action, Source::feedback,
                                                   Source::cross, Source::vacuum};

enum class Variance { position, momentum };

struct ClosedLoopModel {
    poly::RealPoly characteristic;                 // R(s), ascending
    std::vector<std::complex<double>> denominator;  // h(omega), highest power first
    std::array<poly::RealPoly, 5> numerators;      // N_i in ascending powers of omega^2

    std::size_t order() const { return denominator.size() - 1; }

    // Integrand for int S_X,i domega (position) or int omega^2 S_X,i domega (momentum).
    integral::RationalIntegrand integrand(Source src, Variance v) const;

    // N_i(omega^2) / |h(omega)|^2 evaluated directly.
    double spectrum(Source src, double omega) const;
};

ClosedLoopModel build_closed_loop(const SystemParams& sys, const FeedbackParams& fb);

}  // namespace feedcool
