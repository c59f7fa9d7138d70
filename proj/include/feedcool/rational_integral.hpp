#pragma once

// Closed-form evaluation of
//
//   int_{-inf}^{inf} g_n(w) / (h_n(w) h_n(-w)) dw,
//   g_n(w) = b_0 w^{2n-2} + b_1 w^{2n-4} + ... + b_{n-1},
//   h_n(w) = a_0 w^n + a_1 w^{n-1} + ... + a_n,
//
// with every root of h_n strictly in the upper half plane. The value is
//   i (-1)^{n+1} (pi / a_0) det(M_n) / det(Delta_n)
// where (Delta_n)_{ij} = a_{2j-i} (a_k = 0 outside 0..n) and M_n equals
// Delta_n with its first row replaced by (b_0, ..., b_{n-1}).
//
// Note the coefficient order: both a and b are stored highest power first.

#include <Eigen/Core>
#include <complex>
#include <vector>

namespace feedcool::integral {

using cplx = std::complex<double>;

struct RationalIntegrand {
    std::vector<cplx> a;    // n + 1 denominator coefficients, a[0] != 0
    std::vector<double> b;  // n numerator coefficients of the even polynomial

    std::size_t order() const { return a.empty() ? 0 : a.size() - 1; }
    void validate() const;
};

struct HurwitzMatrices {
    Eigen::MatrixXcd delta;
    Eigen::MatrixXcd m;
};

HurwitzMatrices build_matrices(const RationalIntegrand& ri);

// Determinant by partial-pivot LU after scaling every row to unit max-norm.
cplx scaled_determinant(const Eigen::MatrixXcd& mat);

// Smallest imaginary part among the roots of h_n. Roots count as violating
// the half-plane condition below 1e-12 * max(1, |root|).
double min_root_imaginary_part(const RationalIntegrand& ri);
bool satisfies_root_condition(const RationalIntegrand& ri);

struct IntegralOptions {
    bool check_roots = true;
    // Largest accepted |Im| of the complex result, relative to the
    // magnitude scale sum_j |b_j| * I_j of the monomial integrals.
    double imaginary_tolerance = 1e-10;
};

// Throws RootConditionError, DegenerateDenominatorError or NumericalError.
double integrate_rational(const RationalIntegrand& ri, const IntegralOptions& opts = {});

// Integrals of w^{2(n-1-j)} / |h_n(w)|^2 for j = 0..n-1. Each is positive and
// integrate_rational(ri) == sum_j b_j * basis[j].
std::vector<double> monomial_integrals(const RationalIntegrand& ri, const IntegralOptions& opts = {});

// Multiplies h_n by (i w + lambda), whose root is i*lambda, and g_n by
// (w^2 + lambda^2). The integral is unchanged; the order increases by one.
RationalIntegrand pad_integrand(const RationalIntegrand& ri, double lambda);

}  // namespace feedcool::integral
