#include "feedcool/rational_integral.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "feedcool/errors.hpp"
#include "feedcool/polynomial.hpp"

namespace feedcool::integral {

namespace {

cplx coefficient(const RationalIntegrand& ri, long k) {
    const long n = static_cast<long>(ri.order());
    return (k < 0 || k > n) ? cplx{} : ri.a[static_cast<std::size_t>(k)];
}

Eigen::MatrixXcd delta_matrix(const RationalIntegrand& ri) {
    const long n = static_cast<long>(ri.order());
    Eigen::MatrixXcd d(n, n);
    // 1-based (i, j) -> a_{2j - i}
    for (long i = 1; i <= n; ++i)
        for (long j = 1; j <= n; ++j) d(i - 1, j - 1) = coefficient(ri, 2 * j - i);
    return d;
}

cplx prefactor(const RationalIntegrand& ri) {
    const std::size_t n = ri.order();
    const double sign = (n + 1) % 2 == 0 ? 1.0 : -1.0;
    return cplx{0.0, 1.0} * sign * std::numbers::pi / ri.a[0];
}

void check_roots(const RationalIntegrand& ri) {
    if (!satisfies_root_condition(ri))
        throw RootConditionError("rational integral: h_n has a root outside the open upper half plane (min Im = " +
                                 std::to_string(min_root_imaginary_part(ri)) + ")");
}

cplx nonzero_delta_det(const RationalIntegrand& ri) {
    const cplx det = scaled_determinant(delta_matrix(ri));
    if (det == cplx{} || !std::isfinite(std::abs(det)))
        throw DegenerateDenominatorError("rational integral: det(Delta_n) vanishes");
    return det;
}

}  // namespace

void RationalIntegrand::validate() const {
    if (a.size() < 2) throw std::invalid_argument("RationalIntegrand: need at least two denominator coefficients");
    if (a[0] == cplx{}) throw std::invalid_argument("RationalIntegrand: a_0 must be nonzero");
    if (b.size() != order())
        throw std::invalid_argument("RationalIntegrand: numerator must have exactly n coefficients");
}

HurwitzMatrices build_matrices(const RationalIntegrand& ri) {
    ri.validate();
    HurwitzMatrices h;
    h.delta = delta_matrix(ri);
    h.m = h.delta;
    for (std::size_t j = 0; j < ri.b.size(); ++j) h.m(0, static_cast<long>(j)) = ri.b[j];
    return h;
}

cplx scaled_determinant(const Eigen::MatrixXcd& mat) {
    Eigen::MatrixXcd scaled = mat;
    cplx scale{1.0, 0.0};
    for (long i = 0; i < scaled.rows(); ++i) {
        const double row_max = scaled.row(i).cwiseAbs().maxCoeff();
        if (row_max == 0.0) return cplx{};
        scaled.row(i) /= row_max;
        scale *= row_max;
    }
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(scaled).determinant() * scale;
}

double min_root_imaginary_part(const RationalIntegrand& ri) {
    std::vector<cplx> ascending(ri.a.rbegin(), ri.a.rend());
    double lo = INFINITY;
    for (const cplx& r : poly::roots(ascending)) lo = std::min(lo, r.imag());
    return lo;
}

bool satisfies_root_condition(const RationalIntegrand& ri) {
    std::vector<cplx> ascending(ri.a.rbegin(), ri.a.rend());
    for (const cplx& r : poly::roots(ascending))
        if (!(r.imag() >= 1e-12 * std::max(1.0, std::abs(r)))) return false;
    return true;
}

std::vector<double> monomial_integrals(const RationalIntegrand& ri, const IntegralOptions& opts) {
    ri.validate();
    if (opts.check_roots) check_roots(ri);
    const cplx det_delta = nonzero_delta_det(ri);
    const cplx pre = prefactor(ri);
    const long n = static_cast<long>(ri.order());

    // det(M_n) is linear in its first row: basis j uses the cofactor of (0, j).
    Eigen::MatrixXcd d = delta_matrix(ri);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) {
        Eigen::MatrixXcd m = d;
        m.row(0).setZero();
        m(0, j) = 1.0;
        out[static_cast<std::size_t>(j)] = (pre * scaled_determinant(m) / det_delta).real();
    }
    return out;
}

double integrate_rational(const RationalIntegrand& ri, const IntegralOptions& opts) {
    const HurwitzMatrices h = build_matrices(ri);
    if (opts.check_roots) check_roots(ri);
    if (std::all_of(ri.b.begin(), ri.b.end(), [](double v) { return v == 0.0; })) return 0.0;

    const cplx det_delta = nonzero_delta_det(ri);
    const cplx value = prefactor(ri) * scaled_determinant(h.m) / det_delta;

    IntegralOptions inner = opts;
    inner.check_roots = false;
    const std::vector<double> basis = monomial_integrals(ri, inner);
    double magnitude = 0.0;
    for (std::size_t j = 0; j < basis.size(); ++j) magnitude += std::abs(ri.b[j] * basis[j]);
    if (std::abs(value.imag()) > opts.imaginary_tolerance * magnitude)
        throw NumericalError("rational integral: imaginary residue " + std::to_string(value.imag()) +
                             " exceeds tolerance (scale " + std::to_string(magnitude) + ")");
    return value.real();
}

RationalIntegrand pad_integrand(const RationalIntegrand& ri, double lambda) {
    ri.validate();
    if (!(lambda > 0.0)) throw std::invalid_argument("pad_integrand: lambda must be > 0");
    RationalIntegrand out;
    // Descending order: (a_0 w^n + ... + a_n)(i w + lambda).
    out.a.assign(ri.a.size() + 1, cplx{});
    for (std::size_t k = 0; k < ri.a.size(); ++k) {
        out.a[k] += ri.a[k] * cplx{0.0, 1.0};
        out.a[k + 1] += ri.a[k] * lambda;
    }
    // Descending in w^2: (sum b_k w^{2(n-1-k)})(w^2 + lambda^2).
    out.b.assign(ri.b.size() + 1, 0.0);
    for (std::size_t k = 0; k < ri.b.size(); ++k) {
        out.b[k] += ri.b[k];
        out.b[k + 1] += ri.b[k] * lambda * lambda;
    }
    return out;
}

}  // namespace feedcool::integral
