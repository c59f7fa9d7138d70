#include "feedcool/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace feedcool::poly {

namespace {

template <typename T>
std::vector<T> multiply_impl(std::span<const T> p, std::span<const T> q) {
    if (p.empty() || q.empty()) return {};
    std::vector<T> out(p.size() + q.size() - 1, T{});
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
    return out;
}

template <typename C, typename X>
X horner(std::span<const C> p, X x) {
    X acc{};
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + X(*it);
    return acc;
}

}  // namespace

RealPoly multiply(std::span<const double> p, std::span<const double> q) {
    return multiply_impl(p, q);
}

ComplexPoly multiply(std::span<const cplx> p, std::span<const cplx> q) {
    return multiply_impl(p, q);
}

double evaluate(std::span<const double> p, double x) { return horner(p, x); }
cplx evaluate(std::span<const double> p, cplx x) { return horner(p, x); }
cplx evaluate(std::span<const cplx> p, cplx x) { return horner(p, x); }

RealPoly trimmed(RealPoly p) {
    while (!p.empty() && p.back() == 0.0) p.pop_back();
    return p;
}

std::vector<cplx> roots(std::span<const cplx> p) {
    if (p.size() < 2) return {};
    const std::size_t n = p.size() - 1;
    const cplx lead = p[n];
    if (lead == cplx{}) throw std::invalid_argument("roots: leading coefficient is zero");
    if (n == 1) return {-p[0] / lead};

    // Frobenius companion matrix of the monic polynomial.
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -p[i] / lead;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("roots: eigen solver failed");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

std::vector<cplx> roots(std::span<const double> p) {
    ComplexPoly c(p.begin(), p.end());
    return roots(std::span<const cplx>(c));
}

}  // namespace feedcool::poly
