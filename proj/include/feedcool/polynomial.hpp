#pragma once

// Dense polynomials with coefficients stored in ascending powers:
// p[0] + p[1] x + ... + p[n] x^n.

#include <complex>
#include <span>
#include <vector>

namespace feedcool::poly {

using cplx = std::complex<double>;
using RealPoly = std::vector<double>;
using ComplexPoly = std::vector<cplx>;

RealPoly multiply(std::span<const double> p, std::span<const double> q);
ComplexPoly multiply(std::span<const cplx> p, std::span<const cplx> q);

double evaluate(std::span<const double> p, double x);
cplx evaluate(std::span<const double> p, cplx x);
cplx evaluate(std::span<const cplx> p, cplx x);

// Drops trailing (highest-power) exact zeros.
RealPoly trimmed(RealPoly p);

// Roots from the eigenvalues of the companion matrix. The leading
// coefficient must be nonzero; returns degree-many roots.
std::vector<cplx> roots(std::span<const cplx> p);
std::vector<cplx> roots(std::span<const double> p);

}  // namespace feedcool::poly
