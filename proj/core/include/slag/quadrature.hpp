#pragma once

#include <functional>

namespace slag::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  // Kronrod-Gauss difference, summed over intervals
  int evaluations = 0;
  bool converged = false;
};

struct Options {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_intervals = 2000;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on a finite
/// interval: the interval with the largest error estimate is bisected until
/// the summed estimate meets max(abs_tol, rel_tol * |value|).
Result integrate(const Integrand& f, double a, double b, const Options& opts = {});

/// Integral of f over [a, +inf) for a >= 0.  The piece [a, 1] (if any) is
/// integrated directly; the tail [max(a,1), inf) is mapped by x = 1/u onto
/// (0, 1/max(a,1)] where `tail` must evaluate f(1/u)/u^2.  Callers supply
/// the substituted integrand in closed form so algebraic decay is resolved
/// without overflow near u = 0.
Result integrate_to_infinity(const Integrand& f, const Integrand& tail, double a,
                             const Options& opts = {});

}  // namespace slag::quad
