#pragma once

#include <functional>

#include "fsl/errors.hpp"

namespace fsl::num {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod (7,15) integration on [a, b].  The worst
// interval (largest local error estimate) is bisected until the summed error
// drops below max(abs_tol, rel_tol*|result|).  Throws ConvergenceError (with
// the best estimate attached) if max_subdivisions is exhausted first.
QuadratureResult integrate_finite(const Integrand& f, double a, double b,
                                  const QuadratureSpec& spec = {});

// Integral over [0, inf) of a decaying integrand.  The cutoff T is grown
// geometrically until a crude tail bound (probe samples times remaining
// scale) falls below abs_tol, then [0, T] is handed to integrate_finite.
// No variable transform: oscillatory-but-damped integrands stay benign.
QuadratureResult integrate_semi_infinite(const Integrand& f,
                                         const QuadratureSpec& spec = {});

// Bessel function of the first kind, order zero.  Ascending power series
// below |x| = 5, Hankel asymptotic form with rational P/Q corrections above;
// good to ~1e-15 relative (away from zeros) over |x| <= 500.
double bessel_j0(double x);

// Bessel function of the first kind, order one (odd in x).  Same two-regime
// scheme and accuracy as bessel_j0; usable far beyond x = 500, which the
// aperture-flux Hankel transforms need.
double bessel_j1(double x);

// Error function and complement (thin wrappers, kept so the numerical
// contract of this module is explicit and unit-tested in one place).
double erf(double x);
double erfc(double x);

}  // namespace fsl::num
