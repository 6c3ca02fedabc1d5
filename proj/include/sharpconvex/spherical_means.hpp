#pragma once

// Spherical means I = int_{S^{n-1}} |x - a z|^beta d sigma(z) for the
// normalized surface measure sigma. By rotational invariance only |x|
// enters, and t = <x/|x|, z> is distributed as mu_{(n-2)/2}, so
//
//   I = int_{-1}^{1} (|x|^2 - 2 a |x| t + a^2)^{beta/2} d mu_{(n-2)/2}(t).

#include <span>

#include "sharpconvex/quadrature.hpp"
#include "sharpconvex/verify_report.hpp"

namespace sharpconvex::spherical {

struct SphereMeanQuery {
  int n = 2;          // ambient dimension, >= 2
  double beta = 1.0;  // exponent
  double a = 0.0;     // radius, >= 0
  double xnorm = 1.0; // |x|, >= 0
};

// Absolute error <= 1e-10 (relative for large values). Smooth configurations
// use the order-`order` Gauss rule; coincident or nearly coincident radii go
// through adaptive quadrature. Throws DomainError for divergent
// configurations (a = |x| with beta <= -(n-1), or a = |x| = 0 with beta < 0).
double sphere_mean(const SphereMeanQuery& q, int order = quadrature::kDefaultOrder);

// The same integral against mu_lambda for real lambda > -1/2 (so n - 2 may
// be any real 2 lambda > -1):
//   int (x^2 - 2 a x t + a^2)^{beta/2} d mu_lambda(t).
double ultraspherical_mean(double lambda, double beta, double a, double xnorm,
                           int order = quadrature::kDefaultOrder);

// I''(0) for |x| = 1: p (p - 2) / n + p.
double second_derivative_at_zero(int n, double p);

// |x|^q is subharmonic on R^n \ {0} iff q (n + q - 2) >= 0.
bool is_subharmonic_exponent(int n, double q);

// Checks the mean-value lower bound int |x - a z|^q d sigma >= max(a, |x|)^q
// over a_grid. Requires a subharmonic exponent (ArgumentError otherwise).
VerifyReport verify_subharmonic_bound(int n, double q, std::span<const double> a_grid, double xnorm,
                                      int order = quadrature::kDefaultOrder,
                                      double tolerance = kDefaultMarginTol);

}  // namespace sharpconvex::spherical
