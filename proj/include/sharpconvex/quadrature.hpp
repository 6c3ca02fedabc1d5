#pragma once

// Quadrature against the probability measures
//
//   d mu_lambda(t) = 2 c_{2 lambda} (1 - t^2)^{lambda - 1/2} dt   on [-1, 1],
//
// the pushforward of nu_{2 lambda} on the circle under t = cos(theta). Fixed
// Gauss rules cover smooth integrands; adaptive_integrate handles integrands
// with algebraic (near-)singularities at t = +-1.

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sharpconvex/errors.hpp"

namespace sharpconvex::quadrature {

inline constexpr int kMinOrder = 2;
inline constexpr int kMaxOrder = 10000;
inline constexpr int kDefaultOrder = 256;
inline constexpr double kDefaultAdaptiveTol = 1e-11;

// Order used to re-check a failed verification.
inline constexpr int doubled_order(int order) { return 2 * order < kMaxOrder ? 2 * order : kMaxOrder; }

// Gauss rule for mu_lambda. Nodes strictly increasing in (-1, 1), positive
// weights summing to one, symmetric about the origin.
class QuadRule {
 public:
  QuadRule(double lambda, std::vector<double> nodes, std::vector<double> weights);

  double lambda() const noexcept { return lambda_; }
  int order() const noexcept { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  double lambda_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

// Gauss rule for mu_lambda with `order` nodes, exact for polynomials of
// degree <= 2 order - 1. Requires lambda > -1/2 and 2 <= order <= 10^4.
QuadRule build_rule(double lambda, int order);

// Process-wide memoized build_rule. The returned reference stays valid for
// the lifetime of the program. Thread-safe.
const QuadRule& cached_rule(double lambda, int order);

// Sum of weights[i] * f(nodes[i]). Throws EvaluationError on a non-finite value.
template <class F>
double integrate(const QuadRule& rule, F&& f) {
  const auto x = rule.nodes();
  const auto w = rule.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = f(x[i]);
    if (!std::isfinite(v)) {
      throw EvaluationError("integrate: non-finite integrand at node " + std::to_string(x[i]), x[i]);
    }
    sum += w[i] * v;
  }
  return sum;
}

// Density of mu_lambda with respect to dt. lambda > -1/2.
double density(double lambda, double t);

// A point of [-1, 1] together with its distances to both endpoints, each
// carried at full relative precision.
struct Abscissa {
  double t;
  double one_minus_t;
  double one_plus_t;
};

using PointFunction = std::function<double(const Abscissa&)>;

// Known algebraic endpoint behaviour of an integrand: f(t) ~ (1+t)^left near
// t = -1 and f(t) ~ (1-t)^right near t = +1. The exponent is folded into the
// Jacobi weight of the end panels so such integrands converge immediately.
struct EndpointExponents {
  double left = 0.0;
  double right = 0.0;
};

struct AdaptiveResult {
  double value;
  double error_estimate;
  int panels;
};

// Integral of f against mu_lambda over [-1, 1] to absolute error <= tol
// (or to roundoff, whichever is larger), by global adaptive bisection with
// 10/20-point Gauss panels. End panels carry the exact Jacobi weight, so
// bisection grades the mesh toward +-1. Throws ConvergenceError when the
// subdivision budget is exhausted.
double adaptive_integrate(double lambda, const std::function<double(double)>& f, double tol);
double adaptive_integrate(double lambda, const PointFunction& f, double tol,
                          EndpointExponents exponents = {});
AdaptiveResult adaptive_integrate_detailed(double lambda, const PointFunction& f, double tol,
                                           EndpointExponents exponents = {});

// Integral of f against mu_lambda restricted to [lo, hi] subset of [-1, 1].
double adaptive_integrate_range(double lambda, const PointFunction& f, double lo, double hi,
                                double tol);

// Plain (Lebesgue) integral of f over [lo, hi].
double adaptive_integrate_plain(const std::function<double(double)>& f, double lo, double hi,
                                double tol);

// mu_lambda({t > u}) by adaptive quadrature of the density on [u, 1].
double upper_tail(double lambda, double u, double tol = 1e-12);
// mu_lambda({t <= u}) by adaptive quadrature of the density on [-1, u].
double lower_cdf(double lambda, double u, double tol = 1e-12);

// Whether an order-n Gauss rule resolves an integrand analytic except at the
// real point `singularity` (|singularity| > 1) to near machine precision,
// judged from the Bernstein-ellipse convergence rate rho^(-2n).
bool gauss_resolves(double singularity, int order);

namespace detail {

struct JacobiNodes {
  std::vector<double> nodes;    // increasing
  std::vector<double> weights;  // sum to the mass of (1-x)^alpha (1+x)^beta on [-1, 1]
};

// Gauss-Jacobi rule for the weight (1-x)^alpha (1+x)^beta, alpha, beta > -1.
// Roots by Newton iteration with deflation from asymptotic initial guesses.
JacobiNodes gauss_jacobi(double alpha, double beta, int n);

// Memoized gauss_jacobi; thread-safe.
const JacobiNodes& cached_gauss_jacobi(double alpha, double beta, int n);

}  // namespace detail

}  // namespace sharpconvex::quadrature
