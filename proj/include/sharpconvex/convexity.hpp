#pragma once

// Sphere-mean convexity inequality
//
//   int_{S^{n-1}} |x - a z|^p d sigma(z) >= (|x|^2 + lambda a^2)^{p/2},
//
// whose best constant for p in (0, 2] is (n + p - 2) / n, together with the
// auxiliary bounds used to establish it.

#include <span>
#include <vector>

#include "sharpconvex/quadrature.hpp"
#include "sharpconvex/verify_report.hpp"

namespace sharpconvex::convexity {

struct TheoremParams {
  int n = 2;
  double p = 1.0;
  double lambda = 0.5;
  std::vector<double> a_grid;
};

struct BestConstantResult {
  double value = 0.0;          // min over the grid of lambda*(a)
  double argmin = 0.0;         // grid point attaining it
  double limit_at_zero = 0.0;  // Richardson extrapolation of lambda*(a), a -> 0
  double tolerance = 0.0;
};

// Default a-grid: 400 log-spaced points on [1e-3, 1e2].
std::vector<double> default_a_grid();

// (n + p - 2) / n.
double sharp_lambda(int n, double p);

// margin(a) = sphere_mean(n, p, a, 1) - (1 + lambda a^2)^{p/2} over the grid.
// A failing grid is re-evaluated at doubled quadrature order before it is
// reported.
VerifyReport verify_theorem(const TheoremParams& params, int order = quadrature::kDefaultOrder,
                            double tolerance = kDefaultMarginTol);

// lambda*(a) = (I(a)^{2/p} - 1) / a^2, the largest constant admissible at a.
double lambda_star(int n, double p, double a, int order = quadrature::kDefaultOrder);

// Grid infimum of lambda*(a) and its a -> 0 limit. `tolerance` is recorded
// in the result and bounds value - limit_at_zero.
BestConstantResult best_lambda(int n, double p, std::span<const double> a_grid,
                               int order = quadrature::kDefaultOrder, double tolerance = 1e-4);

// Lower bound for the n = 3 sphere mean when p in (0, 1]:
//   1 + p (p + 1) a^2 / 6                  for a <= 1,
//   a^p + p (2 - p) / (3 a) - p (1 - p) / 2  for a > 1.
double n3_bound(double p, double a);

// t^{p/2} + p (2 - p) / (3 sqrt t) - p (1 - p) / 2 - (1 + (p + 1) t / 3)^{p/2}.
double phi(double p, double t);

// (1 + a^2)^{p/2 - 1} (1 + (4 - p)(2 - p) a^2 / (2 n (1 + a^2)^2)), a lower
// bound for sphere_mean(n, p - 2, a, 1).
double psi(int n, double p, double a);

// x^q (1 - y + q (1 - x)(x - y)) - (1 - y - (1 - y^2)(1 - x)).
double ee6_margin(double q, double x, double y);

}  // namespace sharpconvex::convexity
