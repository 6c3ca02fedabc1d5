#include "sharpconvex/convexity.hpp"

#include <cmath>
#include <string>

#include "sharpconvex/errors.hpp"
#include "sharpconvex/grid.hpp"
#include "sharpconvex/parallel.hpp"
#include "sharpconvex/spherical_means.hpp"

namespace sharpconvex::convexity {
namespace {

void check_np(int n, double p, const char* who) {
  if (n < 2) throw ArgumentError(std::string(who) + ": n must be at least 2");
  if (!(p > 0.0 && p <= 2.0)) throw ArgumentError(std::string(who) + ": p must lie in (0, 2]");
}

void check_grid(std::span<const double> grid, const char* who) {
  if (grid.empty()) throw ArgumentError(std::string(who) + ": empty a-grid");
  for (double a : grid) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw ArgumentError(std::string(who) + ": a-grid values must be positive and finite");
    }
  }
}

// I(a) - 1 for |x| = 1, evaluated without cancellation when a is small.
double sphere_mean_excess(int n, double p, double a, int order) {
  if (a >= 0.25) return spherical::sphere_mean({n, p, a, 1.0}, order) - 1.0;
  const auto& rule = quadrature::cached_rule(0.5 * (n - 2.0), order);
  const double half_p = 0.5 * p;
  return quadrature::integrate(rule, [&](double t) {
    return std::expm1(half_p * std::log1p(a * (a - 2.0 * t)));
  });
}

}  // namespace

std::vector<double> default_a_grid() { return grid::logspace(1e-3, 1e2, 400); }

double sharp_lambda(int n, double p) {
  check_np(n, p, "sharp_lambda");
  return (n + p - 2.0) / n;
}

VerifyReport verify_theorem(const TheoremParams& params, int order, double tolerance) {
  check_np(params.n, params.p, "verify_theorem");
  check_grid(params.a_grid, "verify_theorem");
  if (!std::isfinite(params.lambda)) throw ArgumentError("verify_theorem: lambda must be finite");
  const std::span<const double> grid(params.a_grid);
  auto margins_at = [&](int ord) {
    return parallel_map(grid.size(), [&](std::size_t i) {
      const double a = grid[i];
      const double lhs = spherical::sphere_mean({params.n, params.p, a, 1.0}, ord);
      const double base = 1.0 + params.lambda * a * a;
      if (base < 0.0) return lhs;
      return lhs - std::pow(base, 0.5 * params.p);
    });
  };
  auto report = summarize_margins(grid, margins_at(order), tolerance, order);
  if (!report.pass) {
    const int ord = quadrature::doubled_order(order);
    report = summarize_margins(grid, margins_at(ord), tolerance, ord);
    report.note = "failure confirmed at doubled order";
  }
  return report;
}

double lambda_star(int n, double p, double a, int order) {
  check_np(n, p, "lambda_star");
  if (!(a > 0.0) || !std::isfinite(a)) throw ArgumentError("lambda_star: a must be positive");
  const double excess = sphere_mean_excess(n, p, a, order);
  return std::expm1((2.0 / p) * std::log1p(excess)) / (a * a);
}

BestConstantResult best_lambda(int n, double p, std::span<const double> a_grid, int order,
                               double tolerance) {
  check_np(n, p, "best_lambda");
  check_grid(a_grid, "best_lambda");
  const auto values =
      parallel_map(a_grid.size(), [&](std::size_t i) { return lambda_star(n, p, a_grid[i], order); });
  BestConstantResult r;
  r.tolerance = tolerance;
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  r.value = values[best];
  r.argmin = a_grid[best];

  // lambda*(a) is even and analytic in a, so two Richardson steps in a^2
  // remove the a^2 and a^4 terms.
  const double h = 1e-2;
  const double l1 = lambda_star(n, p, h, order);
  const double l2 = lambda_star(n, p, h / 2, order);
  const double l3 = lambda_star(n, p, h / 4, order);
  const double r1 = (4.0 * l2 - l1) / 3.0;
  const double r2 = (4.0 * l3 - l2) / 3.0;
  r.limit_at_zero = (16.0 * r2 - r1) / 15.0;
  return r;
}

double n3_bound(double p, double a) {
  if (!(p > 0.0 && p <= 1.0)) throw ArgumentError("n3_bound: p must lie in (0, 1]");
  if (!(a >= 0.0)) throw ArgumentError("n3_bound: a must be nonnegative");
  if (a <= 1.0) return 1.0 + p * (p + 1.0) * a * a / 6.0;
  return std::pow(a, p) + p * (2.0 - p) / (3.0 * a) + (p - 1.0) * p / 2.0;
}

double phi(double p, double t) {
  if (!(t > 0.0)) throw ArgumentError("phi: t must be positive");
  return std::pow(t, 0.5 * p) + p * (2.0 - p) / (3.0 * std::sqrt(t)) - 0.5 * p * (1.0 - p) -
         std::pow(1.0 + (p + 1.0) * t / 3.0, 0.5 * p);
}

double psi(int n, double p, double a) {
  if (n < 2) throw ArgumentError("psi: n must be at least 2");
  const double s = 1.0 + a * a;
  return std::pow(s, 0.5 * p - 1.0) * (1.0 + (4.0 - p) * (2.0 - p) * a * a / (2.0 * n * s * s));
}

double ee6_margin(double q, double x, double y) {
  return std::pow(x, q) * (1.0 - y + q * (1.0 - x) * (x - y)) - (1.0 - y - (1.0 - y * y) * (1.0 - x));
}

}  // namespace sharpconvex::convexity
