#include "sharpconvex/spherical_means.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "sharpconvex/errors.hpp"
#include "sharpconvex/parallel.hpp"

namespace sharpconvex::spherical {
namespace {

void validate(const SphereMeanQuery& q) {
  if (q.n < 2) throw ArgumentError("sphere_mean: dimension must be at least 2");
}

bool is_small_even_power(double beta, int order) {
  const double half = 0.5 * beta;
  return half >= 0.0 && half == std::floor(half) && half <= 2.0 * order - 1.0;
}

}  // namespace

double sphere_mean(const SphereMeanQuery& q, int order) {
  validate(q);
  return ultraspherical_mean(0.5 * (q.n - 2.0), q.beta, q.a, q.xnorm, order);
}

double ultraspherical_mean(double lambda, double beta, double a, double x, int order) {
  if (!(lambda > -0.5)) throw DomainError("ultraspherical_mean: lambda must exceed -1/2");
  if (!(a >= 0.0) || !(x >= 0.0) || !std::isfinite(a) || !std::isfinite(x) || !std::isfinite(beta)) {
    throw ArgumentError("ultraspherical_mean: radii must be finite and nonnegative");
  }
  if (beta == 0.0) return 1.0;
  if (a == 0.0 || x == 0.0) {
    const double r = std::max(a, x);
    if (r == 0.0 && beta < 0.0) throw DomainError("sphere_mean: |0|^beta diverges for beta < 0");
    return std::pow(r, beta);
  }
  const double critical = -(2.0 * lambda + 1.0);
  if (a == x && !(beta > critical)) {
    std::ostringstream msg;
    msg << "sphere_mean: divergent configuration a = |x| with beta = " << beta
        << " <= " << critical;
    throw DomainError(msg.str());
  }

  const double d = x - a;
  const double d2 = d * d;
  const double two_ax = 2.0 * a * x;
  const double half_beta = 0.5 * beta;

  if (is_small_even_power(beta, order)) {
    const auto& rule = quadrature::cached_rule(lambda, order);
    return quadrature::integrate(rule, [&](double t) {
      return std::pow(d2 + two_ax * (1.0 - t), half_beta);
    });
  }

  const bool near = std::abs(d) < 1e-6 * std::max({a, x, 1.0});
  const double singularity = 1.0 + d2 / two_ax;
  if (!near && quadrature::gauss_resolves(singularity, order)) {
    const auto& rule = quadrature::cached_rule(lambda, order);
    return quadrature::integrate(rule, [&](double t) {
      return std::pow(d2 + two_ax * (1.0 - t), half_beta);
    });
  }

  const quadrature::PointFunction f = [&](const quadrature::Abscissa& p) {
    return std::pow(d2 + two_ax * p.one_minus_t, half_beta);
  };
  quadrature::EndpointExponents ex;
  // At a = |x| the integrand is exactly (2 a^2)^{beta/2} (1 - t)^{beta/2}.
  if (d == 0.0) ex.right = half_beta;
  return quadrature::adaptive_integrate(lambda, f, quadrature::kDefaultAdaptiveTol, ex);
}

double second_derivative_at_zero(int n, double p) {
  if (n < 2) throw ArgumentError("second_derivative_at_zero: n must be at least 2");
  if (!(p > 0.0)) throw ArgumentError("second_derivative_at_zero: p must be positive");
  return p * (p - 2.0) / n + p;
}

bool is_subharmonic_exponent(int n, double q) { return q * (n + q - 2.0) >= 0.0; }

VerifyReport verify_subharmonic_bound(int n, double q, std::span<const double> a_grid, double xnorm,
                                      int order, double tolerance) {
  if (!is_subharmonic_exponent(n, q)) {
    throw ArgumentError("verify_subharmonic_bound: exponent is not subharmonic in this dimension");
  }
  if (a_grid.empty()) throw ArgumentError("verify_subharmonic_bound: empty grid");
  for (double a : a_grid) {
    if (a < 0.0) throw ArgumentError("verify_subharmonic_bound: radii must be nonnegative");
    if (a == xnorm && !(q > -(n - 1.0))) {
      throw ArgumentError("verify_subharmonic_bound: grid hits a divergent configuration");
    }
  }
  auto margins_at = [&](int ord) {
    return parallel_map(a_grid.size(), [&](std::size_t i) {
      const double a = a_grid[i];
      return sphere_mean({n, q, a, xnorm}, ord) - std::pow(std::max(a, xnorm), q);
    });
  };
  auto margins = margins_at(order);
  auto report = summarize_margins(a_grid, margins, tolerance, order);
  if (!report.pass) {
    const int ord = quadrature::doubled_order(order);
    margins = margins_at(ord);
    report = summarize_margins(a_grid, margins, tolerance, ord);
  }
  return report;
}

}  // namespace sharpconvex::spherical
