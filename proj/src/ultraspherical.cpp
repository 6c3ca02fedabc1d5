#include "sharpconvex/ultraspherical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sharpconvex/errors.hpp"
#include "sharpconvex/grid.hpp"
#include "sharpconvex/parallel.hpp"
#include "sharpconvex/spherical_means.hpp"

namespace sharpconvex::ultraspherical {
namespace {

void check_measure(double m, const char* who) {
  if (!(m >= -1.0) || !std::isfinite(m)) {
    throw DomainError(std::string(who) + ": m must be a finite real >= -1");
  }
}

bool even_power(double e) {
  const double half = 0.5 * e;
  return half == std::floor(half) && half <= 256.0;
}

// int (1 + 2 b t + b^2)^{e/2} d mu_lambda, written around the endpoint where
// the base can vanish: (1 - b)^2 + 2 b (1 + t) for b >= 0, and
// (1 + b)^2 + 2 |b| (1 - t) for b < 0.
double power_moment(double lambda, double e, double b, int order) {
  const double c = 1.0 - std::abs(b);
  const double c2 = c * c;
  const double two_b = 2.0 * std::abs(b);
  const double half_e = 0.5 * e;
  const bool left = b >= 0.0;
  auto base = [&](double t) { return left ? c2 + two_b * (1.0 + t) : c2 + two_b * (1.0 - t); };

  const bool near = std::abs(c) < 1e-6 * std::max(std::abs(b), 1.0);
  const double singularity = 1.0 + c2 / two_b;
  if (even_power(e) || (!near && quadrature::gauss_resolves(singularity, order))) {
    const auto& rule = quadrature::cached_rule(lambda, order);
    return quadrature::integrate(rule, [&](double t) { return std::pow(base(t), half_e); });
  }
  const quadrature::PointFunction f = [&](const quadrature::Abscissa& x) {
    return std::pow(c2 + two_b * (left ? x.one_plus_t : x.one_minus_t), half_e);
  };
  quadrature::EndpointExponents ex;
  if (c == 0.0) (left ? ex.left : ex.right) = half_e;
  return quadrature::adaptive_integrate(lambda, f, quadrature::kDefaultAdaptiveTol, ex);
}

void check_tuple(const HypTuple& t, const char* who) {
  check_measure(t.m, who);
  if (!(t.p > 0.0) || !std::isfinite(t.q) || !(t.q >= t.p)) {
    throw ArgumentError(std::string(who) + ": exponents must satisfy 0 < p <= q < inf");
  }
  if (!std::isfinite(t.r)) throw ArgumentError(std::string(who) + ": r must be finite");
}

}  // namespace

std::vector<double> default_b_grid() { return grid::logspace(1e-3, 1e3, 120); }

double nu_norm(double m, double exponent, double b, int order) {
  check_measure(m, "nu_norm");
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw ArgumentError("nu_norm: exponent must be positive and finite");
  }
  if (!std::isfinite(b)) throw ArgumentError("nu_norm: b must be finite");
  if (b == 0.0) return 1.0;
  if (m == -1.0) {
    const double s = 0.5 * (std::pow(std::abs(1.0 + b), exponent) + std::pow(std::abs(1.0 - b), exponent));
    return std::pow(s, 1.0 / exponent);
  }
  return std::pow(power_moment(0.5 * m, exponent, b, order), 1.0 / exponent);
}

double sphere_circle_equivalence_check(int n, double p, double a, int order) {
  if (n < 2) throw ArgumentError("sphere_circle_equivalence_check: n must be at least 2");
  if (!(p > 0.0)) throw ArgumentError("sphere_circle_equivalence_check: p must be positive");
  const double sphere = std::pow(spherical::sphere_mean({n, p, a, 1.0}, order), 1.0 / p);
  return std::abs(sphere - nu_norm(n - 2.0, p, a, order));
}

double necessary_r(double m, double p, double q) {
  if (!(p + m > 0.0) || !(q + m > 0.0)) {
    throw DomainError("necessary_r: requires p + m > 0 and q + m > 0");
  }
  return std::sqrt((p + m) / (q + m));
}

double small_b_coefficient(double m, double p) {
  check_measure(m, "small_b_coefficient");
  return (m + p) / (2.0 * (m + 2.0));
}

VerifyReport check_hyp(const HypTuple& t, std::span<const double> b_grid, int order,
                       double tolerance) {
  check_tuple(t, "check_hyp");
  if (b_grid.empty()) throw ArgumentError("check_hyp: empty b-grid");
  for (double b : b_grid) {
    if (!std::isfinite(b)) throw ArgumentError("check_hyp: b-grid values must be finite");
  }
  const double r = std::abs(t.r);
  std::vector<double> params(b_grid.begin(), b_grid.end());
  for (double& b : params) b = std::abs(b);
  params.push_back(0.0);
  params.push_back(std::numeric_limits<double>::infinity());

  auto margins_at = [&](int ord) {
    auto margins = parallel_map(b_grid.size(), [&](std::size_t i) {
      const double b = params[i];
      return nu_norm(t.m, t.p, b, ord) - nu_norm(t.m, t.q, r * b, ord);
    });
    margins.push_back(small_b_coefficient(t.m, t.p) - r * r * small_b_coefficient(t.m, t.q));
    margins.push_back(1.0 - r);
    return margins;
  };
  auto report = summarize_margins(params, margins_at(order), tolerance, order);
  if (!report.pass && std::isfinite(report.witness) && report.witness != 0.0) {
    const int ord = quadrature::doubled_order(order);
    report = summarize_margins(params, margins_at(ord), tolerance, ord);
  }
  if (report.witness == 0.0) report.note = "small-b coefficient";
  else if (std::isinf(report.witness)) report.note = "large-b slope";
  return report;
}

double r_star(double m, double p, double q, double precision, std::span<const double> b_grid,
              int order, double tolerance) {
  check_tuple({m, p, q, 0.0}, "r_star");
  if (!(precision >= 1e-6 && precision <= 1e-2)) {
    throw ArgumentError("r_star: precision must lie in [1e-6, 1e-2]");
  }
  auto passes = [&](double r) { return check_hyp({m, p, q, r}, b_grid, order, tolerance).pass; };
  if (!passes(0.0)) throw InternalError("r_star: r = 0 fails, which is impossible");
  if (passes(1.0)) return 1.0;

  double lo = 0.0;
  double hi = 1.0;
  if (q < 1.0) {
    // Without convexity in r the passing set need not be an interval, so
    // locate the first failure on a uniform scan before refining.
    constexpr double step = 1e-2;
    for (int k = 1; k <= 100; ++k) {
      const double r = k * step;
      if (!passes(r)) {
        hi = r;
        break;
      }
      lo = r;
    }
  }
  while (hi - lo > precision) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? lo : hi) = mid;
  }
  return lo;
}

double r_star(double m, double p, double q, double precision) {
  const auto grid = default_b_grid();
  return r_star(m, p, q, precision, grid);
}

std::vector<ScanRow> scan_region(std::span<const double> m_grid, std::span<const double> p_grid,
                                 std::span<const double> q_grid, double precision,
                                 std::span<const double> b_grid, int order, double tolerance) {
  std::vector<ScanRow> cells;
  for (double m : m_grid) {
    for (double p : p_grid) {
      for (double q : q_grid) {
        if (p > q) continue;
        ScanRow row;
        row.m = m;
        row.p = p;
        row.q = q;
        cells.push_back(row);
      }
    }
  }
  return parallel_map(
      cells.size(),
      [&](std::size_t i) {
        ScanRow row = cells[i];
        try {
          row.necessary_r = necessary_r(row.m, row.p, row.q);
          row.r_star = r_star(row.m, row.p, row.q, precision, b_grid, order, tolerance);
          row.ratio = row.r_star / row.necessary_r;
          row.status = "ok";
          row.label = std::abs(row.r_star - row.necessary_r) <= precision ? kConsistentLabel : kBelowLabel;
        } catch (const std::exception& e) {
          row.status = e.what();
          row.r_star = row.ratio = std::numeric_limits<double>::quiet_NaN();
          if (row.necessary_r == 0.0) row.necessary_r = std::numeric_limits<double>::quiet_NaN();
        }
        return row;
      });
}

}  // namespace sharpconvex::ultraspherical
