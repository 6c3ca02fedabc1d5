#include "sharpconvex/logsobolev.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "sharpconvex/errors.hpp"
#include "sharpconvex/grid.hpp"
#include "sharpconvex/parallel.hpp"

namespace sharpconvex::logsobolev {
namespace {

using GFunction = std::function<double(double g, double t)>;

// int f(g(t), t) d mu_lambda(t) with g(t) = (1 - b)^2 + 2 b (1 + t), b >= 0.
double g_moment(double lambda, double b, const GFunction& f, int order) {
  const double c = 1.0 - b;
  const double c2 = c * c;
  const double two_b = 2.0 * b;
  const bool near = std::abs(c) < 1e-6;
  if (b == 0.0 || (!near && quadrature::gauss_resolves(1.0 + c2 / two_b, order))) {
    const auto& rule = quadrature::cached_rule(lambda, order);
    return quadrature::integrate(rule, [&](double t) { return f(c2 + two_b * (1.0 + t), t); });
  }
  const quadrature::PointFunction pf = [&](const quadrature::Abscissa& x) {
    return f(c2 + two_b * x.one_plus_t, x.t);
  };
  return quadrature::adaptive_integrate(lambda, pf, quadrature::kDefaultAdaptiveTol);
}

double power(double g, double e) { return g == 0.0 ? 0.0 : std::pow(g, e); }

void check_params(const LogSobParams& p, const char* who, double min_s) {
  const std::string w(who);
  if (!(p.lambda >= 0.0) || !std::isfinite(p.lambda)) throw ArgumentError(w + ": lambda must be >= 0");
  if (!(p.btilde >= 0.0) || !std::isfinite(p.btilde)) throw ArgumentError(w + ": btilde must be >= 0");
  if (!std::isfinite(p.s)) throw ArgumentError(w + ": s must be finite");
  if (p.btilde == 1.0 && !(p.s > 0.0)) throw DomainError(w + ": g vanishes at t = -1, s must be positive");
  if (!(p.s > min_s)) {
    std::ostringstream msg;
    msg << w << ": s must exceed " << min_s;
    throw ArgumentError(msg.str());
  }
}

double relative_margin(double lhs, double rhs) {
  return (rhs - lhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

VerifyReport single(double param, double margin, double tolerance, int order) {
  const double params[] = {param};
  const double margins[] = {margin};
  return summarize_margins(params, margins, tolerance, order);
}

double entropy_unchecked(const LogSobParams& p, int order) {
  if (p.btilde == 0.0) return 0.0;
  const double s = p.s;
  const double mass = g_moment(p.lambda, p.btilde, [&](double g, double) { return power(g, s); }, order);
  const double glng = g_moment(
      p.lambda, p.btilde,
      [&](double g, double) { return g == 0.0 ? 0.0 : std::pow(g, s) * s * std::log(g); }, order);
  return glng - mass * std::log(mass);
}

double mw_rhs(const LogSobParams& p, int order) {
  const double b = p.btilde;
  const double integral =
      g_moment(p.lambda + 1.0, b, [&](double g, double) { return power(g, p.s - 2.0); }, order);
  return p.s * p.s / (4.0 * (p.lambda + 1.0)) * 4.0 * b * b * integral;
}

double log_rhs(const LogSobParams& p, int order) {
  const double b = p.btilde;
  const double integral = g_moment(
      p.lambda, b, [&](double g, double t) { return power(g, p.s - 1.0) * (b * t + b * b); }, order);
  return p.s * p.s / (p.s + p.lambda) * integral;
}

// int (1 + 2 a t + a^2)^e d mu_lambda.
double f_moment(double lambda, double a, double e, int order) {
  return g_moment(lambda, a, [&](double g, double) { return power(g, e); }, order);
}

VerifyReport moment_at(double lambda, double s, double a, int order, double tolerance) {
  const double lhs = f_moment(lambda, a, s - 1.0, order);
  const double rhs = f_moment(lambda + 1.0, a, s - 2.0, order);
  // The inequality reads lhs >= rhs.
  return single(a, relative_margin(rhs, lhs), tolerance, order);
}

}  // namespace

double entropy(const LogSobParams& params, int order) {
  check_params(params, "entropy", 0.0);
  return entropy_unchecked(params, order);
}

VerifyReport verify_mw(const LogSobParams& params, int order, double tolerance) {
  check_params(params, "verify_mw", 0.0);
  if (params.btilde == 0.0) return single(0.0, 0.0, tolerance, order);
  const double lhs = entropy_unchecked(params, order);
  return single(params.btilde, relative_margin(lhs, mw_rhs(params, order)), tolerance, order);
}

VerifyReport verify_log_ineq(const LogSobParams& params, int order, double tolerance) {
  check_params(params, "verify_log_ineq", 1.0);
  if (params.btilde == 0.0) return single(0.0, 0.0, tolerance, order);
  const double lhs = entropy_unchecked(params, order);
  return single(params.btilde, relative_margin(lhs, log_rhs(params, order)), tolerance, order);
}

VerifyReport verify_in02(const LogSobParams& params, int order, double tolerance) {
  check_params(params, "verify_in02", 1.0);
  const double b = params.btilde;
  const double s = params.s;
  const double first =
      g_moment(params.lambda, b, [&](double g, double t) { return power(g, s - 1.0) * t; }, order);
  const double mass = g_moment(params.lambda, b, [&](double g, double) { return power(g, s - 1.0); }, order);
  const double lhs = first / (s - 1.0);
  const double rhs = (first + b * mass) / (s + params.lambda);
  return single(b, relative_margin(lhs, rhs), tolerance, order);
}

double integration_by_parts_residual(const LogSobParams& params, int order) {
  check_params(params, "integration_by_parts_residual", 1.0);
  const double b = params.btilde;
  const double s = params.s;
  const double left = (s - 1.0) / (4.0 * (params.lambda + 1.0)) * 4.0 * b * b *
                      g_moment(params.lambda + 1.0, b, [&](double g, double) { return power(g, s - 2.0); }, order);
  const double right =
      b * g_moment(params.lambda, b, [&](double g, double t) { return power(g, s - 1.0) * t; }, order);
  return relative_margin(right, left);
}

VerifyReport verify_moment_comparison(double lambda, double s, double a, int order, double tolerance) {
  if (!(lambda >= 0.0)) throw ArgumentError("verify_moment_comparison: lambda must be >= 0");
  if (!(s >= 3.0) || !std::isfinite(s)) throw ArgumentError("verify_moment_comparison: s must be >= 3");
  if (!(a > 0.0) || !std::isfinite(a)) throw ArgumentError("verify_moment_comparison: a must be positive");
  auto report = moment_at(lambda, s, a, order, tolerance);
  if (a != 1.0) report = merge(report, moment_at(lambda, s, 1.0 / a, order, tolerance));
  return report;
}

double h(double lambda, double u) {
  if (!(lambda >= 0.0)) throw ArgumentError("h: lambda must be >= 0");
  if (!(u > -1.0) || !(u < 1.0)) return 0.0;
  return quadrature::upper_tail(lambda, u) - quadrature::upper_tail(lambda + 1.0, u);
}

HStructureReport h_structure(double lambda, std::span<const double> u_grid, double tolerance) {
  if (!(lambda >= 0.0)) throw ArgumentError("h_structure: lambda must be >= 0");
  for (double u : u_grid) {
    if (!(u >= -1.0 && u <= 1.0)) throw ArgumentError("h_structure: u-grid must lie in [-1, 1]");
  }
  HStructureReport r;
  auto record = [&](double violation, double u) {
    if (violation > r.worst_violation) {
      r.worst_violation = violation;
      r.witness = u;
    }
    return violation <= tolerance;
  };

  for (double u : {-1.0, 0.0, 1.0}) r.zeros_ok = record(std::abs(h(lambda, u)), u) && r.zeros_ok;

  struct Sample {
    double hu, hmu, tail_gap, dh, scale;
  };
  const auto samples = parallel_map(u_grid.size(), [&](std::size_t i) {
    const double u = u_grid[i];
    Sample s{h(lambda, u), h(lambda, -u), 0.0, 0.0, 1.0};
    if (u > -1.0 && u < 1.0) {
      for (double l : {lambda, lambda + 1.0}) {
        const double gap = quadrature::upper_tail(l, u) - (1.0 - quadrature::lower_cdf(l, u));
        s.tail_gap = std::max(s.tail_gap, std::abs(gap));
      }
      const double d0 = quadrature::density(lambda, u);
      s.dh = quadrature::density(lambda + 1.0, u) - d0;
      s.scale = std::max(1.0, d0);
    }
    return s;
  });

  const double u_crit2 = 1.0 / (2.0 * (lambda + 1.0));
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    const double u = u_grid[i];
    const Sample& s = samples[i];
    if (u < 0.0) r.sign_ok = record(s.hu, u) && r.sign_ok;
    if (u > 0.0) r.sign_ok = record(-s.hu, u) && r.sign_ok;
    r.antisymmetric_ok = record(std::abs(s.hu + s.hmu), u) && r.antisymmetric_ok;
    r.tails_ok = record(s.tail_gap, u) && r.tails_ok;
    if (u > -1.0 && u < 1.0) {
      const double expected = u_crit2 - u * u;
      const double signed_dh = expected >= 0.0 ? -s.dh : s.dh;
      r.derivative_ok = record(signed_dh / s.scale, u) && r.derivative_ok;
    }
  }
  r.pass = r.zeros_ok && r.sign_ok && r.antisymmetric_ok && r.derivative_ok && r.tails_ok;
  if (!r.zeros_ok) r.note = "nonzero value at u in {-1, 0, 1}";
  else if (!r.sign_ok) r.note = "sign violation";
  else if (!r.antisymmetric_ok) r.note = "antisymmetry violation";
  else if (!r.tails_ok) r.note = "tail evaluations disagree";
  else if (!r.derivative_ok) r.note = "derivative sign violation";
  return r;
}

double phi_r(double lambda, double a, double r) {
  if (!(a > 0.0)) throw ArgumentError("phi_r: a must be positive");
  return h(lambda, (r - 1.0 - a * a) / (2.0 * a));
}

std::vector<double> default_r_grid(double a) {
  return grid::linspace(0.0, (1.0 + a) * (1.0 + a) + 0.25, 201);
}

SignChangeReport phi_r_single_sign_change(double lambda, double a, std::span<const double> r_grid,
                                          double noise) {
  if (!(a > 0.0 && a < 1.0)) throw ArgumentError("phi_r_single_sign_change: a must lie in (0, 1)");
  if (!(lambda >= 0.0)) throw ArgumentError("phi_r_single_sign_change: lambda must be >= 0");
  if (r_grid.empty()) throw ArgumentError("phi_r_single_sign_change: empty r-grid");
  SignChangeReport rep;
  const auto values = parallel_map(r_grid.size(), [&](std::size_t i) { return phi_r(lambda, a, r_grid[i]); });

  int last_sign = 0;
  int first_sign = 0;
  std::ptrdiff_t last_neg = -1;
  std::ptrdiff_t first_pos = -1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int sign = values[i] > noise ? 1 : (values[i] < -noise ? -1 : 0);
    if (sign == 0) continue;
    if (first_sign == 0) first_sign = sign;
    if (last_sign != 0 && sign != last_sign) ++rep.transitions;
    if (sign < 0) last_neg = static_cast<std::ptrdiff_t>(i);
    if (sign > 0 && first_pos < 0) {
      first_pos = static_cast<std::ptrdiff_t>(i);
      rep.crossing = r_grid[i];
    }
    last_sign = sign;
  }
  if (last_neg >= 0 && first_pos > last_neg) {
    for (std::ptrdiff_t i = last_neg + 1; i < first_pos; ++i) {
      const double u = (r_grid[i] - 1.0 - a * a) / (2.0 * a);
      if (std::abs(u) > 1e-12) rep.indeterminate = true;
    }
  }

  const double lo = (1.0 - a) * (1.0 - a);
  const double hi = (1.0 + a) * (1.0 + a);
  rep.integral = quadrature::adaptive_integrate_plain([&](double r) { return phi_r(lambda, a, r); }, lo,
                                                      hi, 1e-10);

  const bool order_ok = rep.transitions == 0 || first_sign < 0;
  rep.pass = rep.transitions <= 1 && order_ok && std::abs(rep.integral) <= 1e-8;
  if (rep.transitions > 1) rep.note = "more than one sign change";
  else if (!order_ok) rep.note = "positive before negative";
  else if (!(std::abs(rep.integral) <= 1e-8)) rep.note = "integral of phi is not zero";
  else if (rep.indeterminate) rep.note = "indeterminate near crossing";
  return rep;
}

VerifyReport verify_norm_monotone_in_s(double lambda, double b, std::span<const double> s_grid, int order,
                                       double tolerance) {
  if (!(lambda >= 0.0)) throw ArgumentError("verify_norm_monotone_in_s: lambda must be >= 0");
  if (!std::isfinite(b)) throw ArgumentError("verify_norm_monotone_in_s: b must be finite");
  if (s_grid.empty()) throw ArgumentError("verify_norm_monotone_in_s: empty s-grid");
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    if (!(s_grid[i] > 3.0) || !std::isfinite(s_grid[i])) {
      throw ArgumentError("verify_norm_monotone_in_s: s-grid must lie in (3, inf)");
    }
    if (i > 0 && !(s_grid[i] > s_grid[i - 1])) {
      throw ArgumentError("verify_norm_monotone_in_s: s-grid must be increasing");
    }
  }
  const double ab = std::abs(b);
  const auto norms = parallel_map(s_grid.size(), [&](std::size_t i) {
    const double s = s_grid[i];
    const double bt = ab / std::sqrt(s + lambda);
    return std::pow(f_moment(lambda, bt, s, order), 1.0 / s);
  });
  std::vector<double> params;
  std::vector<double> margins;
  for (std::size_t i = 1; i < norms.size(); ++i) {
    params.push_back(s_grid[i]);
    margins.push_back(relative_margin(norms[i], norms[i - 1]));
  }
  return summarize_margins(params, margins, tolerance, order);
}

bool ChainSummary::pass() const {
  return mw.pass && log_ineq.pass && in02.pass && moment.pass && monotone.pass && entropy_nonnegative &&
         chain_consistent;
}

ChainSummary verify_chain(const ChainGrids& grids, int order, double tolerance) {
  if (grids.lambdas.empty() || grids.s_values.empty() || grids.btildes.empty()) {
    throw ArgumentError("verify_chain: grids must be nonempty");
  }
  std::vector<LogSobParams> cells;
  for (double l : grids.lambdas) {
    for (double s : grids.s_values) {
      for (double b : grids.btildes) cells.push_back({l, s, b});
    }
  }
  ChainSummary sum;
  sum.rows = parallel_map(cells.size(), [&](std::size_t i) {
    ChainRow row;
    row.params = cells[i];
    row.entropy = entropy(row.params, order);
    row.mw = verify_mw(row.params, order, tolerance);
    row.log_ineq = verify_log_ineq(row.params, order, tolerance);
    row.in02 = verify_in02(row.params, order, tolerance);
    row.moment = verify_moment_comparison(row.params.lambda, row.params.s, row.params.btilde, order, tolerance);
    return row;
  });
  for (const auto& row : sum.rows) {
    sum.mw = merge(sum.mw, row.mw);
    sum.log_ineq = merge(sum.log_ineq, row.log_ineq);
    sum.in02 = merge(sum.in02, row.in02);
    sum.moment = merge(sum.moment, row.moment);
    if (row.entropy < -tolerance * std::max(1.0, std::abs(row.entropy))) sum.entropy_nonnegative = false;
    if (row.mw.pass && row.in02.pass && !row.log_ineq.pass) sum.chain_consistent = false;
  }
  std::vector<double> sorted_s = grids.s_values;
  std::sort(sorted_s.begin(), sorted_s.end());
  for (double l : grids.lambdas) {
    for (double b : grids.btildes) {
      sum.monotone = merge(sum.monotone, verify_norm_monotone_in_s(l, b, sorted_s, order, tolerance));
    }
  }
  return sum;
}

}  // namespace sharpconvex::logsobolev
