#pragma once

// Norms of linear polynomials 1 + b z in L^p(nu_m) on the unit circle, where
// nu_m = c_m |sin theta|^m d theta for m > -1 and nu_{-1} = (delta_{-1} +
// delta_1) / 2, and the hypercontractive inequality
//
//   || 1 + r b z ||_{L^q(nu_m)} <= || 1 + b z ||_{L^p(nu_m)}  for all real b.

#include <span>
#include <string>
#include <vector>

#include "sharpconvex/quadrature.hpp"
#include "sharpconvex/verify_report.hpp"

namespace sharpconvex::ultraspherical {

struct HypTuple {
  double m = 0.0;
  double p = 1.0;
  double q = 2.0;
  double r = 0.0;
};

struct ScanRow {
  double m = 0.0;
  double p = 0.0;
  double q = 0.0;
  double r_star = 0.0;
  double necessary_r = 0.0;
  double ratio = 0.0;
  std::string status;  // "ok" or the error message of a failed cell
  std::string label;
};

inline constexpr const char* kConsistentLabel = "consistent with sharpness";
inline constexpr const char* kBelowLabel = "below necessary bound";

// Default b-grid: 120 log-spaced points on [1e-3, 1e3].
std::vector<double> default_b_grid();

// ||1 + b z||_{L^e(nu_m)}, computed as (int (1 + 2 b t + b^2)^{e/2} d mu_{m/2})^{1/e}
// for m > -1 and in closed form for m = -1. Absolute error <= 1e-10.
double nu_norm(double m, double exponent, double b, int order = quadrature::kDefaultOrder);

// |sphere_mean(n, p, a, 1)^{1/p} - nu_norm(n - 2, p, a)|.
double sphere_circle_equivalence_check(int n, double p, double a,
                                       int order = quadrature::kDefaultOrder);

// sqrt((p + m) / (q + m)).
double necessary_r(double m, double p, double q);

// (m + p) / (2 (m + 2)): ||1 + b z||_p = 1 + coefficient * b^2 + o(b^2).
double small_b_coefficient(double m, double p);

// margin(b) = nu_norm(m, p, b) - nu_norm(m, q, r b) over |b| in b_grid,
// together with the b -> 0 coefficient comparison (reported at b = 0) and the
// b -> infinity slope comparison 1 - |r| (reported at b = +inf).
VerifyReport check_hyp(const HypTuple& t, std::span<const double> b_grid,
                       int order = quadrature::kDefaultOrder, double tolerance = kDefaultMarginTol);

// Largest r in [0, 1] passing check_hyp, to within `precision`. Bisection
// for q >= 1; for q < 1 a scan with step 1e-2 precedes the bisection.
double r_star(double m, double p, double q, double precision, std::span<const double> b_grid,
              int order = quadrature::kDefaultOrder, double tolerance = kDefaultMarginTol);
double r_star(double m, double p, double q, double precision);

// One row per (m, p, q) with p <= q, in grid order. Cells that fail are
// recorded with their error and the scan continues.
std::vector<ScanRow> scan_region(std::span<const double> m_grid, std::span<const double> p_grid,
                                 std::span<const double> q_grid, double precision,
                                 std::span<const double> b_grid,
                                 int order = quadrature::kDefaultOrder,
                                 double tolerance = kDefaultMarginTol);

}  // namespace sharpconvex::ultraspherical
