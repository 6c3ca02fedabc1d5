#pragma once

// Log-Sobolev inequalities for mu_lambda tested on g(t) = 1 + 2 b t + b^2,
// and the tail comparisons between mu_lambda and mu_{lambda+1}.
//
// Margins are RHS - LHS divided by max(1, |LHS|, |RHS|), so the pass
// threshold -tolerance is relative for large integrals.

#include <span>
#include <string>
#include <vector>

#include "sharpconvex/quadrature.hpp"
#include "sharpconvex/verify_report.hpp"

namespace sharpconvex::logsobolev {

struct LogSobParams {
  double lambda = 0.0;
  double s = 4.0;
  double btilde = 0.5;
};

// Ent(g^s) = int g^s ln g^s d mu_lambda - M ln M with M = int g^s d mu_lambda.
double entropy(const LogSobParams& params, int order = quadrature::kDefaultOrder);

// Ent(g^s) <= s^2 / (4 (lambda + 1)) int (g')^2 g^{s-2} d mu_{lambda+1}.
VerifyReport verify_mw(const LogSobParams& params, int order = quadrature::kDefaultOrder,
                       double tolerance = kDefaultMarginTol);

// Ent(g^s) <= s^2 / (s + lambda) int g^{s-1} (b t + b^2) d mu_lambda.
VerifyReport verify_log_ineq(const LogSobParams& params, int order = quadrature::kDefaultOrder,
                             double tolerance = kDefaultMarginTol);

// (1 / (s - 1)) int g^{s-1} t d mu_lambda <= (1 / (s + lambda)) int g^{s-1} (t + b) d mu_lambda.
VerifyReport verify_in02(const LogSobParams& params, int order = quadrature::kDefaultOrder,
                         double tolerance = kDefaultMarginTol);

// Difference of the two sides of the integration by parts
//   (s - 1) / (4 (lambda + 1)) int (g')^2 g^{s-2} d mu_{lambda+1} = b int g^{s-1} t d mu_lambda,
// relative to max(1, |either side|).
double integration_by_parts_residual(const LogSobParams& params,
                                     int order = quadrature::kDefaultOrder);

// int (1 + 2 a t + a^2)^{s-1} d mu_lambda >= int (1 + 2 a t + a^2)^{s-2} d mu_{lambda+1},
// checked at a and at 1 / a.
VerifyReport verify_moment_comparison(double lambda, double s, double a,
                                      int order = quadrature::kDefaultOrder,
                                      double tolerance = kDefaultMarginTol);

// h(u) = mu_lambda(t > u) - mu_{lambda+1}(t > u).
double h(double lambda, double u);

struct HStructureReport {
  bool pass = true;
  bool zeros_ok = true;          // h(-1) = h(0) = h(1) = 0
  bool sign_ok = true;           // h <= 0 on [-1, 0], h >= 0 on [0, 1]
  bool antisymmetric_ok = true;  // h(-u) = -h(u)
  bool derivative_ok = true;     // h' changes sign at u^2 = 1 / (2 (lambda + 1))
  bool tails_ok = true;          // upper tail agrees with 1 - lower CDF
  double worst_violation = 0.0;
  double witness = 0.0;
  std::string note;
};

HStructureReport h_structure(double lambda, std::span<const double> u_grid, double tolerance = 1e-10);

struct SignChangeReport {
  bool pass = true;
  int transitions = 0;        // strict sign changes of phi over the grid
  bool indeterminate = false; // grid values within noise near the crossing
  double integral = 0.0;      // int_0^inf phi(r) dr
  double crossing = 0.0;      // first r where phi turns positive
  std::string note;
};

// phi(r) = mu_lambda(F > r) - mu_{lambda+1}(F > r) with F(t) = 1 + 2 a t + a^2.
double phi_r(double lambda, double a, double r);

// Default r-grid: 201 points on [0, (1 + a)^2 + 0.25].
std::vector<double> default_r_grid(double a);

SignChangeReport phi_r_single_sign_change(double lambda, double a, std::span<const double> r_grid,
                                          double noise = 1e-10);

// s -> (int (1 + 2 b t / sqrt(s + lambda) + b^2 / (s + lambda))^s d mu_lambda)^{1/s}
// is nonincreasing over the (increasing) s_grid.
VerifyReport verify_norm_monotone_in_s(double lambda, double b, std::span<const double> s_grid,
                                       int order = quadrature::kDefaultOrder,
                                       double tolerance = kDefaultMarginTol);

struct ChainGrids {
  std::vector<double> lambdas{0.0, 0.5, 1.0, 2.0, 5.0};
  std::vector<double> s_values{3.01, 3.5, 4.0, 6.0, 10.0};
  std::vector<double> btildes{0.01, 0.1, 0.5, 1.0, 2.0, 5.0};
};

struct ChainRow {
  LogSobParams params;
  double entropy = 0.0;
  VerifyReport mw;
  VerifyReport log_ineq;
  VerifyReport in02;
  VerifyReport moment;
};

struct ChainSummary {
  std::vector<ChainRow> rows;  // lambda-major, then s, then btilde
  VerifyReport mw;
  VerifyReport log_ineq;
  VerifyReport in02;
  VerifyReport moment;
  VerifyReport monotone;
  bool entropy_nonnegative = true;
  // Wherever (mw) and (in02) pass, (log) passes too.
  bool chain_consistent = true;
  bool pass() const;
};

ChainSummary verify_chain(const ChainGrids& grids, int order = quadrature::kDefaultOrder,
                          double tolerance = kDefaultMarginTol);

}  // namespace sharpconvex::logsobolev
