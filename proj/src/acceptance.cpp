#include "sharpconvex/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <random>

#include "sharpconvex/convexity.hpp"
#include "sharpconvex/errors.hpp"
#include "sharpconvex/grid.hpp"
#include "sharpconvex/logsobolev.hpp"
#include "sharpconvex/quadrature.hpp"
#include "sharpconvex/spherical_means.hpp"
#include "sharpconvex/ultraspherical.hpp"

namespace sharpconvex::acceptance {
namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

struct Outcome {
  bool pass;
  std::string detail;
};

const double kNs[] = {2, 3, 4, 5};
const double kPs[] = {0.5, 1.0, 1.5, 2.0};

Outcome p2_identity() {
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    for (double a : grid::logspace(1e-3, 10.0, 20)) {
      worst = std::max(worst, std::abs(spherical::sphere_mean({n, 2.0, a, 1.0}) - (1.0 + a * a)));
    }
  }
  return {worst <= 1e-12, fmt("max |I - (1 + a^2)| = %.2e over n = 2..10, 20 radii", worst)};
}

Outcome n3_closed_form() {
  double worst = 0.0;
  for (double p : {-1.0, 0.5, 1.0, 1.5, 2.0}) {
    for (double a : {0.1, 0.5, 0.99, 1.01, 2.0, 5.0}) {
      const double exact =
          (std::pow(1.0 + a, p + 2.0) - std::pow(std::abs(1.0 - a), p + 2.0)) / (2.0 * a * (p + 2.0));
      worst = std::max(worst, std::abs(spherical::sphere_mean({3, p, a, 1.0}) - exact));
    }
  }
  return {worst <= 1e-10, fmt("max deviation from the antiderivative = %.2e", worst)};
}

Outcome second_moment() {
  double worst = 0.0;
  for (double m : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const auto& rule = quadrature::cached_rule(0.5 * m, quadrature::kDefaultOrder);
    const double v = quadrature::integrate(rule, [](double t) { return t * t; });
    worst = std::max(worst, std::abs(v - 1.0 / (m + 2.0)));
  }
  return {worst <= 1e-12, fmt("max |int t^2 - 1/(m+2)| = %.2e", worst)};
}

Outcome sharp_constants() {
  const auto g = grid::logspace(1e-3, 10.0, 200);
  double worst = 0.0;
  double bonami = 0.0;
  bool ordered = true;
  for (double n : kNs) {
    for (double p : kPs) {
      const auto r = convexity::best_lambda(static_cast<int>(n), p, g);
      worst = std::max(worst, std::abs(r.limit_at_zero - (n + p - 2.0) / n));
      if (n == 2 && p == 1.0) bonami = r.limit_at_zero;
      ordered = ordered && r.value <= r.limit_at_zero + r.tolerance;
    }
  }
  return {worst <= 1e-4 && ordered,
          fmt("max |limit - (n+p-2)/n| = %.2e; (2,1) limit = %.10f", worst, bonami)};
}

Outcome theorem_verification() {
  const auto g = convexity::default_a_grid();
  double worst_sharp = INFINITY;
  double mildest_bad = -INFINITY;
  bool ok = true;
  for (double n : kNs) {
    for (double p : kPs) {
      const int ni = static_cast<int>(n);
      const double lam = convexity::sharp_lambda(ni, p);
      const auto good = convexity::verify_theorem({ni, p, lam, g});
      const auto bad = convexity::verify_theorem({ni, p, lam + 0.05, g});
      ok = ok && good.pass && !bad.pass && bad.witness > 0.0;
      worst_sharp = std::min(worst_sharp, good.worst_margin);
      mildest_bad = std::max(mildest_bad, bad.worst_margin);
    }
  }
  return {ok, fmt("sharp: min margin %.2e; +0.05: every case fails, largest worst margin %.2e", worst_sharp,
                  mildest_bad)};
}

Outcome hyper_sharp_points() {
  const double tuples[][3] = {{-1, 2, 4}, {0, 1, 2}, {0, 2, 4}, {0, 6, 8}, {1, 6, 8}, {2, 6, 8}};
  double worst = 0.0;
  for (const auto& t : tuples) {
    const double rs = ultraspherical::r_star(t[0], t[1], t[2], 1e-4);
    worst = std::max(worst, std::abs(rs - ultraspherical::necessary_r(t[0], t[1], t[2])));
  }
  return {worst <= 5e-3, fmt("max |r* - sqrt((p+m)/(q+m))| = %.2e over 6 tuples", worst)};
}

Outcome theorem_as_hyper() {
  const auto g = ultraspherical::default_b_grid();
  double worst = INFINITY;
  bool ok = true;
  for (int n = 2; n <= 6; ++n) {
    for (double p : kPs) {
      const auto rep = ultraspherical::check_hyp({n - 2.0, p, 2.0, std::sqrt((p + n - 2.0) / n)}, g);
      ok = ok && rep.pass;
      worst = std::min(worst, rep.worst_margin);
    }
  }
  return {ok, fmt("min margin %.2e over n = 2..6, 4 exponents", worst)};
}

Outcome logsobolev_chain() {
  const auto s = logsobolev::verify_chain({});
  return {s.pass(), fmt("min margins: mw %.2e, log %.2e, in02 %.2e, moment %.2e, monotone %.2e; chain %s",
                        s.mw.worst_margin, s.log_ineq.worst_margin, s.in02.worst_margin, s.moment.worst_margin,
                        s.monotone.worst_margin, s.chain_consistent ? "consistent" : "INCONSISTENT")};
}

Outcome proof_internals() {
  double phi_min = INFINITY;
  for (int k = 1; k <= 10; ++k) {
    const double p = 0.1 * k;
    for (double t : grid::linspace(1.0 + 1e-6, 3.0 / (2.0 - p) - 1e-6, 500)) {
      phi_min = std::min(phi_min, convexity::phi(p, t));
    }
  }

  double sandwich = INFINITY;
  for (double p : {0.1, 0.25, 0.5, 0.75, 1.0}) {
    for (double a : grid::logspace(1e-2, 20.0, 120)) {
      const double mean = spherical::sphere_mean({3, p, a, 1.0});
      const double target = std::pow(1.0 + (p + 1.0) * a * a / 3.0, 0.5 * p);
      sandwich = std::min(sandwich, mean - convexity::n3_bound(p, a));
      if (a * a < 3.0 / (2.0 - p)) sandwich = std::min(sandwich, convexity::n3_bound(p, a) - target);
      else sandwich = std::min(sandwich, mean - std::pow(a, p));
    }
  }

  double ee6_min = INFINITY;
  for (int iq = 0; iq <= 10; ++iq) {
    for (int ix = 0; ix < 100; ++ix) {
      const double x = 0.5 + 0.5 * ix / 99.0;
      for (int iy = 0; iy < 100; ++iy) {
        ee6_min = std::min(ee6_min, convexity::ee6_margin(0.1 * iq, x, 0.5 + (x - 0.5) * iy / 99.0));
      }
    }
  }

  std::mt19937_64 rng(20200228);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double factor = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    factor = std::max(factor,
                      std::abs(convexity::ee6_margin(2.0, x, y) - (1.0 - x) * (x - y) * (2.0 * x * x + y - 1.0)));
  }
  const double negative = convexity::ee6_margin(2.0, 0.4, 0.3);

  const bool ok = phi_min >= -1e-12 && sandwich >= -1e-9 && ee6_min >= -1e-12 && factor <= 1e-12 && negative < 0.0;
  return {ok, fmt("min phi %.2e; n=3 sandwich %.2e; min ee6 %.2e; factorization %.2e; ee6(2,0.4,0.3) = %.4f",
                  phi_min, sandwich, ee6_min, factor, negative)};
}

Outcome sign_structure() {
  const auto ug = grid::linspace(-1.0, 1.0, 41);
  bool ok = true;
  double worst_h = 0.0;
  double worst_int = 0.0;
  int indeterminate = 0;
  for (double lambda : {0.0, 0.5, 1.0, 2.0}) {
    const auto hr = logsobolev::h_structure(lambda, ug);
    ok = ok && hr.pass;
    worst_h = std::max(worst_h, hr.worst_violation);
    for (double a : {0.1, 0.5, 0.9}) {
      const auto sr = logsobolev::phi_r_single_sign_change(lambda, a, logsobolev::default_r_grid(a));
      ok = ok && sr.pass && sr.transitions == 1;
      worst_int = std::max(worst_int, std::abs(sr.integral));
      indeterminate += sr.indeterminate ? 1 : 0;
    }
  }
  return {ok, fmt("h violations <= %.2e; phi(r): one sign change in 12/12 cases, |int phi| <= %.2e, %d flagged "
                  "indeterminate",
                  worst_h, worst_int, indeterminate)};
}

Outcome sphere_circle() {
  double worst = 0.0;
  for (int n : {2, 3, 5}) {
    for (double p : {1.0, 1.7, 2.0}) {
      for (double a : {0.5, 1.0, 2.3}) {
        worst = std::max(worst, ultraspherical::sphere_circle_equivalence_check(n, p, a));
      }
    }
  }
  return {worst <= 1e-9, fmt("max discrepancy %.2e", worst)};
}

struct Entry {
  const char* title;
  Outcome (*fn)();
};

const Entry kEntries[kCriterionCount] = {
    {"p=2 identity", p2_identity},
    {"n=3 closed-form oracle", n3_closed_form},
    {"second moment", second_moment},
    {"sharp constants", sharp_constants},
    {"theorem verification", theorem_verification},
    {"hypercontractivity sharp points", hyper_sharp_points},
    {"theorem as hypercontractivity", theorem_as_hyper},
    {"log-Sobolev chain", logsobolev_chain},
    {"proof-internal functions", proof_internals},
    {"h/phi sign structure", sign_structure},
    {"sphere-circle equivalence", sphere_circle},
};

}  // namespace

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kCriterionCount) throw ArgumentError("run_criterion: no such criterion");
  const Entry& e = kEntries[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = e.title;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Outcome o = e.fn();
    r.pass = o.pass;
    r.detail = o.detail;
  } catch (const std::exception& ex) {
    r.pass = false;
    r.detail = std::string("exception: ") + ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id));
  return out;
}

std::string format_line(const CriterionResult& r) {
  return fmt("%s %2d  %-32s %s  (%.2f s)", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.detail.c_str(),
             r.seconds);
}

}  // namespace sharpconvex::acceptance
