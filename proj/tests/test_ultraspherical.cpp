#include <cmath>
#include <limits>
#include <vector>

#include "angular_oracle.hpp"
#include "doctest.h"
#include "sharpconvex/errors.hpp"
#include "sharpconvex/grid.hpp"
#include "sharpconvex/parallel.hpp"
#include "sharpconvex/spherical_means.hpp"
#include "sharpconvex/ultraspherical.hpp"

using namespace sharpconvex;
using namespace sharpconvex::ultraspherical;
using doctest::Approx;

namespace {

// ||1 + b z||_e over the circle in the angular variable. For b >= 0,
// |1 + b e^{i th}|^2 = (1 - b)^2 + 2 b (1 + cos th).
double oracle_norm(double m, double e, double b) {
  const double c = 1.0 - std::abs(b);
  const double v = oracle::mu_angular(0.5 * m, [&](const oracle::Point& x) {
    const double base = c * c + 2.0 * std::abs(b) * (b >= 0.0 ? x.one_plus_t : x.one_minus_t);
    return std::pow(base, 0.5 * e);
  });
  return std::pow(v, 1.0 / e);
}

double two_point_norm(double e, double b) {
  return std::pow(0.5 * (std::pow(std::abs(1.0 + b), e) + std::pow(std::abs(1.0 - b), e)), 1.0 / e);
}

}  // namespace

TEST_CASE("nu_norm examples") {
  CHECK(nu_norm(0.0, 2.0, 1.0) == Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(nu_norm(-1.0, 2.0, 1.0) == Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(nu_norm(1.0, 1.0, 0.0) == 1.0);
  for (double m : {-0.5, 0.0, 1.0, 3.5}) {
    for (double b : {0.1, 0.9, 1.0, 1.7, 40.0}) {
      CHECK(nu_norm(m, 2.0, b) == Approx(std::sqrt(1.0 + b * b)).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(nu_norm(-1.5, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(nu_norm(0.0, 0.0, 1.0), ArgumentError);
}

TEST_CASE("nu_norm against the angular oracle") {
  for (double m : {-0.5, 0.0, 0.7, 1.0, 2.0, 6.0}) {
    for (double e : {0.5, 1.0, 1.7, 3.0, 7.0}) {
      for (double b : {1e-3, 0.3, 0.999, 1.0, 1.001, 2.5, 300.0}) {
        CAPTURE(m);
        CAPTURE(e);
        CAPTURE(b);
        const double ref = oracle_norm(m, e, b);
        CHECK(std::abs(nu_norm(m, e, b) - ref) <= 1e-10 * std::max(1.0, ref));
      }
    }
  }
}

TEST_CASE("nu_norm evenness") {
  for (double m : {-1.0, -0.3, 0.0, 2.0}) {
    for (double e : {0.7, 2.0, 5.0}) {
      for (double b : {0.01, 0.5, 1.0, 3.0}) {
        CHECK(std::abs(nu_norm(m, e, b) - nu_norm(m, e, -b)) <= 1e-12 * nu_norm(m, e, b));
      }
    }
  }
}

TEST_CASE("weak-star limit toward the two-point measure") {
  for (double e : {1.0, 2.5, 4.0}) {
    for (double b : {0.4, 1.0, 2.0}) {
      const double target = two_point_norm(e, b);
      double previous = std::numeric_limits<double>::infinity();
      for (double m : {-0.9, -0.99, -0.999}) {
        const double gap = std::abs(nu_norm(m, e, b) - target);
        CHECK(gap < previous);
        previous = gap;
      }
      CHECK(previous < 5e-3);
    }
  }
}

TEST_CASE("sphere and circle norms agree") {
  CHECK(std::pow(spherical::sphere_mean({3, 1.0, 0.5, 1.0}), 1.0) == Approx(13.0 / 12.0).epsilon(1e-13));
  CHECK(sphere_circle_equivalence_check(3, 1.0, 0.5) <= 1e-9);
  CHECK(sphere_circle_equivalence_check(2, 2.0, 1.0) <= 1e-12);
  CHECK(nu_norm(0.0, 2.0, 1.0) == Approx(std::sqrt(2.0)));
  for (int n : {2, 3, 5}) {
    for (double p : {1.0, 1.7, 2.0}) {
      for (double a : {0.5, 1.0, 2.3}) CHECK(sphere_circle_equivalence_check(n, p, a) <= 1e-9);
    }
  }
}

TEST_CASE("necessary_r and small_b_coefficient") {
  CHECK(necessary_r(0.0, 1.0, 2.0) == Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(necessary_r(-1.0, 2.0, 4.0) == Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-15));
  CHECK(necessary_r(3.0, 2.5, 2.5) == 1.0);
  CHECK_THROWS_AS(necessary_r(-1.0, 1.0, 2.0), DomainError);

  CHECK(small_b_coefficient(0.0, 2.0) == Approx(0.5));
  CHECK(small_b_coefficient(-1.0, 3.0) == Approx(1.0));
  CHECK(small_b_coefficient(2.0, 6.0) == Approx(1.0));
  SUBCASE("finite-difference oracle") {
    for (double m : {-1.0, -0.5, 0.0, 1.0, 2.0, 5.0}) {
      for (double p : {1.0, 1.5, 2.0, 6.0}) {
        // (N(h) - 1) / h^2 has an h^2 error term; one Richardson step removes it.
        auto fd = [&](double h) { return (nu_norm(m, p, h) - 1.0) / (h * h); };
        const double est = (4.0 * fd(5e-3) - fd(1e-2)) / 3.0;
        CHECK(std::abs(est - small_b_coefficient(m, p)) < 1e-5);
      }
    }
  }
}

TEST_CASE("check_hyp examples") {
  const auto g = default_b_grid();
  REQUIRE(g.size() == 120);
  SUBCASE("r = 0") {
    const auto rep = check_hyp({0.0, 1.0, 2.0, 0.0}, g);
    CHECK(rep.pass);
    CHECK(rep.worst_margin >= 0.0);
  }
  SUBCASE("Weissler point") { CHECK(check_hyp({0.0, 1.0, 2.0, std::sqrt(0.5)}, g).pass); }
  SUBCASE("above the necessary bound") {
    const auto rep = check_hyp({0.0, 1.0, 2.0, 0.75}, g);
    CHECK_FALSE(rep.pass);
    CHECK(rep.witness <= 1e-2);
  }
  SUBCASE("the grid alone detects the violation at small b") {
    const double rr = 0.75;
    const double b = 1e-2;
    CHECK(nu_norm(0.0, 1.0, b) - nu_norm(0.0, 2.0, rr * b) < 0.0);
  }
  SUBCASE("q = p passes at r = 1") { CHECK(check_hyp({1.0, 3.0, 3.0, 1.0}, g).pass); }
  SUBCASE("r > 1 fails through the large-b slope when p = q") {
    const auto rep = check_hyp({1.0, 3.0, 3.0, 1.01}, g);
    CHECK_FALSE(rep.pass);
  }
  CHECK_THROWS_AS(check_hyp({0.0, 2.0, 1.0, 0.5}, g), ArgumentError);
  CHECK_THROWS_AS(check_hyp({0.0, 1.0, 2.0, 0.5}, {}), ArgumentError);
}

TEST_CASE("Theorem 2.1 restated as hypercontractivity") {
  const auto g = default_b_grid();
  for (int n = 2; n <= 6; ++n) {
    for (double p : {0.5, 1.0, 1.5, 2.0}) {
      CAPTURE(n);
      CAPTURE(p);
      CHECK(check_hyp({n - 2.0, p, 2.0, std::sqrt((p + n - 2.0) / n)}, g).pass);
      CHECK(r_star(n - 2.0, p, 2.0, 1e-3) >= necessary_r(n - 2.0, p, 2.0) - 1e-3);
    }
  }
}

TEST_CASE("monotone in r at fixed b") {
  for (double m : {-1.0, 0.0, 2.0}) {
    for (double q : {1.0, 2.0, 4.0}) {
      for (double b : {1e-3, 0.5, 1.0, 20.0}) {
        double prev = 0.0;
        for (double r : grid::linspace(0.0, 1.0, 21)) {
          const double v = nu_norm(m, q, r * b);
          CHECK(v >= prev - 1e-14);
          prev = v;
        }
      }
    }
  }
}

TEST_CASE("r_star") {
  CHECK(std::abs(r_star(-1.0, 2.0, 4.0, 1e-4) - std::sqrt(1.0 / 3.0)) < 1e-3);
  CHECK(std::abs(r_star(0.0, 1.0, 2.0, 1e-4) - std::sqrt(0.5)) < 1e-3);
  CHECK(r_star(1.5, 3.0, 3.0, 1e-4) == 1.0);
  SUBCASE("sharp regimes") {
    const double tuples[][3] = {{-1, 2, 4}, {0, 1, 2}, {0, 2, 4}, {0, 6, 8}, {1, 6, 8}, {2, 6, 8}};
    for (const auto& t : tuples) {
      const double rs = r_star(t[0], t[1], t[2], 1e-4);
      const double nec = necessary_r(t[0], t[1], t[2]);
      CHECK(std::abs(rs - nec) < 5e-3);
      CHECK(rs <= nec + 1e-4);
    }
  }
  SUBCASE("quasi-norm target exponent uses the scan") {
    const double rs = r_star(0.0, 0.4, 0.8, 1e-3);
    CHECK(rs <= necessary_r(0.0, 0.4, 0.8) + 1e-3);
    CHECK(rs > 0.0);
  }
  CHECK_THROWS_AS(r_star(0.0, 1.0, 2.0, 0.5), ArgumentError);
  CHECK_THROWS_AS(r_star(0.0, 3.0, 2.0, 1e-3), ArgumentError);
}

TEST_CASE("scan_region") {
  const std::vector<double> ms{-1.0, 0.0, 2.0};
  const std::vector<double> ps{1.0, 6.0};
  const std::vector<double> qs{2.0, 6.0, 8.0};
  const auto g = default_b_grid();
  const auto rows = scan_region(ms, ps, qs, 1e-3, g);
  // p <= q pairs: (1,2), (1,6), (1,8), (6,6), (6,8) for each m.
  REQUIRE(rows.size() == 15);
  for (const auto& row : rows) {
    CAPTURE(row.m);
    CAPTURE(row.p);
    CAPTURE(row.q);
    if (row.m == -1.0 && row.p == 1.0) {
      // p + m = 0: the necessary bound is undefined.
      CHECK(row.status != "ok");
      continue;
    }
    REQUIRE(row.status == "ok");
    CHECK(row.ratio > 0.0);
    CHECK(row.ratio <= 1.0 + 1e-3 / row.necessary_r + 1e-12);
    if (row.p == row.q) CHECK(row.ratio == 1.0);
    if (row.p == 6.0 && row.q == 8.0) CHECK(std::string(row.label) == kConsistentLabel);
    if (row.m == 0.0 && row.p == 1.0 && row.q == 2.0) CHECK(row.ratio == Approx(1.0).epsilon(2e-3));
  }
  SUBCASE("deterministic across worker counts") {
    const int saved = default_jobs().load();
    default_jobs() = 3;
    const auto again = scan_region(ms, ps, qs, 1e-3, g);
    default_jobs() = saved;
    REQUIRE(again.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(again[i].m == rows[i].m);
      CHECK(again[i].status == rows[i].status);
      if (rows[i].status == "ok") CHECK(again[i].r_star == rows[i].r_star);
    }
  }
}
