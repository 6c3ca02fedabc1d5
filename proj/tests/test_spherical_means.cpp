#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "sharpconvex/errors.hpp"
#include "sharpconvex/grid.hpp"
#include "sharpconvex/spherical_means.hpp"

using namespace sharpconvex;
using namespace sharpconvex::spherical;
using doctest::Approx;

namespace {

// Elementary antiderivative of the n = 3 reduced integral (mu_{1/2} is uniform).
double n3_closed_form(double beta, double a) {
  return (std::pow(1.0 + a, beta + 2.0) - std::pow(std::abs(1.0 - a), beta + 2.0)) / (2.0 * a * (beta + 2.0));
}

// Independent reference in the angular form: t = cos(theta), so
// I = Gamma(l+1) / (sqrt(pi) Gamma(l+1/2)) int_0^pi base^{beta/2} sin^{2l} d theta
// with base = (x - a)^2 + 4 a x sin^2(theta / 2).
double tanh_sinh_sphere_mean(int n, double beta, double a, double x) {
  const double lambda = 0.5 * (n - 2);
  const double norm = boost::math::tgamma(lambda + 1.0) /
                      (std::sqrt(std::numbers::pi) * boost::math::tgamma(lambda + 0.5));
  boost::math::quadrature::tanh_sinh<double> ts;
  auto f = [&](double th) {
    const double s = std::sin(0.5 * th);
    const double base = (x - a) * (x - a) + 4.0 * a * x * s * s;
    if (base == 0.0) return 0.0;
    return std::pow(base, 0.5 * beta) * std::pow(std::sin(th), 2.0 * lambda);
  };
  return norm * ts.integrate(f, 0.0, std::numbers::pi);
}

}  // namespace

TEST_CASE("sphere_mean examples") {
  for (int n = 2; n <= 8; ++n) CHECK(sphere_mean({n, 2.0, 1.0, 1.0}) == Approx(2.0).epsilon(1e-13));
  CHECK(std::abs(sphere_mean({3, 1.0, 0.5, 1.0}) - 13.0 / 12.0) <= 1e-12);
  CHECK(std::abs(sphere_mean({2, 1.0, 1.0, 1.0}) - 4.0 / std::numbers::pi) <= 1e-10);
}

TEST_CASE("degenerate configurations") {
  CHECK(sphere_mean({5, 0.0, 3.0, 3.0}) == 1.0);
  CHECK(sphere_mean({4, 1.5, 0.0, 2.0}) == Approx(std::pow(2.0, 1.5)));
  CHECK(sphere_mean({4, -1.5, 2.0, 0.0}) == Approx(std::pow(2.0, -1.5)));
  CHECK(sphere_mean({4, 1.0, 0.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(sphere_mean({4, -1.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("divergent and invalid configurations") {
  CHECK_THROWS_AS(sphere_mean({3, -2.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(sphere_mean({2, -1.0, 0.7, 0.7}), DomainError);
  CHECK_THROWS_AS(sphere_mean({1, 1.0, 1.0, 1.0}), ArgumentError);
  CHECK_THROWS_AS(sphere_mean({3, 1.0, -1.0, 1.0}), ArgumentError);
  // Just inside the integrable range.
  CHECK(std::isfinite(sphere_mean({3, -1.9, 1.0, 1.0})));
}

TEST_CASE("p = 2 closed form in every dimension") {
  for (int n = 2; n <= 10; ++n) {
    for (double a : grid::logspace(1e-3, 1e2, 20)) {
      for (double x : {0.3, 1.0, 4.0}) {
        CHECK(std::abs(sphere_mean({n, 2.0, a, x}) - (x * x + a * a)) <= 1e-12 * std::max(1.0, x * x + a * a));
      }
    }
  }
}

TEST_CASE("n = 3 matches the elementary antiderivative") {
  for (double beta : {-1.0, 0.5, 1.0, 1.5, 2.0}) {
    for (double a : {0.1, 0.5, 0.99, 1.01, 2.0, 5.0}) {
      CAPTURE(beta);
      CAPTURE(a);
      CHECK(std::abs(sphere_mean({3, beta, a, 1.0}) - n3_closed_form(beta, a)) <= 1e-10);
    }
  }
  // The a = 1 limit of the antiderivative: 2^{beta+1} / (beta + 2).
  for (double beta : {-1.0, -0.5, 0.5, 1.0, 1.5}) {
    CHECK(std::abs(sphere_mean({3, beta, 1.0, 1.0}) - std::pow(2.0, beta + 1.0) / (beta + 2.0)) <= 1e-10);
  }
}

TEST_CASE("agreement with an independent tanh-sinh reference") {
  for (int n : {2, 4, 5, 7}) {
    for (double beta : {-0.5, 0.7, 1.3, 3.0}) {
      for (double a : {0.2, 0.9, 1.0, 1.1, 3.0}) {
        if (a == 1.0 && !(beta > -(n - 1.0))) continue;
        CAPTURE(n);
        CAPTURE(beta);
        CAPTURE(a);
        const double ref = tanh_sinh_sphere_mean(n, beta, a, 1.0);
        CHECK(std::abs(sphere_mean({n, beta, a, 1.0}) - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
      }
    }
  }
}

TEST_CASE("exchange symmetry and scaling") {
  for (int n : {2, 3, 6}) {
    for (double beta : {-0.5, 0.5, 1.0, 1.7}) {
      for (auto [a, x] : {std::pair{0.3, 1.0}, {2.0, 0.7}, {1.0, 1.0 + 1e-8}, {5.0, 4.0}}) {
        const double v = sphere_mean({n, beta, a, x});
        CHECK(std::abs(v - sphere_mean({n, beta, x, a})) <= 1e-10 * std::max(1.0, v));
        for (double s : {0.5, 2.0, 10.0}) {
          const double scaled = sphere_mean({n, beta, s * a, s * x});
          CHECK(std::abs(scaled - std::pow(s, beta) * v) <= 1e-10 * std::abs(scaled));
        }
      }
    }
  }
}

TEST_CASE("derivatives at a = 0") {
  CHECK(second_derivative_at_zero(2, 2.0) == Approx(2.0));
  CHECK(second_derivative_at_zero(3, 1.0) == Approx(2.0 / 3.0));
  const double h = 1e-4;
  for (int n : {2, 4, 7}) {
    for (double p : {0.5, 1.0, 2.0}) {
      // I is even in a, so I(h) - I(0) = I''(0) h^2 / 2 + O(h^4).
      const double fd = 2.0 * (sphere_mean({n, p, h, 1.0}) - 1.0) / (h * h);
      CHECK(std::abs(fd - second_derivative_at_zero(n, p)) <= 1e-5);
      // First derivative: the one-sided difference is O(h) by evenness; the
      // symmetric difference vanishes identically, so bound I(h) - I(0) / h.
      CHECK(std::abs((sphere_mean({n, p, h, 1.0}) - 1.0) / h) <= 1e-3);
    }
  }
  CHECK_THROWS_AS(second_derivative_at_zero(1, 1.0), ArgumentError);
  CHECK_THROWS_AS(second_derivative_at_zero(3, 0.0), ArgumentError);
}

TEST_CASE("subharmonic exponents") {
  CHECK(is_subharmonic_exponent(3, -1.0));
  CHECK(is_subharmonic_exponent(2, 1.0));
  CHECK_FALSE(is_subharmonic_exponent(4, -1.0));
  CHECK(is_subharmonic_exponent(4, -2.0));
  CHECK(is_subharmonic_exponent(4, 0.0));
  CHECK_FALSE(is_subharmonic_exponent(5, -0.5));
}

TEST_CASE("verify_subharmonic_bound") {
  // Newton's theorem: the harmonic kernel averages to 1/max(a, |x|).
  CHECK(std::abs(sphere_mean({3, -1.0, 2.0, 1.0}) - 0.5) <= 1e-12);
  const std::vector<double> one{2.0};
  auto r = verify_subharmonic_bound(3, -1.0, one, 1.0);
  CHECK(r.pass);
  CHECK(std::abs(r.worst_margin) <= 1e-10);

  const std::vector<double> half{0.5};
  r = verify_subharmonic_bound(2, 2.0, half, 1.0);
  CHECK(r.pass);
  CHECK(r.worst_margin == Approx(0.25));

  const auto grid = grid::logspace(1e-2, 1e2, 41);
  r = verify_subharmonic_bound(5, 0.0, grid, 1.0);
  CHECK(r.pass);
  CHECK(r.worst_margin == 0.0);

  for (auto [n, q] : {std::pair{3, -1.0}, {3, 0.5}, {4, -2.5}, {5, 1.5}, {2, -0.5}, {6, -4.5}}) {
    CAPTURE(n);
    CAPTURE(q);
    std::vector<double> g = grid::logspace(1e-2, 1e2, 61);
    g.push_back(0.999);
    g.push_back(1.001);
    if (q > -(n - 1.0)) g.push_back(1.0);
    CHECK(verify_subharmonic_bound(n, q, g, 1.0).pass);
  }
  CHECK_THROWS_AS(verify_subharmonic_bound(4, -1.0, grid, 1.0), ArgumentError);
  const std::vector<double> hits{1.0};
  CHECK_THROWS_AS(verify_subharmonic_bound(3, -2.0, hits, 1.0), ArgumentError);
}
