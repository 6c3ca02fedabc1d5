#include "sharpconvex/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "sharpconvex/errors.hpp"

namespace sharpconvex::specfun {
namespace {

constexpr int kZetaTerms = 48;

// zeta(k) - 1 for k = 2 .. kZetaTerms+1, by direct summation plus an
// Euler-Maclaurin tail starting at n = 30.
std::array<double, kZetaTerms> zeta_minus_one_table() {
  std::array<double, kZetaTerms> table{};
  constexpr double N = 30.0;
  for (int i = 0; i < kZetaTerms; ++i) {
    const double k = i + 2;
    double sum = 0.0;
    for (int n = 29; n >= 2; --n) sum += std::pow(static_cast<double>(n), -k);
    const double fN = std::pow(N, -k);
    double tail = N * fN / (k - 1.0) + fN / 2.0 + k * fN / (12.0 * N) -
                  k * (k + 1) * (k + 2) * fN / (720.0 * N * N * N) +
                  k * (k + 1) * (k + 2) * (k + 3) * (k + 4) * fN / (30240.0 * std::pow(N, 5));
    table[i] = sum + tail;
  }
  return table;
}

// ln Gamma(1 + z) + log1p(z) for |z| <= 1/2:
//   z (1 - gamma) + sum_{k>=2} (-1)^k (zeta(k) - 1) z^k / k
double shifted_series(double z) {
  static const std::array<double, kZetaTerms> zm1 = zeta_minus_one_table();
  double acc = 0.0;
  double zk = z;
  for (int i = 0; i < kZetaTerms; ++i) {
    zk *= z;
    const double k = i + 2;
    const double term = ((i % 2 == 0) ? 1.0 : -1.0) * zm1[i] * zk / k;
    acc += term;
    if (std::abs(term) < 1e-18 * std::abs(acc)) break;
  }
  return z * (1.0 - std::numbers::egamma) + acc;
}

double lanczos_ln_gamma(double xx) {
  static constexpr std::array<double, 14> cof = {
      57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
      -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
      -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
      .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
      -.261908384015814087e-4, .368991826595316234e-5};
  double y = xx;
  double tmp = xx + 5.24218750000000000;
  tmp = (xx + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (double c : cof) ser += c / ++y;
  return tmp + std::log(2.5066282746310005 * ser / xx);
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("ln_gamma: argument must be positive and finite, got " + std::to_string(x));
  }
  // The zeros at x = 1 and x = 2 need the series for relative accuracy.
  if (x >= 0.5 && x < 1.5) {
    const double z = x - 1.0;
    return shifted_series(z) - std::log1p(z);
  }
  if (x >= 1.5 && x < 2.5) return shifted_series(x - 2.0);
  return lanczos_ln_gamma(x);
}

double ln_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("ln_beta: arguments must be positive");
  return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
}

namespace {
double ln_c_m(double m) {
  if (!(m > -1.0) || !std::isfinite(m)) {
    throw DomainError("c_m: requires m > -1 (m = -1 is the two-point measure), got " +
                      std::to_string(m));
  }
  constexpr double ln_sqrt_pi = 0.57236494292470008707171367567653;
  return ln_gamma(m / 2.0 + 1.0) - std::numbers::ln2 - ln_sqrt_pi - ln_gamma(m / 2.0 + 0.5);
}
}  // namespace

double c_m(double m) { return std::exp(ln_c_m(m)); }

double c_ratio(double m) { return std::exp(ln_c_m(m) - ln_c_m(m + 2.0)); }

}  // namespace sharpconvex::specfun
