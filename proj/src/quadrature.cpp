#include "sharpconvex/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "sharpconvex/specfun.hpp"

namespace sharpconvex::quadrature {

QuadRule::QuadRule(double lambda, std::vector<double> nodes, std::vector<double> weights)
    : lambda_(lambda), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.size() != weights_.size()) throw ArgumentError("QuadRule: node/weight size mismatch");
}

namespace detail {
namespace {

// P_n^{(alpha,beta)}(x) and P_{n-1}^{(alpha,beta)}(x) by the three-term recurrence.
std::pair<double, double> jacobi_pair(double alpha, double beta, int n, double x) {
  double p_prev = 1.0;
  double p = 0.5 * ((alpha - beta) + (alpha + beta + 2.0) * x);
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + alpha + beta;
    const double a1 = 2.0 * k * (k + alpha + beta) * (s - 2.0);
    const double a2 = (s - 1.0) * (alpha * alpha - beta * beta);
    const double a3 = (s - 2.0) * (s - 1.0) * s;
    const double a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s;
    const double next = ((a2 + a3 * x) * p - a4 * p_prev) / a1;
    p_prev = p;
    p = next;
  }
  return {p, p_prev};
}

double jacobi_derivative(double alpha, double beta, int n, double x, double pn, double pn1) {
  const double s = 2.0 * n + alpha + beta;
  return (n * ((alpha - beta) - s * x) * pn + 2.0 * (n + alpha) * (n + beta) * pn1) /
         (s * (1.0 - x) * (1.0 + x));
}

// Off-diagonal entry b_k of the Jacobi matrix for the weight, k >= 1.
double jacobi_offdiag(double alpha, double beta, int k) {
  if (k == 1) {
    const double s = 2.0 + alpha + beta;
    return std::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) / (s * s * (s + 1.0)));
  }
  const double s = 2.0 * k + alpha + beta;
  return std::sqrt(4.0 * k * (k + alpha) * (k + beta) * (k + alpha + beta) /
                   (s * s * (s + 1.0) * (s - 1.0)));
}

double jacobi_diag(double alpha, double beta, int k) {
  if (k == 0) return (beta - alpha) / (alpha + beta + 2.0);
  const double s = 2.0 * k + alpha + beta;
  return (beta * beta - alpha * alpha) / (s * (s + 2.0));
}

// sum_{k<n} p_k(x)^2 for the orthonormal polynomials scaled so that p_0 = 1.
double orthonormal_square_sum(double alpha, double beta, int n, double x) {
  double prev = 0.0, cur = 1.0, sum = 1.0;
  for (int k = 0; k + 1 < n; ++k) {
    const double bk = k == 0 ? 0.0 : jacobi_offdiag(alpha, beta, k);
    const double next = ((x - jacobi_diag(alpha, beta, k)) * cur - bk * prev) /
                        jacobi_offdiag(alpha, beta, k + 1);
    prev = cur;
    cur = next;
    sum += cur * cur;
  }
  return sum;
}

}  // namespace

JacobiNodes gauss_jacobi(double alpha, double beta, int n) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw DomainError("gauss_jacobi: exponents must exceed -1");
  }
  if (n < 1) throw ArgumentError("gauss_jacobi: need at least one node");

  const bool symmetric = alpha == beta;
  // Roots are found in decreasing order; for a symmetric weight only the
  // positive half is computed and mirrored.
  const int count = symmetric ? n / 2 : n;
  std::vector<double> roots;
  roots.reserve(n);
  const double denom = n + 0.5 * (alpha + beta + 1.0);
  for (int k = 1; k <= count; ++k) {
    double x = std::cos((k + 0.5 * alpha - 0.25) * std::numbers::pi / denom);
    if (!roots.empty() && x >= roots.back()) {
      x = 0.5 * (roots.back() + (symmetric ? 0.0 : -1.0));
    }
    for (int iter = 0; iter < 100; ++iter) {
      const auto [pn, pn1] = jacobi_pair(alpha, beta, n, x);
      if (pn == 0.0) break;
      const double dp = jacobi_derivative(alpha, beta, n, x, pn, pn1);
      double deflate = 0.0;
      for (double r : roots) deflate += 1.0 / (x - r);
      if (symmetric) {
        for (double r : roots) deflate += 1.0 / (x + r);
      }
      const double dx = 1.0 / (dp / pn - deflate);
      double next = x - dx;
      if (next >= 1.0) next = 0.5 * (x + 1.0);
      if (next <= -1.0) next = 0.5 * (x - 1.0);
      const bool done = std::abs(next - x) <= 2.0 * std::numeric_limits<double>::epsilon() *
                                                  std::max(std::abs(x), 1e-3);
      x = next;
      if (done) break;
    }
    roots.push_back(x);
  }

  JacobiNodes out;
  if (symmetric) {
    out.nodes.reserve(n);
    for (auto it = roots.rbegin(); it != roots.rend(); ++it) out.nodes.push_back(-*it);
    if (n % 2 == 1) out.nodes.push_back(0.0);
    for (double r : roots) out.nodes.push_back(r);
  } else {
    out.nodes.assign(roots.begin(), roots.end());
  }
  std::sort(out.nodes.begin(), out.nodes.end());
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    const double x = out.nodes[i];
    if (!(x > -1.0 && x < 1.0) || (i > 0 && !(x > out.nodes[i - 1]))) {
      std::ostringstream msg;
      msg << "gauss_jacobi: root search failed (alpha=" << alpha << ", beta=" << beta
          << ", n=" << n << ")";
      throw InternalError(msg.str());
    }
  }

  // Christoffel numbers 1 / sum_k p_k(x_i)^2 over the orthonormal family,
  // rescaled to the exact mass 2^{alpha+beta+1} B(alpha+1, beta+1). This is
  // better conditioned near +-1 than the (1 - x^2) P_n'(x)^2 form.
  out.weights.resize(n);
  const int computed = symmetric ? (n + 1) / 2 : n;
  for (int i = 0; i < computed; ++i) {
    out.weights[i] = 1.0 / orthonormal_square_sum(alpha, beta, n, out.nodes[i]);
  }
  if (symmetric) {
    for (int i = computed; i < n; ++i) out.weights[i] = out.weights[n - 1 - i];
  }
  double total = 0.0;
  for (double w : out.weights) total += w;
  const double mass =
      std::exp((alpha + beta + 1.0) * std::numbers::ln2 + specfun::ln_beta(alpha + 1.0, beta + 1.0));
  for (double& w : out.weights) w *= mass / total;
  return out;
}

const JacobiNodes& cached_gauss_jacobi(double alpha, double beta, int n) {
  static std::mutex mutex;
  static std::map<std::tuple<double, double, int>, std::unique_ptr<JacobiNodes>> cache;
  const auto key = std::make_tuple(alpha, beta, n);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<JacobiNodes>(gauss_jacobi(alpha, beta, n));
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(built));
  return *it->second;
}

}  // namespace detail

QuadRule build_rule(double lambda, int order) {
  if (!(lambda > -0.5) || !std::isfinite(lambda)) {
    throw DomainError("build_rule: lambda must exceed -1/2 (m = -1 is the two-point measure)");
  }
  if (order < kMinOrder || order > kMaxOrder) {
    throw ArgumentError("build_rule: order must lie in [2, 10000], got " + std::to_string(order));
  }
  auto jac = detail::gauss_jacobi(lambda - 0.5, lambda - 0.5, order);
  auto& x = jac.nodes;
  auto& w = jac.weights;
  const int n = order;
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double xs = 0.5 * (x[j] - x[i]);
    const double ws = 0.5 * (w[i] + w[j]);
    x[i] = -xs;
    x[j] = xs;
    w[i] = ws;
    w[j] = ws;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  // Pairwise-symmetric normalization keeps w[i] == w[n-1-i] exactly.
  double total = 0.0;
  for (int i = 0; i < n / 2; ++i) total += 2.0 * w[i];
  if (n % 2 == 1) total += w[n / 2];
  for (double& wi : w) wi /= total;
  return QuadRule(lambda, std::move(x), std::move(w));
}

const QuadRule& cached_rule(double lambda, int order) {
  static std::mutex mutex;
  static std::map<std::pair<double, int>, std::unique_ptr<QuadRule>> cache;
  const auto key = std::make_pair(lambda, order);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<QuadRule>(build_rule(lambda, order));
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(built));
  return *it->second;
}

namespace {

double density_scale(double lambda) {
  return 2.0 * specfun::c_m(2.0 * lambda);
}

}  // namespace

double density(double lambda, double t) {
  if (!(lambda > -0.5)) throw DomainError("density: lambda must exceed -1/2");
  if (t <= -1.0 || t >= 1.0) return 0.0;
  return density_scale(lambda) * std::pow((1.0 - t) * (1.0 + t), lambda - 0.5);
}

namespace {

constexpr int kLowOrder = 10;
constexpr int kHighOrder = 20;
constexpr int kMaxPanels = 20000;

enum class PanelKind { Interior, LeftEnd, RightEnd };

struct Panel {
  double lo, hi;
  // Distances 1 - lo, 1 - hi, 1 + lo, 1 + hi at full precision.
  double r_lo, r_hi, l_lo, l_hi;
  PanelKind kind;
  double value = 0.0;
  double error = 0.0;
  bool splittable = true;
};

struct Weight {
  double scale;  // density = scale * (1-t)^alpha (1+t)^alpha
  double alpha;
};

class AdaptiveEngine {
 public:
  AdaptiveEngine(Weight weight, const PointFunction& f, EndpointExponents ex)
      : weight_(weight), f_(f), ex_(ex) {
    if (!(weight.alpha + ex.right > -1.0) || !(weight.alpha + ex.left > -1.0)) {
      throw DomainError("adaptive_integrate: endpoint exponent of weight times integrand must exceed -1");
    }
  }

  AdaptiveResult run(double lo, double hi, double tol) {
    if (!(lo < hi)) return {0.0, 0.0, 0};
    std::vector<Panel> heap;
    auto make = [](double a, double b, double ra, double rb, double la, double lb) {
      PanelKind kind = PanelKind::Interior;
      if (rb == 0.0) kind = PanelKind::RightEnd;
      else if (la == 0.0) kind = PanelKind::LeftEnd;
      return Panel{a, b, ra, rb, la, lb, kind};
    };
    if (lo == -1.0 && hi == 1.0) {
      heap.push_back(make(-1.0, 0.0, 2.0, 1.0, 0.0, 1.0));
      heap.push_back(make(0.0, 1.0, 1.0, 0.0, 1.0, 2.0));
    } else {
      heap.push_back(make(lo, hi, 1.0 - lo, 1.0 - hi, 1.0 + lo, 1.0 + hi));
    }
    for (auto& p : heap) evaluate(p);
    auto by_error = [](const Panel& a, const Panel& b) { return a.error < b.error; };
    std::make_heap(heap.begin(), heap.end(), by_error);

    std::vector<Panel> frozen;
    auto totals = [&]() {
      double value = 0.0, error = 0.0, magnitude = 0.0;
      for (const auto* set : {&heap, &frozen}) {
        for (const auto& p : *set) {
          value += p.value;
          error += p.error;
          magnitude += std::abs(p.value);
        }
      }
      return std::make_tuple(value, error, magnitude);
    };

    auto [value, error, magnitude] = totals();
    int panels = static_cast<int>(heap.size());
    while (error > std::max(tol, 50.0 * std::numeric_limits<double>::epsilon() * magnitude)) {
      if (heap.empty()) break;
      if (panels >= kMaxPanels) {
        std::ostringstream msg;
        msg << "adaptive_integrate: subdivision budget exhausted, estimate " << value
            << " with error " << error;
        throw ConvergenceError(msg.str(), value, error);
      }
      std::pop_heap(heap.begin(), heap.end(), by_error);
      Panel worst = heap.back();
      heap.pop_back();
      if (!worst.splittable) {
        frozen.push_back(worst);
        continue;
      }
      auto [left, right] = split(worst);
      evaluate(left);
      evaluate(right);
      value += left.value + right.value - worst.value;
      error += left.error + right.error - worst.error;
      magnitude += std::abs(left.value) + std::abs(right.value) - std::abs(worst.value);
      heap.push_back(left);
      std::push_heap(heap.begin(), heap.end(), by_error);
      heap.push_back(right);
      std::push_heap(heap.begin(), heap.end(), by_error);
      ++panels;
    }
    std::tie(value, error, magnitude) = totals();
    if (error > std::max(tol, 50.0 * std::numeric_limits<double>::epsilon() * magnitude)) {
      std::ostringstream msg;
      msg << "adaptive_integrate: panels reached resolution limit, estimate " << value
          << " with error " << error;
      throw ConvergenceError(msg.str(), value, error);
    }
    return {value, error, panels};
  }

 private:
  std::pair<Panel, Panel> split(const Panel& p) const {
    Panel a = p, b = p;
    switch (p.kind) {
      case PanelKind::Interior: {
        const double mid = 0.5 * (p.lo + p.hi);
        const double r_mid = 0.5 * (p.r_lo + p.r_hi);
        const double l_mid = 0.5 * (p.l_lo + p.l_hi);
        a.hi = mid, a.r_hi = r_mid, a.l_hi = l_mid;
        b.lo = mid, b.r_lo = r_mid, b.l_lo = l_mid;
        break;
      }
      case PanelKind::RightEnd: {
        const double r_mid = 0.5 * p.r_lo;
        const double mid = 1.0 - r_mid;
        const double l_mid = p.l_lo + r_mid;
        a.kind = PanelKind::Interior;
        a.hi = mid, a.r_hi = r_mid, a.l_hi = l_mid;
        b.lo = mid, b.r_lo = r_mid, b.l_lo = l_mid;
        break;
      }
      case PanelKind::LeftEnd: {
        const double l_mid = 0.5 * p.l_hi;
        const double mid = l_mid - 1.0;
        const double r_mid = p.r_hi + l_mid;
        a.hi = mid, a.r_hi = r_mid, a.l_hi = l_mid;
        b.kind = PanelKind::Interior;
        b.lo = mid, b.r_lo = r_mid, b.l_lo = l_mid;
        break;
      }
    }
    return {a, b};
  }

  double call(const Abscissa& x) const {
    const double v = f_(x);
    if (!std::isfinite(v)) {
      throw EvaluationError("adaptive_integrate: non-finite integrand at t = " + std::to_string(x.t), x.t);
    }
    return v;
  }

  // Width from whichever endpoint distance is better resolved; close to
  // +-1 the coordinates themselves round to the endpoint.
  static double half_width(const Panel& p) {
    return p.r_lo < p.l_hi ? 0.5 * (p.r_lo - p.r_hi) : 0.5 * (p.l_hi - p.l_lo);
  }

  double sum_interior(const Panel& p, int order) const {
    const auto& rule = detail::cached_gauss_jacobi(0.0, 0.0, order);
    const double half = half_width(p);
    double s = 0.0;
    for (int i = 0; i < order; ++i) {
      const double y = rule.nodes[i];
      Abscissa x{p.lo + half * (1.0 + y), p.r_hi + half * (1.0 - y), p.l_lo + half * (1.0 + y)};
      double w = 1.0;
      if (weight_.alpha != 0.0) w = std::pow(x.one_minus_t * x.one_plus_t, weight_.alpha);
      s += rule.weights[i] * w * call(x);
    }
    return weight_.scale * half * s;
  }

  double sum_right(const Panel& p, int order) const {
    const double a = weight_.alpha + ex_.right;
    const auto& rule = detail::cached_gauss_jacobi(a, 0.0, order);
    const double half = 0.5 * p.r_lo;
    double s = 0.0;
    for (int i = 0; i < order; ++i) {
      const double y = rule.nodes[i];
      const double omt = half * (1.0 - y);
      Abscissa x{1.0 - omt, omt, p.l_lo + half * (1.0 + y)};
      double v = call(x);
      if (weight_.alpha != 0.0) v *= std::pow(x.one_plus_t, weight_.alpha);
      if (ex_.right != 0.0) v /= std::pow(omt, ex_.right);
      s += rule.weights[i] * v;
    }
    return weight_.scale * std::pow(half, a + 1.0) * s;
  }

  double sum_left(const Panel& p, int order) const {
    const double b = weight_.alpha + ex_.left;
    const auto& rule = detail::cached_gauss_jacobi(0.0, b, order);
    const double half = 0.5 * p.l_hi;
    double s = 0.0;
    for (int i = 0; i < order; ++i) {
      const double y = rule.nodes[i];
      const double opt = half * (1.0 + y);
      Abscissa x{opt - 1.0, p.r_hi + half * (1.0 - y), opt};
      double v = call(x);
      if (weight_.alpha != 0.0) v *= std::pow(x.one_minus_t, weight_.alpha);
      if (ex_.left != 0.0) v /= std::pow(opt, ex_.left);
      s += rule.weights[i] * v;
    }
    return weight_.scale * std::pow(half, b + 1.0) * s;
  }

  void evaluate(Panel& p) const {
    double lo_est = 0.0, hi_est = 0.0;
    switch (p.kind) {
      case PanelKind::Interior:
        lo_est = sum_interior(p, kLowOrder);
        hi_est = sum_interior(p, kHighOrder);
        break;
      case PanelKind::RightEnd:
        lo_est = sum_right(p, kLowOrder);
        hi_est = sum_right(p, kHighOrder);
        break;
      case PanelKind::LeftEnd:
        lo_est = sum_left(p, kLowOrder);
        hi_est = sum_left(p, kHighOrder);
        break;
    }
    p.value = hi_est;
    p.error = std::abs(hi_est - lo_est);
    const double eps = std::numeric_limits<double>::epsilon();
    switch (p.kind) {
      case PanelKind::Interior: {
        const double width = 2.0 * half_width(p);
        const double scale = std::min(p.r_lo, p.l_hi);
        p.splittable = width > 64.0 * eps * scale && width > 1e-290;
        break;
      }
      case PanelKind::RightEnd:
        p.splittable = p.r_lo > 1e-290;
        break;
      case PanelKind::LeftEnd:
        p.splittable = p.l_hi > 1e-290;
        break;
    }
  }

  Weight weight_;
  const PointFunction& f_;
  EndpointExponents ex_;
};

void check_tol(double tol) {
  if (!(tol > 0.0)) throw ArgumentError("adaptive_integrate: tolerance must be positive");
}

}  // namespace

AdaptiveResult adaptive_integrate_detailed(double lambda, const PointFunction& f, double tol,
                                           EndpointExponents exponents) {
  if (!(lambda > -0.5)) throw DomainError("adaptive_integrate: lambda must exceed -1/2");
  check_tol(tol);
  AdaptiveEngine engine({density_scale(lambda), lambda - 0.5}, f, exponents);
  return engine.run(-1.0, 1.0, tol);
}

double adaptive_integrate(double lambda, const PointFunction& f, double tol,
                          EndpointExponents exponents) {
  return adaptive_integrate_detailed(lambda, f, tol, exponents).value;
}

double adaptive_integrate(double lambda, const std::function<double(double)>& f, double tol) {
  const PointFunction g = [&f](const Abscissa& x) { return f(x.t); };
  return adaptive_integrate(lambda, g, tol);
}

double adaptive_integrate_range(double lambda, const PointFunction& f, double lo, double hi,
                                double tol) {
  if (!(lambda > -0.5)) throw DomainError("adaptive_integrate_range: lambda must exceed -1/2");
  check_tol(tol);
  if (lo < -1.0 || hi > 1.0) throw ArgumentError("adaptive_integrate_range: range must lie in [-1, 1]");
  AdaptiveEngine engine({density_scale(lambda), lambda - 0.5}, f, {});
  return engine.run(lo, hi, tol).value;
}

double adaptive_integrate_plain(const std::function<double(double)>& f, double lo, double hi,
                                double tol) {
  check_tol(tol);
  if (!(lo < hi)) return 0.0;
  const double half = 0.5 * (hi - lo);
  const PointFunction g = [&](const Abscissa& x) { return f(lo + half * x.one_plus_t); };
  AdaptiveEngine engine({half, 0.0}, g, {});
  return engine.run(-1.0, 1.0, tol).value;
}

double upper_tail(double lambda, double u, double tol) {
  if (u >= 1.0) return 0.0;
  if (u <= -1.0) return 1.0;
  const PointFunction one = [](const Abscissa&) { return 1.0; };
  return adaptive_integrate_range(lambda, one, u, 1.0, tol);
}

double lower_cdf(double lambda, double u, double tol) {
  if (u >= 1.0) return 1.0;
  if (u <= -1.0) return 0.0;
  const PointFunction one = [](const Abscissa&) { return 1.0; };
  return adaptive_integrate_range(lambda, one, -1.0, u, tol);
}

bool gauss_resolves(double singularity, int order) {
  const double s = std::abs(singularity);
  if (!(s > 1.0)) return false;
  if (!std::isfinite(s)) return true;
  const double rho = s + std::sqrt((s - 1.0) * (s + 1.0));
  return 2.0 * order * std::log(rho) >= 36.0;
}

}  // namespace sharpconvex::quadrature
