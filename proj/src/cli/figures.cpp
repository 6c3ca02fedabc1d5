#include "sharpconvex/cli/figures.hpp"

#include <cmath>

#include "sharpconvex/convexity.hpp"

namespace sharpconvex::cli {

std::vector<double> fig1_exponents() { return {0.1, 0.35, 0.6, 0.85, 1.0}; }

Table fig1_table(int samples) {
  Table t;
  t.columns = {"p", "t", "phi", "phi_prime"};
  constexpr double h = 1e-6;
  for (double p : fig1_exponents()) {
    const double end = 3.0 / (2.0 - p);
    for (int i = 0; i < samples; ++i) {
      const double x = 1.0 + (end - 1.0) * i / samples;
      const double d = (convexity::phi(p, x + h) - convexity::phi(p, x - h)) / (2.0 * h);
      t.rows.push_back({number_cell(p), number_cell(x), number_cell(convexity::phi(p, x)), number_cell(d)});
    }
  }
  return t;
}

Table fig2_table() {
  Table t;
  t.columns = {"y", "q", "x", "value"};
  for (double y : {0.5, 0.3}) {
    for (int k = 0; k <= 10; ++k) {
      const double q = 1.0 + 0.1 * k;
      for (int i = 1; i <= 500; ++i) {
        const double x = i / 500.0;
        const double value =
            std::pow(x, q) - (1.0 - y - (1.0 - y * y) * (1.0 - x)) / (1.0 - y + q * (1.0 - x) * (x - y));
        t.rows.push_back({number_cell(y), number_cell(q), number_cell(x), number_cell(value)});
      }
    }
  }
  return t;
}

}  // namespace sharpconvex::cli
