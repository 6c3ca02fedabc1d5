#pragma once

#include <vector>

#include "sharpconvex/cli/report.hpp"

namespace sharpconvex::cli {

// Exponents plotted in the first figure.
std::vector<double> fig1_exponents();

// Columns (p, t, phi, phi_prime); t runs over [1, 3/(2-p)) on `samples`
// equally spaced points starting at t = 1, phi' by central difference with
// step 1e-6.
Table fig1_table(int samples = 200);

// Columns (y, q, x, value) with value = x^q - (1 - y - (1 - y^2)(1 - x)) /
// (1 - y + q (1 - x)(x - y)), y in {0.5, 0.3}, q in {1, 1.1, ..., 2} and
// x = i / 500 for i = 1..500.
Table fig2_table();

}  // namespace sharpconvex::cli
