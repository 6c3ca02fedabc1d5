#pragma once

#include <span>
#include <string>

namespace sharpconvex {

inline constexpr double kDefaultMarginTol = 1e-9;

// Outcome of checking an inequality over a finite parameter grid.
// pass <=> worst_margin >= -tolerance.
struct VerifyReport {
  bool pass = true;
  double worst_margin = 0.0;
  double witness = 0.0;  // grid parameter attaining worst_margin
  int grid_size = 0;
  int quad_order = 0;
  double tolerance = kDefaultMarginTol;
  std::string note;
};

// Minimum margin over the grid; ties resolve to the first index, so the
// result does not depend on evaluation order.
VerifyReport summarize_margins(std::span<const double> params, std::span<const double> margins,
                               double tolerance, int quad_order);

// Combine two reports over disjoint grids (or two facets of one check).
VerifyReport merge(const VerifyReport& a, const VerifyReport& b);

}  // namespace sharpconvex
