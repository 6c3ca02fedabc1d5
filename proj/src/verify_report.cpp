#include "sharpconvex/verify_report.hpp"

#include <algorithm>

#include "sharpconvex/errors.hpp"

namespace sharpconvex {

VerifyReport summarize_margins(std::span<const double> params, std::span<const double> margins,
                               double tolerance, int quad_order) {
  if (params.size() != margins.size()) throw ArgumentError("summarize_margins: size mismatch");
  VerifyReport r;
  r.grid_size = static_cast<int>(params.size());
  r.quad_order = quad_order;
  r.tolerance = tolerance;
  if (params.empty()) return r;
  std::size_t worst = 0;
  for (std::size_t i = 1; i < margins.size(); ++i) {
    if (margins[i] < margins[worst]) worst = i;
  }
  r.worst_margin = margins[worst];
  r.witness = params[worst];
  r.pass = r.worst_margin >= -tolerance;
  return r;
}

VerifyReport merge(const VerifyReport& a, const VerifyReport& b) {
  if (a.grid_size == 0) return b;
  if (b.grid_size == 0) return a;
  VerifyReport r = (b.worst_margin < a.worst_margin) ? b : a;
  r.pass = a.pass && b.pass;
  r.grid_size = a.grid_size + b.grid_size;
  r.quad_order = std::max(a.quad_order, b.quad_order);
  r.tolerance = std::max(a.tolerance, b.tolerance);
  if (!a.note.empty() && !b.note.empty() && a.note != b.note) r.note = a.note + "; " + b.note;
  else r.note = a.note.empty() ? b.note : a.note;
  return r;
}

}  // namespace sharpconvex
