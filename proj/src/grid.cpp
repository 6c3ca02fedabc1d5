#include "sharpconvex/grid.hpp"

#include <charconv>
#include <cstdlib>
#include <cmath>
#include <string>

#include "sharpconvex/errors.hpp"

namespace sharpconvex::grid {

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) throw ArgumentError("linspace: count must be positive");
  if (count == 1) return {start};
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    out[i] = start + (stop - start) * static_cast<double>(i) / (count - 1);
  }
  out.back() = stop;
  return out;
}

std::vector<double> logspace(double start, double stop, int count) {
  if (!(start > 0.0) || !(stop > 0.0)) throw ArgumentError("logspace: endpoints must be positive");
  auto exps = linspace(std::log(start), std::log(stop), count);
  for (double& e : exps) e = std::exp(e);
  exps.front() = start;
  if (count > 1) exps.back() = stop;
  return exps;
}

namespace {

double to_double(std::string_view s) {
  // strtod rather than from_chars: GCC 11's floating from_chars is incomplete.
  const std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v)) {
    throw ArgumentError("grid: cannot parse number '" + buf + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

}  // namespace

std::vector<double> parse(std::string_view spec) {
  if (spec.empty()) throw ArgumentError("grid: empty specification");
  if (spec.find(':') == std::string_view::npos) {
    std::vector<double> out;
    for (auto part : split(spec, ',')) out.push_back(to_double(part));
    return out;
  }
  const auto parts = split(spec, ':');
  if (parts.size() != 3 && parts.size() != 4) {
    throw ArgumentError("grid: expected start:stop:count[:lin|log], got '" + std::string(spec) + "'");
  }
  const double start = to_double(parts[0]);
  const double stop = to_double(parts[1]);
  int count = 0;
  const auto cs = parts[2];
  auto [ptr, ec] = std::from_chars(cs.data(), cs.data() + cs.size(), count);
  if (ec != std::errc() || ptr != cs.data() + cs.size() || count < 1) {
    throw ArgumentError("grid: count must be a positive integer in '" + std::string(spec) + "'");
  }
  const std::string_view kind = parts.size() == 4 ? parts[3] : "lin";
  if (kind == "lin") return linspace(start, stop, count);
  if (kind == "log") return logspace(start, stop, count);
  throw ArgumentError("grid: spacing must be 'lin' or 'log', got '" + std::string(kind) + "'");
}

}  // namespace sharpconvex::grid
