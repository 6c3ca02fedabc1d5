#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sharpconvex::grid {

std::vector<double> linspace(double start, double stop, int count);
// Geometric spacing; start and stop must be positive.
std::vector<double> logspace(double start, double stop, int count);

// Parses "start:stop:count:lin|log" (spacing defaults to lin) or a
// comma-separated list of values. Throws ArgumentError on malformed input.
std::vector<double> parse(std::string_view spec);

}  // namespace sharpconvex::grid
