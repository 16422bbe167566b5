#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "phimetric/fixedpoint.hpp"
#include "phimetric/point.hpp"

namespace phimetric {

/// Ids accepted by builtin_map, sorted.
std::vector<std::string> builtin_map_ids();

/// Named one-dimensional self-maps with their domains and intended kind:
///   half-sine         sin(x) / 2 on [-10, 10]                    banach
///   kannan-piecewise  x/10 for x < 1, x/5 on [1, 2]; [-2, 2]     kannan
///   arctan-shift      arctan(x) - x on [-pi/2, pi/2]             edelstein
///   shift             x + 1 on [-1e9, 1e9] (never contracts)     banach
///   rotation          (x, y) -> (-y, x) on [-1, 1]^2 (isometry)  edelstein
/// Throws ConfigurationError listing the known ids.
SelfMap builtin_map(std::string_view id);

/// x -> a x + b coordinatewise on `domain`.
SelfMap affine_map(double a, double b, Box domain);

}  // namespace phimetric
