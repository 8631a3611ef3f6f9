#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracspec/charts.hpp"
#include "fracspec/ifs.hpp"

namespace fracspec::app {

/// One panel per level 0..depth; panel m holds the N^m polygons F_w(E_0).
/// Each polygon carries data-level and data-word attributes.
/// ResourceError when the total word count exceeds `budget`.
std::string attractor_svg(const Polygon& poly, const IfsSystem& ifs, std::size_t depth, std::uint64_t budget);

/// Circle C_0 with the arc endpoints e^{i theta_j}, next to the generator
/// with its vertices, both labelled by arc index.
std::string chart_svg(const Polygon& poly);

}  // namespace fracspec::app
