#pragma once

#include <string>
#include <vector>

#include "clem/percolation.hpp"

namespace clem {

/// Colour of graph distance d when the largest distance is d_max
/// (hue from red at 0 to blue at d_max).
std::string distance_color(int d, int d_max);

/// Open sites drawn as hexagons, each cluster coloured by graph distance
/// from its lowest-index site. Closed sites are left blank, so a
/// configuration without open sites gives an empty canvas.
std::string perc_coloring_svg(const PercolationConfig& config);

/// Interface loops as closed polylines: exterior boundaries in black,
/// inner boundaries in grey, in loop-id order.
std::string loops_svg(const ClusterSet& clusters);

/// Log-log scatter of (x, y) with the least-squares line and its slope
/// printed to three decimals. Non-positive points are skipped.
std::string scaling_plot_svg(const std::vector<double>& x, const std::vector<double>& y,
                             const std::string& title = "");

}  // namespace clem
