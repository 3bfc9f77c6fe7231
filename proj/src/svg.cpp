#include "clem/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <sstream>

namespace clem {

namespace {

constexpr double kScale = 10.0;
constexpr double kMargin = 10.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

std::string header(double width, double height) {
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
    << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return s.str();
}

// Maps lattice coordinates into the canvas with y pointing up.
struct Frame {
  double radius;
  double size() const { return 2.0 * (radius + 1.0) * kScale + 2.0 * kMargin; }
  double x(double px) const { return kMargin + (px + radius + 1.0) * kScale; }
  double y(double py) const { return kMargin + (radius + 1.0 - py) * kScale; }
};

}  // namespace

std::string distance_color(int d, int d_max) {
  double t = d_max <= 0 ? 0.0 : static_cast<double>(d) / d_max;
  int hue = static_cast<int>(std::lround(240.0 * t));
  return "hsl(" + std::to_string(hue) + ",80%,50%)";
}

std::string perc_coloring_svg(const PercolationConfig& config) {
  const TriDisk& lat = *config.lattice;
  Frame f{static_cast<double>(lat.radius())};
  std::ostringstream s;
  s << header(f.size(), f.size());
  std::vector<int> dist(lat.size(), -1);
  std::vector<int> cluster_max(lat.size(), 0);
  std::vector<int> root(lat.size(), -1);
  for (std::size_t start = 0; start < lat.size(); ++start) {
    if (!config.is_open(static_cast<int>(start)) || dist[start] >= 0) continue;
    std::vector<int> members;
    std::queue<int> q;
    dist[start] = 0;
    q.push(static_cast<int>(start));
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      members.push_back(v);
      for (int k = 0; k < 6; ++k) {
        int w = lat.neighbor(static_cast<std::size_t>(v), k);
        if (config.is_open(w) && dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          q.push(w);
        }
      }
    }
    int m = 0;
    for (int v : members) m = std::max(m, dist[static_cast<std::size_t>(v)]);
    for (int v : members) cluster_max[static_cast<std::size_t>(v)] = m;
  }
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (!config.is_open(static_cast<int>(i))) continue;
    s << "<polygon points=\"";
    for (int k = 0; k < 6; ++k) {
      Point2 c = lat.corner(i, k);
      s << (k ? " " : "") << num(f.x(c.x)) << ',' << num(f.y(c.y));
    }
    s << "\" fill=\"" << distance_color(dist[i], cluster_max[i]) << "\" data-distance=\"" << dist[i] << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string loops_svg(const ClusterSet& clusters) {
  Frame f{static_cast<double>(clusters.lattice->radius())};
  std::ostringstream s;
  s << header(f.size(), f.size());
  for (const InterfaceLoop& loop : clusters.loops) {
    s << "<polygon points=\"";
    for (std::size_t k = 0; k < loop.polygon.size(); ++k) {
      s << (k ? " " : "") << num(f.x(loop.polygon[k].x)) << ',' << num(f.y(loop.polygon[k].y));
    }
    s << "\" fill=\"none\" stroke=\"" << (loop.exterior ? "black" : "grey") << "\" stroke-width=\"1\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string scaling_plot_svg(const std::vector<double>& x, const std::vector<double>& y, const std::string& title) {
  constexpr double kW = 400.0, kH = 300.0, kPad = 40.0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  std::ostringstream s;
  s << header(kW, kH);
  if (!title.empty()) s << "<text x=\"" << num(kPad) << "\" y=\"20\" font-size=\"12\">" << escape(title) << "</text>\n";
  if (lx.empty()) {
    s << "</svg>\n";
    return s.str();
  }
  auto [xmin, xmax] = std::minmax_element(lx.begin(), lx.end());
  auto [ymin, ymax] = std::minmax_element(ly.begin(), ly.end());
  double x0 = *xmin, x1 = *xmax, y0 = *ymin, y1 = *ymax;
  if (x1 - x0 < 1e-12) { x0 -= 1.0; x1 += 1.0; }
  if (y1 - y0 < 1e-12) { y0 -= 1.0; y1 += 1.0; }
  auto px = [&](double v) { return kPad + (v - x0) / (x1 - x0) * (kW - 2 * kPad); };
  auto py = [&](double v) { return kH - kPad - (v - y0) / (y1 - y0) * (kH - 2 * kPad); };
  s << "<line x1=\"" << num(kPad) << "\" y1=\"" << num(kH - kPad) << "\" x2=\"" << num(kW - kPad) << "\" y2=\""
    << num(kH - kPad) << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << num(kPad) << "\" y1=\"" << num(kPad) << "\" x2=\"" << num(kPad) << "\" y2=\""
    << num(kH - kPad) << "\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < lx.size(); ++i) {
    s << "<circle cx=\"" << num(px(lx[i])) << "\" cy=\"" << num(py(ly[i])) << "\" r=\"3\" fill=\"black\"/>\n";
  }
  if (lx.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) { mx += lx[i]; my += ly[i]; }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(ly.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    double icpt = my - slope * mx;
    s << "<line x1=\"" << num(px(x0)) << "\" y1=\"" << num(py(icpt + slope * x0)) << "\" x2=\"" << num(px(x1))
      << "\" y2=\"" << num(py(icpt + slope * x1)) << "\" stroke=\"red\"/>\n";
    s << "<text x=\"" << num(kW - 150) << "\" y=\"" << num(kPad) << "\" font-size=\"12\">slope = " << num(slope)
      << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace clem
