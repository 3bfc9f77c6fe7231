#pragma once
#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "clem/gasket.hpp"
#include "clem/graph.hpp"
#include "clem/lattice.hpp"
#include "clem/percolation.hpp"

namespace clem::test {

// Graph on `n` vertices placed at (i, 0) with the given edge list.
inline Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Point2> pos;
  for (int i = 0; i < n; ++i) pos.push_back({static_cast<double>(i), 0.0});
  Graph g(std::move(pos));
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline GasketGraph make_gasket(int n, const std::vector<std::pair<int, int>>& edges) {
  return gasket_from_graph(make_graph(n, edges), std::vector<int>(static_cast<std::size_t>(n), 0));
}

inline std::vector<std::pair<int, int>> path_edges(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return e;
}

// Sites of the radius-n disk whose position satisfies `open`.
template <class Pred>
std::vector<Axial> sites_where(int n, Pred open) {
  std::vector<Axial> out;
  auto disk = tri_disk(n);
  for (std::size_t i = 0; i < disk->size(); ++i) {
    if (open(disk->position(i))) out.push_back(disk->site(i));
  }
  return out;
}

// Open disk with two closed holes left and right of a thin vertical strip
// (|x| <= 0.5, rows -3..3). With `pocket` the site at (1, 0) stays open, so
// the strip bulges at row 0 and only rows -2 and 2 touch both holes.
inline std::vector<Axial> two_hole_sites(int n, bool pocket) {
  return sites_where(n, [pocket](Point2 p) {
    double row = p.y / (std::sqrt(3.0) / 2.0);
    bool in_band = std::abs(row) < 3.5 && std::abs(p.x) < 4.25;
    bool hole = in_band && std::abs(p.x) > 0.75;
    if (pocket && std::abs(row) < 0.5 && std::abs(p.x - 1.0) < 0.25) hole = false;
    return !hole;
  });
}

struct LatticeFixture {
  std::shared_ptr<const ClusterSet> clusters;
  GasketGraph gasket;
};

// Gasket of the cluster containing the first listed site.
inline LatticeFixture lattice_gasket(int n, const std::vector<Axial>& sites) {
  auto config = PercolationConfig::from_open_sites(n, sites);
  auto clusters = std::make_shared<const ClusterSet>(decompose(config));
  int site = config.lattice->index(sites.front());
  int id = clusters->labels[static_cast<std::size_t>(site)];
  return {clusters, build_gasket(clusters, id)};
}

}  // namespace clem::test
