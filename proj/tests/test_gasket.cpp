#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <cmath>
#include <stdexcept>

#include "clem/gasket.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace clem;
using namespace clem::test;

namespace {

std::vector<int> sorted_sites(const GasketGraph& g, const Region& r) {
  std::vector<int> out;
  for (int v : r.vertices) out.push_back(g.sites[static_cast<std::size_t>(v)]);
  std::sort(out.begin(), out.end());
  return out;
}

// Interior (non-rim) loops of the fixture's gasket.
std::vector<int> hole_loops(const LatticeFixture& f) {
  std::vector<int> out;
  for (int id : f.clusters->cluster_loops[static_cast<std::size_t>(f.gasket.cluster)]) {
    if (!f.clusters->loops[static_cast<std::size_t>(id)].exterior) out.push_back(id);
  }
  return out;
}

int local_at(const LatticeFixture& f, Point2 p) {
  const TriDisk& d = *f.clusters->lattice;
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (distance(d.position(s), p) < 1e-9) return f.gasket.local(static_cast<int>(s));
  }
  return -1;
}

// Open strip sites (|x| <= 1 for the pocket, rows lo..hi) by geometry.
std::vector<int> strip_sites(const LatticeFixture& f, int row_lo, int row_hi, bool pocket) {
  const TriDisk& d = *f.clusters->lattice;
  const double h = std::sqrt(3.0) / 2.0;
  std::vector<int> out;
  for (std::size_t s = 0; s < d.size(); ++s) {
    Point2 p = d.position(s);
    double row = p.y / h;
    if (row < row_lo - 0.5 || row > row_hi + 0.5) continue;
    bool strip = std::abs(p.x) < 0.75 || (pocket && std::abs(row) < 0.5 && std::abs(p.x - 1.0) < 0.25);
    if (strip) out.push_back(static_cast<int>(s));
  }
  return out;
}

}  // namespace

TEST_SUITE("gasket") {
  TEST_CASE("single open site") {
    auto f = lattice_gasket(4, {{0, 0}});
    REQUIRE(f.gasket.size() == 1);
    CHECK(f.gasket.thin[0]);
    CHECK_FALSE(f.gasket.cut_vertices[0]);
  }

  TEST_CASE("open triangle has no cut vertices") {
    auto f = lattice_gasket(4, {{0, 0}, {1, 0}, {0, 1}});
    REQUIRE(f.gasket.size() == 3);
    CHECK(std::none_of(f.gasket.cut_vertices.begin(), f.gasket.cut_vertices.end(), [](bool b) { return b; }));
  }

  TEST_CASE("five-site path has its middle three as cut vertices") {
    auto f = lattice_gasket(6, {{-2, 0}, {-1, 0}, {0, 0}, {1, 0}, {2, 0}});
    REQUIRE(f.gasket.size() == 5);
    auto oracle_cut = oracle::articulation_by_removal(f.gasket.graph);
    CHECK(f.gasket.cut_vertices == oracle_cut);
    int cuts = static_cast<int>(std::count(oracle_cut.begin(), oracle_cut.end(), true));
    CHECK(cuts == 3);
  }

  TEST_CASE("cut vertices and thin flags on random clusters") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      auto config = sample(seed % 2 ? 16 : 24, 0.5, seed);
      auto cs = std::make_shared<const ClusterSet>(decompose(config));
      for (std::size_t id = 0; id < cs->cluster_count(); ++id) {
        auto g = build_gasket(cs, static_cast<int>(id));
        CHECK(g.cut_vertices == oracle::articulation_by_removal(g.graph));
        if (g.size() <= 200) {
          CHECK(thin_flags_by_blocks(g.graph, g.boundary_multiplicity) ==
                thin_flags_by_flow(g.graph, g.boundary_multiplicity));
        }
      }
    }
  }

  TEST_CASE("admissible distance graph") {
    auto g = make_gasket(5, path_edges(5));
    auto whole = admissible_distance_graph(g, g.whole());
    CHECK(whole.graph.size() == 5);
    CHECK(whole.graph.edge_count() == 4);

    auto cut = admissible_distance_graph(g, Region{{0, 1, 3, 4}, {}, {}});
    auto labels = connected_components(cut.graph);
    CHECK(labels[static_cast<std::size_t>(cut.from_parent[0])] != labels[static_cast<std::size_t>(cut.from_parent[4])]);

    auto single = admissible_distance_graph(g, Region{{2}, {}, {}});
    CHECK(single.graph.size() == 1);
    CHECK(single.graph.edge_count() == 0);
  }

  TEST_CASE("region between two holes along a straight strip") {
    auto f = lattice_gasket(10, two_hole_sites(10, false));
    auto holes = hole_loops(f);
    REQUIRE(holes.size() == 2);
    int x = local_at(f, {0.0, -std::sqrt(3.0)});
    int y = local_at(f, {0.0, std::sqrt(3.0)});
    auto contacts = contact_vertices(f.gasket, holes[0], holes[1]);
    CHECK(contacts.size() == 3);
    Region r = region_between(f.gasket, holes[0], holes[1], x, y);
    CHECK(sorted_sites(f.gasket, r) == strip_sites(f, -2, 2, false));
    CHECK(r.marked == std::vector<int>{x, y});
  }

  TEST_CASE("region between two holes with a pocket") {
    auto f = lattice_gasket(10, two_hole_sites(10, true));
    auto holes = hole_loops(f);
    REQUIRE(holes.size() == 2);
    auto contacts = contact_vertices(f.gasket, holes[0], holes[1]);
    REQUIRE(contacts.size() == 2);
    int x = local_at(f, {0.0, -std::sqrt(3.0)});
    int y = local_at(f, {0.0, std::sqrt(3.0)});
    CHECK(std::count(contacts.begin(), contacts.end(), x) == 1);
    CHECK(std::count(contacts.begin(), contacts.end(), y) == 1);
    Region r = region_between(f.gasket, holes[0], holes[1], x, y);
    CHECK(sorted_sites(f.gasket, r) == strip_sites(f, -2, 2, true));
  }

  TEST_CASE("region between a contact and itself") {
    auto f = lattice_gasket(10, two_hole_sites(10, true));
    auto holes = hole_loops(f);
    int x = local_at(f, {0.0, std::sqrt(3.0)});
    Region r = region_between(f.gasket, holes[0], holes[1], x, x);
    CHECK(r.vertices == std::vector<int>{x});
  }

  TEST_CASE("region between rejects non-contacts") {
    auto f = lattice_gasket(10, two_hole_sites(10, true));
    auto holes = hole_loops(f);
    int x = local_at(f, {0.0, std::sqrt(3.0)});
    int far = local_at(f, {8.0, 0.0});
    CHECK_THROWS_AS(region_between(f.gasket, holes[0], holes[1], x, far), std::invalid_argument);
  }

  TEST_CASE("separation points") {
    SUBCASE("path: one cut vertex") {
      auto g = make_gasket(5, path_edges(5));
      auto s = separation_points(g, g.whole(), 0, 4);
      CHECK(s.size == 1);
      REQUIRE(s.cut.size() == 1);
      CHECK((s.cut[0] >= 1 && s.cut[0] <= 3));
    }
    SUBCASE("two disjoint paths of length 3") {
      auto g = make_gasket(6, {{0, 1}, {1, 2}, {2, 5}, {0, 3}, {3, 4}, {4, 5}});
      auto s = separation_points(g, g.whole(), 0, 5);
      CHECK(s.size == 2);
      CHECK(s.cut.size() == 2);
      CHECK(vertex_disjoint_paths(g.graph, 0, 5) == 2);
    }
    SUBCASE("three disjoint paths") {
      auto g = make_gasket(5, {{0, 1}, {1, 4}, {0, 2}, {2, 4}, {0, 3}, {3, 4}, {1, 2}, {2, 3}});
      auto s = separation_points(g, g.whole(), 0, 4);
      CHECK(s.size == 3);
      std::vector<bool> removed(5, false);
      for (int z : s.cut) removed[static_cast<std::size_t>(z)] = true;
      auto labels = components_without(g.graph, removed);
      CHECK(labels[0] != labels[4]);
    }
    SUBCASE("adjacent endpoints have no finite cut") {
      auto g = make_gasket(3, {{0, 1}, {1, 2}, {0, 2}});
      CHECK(separation_points(g, g.whole(), 0, 1).size == kUnboundedCut);
    }
  }
}
