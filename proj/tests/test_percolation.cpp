#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "clem/percolation.hpp"
#include "fixtures.hpp"

using namespace clem;

namespace {

// Independent breadth-first flood fill over open sites.
std::vector<int> flood_labels(const PercolationConfig& c) {
  const TriDisk& d = *c.lattice;
  std::vector<int> label(d.size(), -1);
  int next = 0;
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (!c.is_open(static_cast<int>(s)) || label[s] >= 0) continue;
    std::deque<std::size_t> q{s};
    label[s] = next;
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop_front();
      for (int k = 0; k < 6; ++k) {
        int w = d.neighbor(v, k);
        if (w >= 0 && c.is_open(w) && label[static_cast<std::size_t>(w)] < 0) {
          label[static_cast<std::size_t>(w)] = next;
          q.push_back(static_cast<std::size_t>(w));
        }
      }
    }
    ++next;
  }
  return label;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  std::set<std::pair<int, int>> pairs;
  std::set<int> la, lb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] < 0) != (b[i] < 0)) return false;
    if (a[i] < 0) continue;
    pairs.emplace(a[i], b[i]);
    la.insert(a[i]);
    lb.insert(b[i]);
  }
  return pairs.size() == la.size() && pairs.size() == lb.size();
}

}  // namespace

TEST_SUITE("percolation") {
  TEST_CASE("p = 1 opens everything into one cluster") {
    auto c = sample(12, 1.0, 3);
    CHECK(std::all_of(c.open.begin(), c.open.end(), [](auto o) { return o == 1; }));
    CHECK(decompose(c).cluster_count() == 1);
  }

  TEST_CASE("p = 0 has no clusters") {
    auto c = sample(12, 0.0, 3);
    CHECK(std::none_of(c.open.begin(), c.open.end(), [](auto o) { return o == 1; }));
    auto cs = decompose(c);
    CHECK(cs.cluster_count() == 0);
    CHECK(cs.loops.empty());
  }

  TEST_CASE("sampling is deterministic per seed") {
    CHECK(sample(32, 0.5, 1).open == sample(32, 0.5, 1).open);
    CHECK(sample(32, 0.5, 1).open != sample(32, 0.5, 2).open);
  }

  TEST_CASE("single site has a hexagonal exterior loop") {
    auto cs = decompose(PercolationConfig::from_open_sites(4, {{0, 0}}));
    REQUIRE(cs.cluster_count() == 1);
    const auto& loop = cs.loops[static_cast<std::size_t>(cs.exterior_loop[0])];
    CHECK(loop.edges.size() == 6);
    CHECK(loop.exterior);
    CHECK(loop.area > 0.0);
  }

  TEST_CASE("two adjacent sites have an exterior loop of 10 dual edges") {
    auto cs = decompose(PercolationConfig::from_open_sites(4, {{0, 0}, {1, 0}}));
    REQUIRE(cs.cluster_count() == 1);
    CHECK(cs.loops[static_cast<std::size_t>(cs.exterior_loop[0])].edges.size() == 10);
    CHECK(cs.loops.size() == 1);
  }

  TEST_CASE("labels agree with a flood fill and every interface edge lies on one loop") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      auto c = sample(16, 0.5, seed);
      auto cs = decompose(c);
      CHECK(same_partition(cs.labels, flood_labels(c)));

      std::set<std::pair<int, int>> on_loops;
      std::size_t total = 0;
      for (const auto& loop : cs.loops) {
        for (const auto& e : loop.edges) on_loops.emplace(e.site, e.dir);
        total += loop.edges.size();
      }
      std::size_t interface = 0;
      for (std::size_t s = 0; s < c.open.size(); ++s) {
        if (!c.open[s]) continue;
        for (int k = 0; k < 6; ++k) {
          if (!c.is_open(c.lattice->neighbor(s, k))) {
            ++interface;
            CHECK(on_loops.count({static_cast<int>(s), k}) == 1);
          }
        }
      }
      CHECK(total == interface);
      CHECK(on_loops.size() == interface);
    }
  }

  TEST_CASE("decompose is deterministic") {
    auto a = decompose(sample(20, 0.5, 9));
    auto b = decompose(sample(20, 0.5, 9));
    CHECK(a.labels == b.labels);
    REQUIRE(a.loops.size() == b.loops.size());
    for (std::size_t i = 0; i < a.loops.size(); ++i) CHECK(a.loops[i].edges == b.loops[i].edges);
  }

  TEST_CASE("crossing probability extremes") {
    CHECK(crossing_probability(16, 1.0, 20, 1) == 1.0);
    CHECK(crossing_probability(16, 0.0, 20, 1) == 0.0);
  }

  TEST_CASE("crossing probability at criticality is one half within 4 sigma") {
    const int trials = 2000;
    const double four_sigma = 4.0 * std::sqrt(0.25 / trials);
    for (int n : {16, 32}) {
      double p = crossing_probability(n, 0.5, trials, 11);
      CHECK(std::abs(p - 0.5) <= four_sigma);
    }
  }

  TEST_CASE("four crossing rate") {
    CHECK(four_crossing_rate(32, 0.0, 4.0, 16.0, 50, 1) == 0.0);
    CHECK(four_crossing_rate(64, 0.5, 31.0, 32.0, 200, 1) > 0.0);
  }

  TEST_CASE("annulus crossings of a square") {
    std::vector<Point2> square{{-10, -10}, {10, -10}, {10, 10}, {-10, 10}};
    CHECK(annulus_crossings(square, {0, 0}, 1.0, 2.0) == 0);
    // A thin spike from the square's edge into the inner disk crosses twice more.
    std::vector<Point2> spike{{-10, -10}, {-0.1, -10}, {0, 0}, {0.1, -10}, {10, -10}, {10, 10}, {-10, 10}};
    CHECK(annulus_crossings(spike, {0, 0}, 1.0, 5.0) == 2);
  }

  TEST_CASE("wired boundary opens the outer ring") {
    auto c = sample(10, 0.0, 1);
    wire_boundary(c);
    auto cs = decompose(c);
    CHECK(cs.cluster_count() == 1);
    for (std::size_t s = 0; s < c.lattice->size(); ++s) {
      bool rim = false;
      for (int k = 0; k < 6; ++k) rim = rim || c.lattice->neighbor(s, k) < 0;
      CHECK(c.is_open(static_cast<int>(s)) == rim);
    }
  }
}
