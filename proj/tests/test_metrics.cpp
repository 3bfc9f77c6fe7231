#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numeric>

#include "clem/metrics.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace clem;
using namespace clem::test;

namespace {

std::vector<int> all_vertices(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

bool close(double a, double b, double rel) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= rel * std::max(1.0, std::abs(b));
}

GasketGraph as_gasket(Graph g) {
  std::vector<int> mult(g.size(), 0);
  return gasket_from_graph(std::move(g), std::move(mult));
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("chemical distance basics") {
    auto g = make_gasket(3, path_edges(3));
    CHECK(chemical_distance(g, g.whole(), 1, 1) == 0.0);
    CHECK(chemical_distance(g, g.whole(), 0, 2) == 2.0);
    auto split = make_gasket(3, {{0, 1}});
    CHECK(std::isinf(chemical_distance(split, split.whole(), 0, 2)));
  }

  TEST_CASE("effective resistance fixtures") {
    auto edge = make_gasket(2, {{0, 1}});
    CHECK(effective_resistance(edge, edge.whole(), 0, 1) == doctest::Approx(1.0).epsilon(1e-9));
    auto path = make_gasket(3, path_edges(3));
    CHECK(effective_resistance(path, path.whole(), 0, 2) == doctest::Approx(2.0).epsilon(1e-9));
    auto tri = make_gasket(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(effective_resistance(tri, tri.whole(), 0, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    auto twin = make_gasket(2, {{0, 1}, {0, 1}});
    CHECK(effective_resistance(twin, twin.whole(), 0, 1) == doctest::Approx(0.5).epsilon(1e-9));
    auto split = make_gasket(3, {{0, 1}});
    CHECK(std::isinf(effective_resistance(split, split.whole(), 0, 2)));
  }

  TEST_CASE("tables agree with Floyd-Warshall and the pseudo-inverse") {
    CounterRng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
      Graph g = oracle::random_graph(rng, 50, 0.06);
      auto marked = all_vertices(g.size());
      auto chem = chemical_table(g, marked);
      auto res = resistance_table(g, marked);
      auto fw = oracle::floyd_warshall(g);
      auto pinv = oracle::pinv_resistance(g);
      for (std::size_t k = 0; k < chem.size(); ++k) {
        CHECK(chem[k] == fw[k]);
        CHECK(close(res[k], pinv[k], 1e-9));
      }
    }
  }

  TEST_CASE("conjugate gradients above the dense limit") {
    // 30 x 20 grid with a few diagonals: 600 vertices.
    const int w = 30, h = 20;
    Graph g;
    for (int j = 0; j < h; ++j) {
      for (int i = 0; i < w; ++i) g.add_vertex({static_cast<double>(i), static_cast<double>(j)});
    }
    for (int j = 0; j < h; ++j) {
      for (int i = 0; i < w; ++i) {
        int v = j * w + i;
        if (i + 1 < w) g.add_edge(v, v + 1);
        if (j + 1 < h) g.add_edge(v, v + w);
        if (i + 1 < w && j + 1 < h && (i + j) % 7 == 0) g.add_edge(v, v + w + 1);
      }
    }
    REQUIRE(g.size() > kDenseLimit);
    std::vector<int> marked{0, 17, 299, 450, 599};
    auto res = resistance_table(g, marked);
    auto pinv = oracle::pinv_resistance(g);
    for (std::size_t a = 0; a < marked.size(); ++a) {
      for (std::size_t b = 0; b < marked.size(); ++b) {
        double want = pinv[static_cast<std::size_t>(marked[a]) * g.size() + static_cast<std::size_t>(marked[b])];
        CHECK(close(res[a * marked.size() + b], want, 1e-9));
      }
    }
  }

  TEST_CASE("internal metric tables") {
    auto g = make_gasket(6, path_edges(6));
    auto single = internal_metric(g, g.whole(), MetricScheme::chemical(), {3});
    CHECK(single.size() == 1);
    CHECK(single(0, 0) == 0.0);

    auto chem = internal_metric(g, g.whole(), MetricScheme::chemical(), {0, 2, 5});
    std::vector<int> idx{0, 2, 5};
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) CHECK(chem(a, b) == std::abs(idx[a] - idx[b]));
    }

    auto fixture = make_gasket(6, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 3}, {1, 4}});
    auto res = internal_metric(fixture, fixture.whole(), MetricScheme::resistance(), all_vertices(6));
    auto pinv = oracle::pinv_resistance(fixture.graph);
    for (std::size_t a = 0; a < 6; ++a) {
      for (std::size_t b = 0; b < 6; ++b) CHECK(std::abs(res(a, b) - pinv[a * 6 + b]) <= 1e-9);
    }
  }

  TEST_CASE("restrict and compare") {
    // Path 0-1-2-3-4, dead end 5 hanging off 2, vertex 6 closing a shortcut 0-6-4.
    auto g = make_gasket(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {0, 6}, {6, 4}});
    Region v = make_region({0, 1, 2, 3, 4});
    for (auto scheme : {MetricScheme::chemical(), MetricScheme::resistance()}) {
      auto [a, b] = restrict_and_compare(g, v, v, scheme, 0, 4);
      CHECK(a == b);
      auto [c, d] = restrict_and_compare(g, v, make_region({0, 1, 2, 3, 4, 5}), scheme, 0, 4);
      CHECK(c == doctest::Approx(d).epsilon(1e-12));
    }
    auto [dv, dvp] = restrict_and_compare(g, v, make_region({0, 1, 2, 3, 4, 6}), MetricScheme::chemical(), 0, 4);
    CHECK(dv == 4.0);
    CHECK(dvp == 2.0);
    CHECK_THROWS(restrict_and_compare(g, make_region({0, 1, 5}), v, MetricScheme::chemical(), 0, 1));
  }

  TEST_CASE("Rayleigh monotonicity and resistance below chemical distance") {
    CounterRng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      int n = 5 + static_cast<int>(rng.below(36));
      Graph g = oracle::random_graph(rng, n, 0.15);
      auto marked = all_vertices(g.size());
      auto before = resistance_table(g, marked);
      auto chem = chemical_table(g, marked);
      for (std::size_t k = 0; k < before.size(); ++k) {
        if (std::isfinite(chem[k])) CHECK(before[k] <= chem[k] + 1e-9);
      }
      int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (a == b) continue;
      g.add_edge(a, b);
      auto after = resistance_table(g, marked);
      for (std::size_t k = 0; k < before.size(); ++k) CHECK(after[k] <= before[k] + 1e-9);
    }
  }

  TEST_CASE("series law through a cut vertex") {
    // Two triangles sharing vertex 2.
    auto g = as_gasket(make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}}));
    for (auto scheme : {MetricScheme::chemical(), MetricScheme::resistance()}) {
      auto m = internal_metric(g, g.whole(), scheme, {0, 2, 4});
      CHECK(m(0, 2) == doctest::Approx(m(0, 1) + m(1, 2)).epsilon(1e-12));
    }
  }

  TEST_CASE("scheme names round trip") {
    for (std::string name : {"chemical", "resistance"}) CHECK(MetricScheme::parse(name).name() == name);
    CHECK_THROWS_AS(MetricScheme::parse("bogus"), std::invalid_argument);
  }
}
