#include <doctest.h>

#include <cmath>
#include <functional>

#include "clem/axioms.hpp"
#include "fixtures.hpp"

using namespace clem;
using namespace clem::test;

namespace {

constexpr AxiomScale kNoScale{0.0, 1.0};

// Theta graph: x = 0 joined to y = 10 through three arms x - p - q - a - y.
GasketGraph long_theta() {
  std::vector<std::pair<int, int>> e;
  for (int arm = 0; arm < 3; ++arm) {
    int p = 1 + 3 * arm, q = p + 1, a = p + 2;
    e.insert(e.end(), {{0, p}, {p, q}, {q, a}, {a, 10}});
  }
  return make_gasket(11, e);
}

// Minimum chain cost below `bound` over chains of at most `max_len` vertices,
// by enumeration; infinity when no chain beats the bound.
double brute_shortcut(const std::vector<double>& base, const std::vector<double>& dp, std::size_t n,
                      const ShortcutParams& p, std::size_t i, std::size_t j, int max_len, double bound) {
  double best = bound;
  bool found = false;
  std::function<void(std::size_t, double, int)> walk = [&](std::size_t u, double cost, int len) {
    if (cost >= best) return;
    if (u == j) {
      best = cost;
      found = true;
      return;
    }
    if (len == max_len) return;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == u) continue;
      double c = dp[u * n + v] < p.eps ? p.a_eps : base[u * n + v];
      walk(v, cost + c, len + 1);
    }
  };
  walk(i, 0.0, 1);
  return found ? best : INFINITY;
}

}  // namespace

TEST_SUITE("axioms") {
  TEST_CASE("series law on a chain") {
    auto g = make_gasket(3, path_edges(3));
    auto r = check_series(MetricScheme::chemical(), g, g.whole(), 0, 2, 1, 1, kNoScale);
    CHECK(r.outcome == Outcome::pass);
    CHECK(r.detail.lhs == 2.0);
    CHECK(r.detail.rhs == 2.0);
  }

  TEST_CASE("series law on a dumbbell") {
    // Triangles {0,1,2} and {4,5,6} joined by the bridge 2 - 3 - 4.
    auto g = make_gasket(7, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 4}});
    auto m = internal_metric(g, g.whole(), MetricScheme::resistance(), {0, 2, 4, 6});
    CHECK(m(0, 3) == doctest::Approx(m(0, 1) + m(1, 2) + m(2, 3)).epsilon(1e-12));
    CHECK(m(0, 3) == doctest::Approx(2.0 / 3.0 + 2.0 + 2.0 / 3.0).epsilon(1e-12));
    auto r = check_series(MetricScheme::resistance(), g, g.whole(), 0, 6, 2, 4, kNoScale);
    CHECK(r.outcome == Outcome::pass);
  }

  TEST_CASE("series law skips without a separator") {
    auto g = make_gasket(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(check_series(MetricScheme::chemical(), g, g.whole(), 0, 1, 2, 2, kNoScale).outcome == Outcome::skip);
  }

  TEST_CASE("parallel law") {
    SUBCASE("one cut vertex, chemical") {
      auto g = make_gasket(3, path_edges(3));
      auto r = check_parallel(MetricScheme::chemical(), g, g.whole(), 0, 2, {1}, g.whole(), 1.0, kNoScale);
      CHECK(r.outcome == Outcome::pass);
    }
    SUBCASE("two parallel paths, resistance") {
      auto g = make_gasket(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});
      auto r = check_parallel(MetricScheme::resistance(), g, g.whole(), 0, 3, {1, 2}, g.whole(), 2.0, kNoScale);
      CHECK(r.outcome == Outcome::pass);
      CHECK(r.detail.lhs == doctest::Approx(2.0));
      CHECK(r.detail.rhs == doctest::Approx(0.75));
    }
    SUBCASE("theta graph, resistance") {
      auto g = long_theta();
      Region vx = make_region({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
      std::vector<int> cut{3, 6, 9};
      auto ok = check_parallel(MetricScheme::resistance(), g, g.whole(), 0, 10, cut, vx, 3.0, kNoScale);
      CHECK(ok.outcome == Outcome::pass);
      auto bad = check_parallel(MetricScheme::resistance(), g, g.whole(), 0, 10, cut, vx, 2.0, kNoScale);
      REQUIRE(bad.outcome == Outcome::fail);
      CHECK(bad.detail.lhs == doctest::Approx(8.0 / 3.0));
      CHECK(bad.detail.rhs == doctest::Approx(3.0));
      CHECK(bad.detail.slack < 0.0);
      CHECK(bad.detail.witness == std::vector<int>{0, 10, 3, 6, 9});

      AxiomReport report;
      report.axiom = Axiom::parallel;
      report.add(ok, 0);
      report.add(bad, 1);
      CHECK(report.instances_tested == 2);
      REQUIRE(report.violations.size() == 1);
      CHECK(report.violations[0].instance == 1);
      CHECK_FALSE(report.pass());
    }
  }

  TEST_CASE("compatibility and monotonicity") {
    // Path 0..4, dead end 5 off vertex 2, shortcut vertex 6 joining 0 and 4.
    auto g = make_gasket(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {0, 6}, {6, 4}});
    Region v = make_region({0, 1, 2, 3, 4});
    for (auto scheme : {MetricScheme::chemical(), MetricScheme::resistance()}) {
      auto dead = check_compat_mono(scheme, g, v, make_region({0, 1, 2, 3, 4, 5}), 0, 4, kNoScale);
      CHECK(dead.compatibility.outcome == Outcome::pass);
      CHECK(dead.monotonicity_i.outcome == Outcome::pass);
      CHECK(dead.monotonicity_ii.outcome == Outcome::pass);
      CHECK(check_separability(scheme, g, v, make_region({0, 1, 2, 3, 4, 5}), 0, 4).outcome == Outcome::pass);

      auto same = check_compat_mono(scheme, g, v, v, 0, 4, kNoScale);
      CHECK(same.compatibility.outcome == Outcome::pass);
      CHECK(same.monotonicity_ii.outcome == Outcome::pass);
    }
    auto shortcut = check_compat_mono(MetricScheme::chemical(), g, v, make_region({0, 1, 2, 3, 4, 6}), 0, 4, kNoScale);
    CHECK(shortcut.compatibility.outcome == Outcome::skip);
    CHECK(shortcut.monotonicity_ii.outcome == Outcome::skip);
  }

  TEST_CASE("simple path vertices") {
    auto g = make_gasket(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {0, 6}, {6, 4}});
    CHECK(simple_path_vertices(g, g.whole(), 0, 4) == std::vector<int>{0, 1, 2, 3, 4, 6});
  }

  TEST_CASE("symmetry and triangle on internal metrics") {
    auto g = make_gasket(6, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 3}, {1, 4}});
    for (auto scheme : {MetricScheme::chemical(), MetricScheme::resistance()}) {
      auto m = internal_metric(g, g.whole(), scheme, {0, 1, 2, 3, 4, 5});
      CHECK(check_symmetry(m).outcome == Outcome::pass);
      CHECK(check_triangle(m).outcome == Outcome::pass);
    }
    InternalMetric broken;
    broken.marked = {0, 1, 2};
    broken.values = {0, 1, 5, 1, 0, 1, 5, 1, 0};
    CHECK(check_triangle(broken).outcome == Outcome::fail);
    broken.values[1] = 2;
    CHECK(check_symmetry(broken).outcome == Outcome::fail);
  }

  TEST_CASE("shortcut metric") {
    const std::size_t n = 3;
    std::vector<double> base{0, 2, 4, 2, 0, 2, 4, 2, 0};
    std::vector<double> dp{0, 0.1, 0.2, 0.1, 0, 0.1, 0.2, 0.1, 0};
    ShortcutParams near{0.5, 0.3, 6};
    CHECK(shortcut_metric(base, dp, n, near, 0, 2) <= near.a_eps);
    ShortcutParams fine{0.05, 0.3, 6};
    CHECK(shortcut_metric(base, dp, n, fine, 0, 2) == 4.0);

    CounterRng rng(17);
    for (int trial = 0; trial < 5; ++trial) {
      const std::size_t m = 30;
      std::vector<Point2> pts;
      for (std::size_t i = 0; i < m; ++i) pts.push_back({rng.uniform(), rng.uniform()});
      std::vector<double> b(m * m), d(m * m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          b[i * m + j] = 2.0 * distance(pts[i], pts[j]);
          d[i * m + j] = distance(pts[i], pts[j]);
        }
      }
      ShortcutParams p{0.5, 0.1, 6};
      for (std::size_t j : {std::size_t{1}, std::size_t{7}, std::size_t{29}}) {
        double got = shortcut_metric(b, d, m, p, 0, j);
        CHECK(got == doctest::Approx(brute_shortcut(b, d, m, p, 0, j, 6, got + 1e-9)));
        CHECK(got <= b[j] + 1e-12);
        CHECK(got == doctest::Approx(shortcut_metric(b, d, m, p, j, 0)));
        CHECK(got <= shortcut_metric(b, d, m, p, 0, 5) + shortcut_metric(b, d, m, p, 5, j) + 1e-12);
      }
    }
  }

  TEST_CASE("small harness runs are clean") {
    HarnessConfig chem;
    chem.n_max = 24;
    chem.trials = 40;
    chem.seed = 3;
    for (const auto& r : run_axiom_harness(chem)) {
      CAPTURE(axiom_name(r.axiom));
      CHECK(r.violations.empty());
    }
    HarnessConfig res = chem;
    res.scheme = MetricScheme::resistance();
    for (const auto& r : run_axiom_harness(res)) {
      CAPTURE(axiom_name(r.axiom));
      if (r.axiom == Axiom::series || r.axiom == Axiom::parallel || r.axiom == Axiom::symmetry) {
        CHECK(r.violations.empty());
      }
    }
  }

  TEST_CASE("harness is deterministic") {
    HarnessConfig c;
    c.n_max = 16;
    c.trials = 10;
    c.seed = 9;
    auto a = run_axiom_harness(c);
    auto b = run_axiom_harness(c);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].instances_tested == b[i].instances_tested);
      CHECK(a[i].skipped == b[i].skipped);
    }
  }

  TEST_CASE("Kolmogorov-Smirnov statistic") {
    auto same = ks_two_sample({1, 2, 3, 4}, {1, 2, 3, 4});
    CHECK(same.statistic == 0.0);
    CHECK(same.p_value == 1.0);
    auto apart = ks_two_sample({1, 2, 3}, {10, 11, 12});
    CHECK(apart.statistic == 1.0);
    CHECK(apart.p_value < 0.2);
  }
}
