#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "clem/ghf.hpp"
#include "clem/rng.hpp"
#include "oracles.hpp"

using namespace clem;

namespace {

MarkedMetricSpace random_space(CounterRng& rng, std::size_t max_points) {
  std::size_t n = 1 + rng.below(max_points);
  // Distinct points of a coarse grid make isometries and ties likely.
  std::vector<Point2> grid;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) grid.push_back({static_cast<double>(i), static_cast<double>(j)});
  }
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = rng.below(grid.size());
    pts.push_back(grid[k]);
    grid.erase(grid.begin() + static_cast<long>(k));
  }
  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = distance(pts[i], pts[j]);
  }
  std::vector<int> marked;
  std::vector<double> values;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform() < 0.5) {
      marked.push_back(static_cast<int>(i));
      values.push_back(static_cast<double>(rng.below(3)));
    }
  }
  return MarkedMetricSpace::make(n, std::move(dist), std::move(marked), std::move(values));
}

}  // namespace

TEST_SUITE("ghf") {
  TEST_CASE("sup distance between marked sets") {
    std::vector<double> w{0, 1, 1, 0};
    CHECK(d_infty(w, 2, {0}, {2.0}, {0}, {2.0}) == 0.0);
    CHECK(d_infty(w, 2, {0, 1}, {1.0, 4.0}, {0, 1}, {1.5, 4.5}) == doctest::Approx(0.5));
    CHECK(d_infty(w, 2, {0}, {7.0}, {1}, {7.0}) == 1.0);
  }

  TEST_CASE("exact distance examples") {
    auto a = MarkedMetricSpace::on_line({0.0, 1.0, 3.0});
    CHECK(ghf_distance_exact(a, a) == 0.0);

    auto one = MarkedMetricSpace::on_line({0.0});
    auto two = MarkedMetricSpace::on_line({0.0, 2.0});
    CHECK(ghf_distance_exact(one, two) == doctest::Approx(1.0));

    auto y1 = MarkedMetricSpace::on_line({0.0}, {0}, {1.5});
    auto y2 = MarkedMetricSpace::on_line({0.0}, {0}, {-2.0});
    CHECK(ghf_distance_exact(y1, y2) == doctest::Approx(3.5));

    auto shifted = MarkedMetricSpace::on_line({0.0, 1.0, 3.0}, {0, 2}, {1.0, 2.0});
    auto base = MarkedMetricSpace::on_line({0.0, 1.0, 3.0}, {0, 2}, {0.0, 1.0});
    CHECK(ghf_distance_exact(base, shifted) == doctest::Approx(1.0));
  }

  TEST_CASE("exact mode size limit") {
    std::vector<double> pts(6, 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = static_cast<double>(i);
    auto a = MarkedMetricSpace::on_line(pts);
    CHECK_THROWS_AS(ghf_distance_exact(a, a), std::length_error);
    auto b = ghf_distance_bounds(a, a);
    CHECK(b.lower == 0.0);
    CHECK(b.upper == 0.0);
  }

  TEST_CASE("exact value matches brute force and is a pseudometric") {
    CounterRng rng(23);
    std::vector<MarkedMetricSpace> spaces;
    for (int i = 0; i < 12; ++i) spaces.push_back(random_space(rng, 4));
    std::vector<double> d(spaces.size() * spaces.size());
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      for (std::size_t j = 0; j < spaces.size(); ++j) {
        double v = ghf_distance_exact(spaces[i], spaces[j]);
        d[i * spaces.size() + j] = v;
        double brute = oracle::ghf_brute_force(spaces[i], spaces[j]);
        if (std::isinf(brute)) {
          CHECK(std::isinf(v));
        } else {
          CHECK(v == doctest::Approx(brute));
        }
        CHECK((v < 1e-12) == oracle::mark_matching_isometry(spaces[i], spaces[j]));
      }
    }
    const std::size_t n = spaces.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(d[i * n + j] == d[j * n + i]);
        for (std::size_t k = 0; k < n; ++k) CHECK(d[i * n + k] <= d[i * n + j] + d[j * n + k] + 1e-12);
      }
    }
  }

  TEST_CASE("bounds bracket the exact value") {
    CounterRng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
      auto a = random_space(rng, 5);
      auto b = random_space(rng, 5);
      double exact = ghf_distance_exact(a, b);
      auto bounds = ghf_distance_bounds(a, b);
      CHECK(bounds.lower <= exact + 1e-12);
      CHECK(exact <= bounds.upper + 1e-12);
    }
    auto small = MarkedMetricSpace::on_line({0.0, 1.0});
    auto large = MarkedMetricSpace::on_line({0.0, 3.0});
    CHECK(ghf_distance_bounds(small, large).lower >= 1.0);
  }

  TEST_CASE("correspondence values") {
    auto a = MarkedMetricSpace::on_line({0.0, 1.0}, {0}, {0.0});
    auto b = MarkedMetricSpace::on_line({0.0, 2.0}, {1}, {0.5});
    CHECK(distortion(a, b, {{0, 0}, {1, 1}}) == 1.0);
    CHECK(std::isinf(mark_mismatch(a, b, {{0, 0}, {1, 1}})));
    CHECK(mark_mismatch(a, b, {{0, 1}, {1, 0}}) == 0.5);
    CHECK(correspondence_value(a, b, {{0, 1}, {1, 0}}) == doctest::Approx(1.0));
    CHECK_THROWS(correspondence_value(a, b, {{0, 0}}));
    auto glued = glued_metric(a, b, {{0, 1}, {1, 0}});
    CHECK(glued.size() == 16);
  }

  TEST_CASE("Hoelder membership") {
    auto constant = MarkedMetricSpace::on_line({0.0, 0.5, 2.0}, {0, 1, 2}, {0.7, 0.7, 0.7});
    CHECK(hoelder_membership(constant, {1.0, 0.7, 0.0}).member());
    CHECK_FALSE(hoelder_membership(constant, {1.0, 0.5, 0.0}).member());

    auto identity = MarkedMetricSpace::on_line({0.0, 0.3, 0.7, 1.0}, {0, 1, 2, 3}, {0.0, 0.3, 0.7, 1.0});
    CHECK(hoelder_membership(identity, {1.0, 1.0, 0.0}).member());

    auto jump = MarkedMetricSpace::on_line({0.0, 0.1}, {0, 1}, {0.0, 10.0});
    auto strict = hoelder_membership(jump, {1.0, 1.0, 0.0});
    CHECK_FALSE(strict.increments);
    CHECK_FALSE(strict.member());
    // A coarse scale r absorbs the jump, but the value bound still fails.
    auto coarse = hoelder_membership(jump, {1.0, 1.0, 10.0});
    CHECK(coarse.increments);
    CHECK_FALSE(coarse.value_bound);
    CHECK(hoelder_membership(jump, {1.0, 10.0, 10.0}).member());
  }

  TEST_CASE("convergence probe") {
    auto s = MarkedMetricSpace::on_line({0.0, 1.0, 2.5}, {1}, {0.3});
    auto constant = sequence_convergence_probe({s, s, s, s});
    for (double v : constant.pairwise) CHECK(v == 0.0);
    CHECK(constant.cauchy);

    std::vector<MarkedMetricSpace> scaled;
    for (double f : {1.0, 0.5, 0.25}) scaled.push_back(MarkedMetricSpace::on_line({0.0, f}));
    auto probe = sequence_convergence_probe(scaled);
    std::vector<double> diam{1.0, 0.5, 0.25};
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(probe.exact[i * 3 + j]);
        CHECK(probe.pairwise[i * 3 + j] == doctest::Approx(std::abs(diam[i] - diam[j]) / 2.0));
      }
    }
    CHECK_THROWS(sequence_convergence_probe({s, s}));
  }

  TEST_CASE("equicontinuous family has a Cauchy tail") {
    // Samples of t -> t^2 on [0,1] at dyadic grids.
    std::vector<MarkedMetricSpace> family;
    for (int k : {1, 2, 4, 8, 16, 32}) {
      std::vector<double> pts;
      std::vector<int> marked;
      std::vector<double> values;
      for (int i = 0; i <= k; ++i) {
        double t = static_cast<double>(i) / k;
        pts.push_back(t);
        marked.push_back(i);
        values.push_back(t * t);
      }
      family.push_back(MarkedMetricSpace::on_line(pts, marked, values));
    }
    auto probe = sequence_convergence_probe(family);
    MESSAGE("tail sup: ", probe.tail_sup.front(), " -> ", probe.tail_sup.back());
    CHECK(probe.cauchy);
  }

  TEST_CASE("space validation") {
    CHECK_THROWS(MarkedMetricSpace::make(2, {0, 1, 2, 0}));
    CHECK_THROWS(MarkedMetricSpace::make(2, {0, 1, 1, 0}, {5}, {0.0}));
  }
}
