#include <doctest.h>

#include <cmath>

#include "clem/normalization.hpp"
#include "fixtures.hpp"

using namespace clem;
using namespace clem::test;

namespace {

// Open disk of radius 16 with two closed holes (|p| < 13) either side of the
// strip |x| < 0.75: exactly one quadruple, running along the strip.
std::shared_ptr<const ClusterSet> strip_fixture() {
  auto sites = sites_where(16, [](Point2 p) { return !(norm(p) < 13.0 && std::abs(p.x) > 0.75); });
  return std::make_shared<const ClusterSet>(decompose(PercolationConfig::from_open_sites(16, sites)));
}

double row_of(const GasketGraph& g, int v) {
  return g.graph.position(v).y / (std::sqrt(3.0) / 2.0);
}

}  // namespace

TEST_SUITE("normalization") {
  TEST_CASE("type-7 quantiles") {
    std::vector<double> v{1, 2, 3, 4, 5};
    CHECK(quantile_type7(v, 0.5) == 3.0);
    CHECK(quantile_type7(v, 0.2) == doctest::Approx(1.8));
    CHECK(quantile_type7(v, 0.0) == 1.0);
    CHECK(quantile_type7(v, 1.0) == 5.0);
    auto e = estimate_from_values({5, 3, 1, 4, 2});
    CHECK(e.median == 3.0);
    CHECK(e.quantile(0.2) == doctest::Approx(1.8));
    for (std::size_t i = 0; i + 1 < e.quantiles.size(); ++i) CHECK(e.quantiles[i] <= e.quantiles[i + 1]);
    for (std::size_t i = 0; i < e.quantiles.size(); ++i) {
      CHECK(e.ci_lo[i] <= e.quantiles[i]);
      CHECK(e.quantiles[i] <= e.ci_hi[i]);
    }
  }

  TEST_CASE("single value and duplication") {
    auto one = estimate_from_values({2.5});
    CHECK(one.median == 2.5);
    for (std::size_t i = 0; i < one.quantiles.size(); ++i) {
      CHECK(one.quantiles[i] == 2.5);
      CHECK(one.ci_hi[i] - one.ci_lo[i] == 0.0);
    }
    std::vector<double> v{0.3, 1.7, 2.2, 9.0, 4.4};
    std::vector<double> twice = v;
    twice.insert(twice.end(), v.begin(), v.end());
    CHECK(estimate_from_values(v).median == estimate_from_values(twice).median);
    CHECK_THROWS(estimate_from_values({}));
  }

  TEST_CASE("scaling fit") {
    std::vector<double> h{1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64};
    std::vector<double> inverse, flat;
    for (double x : h) {
      inverse.push_back(1.0 / x);
      flat.push_back(2.0);
    }
    auto fit = scaling_fit(h, inverse);
    CHECK(fit.slope == doctest::Approx(1.0));
    CHECK(fit.window_lo == doctest::Approx(0.45));
    CHECK(fit.window_hi == doctest::Approx(4.0 / 3.0 + 0.3));
    CHECK(fit.pass);
    auto constant = scaling_fit(h, flat);
    CHECK(constant.slope == doctest::Approx(0.0));
    CHECK_FALSE(constant.pass);
    CHECK_THROWS(scaling_fit({0.1, 0.2}, {1.0, 2.0}));
  }

  TEST_CASE("quantile comparability") {
    auto e = estimate_from_values({1, 2, 3, 4, 5, 6, 7, 8});
    auto same = quantile_comparability({e, e, e});
    for (double r : same.ratios) CHECK(r == doctest::Approx(same.ratios.front()));
    CHECK(same.max_step_factor == doctest::Approx(1.0));
    CHECK(same.pass);
    auto unit = quantile_comparability({e, e}, 0.5, 0.5);
    for (double r : unit.ratios) CHECK(r == 1.0);
  }

  TEST_CASE("no crossings without open sites") {
    CHECK(harvest_crossings(24, 0.0, 5, 1).empty());
  }

  TEST_CASE("hand-built configuration with one quadruple") {
    auto cs = strip_fixture();
    auto found = crossings_in(cs, 16);
    REQUIRE(found.size() == 1);
    REQUIRE(found[0].quadruples.size() == 1);
    const Quadruple& q = found[0].quadruples[0];
    auto cluster = cs->outermost_surrounding({0, 0});
    REQUIRE(cluster);
    GasketGraph g = build_gasket(cs, *cluster);
    CHECK(std::abs(row_of(g, q.x_prime)) == doctest::Approx(10.0));
    CHECK(std::abs(row_of(g, q.y_prime)) == doctest::Approx(10.0));
    CHECK(row_of(g, q.x_prime) == doctest::Approx(-row_of(g, q.y_prime)));
    CHECK(std::abs(row_of(g, q.x)) == doctest::Approx(4.0));
    CHECK(row_of(g, q.x) == doctest::Approx(-row_of(g, q.y)));
    // The region is the strip between rows -10 and 10: 11 single sites and 10 pairs.
    CHECK(q.region->size() == 31);
    CHECK(instance_value(found[0], MetricScheme::chemical()) == 8.0);

    auto est = estimate_m(found, MetricScheme::chemical());
    CHECK(est.median == 8.0);
    CHECK(est.sample_count == 1);
  }

  TEST_CASE("crossing events occur at a comparable rate across sizes") {
    const std::size_t trials = 300;
    double p32 = static_cast<double>(harvest_crossings(32, 0.5, trials, 4).size()) / trials;
    double p64 = static_cast<double>(harvest_crossings(64, 0.5, trials, 5).size()) / trials;
    MESSAGE("event rates: n=32 ", p32, ", n=64 ", p64);
    CHECK(p32 > 0.0);
    CHECK(p64 > 0.0);
    double sigma = std::sqrt(p32 * (1 - p32) / trials + p64 * (1 - p64) / trials);
    CHECK(std::abs(p32 - p64) <= 3.0 * sigma);
  }
}
