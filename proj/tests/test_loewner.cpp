#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "clem/loewner.hpp"

using namespace clem;

namespace {

// Smallest imaginary part over trace samples with t >= t_min.
double min_height(const SleTrace& tr, double t_min) {
  double best = INFINITY;
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    if (tr.times[k] >= t_min) best = std::min(best, tr.points[k].imag());
  }
  return best;
}

}  // namespace

TEST_SUITE("loewner") {
  TEST_CASE("zero driver values") {
    auto d = sample_driver(DriverSpec::zero(), 1.0, 1e-3);
    CHECK(d.steps() == 1000);
    CHECK(std::all_of(d.values.begin(), d.values.end(), [](double w) { return w == 0.0; }));
  }

  TEST_CASE("zero driver tip follows the slit") {
    auto d = sample_driver(DriverSpec::zero(), 1.0, 1e-4);
    auto tr = trace(d, 2500);
    REQUIRE(tr.points.size() == 5);
    CHECK(std::abs(tr.points.back() - std::complex<double>(0.0, 2.0)) <= 0.02);
    CHECK(std::abs(tr.points[1] - std::complex<double>(0.0, 1.0)) <= 0.02);
    // sqrt(t) scaling between t = 0.25 and t = 1
    CHECK(std::abs(tr.points[1] - 0.5 * tr.points.back()) <= 0.01);
  }

  TEST_CASE("seeded driver is deterministic") {
    auto a = sample_driver(DriverSpec::sle(8.0 / 3.0, 7), 1.0, 1e-3);
    auto b = sample_driver(DriverSpec::sle(8.0 / 3.0, 7), 1.0, 1e-3);
    CHECK(a.values == b.values);
    auto c = sample_driver(DriverSpec::sle(8.0 / 3.0, 8), 1.0, 1e-3);
    CHECK(a.values != c.values);
  }

  TEST_CASE("swallowed force point of weight below -2 stops the flow") {
    auto d = sample_driver(DriverSpec::sle_rho(3.0, {{0.0, +1, -2.5}}, 1), 1.0, 1e-4);
    CHECK(d.stopped);
    CHECK(d.collided_weight <= -2.0);
    REQUIRE(d.collision_step[0].has_value());
    CHECK(*d.collision_step[0] == d.steps());
  }

  TEST_CASE("trace stays in the closed upper half-plane") {
    auto tr = trace(sample_driver(DriverSpec::sle(4.0, 3), 1.0, 1e-3));
    CHECK(std::all_of(tr.points.begin(), tr.points.end(),
                      [](std::complex<double> z) { return z.imag() >= 0.0; }));
  }

  TEST_CASE("forward map undoes one inverse step") {
    for (double u : {-0.7, 0.0, 1.3}) {
      auto w = forward_slit_map(inverse_slit_map(u, u, 1e-4), u, 1e-4);
      CHECK(std::abs(w - std::complex<double>(u, 0.0)) <= 1e-8);
    }
  }

  TEST_CASE("SLE(6) comes closer to the real line than SLE(2)") {
    // Discrete tips never land on the line, so compare the lowest tip height
    // after t = 0.1 across the two phases.
    const int seeds = 40;
    std::vector<double> h6, h2;
    for (int s = 0; s < seeds; ++s) {
      h6.push_back(min_height(trace(sample_driver(DriverSpec::sle(6.0, 1000 + s), 1.0, 1e-4), 20), 0.1));
      h2.push_back(min_height(trace(sample_driver(DriverSpec::sle(2.0, 1000 + s), 1.0, 1e-4), 20), 0.1));
    }
    std::sort(h6.begin(), h6.end());
    std::sort(h2.begin(), h2.end());
    const double med6 = h6[seeds / 2], med2 = h2[seeds / 2];
    MESSAGE("median lowest height: kappa 6 ", med6, ", kappa 2 ", med2);
    CHECK(med6 < 0.6 * med2);
    CHECK(h6.front() < h2.front());
  }
}
