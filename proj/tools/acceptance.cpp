#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include "clem/axioms.hpp"
#include "clem/exponents.hpp"
#include "clem/ghf.hpp"
#include "clem/loewner.hpp"
#include "clem/metrics.hpp"
#include "clem/normalization.hpp"
#include "clem/parallel.hpp"
#include "clem/path_functionals.hpp"
#include "clem/percolation.hpp"
#include "clem/rng.hpp"
#include "commands.hpp"
#include "oracles.hpp"

namespace clem::acceptance {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

Verdict exponents_check(const Options&) {
  const double tol = 1e-9;
  SleParameters p = make_parameters(8.0 / 3.0);
  const double d_dbl6 = double_point_dimension(6.0);
  bool ok = std::abs(d_dbl6 - 0.75) <= tol && std::abs(p.theta_dbl - std::numbers::pi) <= tol &&
            std::abs(p.alpha4 - 35.0 / 12.0) <= tol && std::abs(p.d_sle - 4.0 / 3.0) <= tol;
  return {ok, "d_dbl(6)=" + fmt("%.12g", d_dbl6) + " theta_dbl=" + fmt("%.12g", p.theta_dbl) +
                  " alpha4=" + fmt("%.12g", p.alpha4) + " d_sle=" + fmt("%.12g", p.d_sle)};
}

Verdict loewner_check(const Options&) {
  LoewnerDriver driver = sample_driver(DriverSpec::zero(), 1.0, 1e-4);
  SleTrace tr = trace(driver, driver.steps());
  const std::complex<double> tip = tr.points.back();
  const double err = std::abs(tip - std::complex<double>(0.0, 2.0));
  return {err <= 0.02, "tip=" + fmt("%.6f", tip.real()) + "+" + fmt("%.6f", tip.imag()) + "i |err|=" + fmt("%.3g", err)};
}

Verdict percolation_check(const Options& o) {
  const double prob = crossing_probability(64, kCriticalP, 10000, derive_seed(o.seed, "accept-rhombus", 0), o.threads);
  return {prob >= 0.485 && prob <= 0.515, "P(crossing)=" + fmt("%.4f", prob) + " window [0.485, 0.515]"};
}

Verdict metric_oracle_check(const Options& o) {
  CounterRng rng(derive_seed(o.seed, "accept-graphs", 0));
  double worst_r = 0.0;
  std::size_t chem_mismatch = 0, inf_mismatch = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + static_cast<int>(rng.below(39));
    Graph g = oracle::random_graph(rng, n, rng.uniform(0.03, 0.3));
    std::vector<int> all(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) all[v] = static_cast<int>(v);
    auto r = resistance_table(g, all);
    auto r_ref = oracle::pinv_resistance(g);
    auto c = chemical_table(g, all);
    auto c_ref = oracle::floyd_warshall(g);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (std::isinf(r[i]) || std::isinf(r_ref[i])) {
        if (std::isinf(r[i]) != std::isinf(r_ref[i])) ++inf_mismatch;
      } else {
        worst_r = std::max(worst_r, std::abs(r[i] - r_ref[i]));
      }
      if (c[i] != c_ref[i]) ++chem_mismatch;
    }
  }
  return {worst_r <= 1e-9 && chem_mismatch == 0 && inf_mismatch == 0,
          "max |R - R_pinv|=" + fmt("%.3g", worst_r) + " chemical mismatches=" + std::to_string(chem_mismatch) +
              " disconnection mismatches=" + std::to_string(inf_mismatch) + " over 100 graphs"};
}

Verdict axiom_check(const Options& o) {
  std::ostringstream detail;
  bool ok = true;
  for (const char* name : {"chemical", "resistance"}) {
    HarnessConfig cfg;
    cfg.scheme = MetricScheme::parse(name);
    cfg.n_max = 64;
    cfg.trials = 1000;
    cfg.seed = derive_seed(o.seed, "accept-axioms", 0);
    cfg.threads = o.threads;
    const bool resistance = cfg.scheme.kind == SchemeKind::resistance;
    detail << name << ":";
    for (const AxiomReport& r : run_axiom_harness(cfg)) {
      const bool required = !resistance || r.axiom == Axiom::series || r.axiom == Axiom::parallel;
      if (required && !r.pass()) ok = false;
      detail << ' ' << axiom_name(r.axiom) << '=' << r.violations.size() << '/' << r.instances_tested
             << "(skip " << fmt("%.2f", r.skip_rate()) << (required ? "" : ", info") << ')';
    }
    detail << "; ";
  }
  return {ok, detail.str() + "violations/instances"};
}

Verdict path_functional_check(const Options& o) {
  std::ostringstream detail;
  bool ok = true;
  const double stadium = 0.2 + 0.01 * std::numbers::pi;
  const double area = evaluate(PathFunctional::area(0.1), PlanarPath({{0.0, 0.0}, {1.0, 0.0}}));
  const double rel = std::abs(area - stadium) / stadium;
  ok = ok && rel <= 0.03;
  detail << "stadium area=" << fmt("%.5f", area) << " (rel err " << fmt("%.4f", rel) << ")";
  const double count = evaluate(PathFunctional::count(0.3), PlanarPath({{0.0, 0.0}, {1.0, 0.0}}));
  ok = ok && count == 4.0;
  detail << " count(L=1,eps=0.3)=" << count;
  CounterRng rng(derive_seed(o.seed, "accept-midpoint", 0));
  std::size_t midpoint_fail = 0;
  for (int k = 0; k < 100; ++k) {
    PlanarPath raw = random_simple_polyline(rng, 1 + static_cast<int>(rng.below(8)));
    for (PathFunctional f : {PathFunctional::area(0.1), PathFunctional::count(0.1)}) {
      const double total = evaluate(f, raw);
      const double s = approximate_midpoint(f, raw);
      const double half = s > 0.0 ? evaluate(f, raw.prefix(s)) : evaluate(f, PlanarPath({raw.at(0.0)}));
      if (std::abs(half - total / 2.0) > f.a_eps() + 1e-12) ++midpoint_fail;
    }
  }
  ok = ok && midpoint_fail == 0;
  detail << " midpoint failures=" << midpoint_fail << "/200";
  for (PathFunctional f : {PathFunctional::area(0.1), PathFunctional::count(0.1)}) {
    GoodSchemeReport rep = good_scheme_check(f, 1.0, 1000, derive_seed(o.seed, "accept-good", 0));
    ok = ok && rep.pass;
    detail << ' ' << f.name() << " min=" << fmt("%.4g", rep.min_value) << ">=" << fmt("%.4g", rep.bound);
  }
  return {ok, detail.str()};
}

double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

Verdict chemical_exponent_check(const Options& o) {
  std::vector<double> ns, medians;
  std::ostringstream detail;
  for (int n : {32, 64, 128, 256}) {
    const std::uint64_t seed = derive_seed(o.seed, "accept-chemical-exponent", static_cast<std::uint64_t>(n));
    auto lengths = parallel_map(
        10000, [&](std::size_t t) { return shortest_crossing_length(n, kCriticalP, derive_seed(seed, "trial", t)); },
        o.threads);
    std::vector<double> found;
    for (const auto& l : lengths) {
      if (l) found.push_back(static_cast<double>(*l));
    }
    if (found.empty()) return {false, "no crossing at n=" + std::to_string(n)};
    std::sort(found.begin(), found.end());
    const double med = quantile_type7(found, 0.5);
    ns.push_back(n);
    medians.push_back(med);
    detail << "n=" << n << " median=" << med << " (" << found.size() << " crossings) ";
  }
  const double slope = slope_of(ns, medians);
  const bool ok = slope > 1.0 && slope < 4.0 / 3.0 && std::abs(slope - 1.13) <= 0.08;
  detail << "slope=" << fmt("%.4f", slope) << " target 1.13+-0.08 inside (1, 4/3)";
  return {ok, detail.str()};
}

Verdict normalization_check(const Options& o) {
  ScalingStudy study = scaling_study(MetricScheme::chemical(), {32, 64, 128, 256}, 10000,
                                     derive_seed(o.seed, "accept-mnorm", 0), {}, o.threads);
  std::ostringstream detail;
  for (std::size_t i = 0; i < study.sizes.size(); ++i) {
    detail << "n=" << study.sizes[i] << " instances=" << study.instances[i] << ' ';
  }
  if (study.estimates.size() < study.sizes.size()) return {false, detail.str() + "some size had no instances"};
  for (const auto& e : study.estimates) detail << "m(" << e.n << ")=" << e.median << ' ';
  detail << "slope=" << fmt("%.4f", study.fit.slope) << " window [" << fmt("%.2f", study.fit.window_lo) << ", "
         << fmt("%.2f", study.fit.window_hi) << "] q25/q75 step factor=" << fmt("%.3f", study.comparability.max_step_factor);
  return {study.fit.pass && study.comparability.pass, detail.str()};
}

std::vector<MarkedMetricSpace> ghf_fixtures(std::uint64_t seed) {
  std::vector<MarkedMetricSpace> out;
  CounterRng rng(seed);
  auto planar = [](const std::vector<Point2>& pts, std::vector<int> marked, std::vector<double> values) {
    const std::size_t n = pts.size();
    std::vector<double> d(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y);
    }
    return MarkedMetricSpace::make(n, std::move(d), std::move(marked), std::move(values));
  };
  out.push_back(MarkedMetricSpace::on_line({0.0}));
  out.push_back(MarkedMetricSpace::on_line({0.0}, {0}, {1.0}));
  out.push_back(MarkedMetricSpace::on_line({0.0, 2.0}));
  out.push_back(MarkedMetricSpace::on_line({0.0, 1.0}, {0}, {0.5}));
  out.push_back(MarkedMetricSpace::on_line({5.0, 4.0}, {1}, {0.5}));  // isometric to the previous one
  out.push_back(MarkedMetricSpace::on_line({0.0, 1.0, 3.0}, {0, 2}, {0.0, 1.0}));
  out.push_back(MarkedMetricSpace::on_line({3.0, 2.0, 0.0}, {0, 2}, {1.0, 0.0}));  // mirror image of the previous
  out.push_back(MarkedMetricSpace::on_line({0.0, 1.0, 3.0}, {0, 2}, {0.0, 1.5}));
  for (int k = 0; k < 4; ++k) {
    const std::size_t n = 4 + static_cast<std::size_t>(k % 2);
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({std::round(rng.uniform(0, 4)), std::round(rng.uniform(0, 4))});
    // Distinct points keep the space metric rather than pseudo-metric.
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (pts[i].x == pts[i - 1].x && pts[i].y == pts[i - 1].y) pts[i].y = pts[i - 1].y + 1.0;
    }
    std::vector<int> marked;
    std::vector<double> values;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.uniform() < 0.5) {
        marked.push_back(static_cast<int>(i));
        values.push_back(std::round(rng.uniform(0, 3)));
      }
    }
    out.push_back(planar(pts, marked, values));
    if (k == 0) {
      // A rotated, relabelled copy: isometric with matching marks.
      std::vector<Point2> rot;
      for (auto it = pts.rbegin(); it != pts.rend(); ++it) rot.push_back({-it->y, it->x});
      std::vector<int> rm;
      std::vector<double> rv;
      for (std::size_t m = 0; m < marked.size(); ++m) {
        rm.push_back(static_cast<int>(n - 1) - marked[m]);
        rv.push_back(values[m]);
      }
      out.push_back(planar(rot, rm, rv));
    }
  }
  return out;
}

Verdict ghf_check(const Options& o) {
  auto fx = ghf_fixtures(derive_seed(o.seed, "accept-ghf", 0));
  const std::size_t k = fx.size();
  std::vector<double> d(k * k);
  std::size_t brute_mismatch = 0, zero_mismatch = 0, triangle_fail = 0, pairs = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const double exact = ghf_distance_exact(fx[i], fx[j]);
      const double brute = oracle::ghf_brute_force(fx[i], fx[j]);
      const double back = ghf_distance_exact(fx[j], fx[i]);
      ++pairs;
      if (!(std::abs(exact - brute) <= 1e-12 || (std::isinf(exact) && std::isinf(brute))) || exact != back) {
        ++brute_mismatch;
      }
      if ((exact <= 1e-12) != oracle::mark_matching_isometry(fx[i], fx[j])) ++zero_mismatch;
      d[i * k + j] = d[j * k + i] = exact;
    }
  }
  std::size_t triples = 0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      for (std::size_t c = 0; c < k; ++c) {
        if (std::isinf(d[a * k + b]) || std::isinf(d[b * k + c])) continue;
        ++triples;
        if (d[a * k + c] > d[a * k + b] + d[b * k + c] + 1e-12) ++triangle_fail;
      }
    }
  }
  return {brute_mismatch == 0 && zero_mismatch == 0 && triangle_fail == 0,
          std::to_string(k) + " fixtures (<= 5 points), " + std::to_string(pairs) +
              " pairs: brute-force mismatches=" + std::to_string(brute_mismatch) +
              " zero-iff-isometry mismatches=" + std::to_string(zero_mismatch) + " triangle failures=" +
              std::to_string(triangle_fail) + "/" + std::to_string(triples)};
}

Verdict four_crossing_check(const Options& o) {
  std::vector<double> rates;
  std::ostringstream detail;
  for (double inner : {16.0, 8.0, 4.0}) {
    rates.push_back(four_crossing_rate(64, kCriticalP, inner, 32.0, 10000, derive_seed(o.seed, "accept-four", 0),
                                       o.threads));
    detail << "rate(" << inner / 32.0 << ")=" << fmt("%.4f", rates.back()) << ' ';
  }
  return {rates[0] > rates[1] && rates[1] > rates[2], detail.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict determinism_check(const Options& o) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("clem_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  struct Case {
    std::string label;
    std::vector<std::string> args;  // "{out}" / "{dir}" are replaced per run
    std::vector<std::string> files;
    bool threaded;
  };
  const std::string seed = std::to_string(o.seed % 100000);
  const std::vector<Case> cases = {
      {"sle-trace", {"sle-trace", "--kappa", "2.6667", "--t", "0.2", "--dt", "1e-3", "--seed", seed, "--out", "{dir}/trace.csv"}, {"trace.csv"}, false},
      {"sle-trace rho", {"sle-trace", "--kappa", "3", "--rho", "-2.5@0+", "--t", "0.2", "--dt", "1e-3", "--seed", seed, "--out", "{dir}/trace_rho.csv"}, {"trace_rho.csv"}, false},
      {"sample-perc", {"sample-perc", "--n", "24", "--seed", seed, "--out", "{dir}/config.json", "--svg", "{dir}/config.svg"}, {"config.json", "config.svg"}, false},
      {"verify-axioms", {"verify-axioms", "--scheme", "chemical", "--n", "32", "--trials", "100", "--seed", "1", "--out", "{dir}/axioms.json"}, {"axioms.json"}, true},
      {"verify-axioms resistance", {"verify-axioms", "--scheme", "resistance", "--n", "24", "--trials", "20", "--seed", seed, "--out", "{dir}/axioms_r.json"}, {"axioms_r.json"}, true},
      {"mnorm", {"mnorm", "--sizes", "32,64", "--trials", "100", "--seed", "1", "--out", "{dir}/mnorm.csv"}, {"mnorm.csv"}, true},
      {"pathfun", {"pathfun", "--kind", "count", "--eps", "0.1", "--check-good", "--r", "1", "--seed", seed}, {}, false},
  };
  std::size_t differing = 0;
  std::string which;
  bool mnorm_monotone = true;
  for (const Case& c : cases) {
    std::vector<std::string> outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      std::vector<std::string> args;
      for (std::string a : c.args) {
        auto pos = a.find("{dir}");
        if (pos != std::string::npos) a.replace(pos, 5, dir.string());
        args.push_back(a);
      }
      if (c.threaded) {
        args.push_back("--threads");
        args.push_back(rep == 0 ? "1" : "4");
      }
      std::ostringstream out, err;
      cli::run(args, out, err);
      outputs[rep].push_back(out.str());
      for (const auto& f : c.files) {
        outputs[rep].push_back(slurp(dir / f));
        fs::remove(dir / f);
      }
    }
    if (outputs[0] != outputs[1]) {
      ++differing;
      which += " " + c.label;
    }
    if (c.label == "mnorm") {
      // Quantile columns must be nondecreasing in q within each size.
      std::istringstream in(outputs[0].back());
      std::string line;
      int prev_n = -1;
      double prev = -1.0;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'n') continue;
        int n = std::stoi(line.substr(0, line.find(',')));
        double v = std::stod(line.substr(line.find(',', line.find(',') + 1) + 1));
        if (n == prev_n && v < prev) mnorm_monotone = false;
        prev_n = n;
        prev = v;
      }
    }
  }
  fs::remove_all(dir);
  return {differing == 0 && mnorm_monotone,
          std::to_string(cases.size()) + " stochastic runs repeated (threads 1 vs 4 where parallel): differing=" +
              std::to_string(differing) + which + (mnorm_monotone ? "" : "; mnorm quantiles not monotone")};
}

struct Criterion {
  int id;
  const char* name;
  double budget;
  std::function<Verdict(const Options&)> fn;
};

}  // namespace

std::vector<Result> run(const Options& options, std::ostream& out) {
  const std::vector<Criterion> criteria = {
      {1, "exponent formulas", 1.0, exponents_check},
      {2, "Loewner zero-driver tip", 10.0, loewner_check},
      {3, "rhombus crossing probability", 120.0, percolation_check},
      {4, "metric oracles", 60.0, metric_oracle_check},
      {5, "axiom suite", 600.0, axiom_check},
      {6, "path functionals", 60.0, path_functional_check},
      {7, "chemical-distance crossing exponent", 1800.0, chemical_exponent_check},
      {8, "normalization scaling", 2700.0, normalization_check},
      {9, "GHf exact mode", 60.0, ghf_check},
      {10, "four-crossing decay", 300.0, four_crossing_check},
      {11, "determinism", 300.0, determinism_check},
  };
  std::vector<Result> results;
  for (const Criterion& c : criteria) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), c.id) == options.only.end()) {
      continue;
    }
    Result r;
    r.id = c.id;
    r.name = c.name;
    r.budget_seconds = c.budget;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.fn(options);
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = v.pass && r.seconds <= c.budget;
    r.detail = v.detail;
    if (v.pass && !r.pass) r.detail += " (over the time budget)";
    out << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.name << "): " << r.detail << " ["
        << fmt("%.1f", r.seconds) << " s / " << fmt("%.0f", r.budget_seconds) << " s]" << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace clem::acceptance
