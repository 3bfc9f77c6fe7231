#include "commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "acceptance.hpp"
#include "clem/axioms.hpp"
#include "clem/exponents.hpp"
#include "clem/gasket.hpp"
#include "clem/ghf.hpp"
#include "clem/io.hpp"
#include "clem/loewner.hpp"
#include "clem/metrics.hpp"
#include "clem/normalization.hpp"
#include "clem/path_functionals.hpp"
#include "clem/percolation.hpp"
#include "clem/svg.hpp"

namespace clem::cli {

namespace {

using nlohmann::json;

// Rounds to 12 significant digits for printing.
double sig12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::stod(buf);
}

json finite_or_string(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

// Parses "x" or "a/b".
double parse_ratio(const std::string& text) {
  auto slash = text.find('/');
  std::size_t used = 0;
  if (slash == std::string::npos) {
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size()) throw CLI::ValidationError("--kappa", "not a number: " + text);
    return v;
  }
  const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
  std::size_t un = 0, ud = 0;
  double a = 0.0, b = 0.0;
  try {
    a = std::stod(num, &un);
    b = std::stod(den, &ud);
  } catch (const std::exception&) {
    un = 0;
  }
  if (un != num.size() || ud != den.size() || b == 0.0) throw CLI::ValidationError("--kappa", "bad fraction: " + text);
  return a / b;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    int v = std::stoi(item, &pos);
    if (pos != item.size()) throw CLI::ValidationError("list", "not an integer: " + item);
    out.push_back(v);
  }
  return out;
}

ForcePoint parse_force_point(const std::string& text) {
  auto at = text.find('@');
  if (at == std::string::npos) throw CLI::ValidationError("--rho", "expected weight@side, got " + text);
  ForcePoint fp;
  fp.weight = std::stod(text.substr(0, at));
  std::string side = text.substr(at + 1);
  if (side == "0+") {
    fp.side = 1;
  } else if (side == "0-") {
    fp.side = -1;
  } else {
    fp.side = 0;
    fp.position = std::stod(side);
  }
  return fp;
}

Region parse_region(const GasketGraph& g, const std::string& spec) {
  if (spec == "all") return g.whole();
  auto ids = parse_int_list(spec);
  for (int v : ids) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.size()) throw std::invalid_argument("region vertex out of range");
  }
  return make_region(std::move(ids));
}

std::vector<Point2> read_path_csv(const std::string& path) {
  std::vector<Point2> pts;
  for (const auto& row : read_csv_rows(path)) {
    if (row.size() < 2) throw std::runtime_error("path CSV rows need x,y");
    pts.push_back({std::stod(row[0]), std::stod(row[1])});
  }
  return pts;
}

json axiom_report_json(const std::vector<AxiomReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    json examples = json::array();
    for (std::size_t k = 0; k < std::min<std::size_t>(r.violations.size(), 5); ++k) {
      const auto& v = r.violations[k];
      examples.push_back({{"instance", v.instance}, {"witness", v.witness}, {"lhs", finite_or_string(v.lhs)},
                          {"rhs", finite_or_string(v.rhs)}, {"slack", finite_or_string(v.slack)}});
    }
    arr.push_back({{"axiom", axiom_name(r.axiom)},
                   {"tested", r.instances_tested},
                   {"skipped", r.skipped},
                   {"skip_rate", r.skip_rate()},
                   {"violations", r.violations.size()},
                   {"examples", examples},
                   {"pass", r.pass()}});
  }
  return arr;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete CLE metric toolkit", "clem"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Context ctx{out, err};
  std::function<int()> action;
  std::string command;

  // exponents
  {
    auto* sub = app.add_subcommand("exponents", "SLE/CLE constants as JSON");
    auto kappa = std::make_shared<std::string>();
    sub->add_option("--kappa", *kappa, "SLE parameter in (2,4), decimal or a fraction such as 8/3")->required();
    sub->callback([&, kappa] {
      const double value = parse_ratio(*kappa);
      action = [&, value] {
        SleParameters p = make_parameters(value);
        json j{{"kappa", sig12(p.kappa)},   {"kappa_prime", sig12(p.kappa_prime)}, {"lambda", sig12(p.lambda)},
               {"chi", sig12(p.chi)},       {"theta_dbl", sig12(p.theta_dbl)},     {"d_sle", sig12(p.d_sle)},
               {"d_dbl", sig12(p.d_dbl)},   {"alpha4", sig12(p.alpha4)}};
        ctx.out << j.dump(2) << '\n';
        return kExitOk;
      };
    });
  }

  // sle-trace
  {
    auto* sub = app.add_subcommand("sle-trace", "Loewner trace of SLE_kappa(rho) as CSV");
    struct Opts {
      double kappa = 0.0, horizon = 1.0, dt = 1e-4;
      std::vector<std::string> rho;
      std::uint64_t seed = 0;
      std::string out_path;
      std::size_t stride = 1;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--kappa", o->kappa, "SLE parameter (0 gives the zero driver)")->required();
    sub->add_option("--rho", o->rho, "force point weight@side, side in {0+, 0-} or a real position");
    sub->add_option("--t", o->horizon, "time horizon")->required();
    sub->add_option("--dt", o->dt, "time step")->required();
    sub->add_option("--seed", o->seed, "master seed")->required();
    sub->add_option("--out", o->out_path, "output CSV")->required();
    sub->add_option("--stride", o->stride, "keep every stride-th tip");
    sub->callback([&, o] {
      action = [&, o] {
        DriverSpec spec;
        if (!o->rho.empty()) {
          std::vector<ForcePoint> pts;
          for (const auto& r : o->rho) pts.push_back(parse_force_point(r));
          spec = DriverSpec::sle_rho(o->kappa, std::move(pts), o->seed);
        } else if (o->kappa > 0.0) {
          spec = DriverSpec::sle(o->kappa, o->seed);
        }
        LoewnerDriver driver = sample_driver(spec, o->horizon, o->dt);
        SleTrace tr = trace(driver, std::max<std::size_t>(o->stride, 1));
        std::vector<std::vector<std::string>> rows;
        for (std::size_t k = 0; k < tr.points.size(); ++k) {
          rows.push_back({format_double(tr.times[k]), format_double(tr.points[k].real()),
                          format_double(tr.points[k].imag())});
        }
        write_text(o->out_path, csv_text({"sle-trace", o->seed, true}, {"t", "re", "im"}, rows));
        if (driver.stopped) ctx.err << "{\"warning\":\"continuation threshold reached\"}\n";
        return kExitOk;
      };
    });
  }

  // sample-perc
  {
    auto* sub = app.add_subcommand("sample-perc", "critical site percolation on a disk");
    struct Opts {
      int n = 0;
      double p = kCriticalP;
      std::uint64_t seed = 0;
      std::string out_path, svg_path;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--n", o->n, "disk radius")->required();
    sub->add_option("--p", o->p, "site density");
    sub->add_option("--seed", o->seed, "master seed")->required();
    sub->add_option("--out", o->out_path, "configuration JSON")->required();
    sub->add_option("--svg", o->svg_path, "graph-distance coloring SVG");
    sub->callback([&, o] {
      action = [&, o] {
        PercolationConfig c = sample(o->n, o->p, o->seed);
        write_text(o->out_path, config_to_json(c).dump() + "\n");
        if (!o->svg_path.empty()) write_text(o->svg_path, perc_coloring_svg(c));
        return kExitOk;
      };
    });
  }

  // gasket
  {
    auto* sub = app.add_subcommand("gasket", "gasket graph of one cluster");
    struct Opts {
      std::string config, out_path;
      int cluster = -1;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--config", o->config, "configuration JSON")->required();
    sub->add_option("--cluster", o->cluster, "cluster id (-1: largest)")->required();
    sub->add_option("--out", o->out_path, "gasket JSON")->required();
    sub->callback([&, o] {
      action = [&, o] {
        auto clusters = std::make_shared<const ClusterSet>(decompose(config_from_json(read_json(o->config))));
        int id = o->cluster;
        if (id < 0) {
          auto largest = clusters->largest_cluster();
          if (!largest) throw std::runtime_error("configuration has no open cluster");
          id = *largest;
        }
        write_text(o->out_path, gasket_to_json(build_gasket(clusters, id)).dump() + "\n");
        return kExitOk;
      };
    });
  }

  // chemdist / resistance
  for (const char* name : {"chemdist", "resistance"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "chemdist" ? "chemical distances" : "effective resistances");
    struct Opts {
      std::string gasket, region = "all", pairs, out_path;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--gasket", o->gasket, "gasket JSON")->required();
    sub->add_option("--region", o->region, "\"all\" or comma-separated vertex ids");
    sub->add_option("--pairs", o->pairs, "CSV with columns x,y")->required();
    sub->add_option("--out", o->out_path, "CSV with columns x,y,d")->required();
    const std::string cmd = name;
    sub->callback([&, o, cmd] {
      action = [&, o, cmd] {
        GasketGraph g = gasket_from_json(read_json(o->gasket));
        Region u = parse_region(g, o->region);
        MetricScheme scheme = cmd == "chemdist" ? MetricScheme::chemical() : MetricScheme::resistance();
        std::vector<std::vector<std::string>> rows;
        for (const auto& row : read_csv_rows(o->pairs)) {
          if (row.size() < 2) throw std::runtime_error("pairs CSV rows need x,y");
          int x = std::stoi(row[0]), y = std::stoi(row[1]);
          if (!u.contains(x) || !u.contains(y)) throw std::invalid_argument("pair vertex outside the region");
          rows.push_back({row[0], row[1], format_double(metric_distance(g, u, scheme, x, y))});
        }
        write_text(o->out_path, csv_text({cmd, 0, false}, {"x", "y", "d"}, rows));
        return kExitOk;
      };
    });
  }

  // pathfun
  {
    auto* sub = app.add_subcommand("pathfun", "geodesic approximation functionals");
    struct Opts {
      std::string kind, path;
      double eps = 0.0, r = 1.0;
      bool check_good = false;
      std::size_t samples = 1000;
      std::uint64_t seed = 1;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--kind", o->kind, "area or count")->required()->check(CLI::IsMember({"area", "count"}));
    sub->add_option("--eps", o->eps, "approximation scale")->required()->check(CLI::PositiveNumber);
    sub->add_option("--path", o->path, "CSV with columns x,y");
    sub->add_flag("--check-good", o->check_good, "check the good-scheme lower bound");
    sub->add_option("--r", o->r, "diameter for --check-good");
    sub->add_option("--samples", o->samples, "random paths for --check-good");
    sub->add_option("--seed", o->seed, "seed for --check-good");
    sub->callback([&, o] {
      if (!o->check_good && o->path.empty()) throw CLI::ValidationError("--path", "required unless --check-good");
      action = [&, o] {
        PathFunctional f = o->kind == "area" ? PathFunctional::area(o->eps) : PathFunctional::count(o->eps);
        if (o->check_good) {
          GoodSchemeReport rep = good_scheme_check(f, o->r, o->samples, o->seed);
          json j{{"kind", o->kind}, {"eps", o->eps},           {"r", o->r},
                 {"paths", rep.paths}, {"bound", rep.bound}, {"min_value", finite_or_string(rep.min_value)},
                 {"pass", rep.pass}};
          ctx.out << j.dump(2) << '\n';
          return rep.pass ? kExitOk : kExitFailure;
        }
        ctx.out << format_double(evaluate(f, PlanarPath(read_path_csv(o->path)))) << '\n';
        return kExitOk;
      };
    });
  }

  // verify-axioms
  {
    auto* sub = app.add_subcommand("verify-axioms", "randomized axiom harness");
    struct Opts {
      std::string scheme, out_path;
      int n = 64;
      std::size_t trials = 100, ks_trials = 0;
      std::uint64_t seed = 0;
      double eps = 1.0;
      unsigned threads = 0;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--scheme", o->scheme, "chemical, resistance, area or count")
        ->required()
        ->check(CLI::IsMember({"chemical", "resistance", "area", "count"}));
    sub->add_option("--n", o->n, "largest disk radius")->required();
    sub->add_option("--trials", o->trials, "randomized gaskets")->required();
    sub->add_option("--seed", o->seed, "master seed")->required();
    sub->add_option("--out", o->out_path, "report JSON")->required();
    sub->add_option("--eps", o->eps, "functional scale for area/count");
    sub->add_option("--ks-trials", o->ks_trials, "samples per window for the translation-invariance test");
    sub->add_option("--threads", o->threads, "worker threads (0: all cores)");
    sub->callback([&, o] {
      action = [&, o] {
        HarnessConfig cfg;
        cfg.scheme = MetricScheme::parse(o->scheme, o->eps);
        cfg.n_max = o->n;
        cfg.trials = o->trials;
        cfg.seed = o->seed;
        cfg.threads = o->threads;
        auto reports = run_axiom_harness(cfg);
        bool pass = std::all_of(reports.begin(), reports.end(), [](const AxiomReport& r) { return r.pass(); });
        json j{{"command", "verify-axioms"}, {"version", kVersion}, {"scheme", o->scheme}, {"n", o->n},
               {"trials", o->trials},        {"seed", o->seed},     {"c_par", cfg.scheme.name() == "resistance" ? "N" : "1"},
               {"axioms", axiom_report_json(reports)}};
        if (o->ks_trials > 0) {
          KsResult ks = translation_invariance_test(o->n, o->ks_trials, o->seed, o->threads);
          j["translation_invariance"] = {{"statistic", ks.statistic}, {"p_value", ks.p_value},
                                         {"n1", ks.n1},               {"n2", ks.n2},
                                         {"pass", ks.p_value >= 0.01}};
          pass = pass && ks.p_value >= 0.01;
        }
        j["pass"] = pass;
        write_text(o->out_path, j.dump(2) + "\n");
        return pass ? kExitOk : kExitFailure;
      };
    });
  }

  // mnorm
  {
    auto* sub = app.add_subcommand("mnorm", "normalization quantiles across sizes");
    struct Opts {
      std::string scheme = "chemical", sizes, out_path;
      std::size_t trials = 0;
      std::uint64_t seed = 0;
      double eps = 1.0;
      unsigned threads = 0;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--scheme", o->scheme, "chemical, resistance, area or count")
        ->check(CLI::IsMember({"chemical", "resistance", "area", "count"}));
    sub->add_option("--sizes", o->sizes, "comma-separated disk radii")->required();
    sub->add_option("--trials", o->trials, "configurations per size")->required();
    sub->add_option("--seed", o->seed, "master seed")->required();
    sub->add_option("--out", o->out_path, "CSV with columns n,q,value,ci_lo,ci_hi")->required();
    sub->add_option("--eps", o->eps, "functional scale for area/count");
    sub->add_option("--threads", o->threads, "worker threads (0: all cores)");
    sub->callback([&, o] {
      action = [&, o] {
        auto sizes = parse_int_list(o->sizes);
        if (sizes.empty()) throw std::invalid_argument("--sizes is empty");
        MetricScheme scheme = MetricScheme::parse(o->scheme, o->eps);
        ScalingStudy study = scaling_study(scheme, sizes, o->trials, o->seed, {}, o->threads);
        std::vector<std::vector<std::string>> rows;
        for (const auto& e : study.estimates) {
          for (std::size_t l = 0; l < e.levels.size(); ++l) {
            rows.push_back({std::to_string(e.n), format_double(e.levels[l]), format_double(e.quantiles[l]),
                            format_double(e.ci_lo[l]), format_double(e.ci_hi[l])});
          }
        }
        write_text(o->out_path, csv_text({"mnorm", o->seed, true}, {"n", "q", "value", "ci_lo", "ci_hi"}, rows));
        json j{{"scheme", o->scheme}, {"sizes", study.sizes}, {"instances", study.instances}};
        if (study.estimates.size() >= 3) {
          j["fit"] = {{"slope", study.fit.slope},
                      {"window", {study.fit.window_lo, study.fit.window_hi}},
                      {"pass", study.fit.pass}};
        }
        if (study.estimates.size() >= 2) {
          j["quantile_ratio"] = {{"ratios", study.comparability.ratios},
                                 {"max_step_factor", study.comparability.max_step_factor},
                                 {"pass", study.comparability.pass}};
        }
        ctx.out << j.dump(2) << '\n';
        return kExitOk;
      };
    });
  }

  // ghf
  {
    auto* sub = app.add_subcommand("ghf", "Gromov-Hausdorff-function distance (correspondence convention)");
    struct Opts {
      std::string a, b;
      bool exact = false;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--a", o->a, "space JSON")->required();
    sub->add_option("--b", o->b, "space JSON")->required();
    sub->add_flag("--exact", o->exact, "exact enumeration (at most 10 points in total)");
    sub->callback([&, o] {
      action = [&, o] {
        MarkedMetricSpace a = space_from_json(read_json(o->a)), b = space_from_json(read_json(o->b));
        json j{{"convention", "correspondence: min over R of dis(R)/2 + mark mismatch"}};
        if (o->exact) {
          j["value"] = finite_or_string(ghf_distance_exact(a, b));
        } else {
          GhfBounds bounds = ghf_distance_bounds(a, b);
          j["lower"] = finite_or_string(bounds.lower);
          j["upper"] = finite_or_string(bounds.upper);
        }
        ctx.out << j.dump(2) << '\n';
        return kExitOk;
      };
    });
  }

  // figure
  {
    auto* sub = app.add_subcommand("figure", "SVG figures");
    struct Opts {
      std::string kind, input, out_path;
    };
    auto o = std::make_shared<Opts>();
    sub->add_option("--kind", o->kind, "perc_coloring, loops or scaling_plot")
        ->required()
        ->check(CLI::IsMember({"perc_coloring", "loops", "scaling_plot"}));
    sub->add_option("--input", o->input, "configuration JSON, or CSV for scaling_plot")->required();
    sub->add_option("--out", o->out_path, "output SVG")->required();
    sub->callback([&, o] {
      action = [&, o] {
        std::string svg;
        if (o->kind == "scaling_plot") {
          std::vector<double> x, y;
          std::ifstream in(o->input);
          if (!in) throw std::runtime_error("cannot open " + o->input);
          std::string line, header;
          while (std::getline(in, line) && (line.empty() || line[0] == '#')) {
          }
          header = line;
          const bool mnorm = header.rfind("n,q,value", 0) == 0;
          for (const auto& row : read_csv_rows(o->input)) {
            if (mnorm) {
              if (row.size() >= 3 && std::abs(std::stod(row[1]) - 0.5) < 1e-12) {
                x.push_back(std::stod(row[0]));
                y.push_back(std::stod(row[2]));
              }
            } else if (row.size() >= 2) {
              x.push_back(std::stod(row[0]));
              y.push_back(std::stod(row[1]));
            }
          }
          svg = scaling_plot_svg(x, y, mnorm ? "median vs n" : "");
        } else {
          PercolationConfig c = config_from_json(read_json(o->input));
          svg = o->kind == "perc_coloring" ? perc_coloring_svg(c) : loops_svg(decompose(c));
        }
        write_text(o->out_path, svg);
        return kExitOk;
      };
    });
  }

  // accept
  {
    auto* sub = app.add_subcommand("accept", "run the acceptance suite");
    auto opts = std::make_shared<acceptance::Options>();
    auto only = std::make_shared<std::string>();
    sub->add_option("--threads", opts->threads, "worker threads (0: all cores)");
    sub->add_option("--only", *only, "comma-separated criterion numbers");
    sub->add_option("--seed", opts->seed, "master seed");
    sub->callback([&, opts, only] {
      if (!only->empty()) opts->only = parse_int_list(*only);
      action = [&, opts] {
        auto results = acceptance::run(*opts, ctx.out);
        bool pass = std::all_of(results.begin(), results.end(), [](const acceptance::Result& r) { return r.pass; });
        return pass ? kExitOk : kExitFailure;
      };
    });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  for (auto* sub : app.get_subcommands()) command = sub->get_name();
  try {
    return action ? action() : kExitUsage;
  } catch (const std::exception& e) {
    err << json{{"error", e.what()}, {"command", command}}.dump() << '\n';
    return kExitFailure;
  }
}

}  // namespace clem::cli
