#include <doctest.h>

#include <filesystem>
#include <map>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "clem/io.hpp"
#include "commands.hpp"

using namespace clem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "clem_unit_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("exponents") {
    auto exact = invoke({"exponents", "--kappa", "8/3"});
    REQUIRE(exact.code == cli::kExitOk);
    auto j = nlohmann::json::parse(exact.out);
    CHECK(std::abs(j["d_dbl"].get<double>() - 0.75) <= 1e-9);
    CHECK(j["alpha4"].get<double>() == doctest::Approx(35.0 / 12.0));

    auto rounded = invoke({"exponents", "--kappa", "2.6667"});
    REQUIRE(rounded.code == cli::kExitOk);
    CHECK(std::abs(nlohmann::json::parse(rounded.out)["d_dbl"].get<double>() - 0.75) <= 1e-4);
  }

  TEST_CASE("exit codes") {
    CHECK(invoke({}).code == cli::kExitUsage);
    CHECK(invoke({"--help"}).code == cli::kExitOk);
    CHECK(invoke({"--version"}).out == std::string(kVersion) + "\n");
    CHECK(invoke({"exponents"}).code == cli::kExitUsage);
    CHECK(invoke({"exponents", "--kappa", "x"}).code == cli::kExitUsage);
    CHECK(invoke({"bogus"}).code == cli::kExitUsage);
    auto bad = invoke({"exponents", "--kappa", "5"});
    CHECK(bad.code == cli::kExitFailure);
    CHECK(nlohmann::json::parse(bad.err)["command"] == "exponents");
    CHECK(invoke({"gasket", "--config", scratch("missing.json").string(), "--cluster", "0", "--out", scratch("x.json").string()}).code ==
          cli::kExitFailure);
  }

  TEST_CASE("sample, gasket and distances") {
    auto cfg = scratch("cfg.json"), gasket = scratch("gasket.json"), pairs = scratch("pairs.csv");
    auto chem = scratch("chem.csv"), res = scratch("res.csv");
    REQUIRE(invoke({"sample-perc", "--n", "6", "--p", "1", "--seed", "3", "--out", cfg.string()}).code == 0);
    REQUIRE(invoke({"gasket", "--config", cfg.string(), "--cluster", "-1", "--out", gasket.string()}).code == 0);
    write_text(pairs, "x,y\n0,0\n0,1\n");
    REQUIRE(invoke({"chemdist", "--gasket", gasket.string(), "--pairs", pairs.string(), "--out", chem.string()}).code == 0);
    REQUIRE(invoke({"resistance", "--gasket", gasket.string(), "--pairs", pairs.string(), "--out", res.string()}).code == 0);
    auto c = read_csv_rows(chem);
    REQUIRE(c.size() == 2);
    CHECK(c[0][2] == "0");
    CHECK(c[1][2] == "1");
    auto r = read_csv_rows(res);
    REQUIRE(r.size() == 2);
    CHECK(std::stod(r[1][2]) < 1.0);
  }

  TEST_CASE("stochastic subcommands are reproducible") {
    auto a = scratch("ax_a.json"), b = scratch("ax_b.json");
    std::vector<std::string> base{"verify-axioms", "--scheme", "chemical", "--n", "16", "--trials", "10", "--seed", "1",
                                  "--ks-trials", "20", "--out"};
    auto ra = base, rb = base;
    ra.push_back(a.string());
    rb.push_back(b.string());
    CHECK(invoke(ra).code == cli::kExitOk);
    CHECK(invoke(rb).code == cli::kExitOk);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
  }

  TEST_CASE("mnorm quantile columns are nondecreasing") {
    auto out = scratch("mnorm.csv");
    auto r = invoke({"mnorm", "--sizes", "32,64", "--trials", "100", "--seed", "1", "--out", out.string()});
    REQUIRE(r.code == cli::kExitOk);
    auto text = slurp(out);
    CHECK(text.rfind("# command=mnorm", 0) == 0);
    std::map<std::string, std::vector<double>> by_n;
    for (const auto& row : read_csv_rows(out)) by_n[row[0]].push_back(std::stod(row[2]));
    CHECK(!by_n.empty());
    for (const auto& [n, values] : by_n) {
      for (std::size_t i = 0; i + 1 < values.size(); ++i) CHECK(values[i] <= values[i + 1]);
    }
  }

  TEST_CASE("ghf subcommand") {
    auto a = scratch("space_a.json"), b = scratch("space_b.json");
    write_text(a, space_to_json(MarkedMetricSpace::on_line({0.0})).dump());
    write_text(b, space_to_json(MarkedMetricSpace::on_line({0.0, 2.0})).dump());
    auto exact = invoke({"ghf", "--a", a.string(), "--b", b.string(), "--exact"});
    REQUIRE(exact.code == 0);
    CHECK(nlohmann::json::parse(exact.out)["value"].get<double>() == doctest::Approx(1.0));
    auto bounds = nlohmann::json::parse(invoke({"ghf", "--a", a.string(), "--b", b.string()}).out);
    CHECK(bounds["lower"].get<double>() <= 1.0 + 1e-12);
    CHECK(bounds["upper"].get<double>() >= 1.0 - 1e-12);
  }

  TEST_CASE("figures") {
    auto cfg = scratch("empty.json"), svg = scratch("empty.svg");
    REQUIRE(invoke({"sample-perc", "--n", "5", "--p", "0", "--seed", "1", "--out", cfg.string()}).code == 0);
    REQUIRE(invoke({"figure", "--kind", "perc_coloring", "--input", cfg.string(), "--out", svg.string()}).code == 0);
    auto text = slurp(svg);
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(text.find("<polygon") == std::string::npos);
    CHECK(invoke({"figure", "--kind", "loops", "--input", scratch("none.json").string(), "--out", svg.string()}).code ==
          cli::kExitFailure);

    auto csv = scratch("xy.csv"), plot = scratch("plot.svg");
    write_text(csv, "x,y\n1,2\n2,4\n4,8\n");
    REQUIRE(invoke({"figure", "--kind", "scaling_plot", "--input", csv.string(), "--out", plot.string()}).code == 0);
    CHECK(slurp(plot).find("slope = 1.000") != std::string::npos);
  }
}
