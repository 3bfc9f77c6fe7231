#include "clem/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace clem {

using nlohmann::json;

json config_to_json(const PercolationConfig& config) {
  std::string bits(config.open.size(), '0');
  for (std::size_t i = 0; i < config.open.size(); ++i) {
    if (config.open[i]) bits[i] = '1';
  }
  return json{{"n", config.n()}, {"p", config.p}, {"seed", config.seed}, {"open", bits}};
}

PercolationConfig config_from_json(const json& j) {
  PercolationConfig c;
  c.lattice = tri_disk(j.at("n").get<int>());
  c.p = j.value("p", 0.5);
  c.seed = j.value("seed", std::uint64_t{0});
  const std::string bits = j.at("open").get<std::string>();
  if (bits.size() != c.lattice->size()) throw std::invalid_argument("open bitstring length does not match n");
  c.open.resize(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw std::invalid_argument("open bitstring must contain only 0 and 1");
    c.open[i] = bits[i] == '1' ? 1 : 0;
  }
  return c;
}

json gasket_to_json(const GasketGraph& g) {
  json vertices = json::array();
  for (std::size_t v = 0; v < g.size(); ++v) {
    Point2 p = g.graph.position(static_cast<int>(v));
    vertices.push_back({{"id", v},
                        {"site", g.sites.empty() ? -1 : g.sites[v]},
                        {"x", p.x},
                        {"y", p.y},
                        {"boundary", g.boundary_multiplicity[v]},
                        {"thin", static_cast<bool>(g.thin[v])},
                        {"cut", static_cast<bool>(g.cut_vertices[v])}});
  }
  json edges = json::array();
  for (std::size_t e = 0; e < g.graph.edge_count(); ++e) {
    auto [u, v] = g.graph.edge(static_cast<int>(e));
    edges.push_back({u, v});
  }
  json cuts = json::array();
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (g.cut_vertices[v]) cuts.push_back(v);
  }
  std::map<int, std::vector<int>> by_loop;
  for (std::size_t v = 0; v < g.loop_membership.size(); ++v) {
    for (int l : g.loop_membership[v]) by_loop[l].push_back(static_cast<int>(v));
  }
  json loops = json::array();
  for (const auto& [id, vs] : by_loop) {
    bool exterior = g.clusters && g.clusters->loops[static_cast<std::size_t>(id)].exterior;
    loops.push_back({{"id", id}, {"exterior", exterior}, {"vertices", vs}});
  }
  return json{{"cluster", g.cluster}, {"vertices", vertices}, {"edges", edges}, {"cut_vertices", cuts},
              {"loops", loops}};
}

GasketGraph gasket_from_json(const json& j) {
  Graph graph;
  std::vector<int> multiplicity;
  std::vector<int> sites;
  for (const auto& v : j.at("vertices")) {
    graph.add_vertex({v.at("x").get<double>(), v.at("y").get<double>()});
    multiplicity.push_back(v.value("boundary", 0));
    sites.push_back(v.value("site", -1));
  }
  for (const auto& e : j.at("edges")) graph.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
  GasketGraph g = gasket_from_graph(std::move(graph), std::move(multiplicity));
  g.sites = std::move(sites);
  g.cluster = j.value("cluster", -1);
  g.loop_membership.assign(g.size(), {});
  if (j.contains("loops")) {
    for (const auto& l : j.at("loops")) {
      int id = l.at("id").get<int>();
      for (int v : l.at("vertices").get<std::vector<int>>()) {
        if (v < 0 || static_cast<std::size_t>(v) >= g.size()) throw std::invalid_argument("loop vertex out of range");
        g.loop_membership[static_cast<std::size_t>(v)].push_back(id);
      }
    }
  }
  return g;
}

json space_to_json(const MarkedMetricSpace& s) {
  return json{{"n", s.size}, {"dist", s.dist}, {"marked", s.marked}, {"values", s.values}};
}

MarkedMetricSpace space_from_json(const json& j) {
  return MarkedMetricSpace::make(j.at("n").get<std::size_t>(), j.at("dist").get<std::vector<double>>(),
                                 j.value("marked", std::vector<int>{}), j.value("values", std::vector<double>{}));
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return json::parse(in);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string csv_text(const Provenance& prov, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream s;
  s << "# command=" << prov.command << ", version=" << kVersion << ", seed=";
  if (prov.has_seed) s << prov.seed; else s << "none";
  s << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) s << (i ? "," : "") << header[i];
  s << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << row[i];
    s << '\n';
  }
  return s.str();
}

std::vector<std::vector<std::string>> read_csv_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace clem
