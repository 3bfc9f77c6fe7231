#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "clem/gasket.hpp"
#include "clem/ghf.hpp"
#include "clem/percolation.hpp"

namespace clem {

inline constexpr const char* kVersion = "0.1.0";

/// {n, p, seed, open}: `open` is a bitstring over the disk's sites in index order.
nlohmann::json config_to_json(const PercolationConfig& config);
PercolationConfig config_from_json(const nlohmann::json& j);

/// Vertices with lattice site, position, thin and cut flags and boundary
/// multiplicity; edges as vertex pairs; loops with the vertices they touch.
nlohmann::json gasket_to_json(const GasketGraph& g);
/// Rebuilds the graph and loop memberships; cut and thin flags are recomputed.
GasketGraph gasket_from_json(const nlohmann::json& j);

/// {n, dist (row-major), marked, values}.
nlohmann::json space_to_json(const MarkedMetricSpace& s);
MarkedMetricSpace space_from_json(const nlohmann::json& j);

nlohmann::json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

struct Provenance {
  std::string command;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

/// CSV text: a "# command=..., version=..., seed=..." line, the header, then rows.
std::string csv_text(const Provenance& prov, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

/// Data rows of a CSV file; skips comment lines and the header row.
std::vector<std::vector<std::string>> read_csv_rows(const std::filesystem::path& path);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace clem
