#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace clem::acceptance {

struct Options {
  unsigned threads = 0;
  std::uint64_t seed = 20240611;
  std::vector<int> only;  ///< empty: all criteria
};

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

/// Runs the selected criteria in order and prints one PASS/FAIL line per
/// criterion to `out` as it completes.
std::vector<Result> run(const Options& options, std::ostream& out);

}  // namespace clem::acceptance
