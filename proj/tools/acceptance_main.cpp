#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "acceptance.hpp"

// Runs every acceptance criterion; extra arguments select criteria by number.
int main(int argc, char** argv) {
  clem::acceptance::Options options;
  for (int i = 1; i < argc; ++i) options.only.push_back(std::stoi(argv[i]));
  auto results = clem::acceptance::run(options, std::cout);
  bool pass = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  return pass ? 0 : 1;
}
