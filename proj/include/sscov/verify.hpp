#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sscov::verify {

struct Check {
  std::string module;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct Options {
  int max_k = 3;
  std::uint64_t seed = 20230917;
};

/// Cross-module identity suite; each check is independent and never throws
/// (exceptions become failing checks).
std::vector<Check> run_suite(const Options& opts);

std::string report_json(const Options& opts, const std::vector<Check>& checks);
std::string table(const std::vector<Check>& checks);

}  // namespace sscov::verify
