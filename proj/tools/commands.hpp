#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sscov::cli {

struct Common {
  std::string out_dir;     // resolved: flag, then SSCOV_OUT_DIR, then "."
  std::string format = "csv";
};

struct ClassifyArgs {
  std::string word;
  std::string blocks;  // JSON list of blocks
};

struct CountArgs {
  std::string k = "1..4";
  std::string by = "r";  // total | b | r | sizes
  bool pair_only = false;
  int cap = 14;
};

struct CensusArgs {
  std::vector<std::string> words;
  int all_k = 0;  // every word of length 2k when > 0
  std::int64_t p = 2;
  std::int64_t n = 2;
  std::int64_t N = 2;  // Wigner link
  std::string link = "S";
  std::string rule = "implied";
  std::uint64_t budget = 100'000'000;
};

struct MomentsArgs {
  std::string k = "1..4";
  std::string y = "1";
  bool mp = false;
  std::string constants;          // C_2,C_4,...
  std::string sparse;             // lambda
  bool sandwich = false;
  std::vector<std::string> grids; // 2m=path
  std::string profile;            // upper_triangular | constant[:c] | path
  int resolution = 128;
  bool breakdown = false;
  int carleman = 0;               // K
  std::string bounds;             // M_2,M_4,...
};

struct SimulateArgs {
  std::string config;
  std::vector<std::string> set;   // key=value overrides
  std::optional<std::uint64_t> seed;
  std::optional<int> replicates;
  std::optional<int> threads;
  bool gnuplot = false;
};

struct HypergraphArgs {
  std::string word;
  int k = 0;
};

struct VerifyArgs {
  int max_k = 3;
  std::uint64_t seed = 20230917;
};

int run_classify(const Common& c, const ClassifyArgs& a);
int run_count(const Common& c, const CountArgs& a);
int run_census(const Common& c, const CensusArgs& a);
int run_moments(const Common& c, const MomentsArgs& a);
int run_simulate(const Common& c, const SimulateArgs& a);
int run_hypergraph(const Common& c, const HypergraphArgs& a);
int run_verify(const Common& c, const VerifyArgs& a);

/// "3" or "1..6".
std::pair<int, int> parse_range(const std::string& text);

}  // namespace sscov::cli
