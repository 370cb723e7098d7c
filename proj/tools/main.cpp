#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "sscov/ensemble.hpp"
#include "sscov/errors.hpp"

// Exit codes: 0 success, 1 unexpected failure, 2 configuration/input/domain
// error, 3 size limit, 4 numerical contract violation.
int main(int argc, char** argv) {
  using namespace sscov::cli;
  CLI::App app{"Spectral moments of sample covariance matrices via special symmetric partitions"};
  app.require_subcommand(1);

  Common common;
  std::string out_flag;
  app.add_option("--out", out_flag, "Output directory (default: $SSCOV_OUT_DIR or .)");
  app.add_option("--format", common.format, "Table format")->check(CLI::IsMember({"csv", "json"}));

  ClassifyArgs classify;
  auto* c_classify = app.add_subcommand("classify", "Classify one partition");
  c_classify->add_option("--word", classify.word, "Word such as abba");
  c_classify->add_option("--blocks", classify.blocks, "Blocks as JSON, e.g. [[1,2,5,6],[3,4,7,8]]");

  CountArgs count;
  auto* c_count = app.add_subcommand("count", "Exhaustive census of SS(2k)");
  c_count->add_option("--k", count.k, "k or a range lo..hi");
  c_count->add_option("--by", count.by, "Grouping key")->check(CLI::IsMember({"total", "b", "r", "sizes"}));
  c_count->add_flag("--pair-only", count.pair_only, "Restrict to pair partitions");
  c_count->add_option("--cap", count.cap, "Enumeration cap on 2k");

  CensusArgs census;
  auto* c_census = app.add_subcommand("census", "Brute-force circuit counts");
  c_census->add_option("--word", census.words, "Word(s) to census");
  c_census->add_option("--all", census.all_k, "Census every word of length 2k");
  c_census->add_option("--p", census.p, "Even-vertex range");
  c_census->add_option("--n", census.n, "Odd-vertex range");
  c_census->add_option("--N", census.N, "Index range for the W link");
  c_census->add_option("--link", census.link, "S or W")->check(CLI::IsMember({"S", "W"}));
  c_census->add_option("--rule", census.rule, "Letter/edge match rule")->check(CLI::IsMember({"implied", "exact"}));
  c_census->add_option("--budget", census.budget, "Candidate assignment budget");

  MomentsArgs moments;
  auto* c_moments = app.add_subcommand("moments", "Limiting moments");
  c_moments->add_option("--k", moments.k, "k or a range lo..hi");
  c_moments->add_option("--y", moments.y, "Aspect ratio p/n (exact: 1/2, 0.5, ...)");
  c_moments->add_flag("--mp", moments.mp, "Marchenko-Pastur (Narayana sums)");
  c_moments->add_option("--constants", moments.constants, "C_2,C_4,... for the constant model");
  c_moments->add_option("--sparse", moments.sparse, "Sparse model with this lambda");
  c_moments->add_flag("--sandwich", moments.sandwich, "Also emit the Poisson sandwich (with --sparse)");
  c_moments->add_option("--grid", moments.grids, "2m=path.csv grid for g_{2m}; repeat per size");
  c_moments->add_option("--profile", moments.profile, "Variance profile: upper_triangular, constant[:c] or CSV path");
  c_moments->add_option("--resolution", moments.resolution, "Quadrature grid size G");
  c_moments->add_flag("--breakdown", moments.breakdown, "Write per-word breakdown JSON");
  c_moments->add_option("--carleman", moments.carleman, "Carleman partial sums up to K");
  c_moments->add_option("--bounds", moments.bounds, "M_2,M_4,... for --carleman");

  SimulateArgs simulate;
  auto* c_simulate = app.add_subcommand("simulate", "Monte Carlo spectra");
  c_simulate->add_option("--config", simulate.config, "Config file with a [simulate] section")->required();
  c_simulate->add_option("--set", simulate.set, "Override key=value; repeatable");
  c_simulate->add_option("--seed", simulate.seed, "Seed override");
  c_simulate->add_option("--replicates", simulate.replicates, "Replicate override");
  c_simulate->add_option("--threads", simulate.threads, "Worker threads (0 = all cores)");
  c_simulate->add_flag("--gnuplot", simulate.gnuplot, "Also write hist.gp");

  HypergraphArgs hyper;
  auto* c_hyper = app.add_subcommand("hypergraph", "Hypergraph bridge");
  c_hyper->add_option("--word", hyper.word, "SS word to convert");
  c_hyper->add_option("--k", hyper.k, "Count tables for this k");

  VerifyArgs verify;
  verify.seed = sscov::ensemble::kDefaultSeed;
  auto* c_verify = app.add_subcommand("verify", "Cross-module identity suite");
  c_verify->add_option("--max-k", verify.max_k, "Largest k exercised");
  c_verify->add_option("--seed", verify.seed, "Seed for the simulation checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!out_flag.empty()) {
    common.out_dir = out_flag;
  } else if (const char* env = std::getenv("SSCOV_OUT_DIR"); env && *env) {
    common.out_dir = env;
  } else {
    common.out_dir = ".";
  }

  try {
    if (*c_classify) return run_classify(common, classify);
    if (*c_count) return run_count(common, count);
    if (*c_census) return run_census(common, census);
    if (*c_moments) return run_moments(common, moments);
    if (*c_simulate) return run_simulate(common, simulate);
    if (*c_hyper) return run_hypergraph(common, hyper);
    if (*c_verify) return run_verify(common, verify);
  } catch (const sscov::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const sscov::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const sscov::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const sscov::SizeLimitError& e) {
    std::cerr << "size limit: " << e.what() << '\n';
    return 3;
  } catch (const sscov::NumericalContractError& e) {
    std::cerr << "numerical contract: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
