#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "json.hpp"
#include "sscov/circuit_census.hpp"
#include "sscov/config.hpp"
#include "sscov/ensemble.hpp"
#include "sscov/errors.hpp"
#include "sscov/grid.hpp"
#include "sscov/histogram.hpp"
#include "sscov/hypergraph.hpp"
#include "sscov/moment_engine.hpp"
#include "sscov/partition.hpp"
#include "sscov/verify.hpp"

namespace sscov::cli {

namespace fs = std::filesystem;
using moments::Rational;

namespace {

fs::path output(const Common& c, const std::string& name) {
  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  if (ec || !fs::is_directory(c.out_dir)) {
    throw ConfigError(fmt::format("cannot create output directory '{}'", c.out_dir));
  }
  return fs::path(c.out_dir) / name;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  out << content;
  if (!out) throw ConfigError(fmt::format("failed writing '{}'", path.string()));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(item.substr(b, item.find_last_not_of(" \t") - b + 1));
  }
  return out;
}

std::vector<Rational> rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split(text, ',')) out.push_back(moments::parse_rational(item));
  if (out.empty()) throw InputError(fmt::format("empty list '{}'", text));
  return out;
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

GridFunction profile_function(const std::string& spec) {
  if (spec == "upper_triangular") return [](double x, double u) { return x <= u ? 1.0 : 0.0; };
  if (spec == "constant") return [](double, double) { return 1.0; };
  if (spec.rfind("constant:", 0) == 0) {
    const double c = moments::parse_rational(spec.substr(9)).get_d();
    return [c](double, double) { return c; };
  }
  return load_grid_csv(spec);
}

}  // namespace

std::pair<int, int> parse_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError(fmt::format("'{}' is not a k or a range lo..hi", text));
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const int lo = to_int(text.substr(0, dots));
  const int hi = to_int(text.substr(dots + 2));
  if (lo < 1 || hi < lo) throw InputError(fmt::format("bad range '{}'", text));
  return {lo, hi};
}

int run_classify(const Common&, const ClassifyArgs& a) {
  if (a.word.empty() == a.blocks.empty()) throw InputError("give exactly one of --word or --blocks");
  Partition p = a.word.empty() ? Partition(1, {{1}}) : Partition::from_word(Word::parse(a.word));
  if (!a.blocks.empty()) {
    std::vector<Block> blocks;
    try {
      blocks = nlohmann::json::parse(a.blocks).get<std::vector<Block>>();
    } catch (const nlohmann::json::exception& e) {
      throw InputError(fmt::format("--blocks: {}", e.what()));
    }
    std::size_t m = 0;
    for (const auto& b : blocks) m += b.size();
    p = Partition(static_cast<int>(m), std::move(blocks));
  }
  const PartitionClass c = classify(p);
  nlohmann::json j;
  j["blocks"] = p.blocks();
  j["word"] = p.to_word().str();
  j["is_pair"] = c.is_pair;
  j["is_even_blocks"] = c.is_even_blocks;
  j["is_non_crossing"] = c.is_non_crossing;
  j["is_special_symmetric"] = c.is_special_symmetric;
  j["b"] = c.block_count;
  j["r_plus_1"] = c.r_plus_1;
  std::cout << j.dump() << '\n';
  return 0;
}

int run_count(const Common& c, const CountArgs& a) {
  const auto [lo, hi] = parse_range(a.k);
  const CountKey key = a.by == "total" ? CountKey::Total
                       : a.by == "b"   ? CountKey::Blocks
                       : a.by == "r"   ? CountKey::EvenGenerating
                                       : CountKey::BlockSizes;
  if (2 * hi > a.cap) {
    throw SizeLimitError(fmt::format("2k = {} exceeds the enumeration cap {} (raise --cap)", 2 * hi, a.cap));
  }
  std::vector<CountRow> rows;
  for (int k = lo; k <= hi; ++k) {
    auto part = count_ss(k, key, a.pair_only ? SsFilter::PairOnly : SsFilter::All, EnumerationLimits{a.cap});
    rows.insert(rows.end(), part.begin(), part.end());
  }
  fs::path path;
  if (c.format == "json") {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json row{{"k", r.k}, {"count", r.count}};
      if (r.b) row["b"] = *r.b;
      if (r.r_plus_1) row["r_plus_1"] = *r.r_plus_1;
      if (!r.block_sizes.empty()) row["block_sizes"] = r.block_sizes;
      arr.push_back(std::move(row));
    }
    path = output(c, "counts.json");
    write_file(path, arr.dump(2) + "\n");
  } else {
    path = output(c, "counts.csv");
    write_file(path, count_table_csv(rows, key));
  }
  std::uint64_t total = 0;
  for (const auto& r : rows) total += r.count;
  fmt::print("count: k={}..{} by {}{}: {} rows, {} partitions -> {}\n", lo, hi, a.by,
             a.pair_only ? " (pairs)" : "", rows.size(), total, path.string());
  return 0;
}

int run_census(const Common& c, const CensusArgs& a) {
  std::vector<Word> words;
  for (const auto& w : a.words) words.push_back(Word::parse(w));
  if (a.all_k > 0) {
    for (const auto& p : enumerate_partitions(2 * a.all_k)) words.push_back(p.to_word());
  }
  if (words.empty()) throw InputError("give --word or --all");
  census::CensusOptions opts;
  opts.budget = a.budget;
  opts.rule = a.rule == "exact" ? census::MatchRule::Exact : census::MatchRule::Implied;
  std::string csv = census::census_csv_header();
  std::size_t matched = 0, predicted = 0;
  for (const auto& w : words) {
    const auto r = a.link == "S" ? census::census_S(w, a.p, a.n, opts) : census::census_W(w, a.N, opts);
    csv += census::census_csv_row(r);
    if (r.predicted_count) {
      ++predicted;
      matched += r.exact_count == *r.predicted_count;
    }
  }
  const auto path = output(c, "census.csv");
  write_file(path, csv);
  const std::string range = a.link == "S" ? fmt::format("p={}, n={}", a.p, a.n) : fmt::format("N={}", a.N);
  fmt::print("census: {} words, link {}, {}; {} of {} SS words match the closed form -> {}\n", words.size(),
             a.link, range, matched, predicted, path.string());
  return 0;
}

int run_moments(const Common& c, const MomentsArgs& a) {
  const int sources = int(a.mp) + int(!a.constants.empty() && a.profile.empty()) + int(!a.sparse.empty()) +
                      int(!a.grids.empty()) + int(!a.profile.empty());
  if (sources > 1) throw InputError("choose one of --mp, --constants, --sparse, --grid, --profile");
  if (sources == 0 && a.carleman == 0) throw InputError("no moment source given");
  if (a.sandwich && a.sparse.empty()) throw InputError("--sandwich needs --sparse");

  if (sources == 1) {
    const auto [lo, hi] = parse_range(a.k);
    const Rational y = moments::parse_rational(a.y);
    if (y <= 0) throw InputError("--y must be positive");

    moments::GridFunctions grids;
    grids.resolution = a.resolution;
    for (const auto& spec : a.grids) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos) throw InputError(fmt::format("--grid '{}': expected 2m=path", spec));
      const auto sizes = parse_range(spec.substr(0, eq));
      grids.g[sizes.first] = load_grid_csv(spec.substr(eq + 1));
    }

    std::string csv = a.sandwich ? "k,value,exact,error_estimate,lower,upper\n" : "k,value,exact,error_estimate\n";
    auto reports = nlohmann::json::array();
    for (int k = lo; k <= hi; ++k) {
      moments::MomentReport r;
      if (a.mp) {
        r.k = k;
        r.exact = moments::mp_moment(k, y);
        r.value = r.exact->get_d();
      } else if (!a.sparse.empty()) {
        r = moments::moment_sparse(k, y, moments::parse_rational(a.sparse));
      } else if (!a.grids.empty()) {
        r = moments::moment_grid(k, y.get_d(), grids);
      } else if (!a.profile.empty()) {
        const auto base = a.constants.empty() ? moments::ConstantSeq::marchenko_pastur(k)
                                              : moments::ConstantSeq(rational_list(a.constants));
        r = moments::moment_profile(k, y.get_d(), profile_function(a.profile), base, a.resolution);
      } else {
        r = moments::moment_constant(k, y, moments::ConstantSeq(rational_list(a.constants)));
      }
      csv += fmt::format("{},{},{},{}", k, num(r.value), r.exact ? moments::to_string(*r.exact) : "",
                         r.resolution > 0 ? num(r.error_estimate) : "");
      if (a.sandwich) {
        const auto s = moments::poisson_sandwich(k, y, moments::parse_rational(a.sparse));
        csv += fmt::format(",{},{}", moments::to_string(s.lower), moments::to_string(s.upper));
      }
      csv += '\n';
      reports.push_back(nlohmann::json::parse(moments::report_json(r, a.breakdown)));
    }
    fs::path path;
    if (c.format == "json") {
      path = output(c, "moments.json");
      write_file(path, reports.dump(2) + "\n");
    } else {
      path = output(c, "moments.csv");
      write_file(path, csv);
      if (a.breakdown) write_file(output(c, "moments_breakdown.json"), reports.dump(2) + "\n");
    }
    fmt::print("moments: k={}..{}, y={} -> {}\n", lo, hi, moments::to_string(y), path.string());
  }

  if (a.carleman > 0) {
    std::vector<Rational> bounds =
        a.bounds.empty() ? moments::ConstantSeq::marchenko_pastur(a.carleman).even_values() : rational_list(a.bounds);
    bounds.resize(std::max<std::size_t>(bounds.size(), a.carleman), Rational(0));
    const auto report = moments::carleman_diagnostic(bounds, a.carleman);
    std::string csv = "k,alpha,partial_sum\n";
    for (int k = 1; k <= a.carleman; ++k) {
      csv += fmt::format("{},{},{}\n", k, report.alpha[k - 1].get_str(), num(report.partial_sums[k - 1]));
    }
    const auto path = output(c, "carleman.csv");
    write_file(path, csv);
    fmt::print("carleman: K={}, partial sum {} -> {}\n", a.carleman, num(report.partial_sums.back()), path.string());
  }
  return 0;
}

int run_simulate(const Common& c, const SimulateArgs& a) {
  auto file = config::read_config(a.config);
  config::Section section = file.section("simulate");
  for (const auto& kv : a.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("--set '{}': expected key=value", kv));
    section[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  auto cfg = config::ensemble_config(section, file.directory(), {"gnuplot", "title"});
  if (a.seed) cfg.seed = *a.seed;
  if (a.replicates) cfg.replicates = *a.replicates;
  if (a.threads) cfg.threads = *a.threads;
  const bool gnuplot = a.gnuplot || (section.count("gnuplot") && config::parse_bool(section.at("gnuplot"), "gnuplot"));

  const auto report = ensemble::run_experiment(cfg);

  std::string moments_csv = "k,mean,stderr\n";
  for (std::size_t k = 0; k < report.mean.size(); ++k) {
    moments_csv += fmt::format("{},{},{}\n", k + 1, num(report.mean[k]), num(report.stderr_[k]));
  }
  std::string diag = "replicate,seed,truncation_mass,centered_second_moment,min_eigenvalue\n";
  for (const auto& s : report.samples) {
    diag += fmt::format("{},{},{},{},{}\n", s.replicate, s.seed, num(s.truncation_mass),
                        num(s.centered_second_moment), num(s.min_raw_eigenvalue));
  }
  write_file(output(c, "moments.csv"), moments_csv);
  const auto hist_path = output(c, "hist.csv");
  write_file(hist_path, report.histogram.csv());
  write_file(output(c, "diag.csv"), diag);
  nlohmann::json law{{"family", ensemble::family_name(cfg.family)},
                     {"description", report.law.description},
                     {"n_beta", report.law.n_beta},
                     {"p", cfg.p},
                     {"n", cfg.n},
                     {"t_n", cfg.t_n.str()},
                     {"seed", cfg.seed},
                     {"replicates", cfg.replicates}};
  write_file(output(c, "law.json"), law.dump(2) + "\n");
  if (gnuplot) {
    const std::string title = section.count("title") ? section.at("title") : report.law.description;
    write_file(output(c, "hist.gp"), gnuplot_script("hist.csv", title));
  }
  const auto& h = report.histogram;
  fmt::print("simulate: {} p={} n={} x{} seed={}; beta_1..{} = [{}]; {} eigenvalues in {} bins on [{}, {}] -> {}\n",
             report.law.description, cfg.p, cfg.n, cfg.replicates, cfg.seed, report.mean.size(),
             fmt::join(report.mean, ", "), h.total(), h.counts.size(), num(h.edges.front()), num(h.edges.back()),
             c.out_dir);
  return 0;
}

int run_hypergraph(const Common& c, const HypergraphArgs& a) {
  if (a.word.empty() == (a.k == 0)) throw InputError("give exactly one of --word or --k");
  if (!a.word.empty()) {
    const auto h = hypergraph::word_to_hypergraph(Word::parse(a.word));
    const std::string json = h.to_json();
    write_file(output(c, "hypergraph.json"), json + "\n");
    std::cout << json << '\n';
    return 0;
  }
  const auto rows = hypergraph::count_noiry_classes(a.k);
  const auto path = output(c, "noiry.csv");
  write_file(path, hypergraph::noiry_csv(a.k, rows));

  const auto counted = hypergraph::count_acyclic(a.k);
  std::map<int, std::uint64_t> ss_by_b;
  for (const auto& sw : special_symmetric_words(a.k)) ++ss_by_b[sw.stats.b];
  std::string csv = "k,b,acyclic,ss_b\n";
  for (int b = 1; b <= a.k + 1; ++b) {
    const auto acyc = counted.acyclic_by_b.count(b) ? counted.acyclic_by_b.at(b) : 0;
    const auto ss = ss_by_b.count(b) ? ss_by_b.at(b) : 0;
    if (acyc || ss) csv += fmt::format("{},{},{},{}\n", a.k, b, acyc, ss);
  }
  write_file(output(c, "bijection.csv"), csv);
  std::uint64_t total = 0;
  for (const auto& r : rows) total += r.count;
  fmt::print("hypergraph: k={}: {} classes, {} words; {} (sigma, tau) pairs, {} pairwise/forest disagreements "
             "({} with |sigma|+|tau|=b+1) -> {}\n",
             a.k, rows.size(), total, counted.pairs_checked, counted.disagreements,
             counted.disagreements_on_condition, path.string());
  return 0;
}

int run_verify(const Common& c, const VerifyArgs& a) {
  verify::Options opts{a.max_k, a.seed};
  if (opts.max_k < 1) throw InputError("--max-k must be >= 1");
  const auto checks = verify::run_suite(opts);
  std::cout << verify::table(checks);
  write_file(output(c, "verify_report.json"), verify::report_json(opts, checks) + "\n");
  std::size_t passed = 0;
  for (const auto& ch : checks) passed += ch.pass;
  fmt::print("verify: {}/{} checks pass\n", passed, checks.size());
  return passed == checks.size() ? 0 : 4;
}

}  // namespace sscov::cli
