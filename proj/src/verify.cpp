#include "sscov/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

#include <fmt/format.h>

#include "json.hpp"
#include "sscov/circuit_census.hpp"
#include "sscov/ensemble.hpp"
#include "sscov/hypergraph.hpp"
#include "sscov/moment_engine.hpp"
#include "sscov/partition.hpp"
#include "sscov/philox.hpp"

namespace sscov::verify {

namespace {

using moments::Rational;

// A check body returns an empty string on success, else a failure detail.
using Body = std::function<std::string()>;

Check run_check(const std::string& module, const std::string& name, const Body& body) {
  Check c{module, name, false, {}, 0};
  const auto start = std::chrono::steady_clock::now();
  try {
    c.detail = body();
    c.pass = c.detail.empty();
  } catch (const std::exception& e) {
    c.detail = fmt::format("exception: {}", e.what());
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

std::uint64_t catalan(int k) {
  std::uint64_t c = 1;
  for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

std::string partition_examples() {
  const Partition yes(8, {{1, 2, 5, 6}, {3, 4, 7, 8}});
  const Partition no(8, {{1, 2, 6, 7}, {3, 4, 5, 8}});
  if (!is_special_symmetric(yes)) return "{{1,2,5,6},{3,4,7,8}} rejected";
  if (is_special_symmetric(no)) return "{{1,2,6,7},{3,4,5,8}} accepted";
  return {};
}

std::string pair_identity(int max_k) {
  for (int k = 1; k <= max_k; ++k) {
    std::uint64_t both = 0, ss_pair = 0, nc_pair = 0;
    for (const auto& p : enumerate_partitions(2 * k)) {
      if (!is_pair(p)) continue;
      const bool ss = is_special_symmetric(p);
      const bool nc = is_non_crossing(p);
      ss_pair += ss;
      nc_pair += nc;
      both += ss && nc;
    }
    if (ss_pair != nc_pair || both != ss_pair || ss_pair != catalan(k)) {
      return fmt::format("2k={}: SS pairs {}, NC pairs {}, common {}, Catalan {}", 2 * k, ss_pair, nc_pair,
                         both, catalan(k));
    }
  }
  return {};
}

std::string checker_vs_generator(int max_k) {
  for (int k = 1; k <= max_k; ++k) {
    std::vector<Word> literal;
    for (const auto& p : enumerate_partitions(2 * k)) {
      if (is_special_symmetric(p)) literal.push_back(p.to_word());
    }
    std::sort(literal.begin(), literal.end());
    const auto& generated = special_symmetric_words(k);
    if (literal.size() != generated.size()) {
      return fmt::format("2k={}: checker {} words, tree walks {}", 2 * k, literal.size(), generated.size());
    }
    for (std::size_t i = 0; i < literal.size(); ++i) {
      if (!(literal[i] == generated[i].word)) {
        return fmt::format("2k={}: {} vs {}", 2 * k, literal[i].str(), generated[i].word.str());
      }
    }
  }
  return {};
}

std::string inclusion_chain(int max_k) {
  for (int m = 2; m <= 2 * max_k; m += 2) {
    for (const auto& p : enumerate_partitions(m)) {
      const auto c = classify(p);
      if (c.is_special_symmetric && !c.is_even_blocks) return "SS partition with an odd block: " + p.to_json();
      if (c.is_even_blocks && c.is_non_crossing && !c.is_special_symmetric) {
        return "non-crossing even partition outside SS: " + p.to_json();
      }
    }
  }
  return {};
}

std::string narayana_counts(int max_k) {
  for (int k = 1; k <= max_k; ++k) {
    std::map<int, std::uint64_t> by_r;
    for (const auto& row : count_ss(k, CountKey::EvenGenerating, SsFilter::PairOnly)) {
      by_r[*row.r_plus_1] += row.count;
    }
    for (int r = 0; r < k; ++r) {
      const Rational expected = moments::narayana(k, r);
      if (Rational(static_cast<unsigned long>(by_r[r + 1])) != expected) {
        return fmt::format("k={}, r+1={}: counted {}, expected {}", k, r + 1, by_r[r + 1],
                           moments::to_string(expected));
      }
    }
  }
  return {};
}

std::string census_exact(int max_k) {
  for (int k = 1; k <= std::min(max_k, 3); ++k) {
    for (const auto& sw : special_symmetric_words(k)) {
      for (int p = 1; p <= 3; ++p) {
        for (int n = 1; n <= 3; ++n) {
          const auto r = census::census_S(sw.word, p, n);
          if (!r.predicted_count || r.exact_count != *r.predicted_count) {
            return fmt::format("{} at p={}, n={}: census {}, predicted {}", sw.word.str(), p, n, r.exact_count,
                               r.predicted_count ? std::to_string(*r.predicted_count) : "none");
          }
        }
      }
    }
  }
  return {};
}

std::string wigner_exact(int max_k) {
  for (int k = 1; k <= std::min(max_k, 3); ++k) {
    for (const auto& sw : special_symmetric_words(k)) {
      for (int N = 2; N <= 3; ++N) {
        const auto r = census::census_W(sw.word, N);
        if (r.exact_count != *r.predicted_count) {
          return fmt::format("{} at N={}: census {}, N^(b+1) = {}", sw.word.str(), N, r.exact_count,
                             *r.predicted_count);
        }
      }
    }
  }
  return {};
}

std::string containment(int max_k) {
  for (int m = 2; m <= 2 * std::min(max_k, 3); m += 2) {
    const int range = m <= 4 ? 3 : 2;
    for (const auto& p : enumerate_partitions(m)) {
      const Word w = p.to_word();
      for (int a = 1; a <= range; ++a) {
        for (int b = 1; b <= range; ++b) {
          if (!census::verify_containment(w, a, b)) return fmt::format("{} at p={}, n={}", w.str(), a, b);
        }
      }
    }
  }
  return {};
}

std::string mp_reduction(int max_k) {
  for (const char* ytext : {"1/4", "1/2", "1", "2"}) {
    const Rational y = moments::parse_rational(ytext);
    for (int k = 1; k <= max_k; ++k) {
      const auto report = moments::moment_constant(k, y, moments::ConstantSeq::marchenko_pastur(k));
      const Rational expected = moments::mp_moment(k, y);
      if (*report.exact != expected) {
        return fmt::format("k={}, y={}: {} vs {}", k, ytext, moments::to_string(*report.exact),
                           moments::to_string(expected));
      }
    }
  }
  return {};
}

std::string sandwich(int max_k) {
  for (const char* ltext : {"1/2", "1", "2"}) {
    for (const char* ytext : {"1/2", "2"}) {
      const Rational lambda = moments::parse_rational(ltext);
      const Rational y = moments::parse_rational(ytext);
      for (int k = 1; k <= std::min(max_k, 4); ++k) {
        const Rational beta = *moments::moment_sparse(k, y, lambda).exact;
        const auto s = moments::poisson_sandwich(k, y, lambda);
        // At k = 1 both sides reduce to lambda on one end, so only the weak
        // inequality can hold there.
        const bool ok = k == 1 ? (s.lower <= beta && beta <= s.upper) : (s.lower < beta && beta < s.upper);
        if (!ok) {
          return fmt::format("k={}, lambda={}, y={}: {} <= {} <= {} fails", k, ltext, ytext,
                             moments::to_string(s.lower), moments::to_string(beta), moments::to_string(s.upper));
        }
      }
    }
  }
  return {};
}

std::string grid_constant(int max_k) {
  const moments::ConstantSeq c({Rational(1), Rational(3, 2), Rational(1, 3), Rational(2), Rational(1, 5)});
  for (int k = 1; k <= std::min(max_k, 5); ++k) {
    moments::GridFunctions g;
    g.resolution = 8;
    for (int m = 1; m <= k; ++m) {
      const double v = c.at(2 * m).get_d();
      g.g[2 * m] = [v](double, double) { return v; };
    }
    const double y = 0.75;
    const double grid = moments::moment_grid(k, y, g).value;
    const double exact = moments::moment_constant(k, Rational(3, 4), c).value;
    if (std::abs(grid - exact) > 1e-10 * std::max(1.0, std::abs(exact))) {
      return fmt::format("k={}: grid {:.17g}, exact {:.17g}", k, grid, exact);
    }
  }
  return {};
}

std::string carleman_recurrence(int max_k) {
  const std::vector<Rational> bounds{1, 0, 2, 0, Rational(1, 2), 0, 3, 0, 1, 0};
  for (int m = 1; m <= std::min(2 * max_k, 10); ++m) {
    Rational brute = 0;
    for_each_partition(m, [&](const std::vector<int>& rgs) {
      std::vector<int> sizes(m, 0);
      for (int x : rgs) ++sizes[x];
      Rational term = 1;
      for (int s : sizes) {
        if (s > 0) term *= bounds[s - 1];
      }
      brute += term;
    });
    const Rational fast = moments::partition_moment_sum(bounds, m);
    if (brute != fast) return fmt::format("m={}: enumeration {}, recurrence {}", m, brute.get_str(), fast.get_str());
  }
  return {};
}

std::string philox_known_answer() {
  const auto out = rng::Philox4x32::block({0, 0, 0, 0}, {0, 0});
  const rng::Philox4x32::Counter expected{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8};
  if (out != expected) return fmt::format("got {:08x} {:08x} {:08x} {:08x}", out[0], out[1], out[2], out[3]);
  return {};
}

std::string simulation_contract(std::uint64_t seed) {
  ensemble::EnsembleConfig cfg;
  cfg.p = 24;
  cfg.n = 48;
  cfg.seed = seed;
  cfg.max_moment = 4;
  // spectral_sample enforces PSD and trace/eigenvalue agreement itself.
  const auto a = ensemble::spectral_sample(cfg, 0);
  const auto b = ensemble::spectral_sample(cfg, 0);
  if (a.moments != b.moments || a.eigenvalues != b.eigenvalues) return "repeat run is not bit-identical";
  return {};
}

std::string bijection_round_trip(int max_k) {
  for (int k = 1; k <= std::min(max_k, 4); ++k) {
    std::set<std::pair<Partition, Partition>> seen;
    for (const auto& sw : special_symmetric_words(k)) {
      const auto h = hypergraph::word_to_hypergraph(sw.word);
      if (!hypergraph::is_acyclic(h)) return sw.word.str() + " maps to a cyclic hypergraph";
      if (!seen.emplace(h.sigma(), h.tau()).second) return sw.word.str() + " collides with an earlier word";
      const Word back = hypergraph::hypergraph_to_word(h);
      if (!(back == sw.word)) return fmt::format("{} round-trips to {}", sw.word.str(), back.str());
    }
  }
  return {};
}

std::string bijection_counts(int max_k) {
  for (int k = 1; k <= std::min(max_k, 4); ++k) {
    std::map<int, std::uint64_t> ss_by_b;
    for (const auto& sw : special_symmetric_words(k)) ++ss_by_b[sw.stats.b];
    const auto counted = hypergraph::count_acyclic(k);
    if (counted.acyclic_by_b != ss_by_b) return fmt::format("k={}: acyclic counts differ from |SS_b|", k);
    if (counted.disagreements_on_condition != 0) {
      return fmt::format("k={}: pairwise and forest criteria disagree on {} instances with |sigma|+|tau|=b+1", k,
                         counted.disagreements_on_condition);
    }
  }
  return {};
}

std::string noiry_totals(int max_k) {
  for (int k = 1; k <= std::min(max_k, 4); ++k) {
    std::uint64_t total = 0;
    std::map<int, std::uint64_t> by_l;
    for (const auto& row : hypergraph::count_noiry_classes(k)) {
      total += row.count;
      by_l[row.l] += row.count;
    }
    std::map<int, std::uint64_t> census;
    for (const auto& row : count_ss(k, CountKey::EvenGenerating)) census[*row.b + 1 - *row.r_plus_1] += row.count;
    if (total != special_symmetric_words(k).size() || by_l != census) {
      return fmt::format("k={}: class total {}, |SS(2k)| {}", k, total, special_symmetric_words(k).size());
    }
  }
  return {};
}

}  // namespace

std::vector<Check> run_suite(const Options& opts) {
  const int K = opts.max_k;
  std::vector<Check> out;
  out.push_back(run_check("partition-core", "definition examples", partition_examples));
  out.push_back(run_check("partition-core", "SS pairs are the non-crossing pairs", [&] { return pair_identity(K); }));
  out.push_back(run_check("partition-core", "literal checker matches tree walks", [&] { return checker_vs_generator(K); }));
  out.push_back(run_check("partition-core", "NCE in SS in E", [&] { return inclusion_chain(K); }));
  out.push_back(run_check("partition-core", "Narayana counts", [&] { return narayana_counts(K); }));
  out.push_back(run_check("circuit-census", "S-link counts equal p^(r+1) n^(b-r)", [&] { return census_exact(K); }));
  out.push_back(run_check("circuit-census", "Wigner counts on SS words equal N^(b+1)", [&] { return wigner_exact(K); }));
  out.push_back(run_check("circuit-census", "S circuits lie in the Wigner class", [&] { return containment(K); }));
  out.push_back(run_check("moment-engine", "constant sequence reduces to Narayana sums", [&] { return mp_reduction(K); }));
  out.push_back(run_check("moment-engine", "sparse moments inside the Poisson sandwich", [&] { return sandwich(K); }));
  out.push_back(run_check("moment-engine", "constant grid matches exact moments", [&] { return grid_constant(K); }));
  out.push_back(run_check("moment-engine", "partition sum recurrence matches enumeration", [&] { return carleman_recurrence(K); }));
  out.push_back(run_check("ensemble-sim", "Philox4x32-10 known answer", philox_known_answer));
  out.push_back(run_check("ensemble-sim", "trace moments, PSD and determinism", [&] { return simulation_contract(opts.seed); }));
  out.push_back(run_check("hypergraph-bridge", "word to hypergraph round trip", [&] { return bijection_round_trip(K); }));
  out.push_back(run_check("hypergraph-bridge", "acyclic hypergraphs counted by b", [&] { return bijection_counts(K); }));
  out.push_back(run_check("hypergraph-bridge", "Noiry class totals", [&] { return noiry_totals(K); }));
  return out;
}

std::string report_json(const Options& opts, const std::vector<Check>& checks) {
  nlohmann::json j;
  j["max_k"] = opts.max_k;
  j["seed"] = opts.seed;
  auto rows = nlohmann::json::array();
  bool all = true;
  for (const auto& c : checks) {
    rows.push_back({{"module", c.module}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"seconds", c.seconds}});
    all = all && c.pass;
  }
  j["checks"] = std::move(rows);
  j["all_pass"] = all;
  return j.dump(2);
}

std::string table(const std::vector<Check>& checks) {
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.module.size() + c.name.size() + 3);
  std::string out;
  for (const auto& c : checks) {
    out += fmt::format("{:<{}}  {}  {:8.3f}s", c.module + " / " + c.name, width, c.pass ? "PASS" : "FAIL", c.seconds);
    if (!c.pass) out += "  " + c.detail;
    out += '\n';
  }
  return out;
}

}  // namespace sscov::verify
