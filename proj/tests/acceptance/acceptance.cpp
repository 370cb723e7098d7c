// One PASS/FAIL line per acceptance criterion, with timing and the tolerance
// used. Exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>

#include <fmt/format.h>

#include "sscov/circuit_census.hpp"
#include "sscov/config.hpp"
#include "sscov/ensemble.hpp"
#include "sscov/hypergraph.hpp"
#include "sscov/moment_engine.hpp"
#include "sscov/partition.hpp"
#include "unit/oracles.hpp"

#ifndef SSCOV_CONFIG_DIR
#define SSCOV_CONFIG_DIR "configs"
#endif

using namespace sscov;
using moments::Rational;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    else if (detail.size() < 400) detail += "; " + why;
    pass = false;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.fail(fmt::format("exception: {}", e.what()));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) out.fail(fmt::format("took {:.1f} s > {:.0f} s", secs, limit_seconds));
  if (!out.pass) ++failures;
  fmt::print("{} {:>2} {} ({:.2f} s){}{}\n", out.pass ? "PASS" : "FAIL", id, title, secs,
             out.detail.empty() ? "" : ": ", out.detail);
  std::cout.flush();
}

std::string rat(const Rational& q) { return moments::to_string(q); }

Outcome classification_examples() {
  Outcome o;
  if (!is_special_symmetric(Partition(8, {{1, 2, 5, 6}, {3, 4, 7, 8}}))) o.fail("{{1,2,5,6},{3,4,7,8}} rejected");
  if (is_special_symmetric(Partition(8, {{1, 2, 6, 7}, {3, 4, 5, 8}}))) o.fail("{{1,2,6,7},{3,4,5,8}} accepted");
  return o;
}

Outcome pair_identity() {
  Outcome o;
  for (int k = 1; k <= 5; ++k) {
    std::set<Partition> ss_pairs, nc_pairs;
    for (const auto& b : oracle::all_partitions(2 * k)) {
      const Partition p(2 * k, b);
      if (!is_pair(p)) continue;
      if (is_special_symmetric(p)) ss_pairs.insert(p);
      if (!oracle::crossing(b, 2 * k)) nc_pairs.insert(p);
    }
    if (ss_pairs != nc_pairs) o.fail(fmt::format("2k={}: SS pairs differ from non-crossing pairs", 2 * k));
    if (ss_pairs.size() != oracle::catalan(k)) {
      o.fail(fmt::format("2k={}: {} SS pairs, Catalan {}", 2 * k, ss_pairs.size(), oracle::catalan(k)));
    }
  }
  return o;
}

Outcome narayana_counts() {
  Outcome o;
  for (int k = 1; k <= 6; ++k) {
    std::map<int, std::uint64_t> by_r;
    for (const auto& row : count_ss(k, CountKey::EvenGenerating, SsFilter::PairOnly)) by_r[*row.r_plus_1 - 1] += row.count;
    for (int r = 0; r < k; ++r) {
      // (1/(r+1)) C(k,r) C(k-1,r)
      const std::uint64_t want = oracle::binomial(k, r) * oracle::binomial(k - 1, r) / (r + 1);
      if (by_r[r] != want) o.fail(fmt::format("k={} r={}: {} vs {}", k, r, by_r[r], want));
    }
  }
  return o;
}

Outcome census_exactness() {
  Outcome o;
  for (int k = 1; k <= 3; ++k) {
    for (const auto& b : oracle::all_partitions(2 * k)) {
      const auto letters = oracle::letters_of(b, 2 * k);
      const Word w = Word::canonicalize(letters);
      if (oracle::is_tree_walk(letters)) {
        const auto [nb, r1] = oracle::generating_counts(letters);
        for (int p = 1; p <= 4; ++p) {
          for (int n = 1; n <= 4; ++n) {
            const std::uint64_t got = census::census_S(w, p, n).exact_count;
            const auto want = static_cast<std::uint64_t>(std::pow(p, r1) * std::pow(n, nb + 1 - r1));
            if (got != want) o.fail(fmt::format("{} p={} n={}: {} vs {}", w.str(), p, n, got, want));
          }
        }
      } else {
        const int nb = static_cast<int>(b.size());
        double prev = 2;
        for (int N = 2; N <= 4; ++N) {
          const double ratio = static_cast<double>(census::census_S(w, N, N).exact_count) / std::pow(N, nb + 1);
          if (ratio > prev) o.fail(fmt::format("{}: ratio rises at N={}", w.str(), N));
          if (N == 4 && !(ratio < 1)) o.fail(fmt::format("{}: ratio {} at N=4", w.str(), ratio));
          prev = ratio;
        }
      }
    }
  }
  return o;
}

Outcome mp_recovery() {
  Outcome o;
  for (const char* ys : {"1/4", "1/2", "1", "2"}) {
    const Rational y = moments::parse_rational(ys);
    for (int k = 1; k <= 6; ++k) {
      const Rational a = moments::mp_moment(k, y);
      const Rational b = *moments::moment_constant(k, y, moments::ConstantSeq::marchenko_pastur(k)).exact;
      if (a != b) o.fail(fmt::format("y={} k={}: {} vs {}", ys, k, rat(a), rat(b)));
    }
  }
  ensemble::EnsembleConfig cfg;
  cfg.family = ensemble::Family::IidStandardized;
  cfg.p = 250;
  cfg.n = 500;
  cfg.replicates = 30;
  cfg.max_moment = 4;
  const auto r = ensemble::run_experiment(cfg);
  std::string means;
  for (int k = 1; k <= 4; ++k) {
    const double want = moments::mp_moment(k, Rational(1, 2)).get_d();
    const double rel = std::abs(r.mean[k - 1] - want) / want;
    means += fmt::format("{}{:.4f}/{:.4f}", k == 1 ? "MC/limit " : ", ", r.mean[k - 1], want);
    if (rel > (k <= 3 ? 0.05 : 0.10)) o.fail(fmt::format("k={}: relative error {:.3f}", k, rel));
  }
  if (o.pass) o.detail = means;
  return o;
}

Outcome sparse_sandwich() {
  Outcome o;
  int strict_k2plus = 0, weak_k1 = 0;
  for (const char* ls : {"1/2", "1", "2"}) {
    for (const char* ys : {"1/2", "2"}) {
      const Rational lambda = moments::parse_rational(ls), y = moments::parse_rational(ys);
      for (int k = 1; k <= 4; ++k) {
        const Rational beta = *moments::moment_sparse(k, y, lambda).exact;
        const auto s = moments::poisson_sandwich(k, y, lambda);
        const bool strict = s.lower < beta && beta < s.upper;
        if (k >= 2) strict_k2plus += strict;
        else weak_k1 += s.lower <= beta && beta <= s.upper;
        if (!strict) {
          o.fail(fmt::format("lambda={} y={} k={}: {} not strictly inside ({}, {})", ls, ys, k, rat(beta),
                             rat(s.lower), rat(s.upper)));
        }
      }
    }
  }
  ensemble::EnsembleConfig cfg;
  cfg.family = ensemble::Family::SparseBernoulli;
  cfg.lambda = 3;
  cfg.p = 500;
  cfg.n = 1000;
  cfg.replicates = 30;
  cfg.max_moment = 3;
  const auto r = ensemble::run_experiment(cfg);
  for (int k = 1; k <= 3; ++k) {
    const auto s = moments::poisson_sandwich(k, Rational(1, 2), 3);
    const double lo = s.lower.get_d() - 3 * r.stderr_[k - 1];
    const double hi = s.upper.get_d() + 3 * r.stderr_[k - 1];
    if (r.mean[k - 1] < lo || r.mean[k - 1] > hi) {
      o.fail(fmt::format("simulation k={}: {:.4f} outside [{:.4f}, {:.4f}]", k, r.mean[k - 1], lo, hi));
    }
  }
  const std::string summary = fmt::format(
      "[k >= 2 strictly inside in {}/18 cases; k = 1 inside the closed interval in {}/6 cases]", strict_k2plus,
      weak_k1);
  o.detail = o.detail.empty() ? summary : o.detail + " " + summary;
  return o;
}

Outcome hypergraph_bijection() {
  Outcome o;
  for (int k = 1; k <= 4; ++k) {
    std::map<int, std::uint64_t> ss_by_b;
    for (const auto& sw : special_symmetric_words(k)) {
      ++ss_by_b[sw.stats.b];
      const auto h = hypergraph::word_to_hypergraph(sw.word);
      if (!hypergraph::is_acyclic(h)) o.fail(sw.word.str() + " gives a cyclic hypergraph");
      if (hypergraph::hypergraph_to_word(h) != sw.word) o.fail(sw.word.str() + " does not round-trip");
    }
    const auto c = hypergraph::count_acyclic(k);
    if (c.acyclic_by_b != ss_by_b) o.fail(fmt::format("k={}: acyclic counts by b differ", k));
  }
  return o;
}

Outcome noiry_totals() {
  Outcome o;
  for (int k = 1; k <= 4; ++k) {
    std::uint64_t total = 0;
    for (const auto& row : hypergraph::count_noiry_classes(k)) total += row.count;
    std::uint64_t ss = 0;
    for (const auto& row : count_ss(k, CountKey::Total)) ss += row.count;
    if (total != ss) o.fail(fmt::format("k={}: {} vs {}", k, total, ss));
  }
  return o;
}

Outcome quadrature() {
  Outcome o;
  const moments::ConstantSeq c({moments::parse_rational("1.5"), moments::parse_rational("0.5"),
                                moments::parse_rational("2"), moments::parse_rational("0.25")});
  for (double y : {0.5, 1.0, 2.0}) {
    for (int k = 1; k <= 4; ++k) {
      moments::GridFunctions g;
      g.resolution = 16;
      for (int m = 1; m <= k; ++m) {
        const double v = c.at(2 * m).get_d();
        g.g[2 * m] = [v](double, double) { return v; };
      }
      const double grid = moments::moment_grid(k, y, g).value;
      const double exact = moments::moment_constant(k, Rational(y), c).value;
      if (std::abs(grid - exact) > 1e-10 * std::max(1.0, exact)) {
        o.fail(fmt::format("y={} k={}: {:.17g} vs {:.17g}", y, k, grid, exact));
      }
    }
  }
  moments::GridFunctions xu;
  xu.resolution = 128;
  xu.g[2] = [](double x, double u) { return x * u; };
  const double v = moments::moment_grid(1, 1.0, xu).value;
  if (std::abs(v - 0.25) > 1e-6) o.fail(fmt::format("g2 = xu: {:.10f}", v));
  return o;
}

Outcome figure(const std::string& file) {
  Outcome o;
  const auto f = config::read_config(std::string(SSCOV_CONFIG_DIR) + "/" + file);
  const auto cfg = config::ensemble_config(f.section("simulate"), f.directory(), {"gnuplot", "title"});
  const auto r = ensemble::run_experiment(cfg);
  const auto want = static_cast<std::uint64_t>(cfg.p) * cfg.replicates;
  if (r.histogram.total() != want) o.fail(fmt::format("{}: mass {} vs {}", file, r.histogram.total(), want));
  if (r.histogram.outside != 0) o.fail(fmt::format("{}: {} values outside the bins", file, r.histogram.outside));
  if (r.histogram.edges.front() < 0) o.fail(fmt::format("{}: support starts at {}", file, r.histogram.edges.front()));
  for (const auto& s : r.samples) {
    if (s.eigenvalues.front() < 0) o.fail(fmt::format("{}: negative eigenvalue", file));
  }
  if (o.pass) o.detail = fmt::format("{} bins on [{:.3f}, {:.3f}]", r.histogram.counts.size(), r.histogram.edges.front(), r.histogram.edges.back());
  return o;
}

Outcome unbounded_bound() {
  Outcome o;
  moments::GridFunctions mp;
  mp.resolution = 32;
  for (int s = 2; s <= 8; s += 2) mp.g[s] = [s](double, double) { return s == 2 ? 1.0 : 0.0; };
  for (int t = 1; t <= 4; ++t) {
    const double bound = moments::unbounded_support_bound(1, t, [](double) { return 1.0; });
    const double value = moments::moment_grid(t, 1.0, mp).value;
    if (!(bound <= value)) o.fail(fmt::format("t={}: bound {} > {}", t, bound, value));
  }
  return o;
}

}  // namespace

int main() {
  criterion(1, "SS classification examples", 1, classification_examples);
  criterion(2, "SS pair partitions are the non-crossing pairs (Catalan)", 30, pair_identity);
  criterion(3, "Narayana counts of pair SS words, k <= 6", 60, narayana_counts);
  criterion(4, "circuit census exactness, 2k <= 6, p,n <= 4", 300, census_exactness);
  criterion(5, "Marchenko-Pastur recovery, exact and Monte Carlo", 300, mp_recovery);
  criterion(6, "sparse moments strictly inside the sandwich; simulation within +-3 se", 300, sparse_sandwich);
  criterion(7, "hypergraph round trip and acyclic counts, 2k <= 8", 120, hypergraph_bijection);
  criterion(8, "Noiry class totals, 2k <= 8", 0, noiry_totals);
  criterion(9, "quadrature consistency", 0, quadrature);
  criterion(10, "profile figure runs (fig1, fig2)", 0, [] {
    Outcome a = figure("fig1.toml");
    const Outcome b = figure("fig2.toml");
    if (!b.pass) a.fail(b.detail);
    else if (a.pass) a.detail = "fig1 " + a.detail + "; fig2 " + b.detail;
    return a;
  });
  criterion(11, "unbounded-support lower bound, m = 1, t <= 4", 0, unbounded_bound);
  fmt::print("{} of 11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
