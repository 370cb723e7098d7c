#include "sscov/circuit_census.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "sscov/errors.hpp"

namespace sscov::census {

namespace {

// Normalized edge key. Under the S link an edge is (row vertex, column
// vertex): for odd i the row end is pi(i-1), for even i it is pi(i). The two
// L1/L2 cases of the link (same parity: componentwise; opposite parity:
// swapped) collapse to componentwise equality of this key. Under the Wigner
// link the key is the unordered pair (min, max).
struct EdgeKey {
  int first = 0;
  int second = 0;
  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

class CircuitSearch {
 public:
  CircuitSearch(const Word& w, Link link, std::int64_t p, std::int64_t n, MatchRule rule,
                const std::function<void(Circuit)>& visit)
      : w_(w),
        link_(link),
        p_(p),
        n_(n),
        rule_(rule),
        visit_(visit),
        length_(w.length()),
        stats_(word_statistics(w)),
        pi_(length_ + 1, 0),
        keys_(stats_.b) {}

  void run() {
    for (int v = 1; v <= range(0); ++v) {
      pi_[0] = v;
      step(1);
    }
  }

 private:
  int range(int index) const {
    if (link_ == Link::Wigner) return static_cast<int>(p_);
    return static_cast<int>(index % 2 == 0 ? p_ : n_);
  }

  EdgeKey key_at(int i) const {
    const int u = pi_[i - 1];
    const int v = pi_[i];
    if (link_ == Link::Wigner) return {std::min(u, v), std::max(u, v)};
    return i % 2 == 1 ? EdgeKey{u, v} : EdgeKey{v, u};
  }

  bool collides(int letter, const EdgeKey& key) const {
    if (rule_ != MatchRule::Exact) return false;
    for (int other = 0; other < letter; ++other) {
      if (keys_[other] == key) return true;
    }
    return false;
  }

  void step(int i) {
    if (i > length_) {
      visit_(Circuit(pi_.data(), pi_.size()));
      return;
    }
    const int letter = w_.at(i);
    if (stats_.first_occurrence[letter] == i) {
      // Generating vertex; the closing vertex pi(2k) is pinned to pi(0).
      const int lo = i == length_ ? pi_[0] : 1;
      const int hi = i == length_ ? pi_[0] : range(i);
      for (int v = lo; v <= hi; ++v) {
        pi_[i] = v;
        const EdgeKey key = key_at(i);
        if (collides(letter, key)) continue;
        keys_[letter] = key;
        step(i + 1);
      }
      return;
    }

    // A repeated letter fixes pi(i) from pi(i-1): there is never more than
    // one continuation, so no full-tuple fallback is needed.
    const EdgeKey& key = keys_[letter];
    const int prev = pi_[i - 1];
    int next;
    if (link_ == Link::S) {
      if (i % 2 == 1) {
        if (prev != key.first) return;
        next = key.second;
      } else {
        if (prev != key.second) return;
        next = key.first;
      }
    } else {
      if (prev == key.first) {
        next = key.second;
      } else if (prev == key.second) {
        next = key.first;
      } else {
        return;
      }
    }
    if (i == length_ && next != pi_[0]) return;
    pi_[i] = next;
    step(i + 1);
  }

  const Word& w_;
  Link link_;
  std::int64_t p_;
  std::int64_t n_;
  MatchRule rule_;
  const std::function<void(Circuit)>& visit_;
  int length_;
  WordStatistics stats_;
  std::vector<int> pi_;
  std::vector<EdgeKey> keys_;
};

void check_ranges(std::int64_t p, std::int64_t n) {
  if (p < 1 || n < 1) throw InputError(fmt::format("vertex ranges must be >= 1 (p={}, n={})", p, n));
  if (p > std::numeric_limits<int>::max() || n > std::numeric_limits<int>::max()) {
    throw InputError("vertex range exceeds int");
  }
}

}  // namespace

std::uint64_t candidate_assignments(const Word& w, Link link, std::int64_t p, std::int64_t n) {
  const auto stats = word_statistics(w);
  auto range = [&](int index) -> std::uint64_t {
    if (link == Link::Wigner) return static_cast<std::uint64_t>(p);
    return static_cast<std::uint64_t>(index % 2 == 0 ? p : n);
  };
  std::uint64_t total = range(0);
  for (int pos : stats.first_occurrence) {
    if (pos != w.length()) total = saturating_mul(total, range(pos));
  }
  return total;
}

void for_each_circuit(const Word& w, Link link, std::int64_t p, std::int64_t n,
                      const CensusOptions& opts, const std::function<void(Circuit)>& visit) {
  if (w.length() == 0) throw InputError("empty word");
  check_ranges(p, n);
  const auto candidates = candidate_assignments(w, link, p, n);
  if (candidates > opts.budget) {
    throw SizeLimitError(fmt::format("census of '{}' needs {} candidate assignments, budget is {}",
                                     w.str(), candidates, opts.budget));
  }
  CircuitSearch(w, link, p, n, opts.rule, visit).run();
}

CensusResult census_S(const Word& w, std::int64_t p, std::int64_t n, const CensusOptions& opts) {
  CensusResult r{w, Link::S, p, n, 0, predicted_count_S(w, p, n)};
  for_each_circuit(w, Link::S, p, n, opts, [&](Circuit) { ++r.exact_count; });
  return r;
}

CensusResult census_W(const Word& w, std::int64_t N, const CensusOptions& opts) {
  CensusResult r{w, Link::Wigner, N, N, 0, std::nullopt};
  if (is_special_symmetric(Partition::from_word(w))) {
    // Limit ratio is 1 for SS words: N^{b+1}.
    std::uint64_t value = 1;
    for (int i = 0; i <= w.distinct_letters(); ++i) value = saturating_mul(value, N);
    r.predicted_count = value;
  }
  for_each_circuit(w, Link::Wigner, N, N, opts, [&](Circuit) { ++r.exact_count; });
  return r;
}

std::optional<std::uint64_t> predicted_count_S(const Word& w, std::int64_t p, std::int64_t n) {
  if (!is_special_symmetric(Partition::from_word(w))) return std::nullopt;
  const auto stats = word_statistics(w);
  std::uint64_t value = 1;
  auto times = [&](std::int64_t factor) {
    const auto next = saturating_mul(value, static_cast<std::uint64_t>(factor));
    if (next == std::numeric_limits<std::uint64_t>::max()) {
      throw SizeLimitError(fmt::format("predicted count for '{}' overflows 64 bits", w.str()));
    }
    value = next;
  };
  for (int i = 0; i < stats.r_plus_1; ++i) times(p);
  for (int i = 0; i < stats.b - stats.r_plus_1 + 1; ++i) times(n);
  return value;
}

bool verify_containment(const Word& w, std::int64_t p, std::int64_t n, const CensusOptions& opts) {
  const int len = w.length();
  bool contained = true;
  for_each_circuit(w, Link::S, p, n, opts, [&](Circuit pi) {
    if (!contained) return;
    for (int i = 1; i <= len && contained; ++i) {
      const auto ei = std::minmax(pi[i - 1], pi[i]);
      for (int j = i + 1; j <= len; ++j) {
        const bool same_letter = w.at(i) == w.at(j);
        const bool same_edge = ei == std::minmax(pi[j - 1], pi[j]);
        if (same_letter && !same_edge) contained = false;
        if (opts.rule == MatchRule::Exact && !same_letter && same_edge) contained = false;
        if (!contained) break;
      }
    }
  });
  return contained;
}

std::string link_name(Link link) { return link == Link::S ? "S" : "W"; }

std::string census_csv_header() { return "word,link,p,n,exact,predicted\n"; }

std::string census_csv_row(const CensusResult& r) {
  return fmt::format("{},{},{},{},{},{}\n", r.word.str(), link_name(r.link), r.p, r.n, r.exact_count,
                     r.predicted_count ? std::to_string(*r.predicted_count) : std::string{});
}

}  // namespace sscov::census
