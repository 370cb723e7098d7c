#include "sscov/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "json.hpp"
#include "sscov/errors.hpp"

namespace sscov::hypergraph {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

// Distinct (sigma-block, tau-block) pairs in step order: step 2i-1 joins
// sigma-index i to tau-index i, step 2i joins tau-index i to sigma-index i+1.
std::vector<std::pair<int, int>> step_pairs(const Partition& sigma, const Partition& tau) {
  const int k = sigma.ground_size();
  const auto s = sigma.block_of();
  const auto t = tau.block_of();
  std::vector<std::pair<int, int>> steps;
  steps.reserve(2 * k);
  for (int i = 1; i <= k; ++i) {
    steps.emplace_back(s[i - 1], t[i - 1]);
    steps.emplace_back(s[i % k], t[i - 1]);
  }
  return steps;
}

Partition partition_of_labels(const std::vector<int>& labels) {
  return Partition::from_word(Word::canonicalize(labels));
}

}  // namespace

Hypergraph::Hypergraph(Partition sigma, Partition tau) : sigma_(std::move(sigma)), tau_(std::move(tau)) {
  if (sigma_.ground_size() != tau_.ground_size()) {
    throw InputError(fmt::format("sigma and tau must partition the same set ({} vs {})", sigma_.ground_size(),
                                 tau_.ground_size()));
  }
  std::vector<std::set<int>> touched(tau_.block_count());
  std::set<std::pair<int, int>> pairs;
  for (const auto& [sb, tb] : step_pairs(sigma_, tau_)) {
    touched[tb].insert(sb);
    pairs.emplace(sb, tb);
  }
  for (const auto& t : touched) incidence_.emplace_back(t.begin(), t.end());
  pairs_ = static_cast<int>(pairs.size());
}

std::string Hypergraph::to_json() const {
  nlohmann::json j;
  j["k"] = k();
  j["sigma"] = sigma_.blocks();
  j["tau"] = tau_.blocks();
  j["incidence"] = incidence_;
  const Acyclicity a = check_acyclicity(*this);
  j["pairwise_acyclic"] = a.pairwise;
  j["forest"] = a.forest;
  j["acyclic"] = a.acyclic();
  return j.dump();
}

Acyclicity check_acyclicity(const Hypergraph& h) {
  Acyclicity out;
  const auto& inc = h.incidence();
  out.pairwise = true;
  for (std::size_t a = 0; a < inc.size() && out.pairwise; ++a) {
    for (std::size_t b = a + 1; b < inc.size(); ++b) {
      std::vector<int> common;
      std::set_intersection(inc[a].begin(), inc[a].end(), inc[b].begin(), inc[b].end(),
                            std::back_inserter(common));
      if (common.size() >= 2) {
        out.pairwise = false;
        break;
      }
    }
  }
  const int nv = h.sigma().block_count();
  UnionFind uf(nv + h.tau().block_count());
  out.forest = true;
  for (std::size_t w = 0; w < inc.size() && out.forest; ++w) {
    for (int v : inc[w]) {
      if (!uf.unite(v, nv + static_cast<int>(w))) {
        out.forest = false;
        break;
      }
    }
  }
  return out;
}

bool is_acyclic(const Hypergraph& h) { return check_acyclicity(h).acyclic(); }

Hypergraph word_to_hypergraph(const Word& w) {
  if (!is_special_symmetric(Partition::from_word(w))) {
    throw DomainError(fmt::format("'{}' is not special symmetric", w.str()));
  }
  // Walk the tree: a first occurrence opens a new vertex, a repeat crosses
  // back over the letter's edge.
  const int len = w.length();
  const int k = len / 2;
  std::vector<int> vertex(len, 0);
  std::vector<std::pair<int, int>> ends(w.distinct_letters(), {-1, -1});
  int fresh = 1;
  int current = 0;
  for (int i = 1; i <= len; ++i) {
    const int letter = w.at(i);
    if (ends[letter].first < 0) {
      ends[letter] = {current, fresh};
      current = fresh++;
    } else {
      current = current == ends[letter].first ? ends[letter].second : ends[letter].first;
    }
    if (i < len) vertex[i] = current;
  }
  std::vector<int> even(k), odd(k);
  for (int i = 1; i <= k; ++i) {
    even[i - 1] = vertex[2 * i - 2];
    odd[i - 1] = vertex[2 * i - 1];
  }
  return Hypergraph(partition_of_labels(even), partition_of_labels(odd));
}

Word hypergraph_to_word(const Hypergraph& h) {
  const Acyclicity a = check_acyclicity(h);
  if (!a.acyclic()) throw DomainError("hypergraph has a cycle");
  const int b = h.incident_pairs();
  if (h.sigma().block_count() + h.tau().block_count() != b + 1) {
    throw DomainError(fmt::format("|sigma| + |tau| = {} but b + 1 = {}",
                                  h.sigma().block_count() + h.tau().block_count(), b + 1));
  }
  std::map<std::pair<int, int>, int> label;
  std::vector<int> sequence;
  for (const auto& pair : step_pairs(h.sigma(), h.tau())) {
    const auto it = label.emplace(pair, static_cast<int>(label.size())).first;
    sequence.push_back(it->second);
  }
  Word w = Word::canonicalize(sequence);
  if (!is_special_symmetric(Partition::from_word(w))) {
    throw DomainError(fmt::format("hypergraph produced the non special symmetric word '{}'", w.str()));
  }
  return w;
}

BijectionCount count_acyclic(int k, EnumerationLimits limits) {
  if (k < 1) throw InputError(fmt::format("k must be >= 1, got {}", k));
  const auto parts = enumerate_partitions(k, limits);
  BijectionCount out;
  out.k = k;
  for (const auto& sigma : parts) {
    for (const auto& tau : parts) {
      const Hypergraph h(sigma, tau);
      const Acyclicity a = check_acyclicity(h);
      const int b = h.incident_pairs();
      const bool condition = sigma.block_count() + tau.block_count() == b + 1;
      ++out.pairs_checked;
      if (!a.agree()) {
        ++out.disagreements;
        if (condition) ++out.disagreements_on_condition;
        if (out.examples.size() < 4) out.examples.emplace_back(sigma, tau);
      }
      if (a.acyclic() && condition) ++out.acyclic_by_b[b];
    }
  }
  return out;
}

std::vector<NoiryRow> count_noiry_classes(int k) {
  std::map<std::tuple<int, int, std::vector<int>>, std::uint64_t> table;
  for (const SsWord& sw : special_symmetric_words(k)) {
    std::vector<int> ms = sw.multiplicities;
    std::sort(ms.begin(), ms.end(), std::greater<>());
    ++table[{sw.stats.b, sw.stats.odd_generating(), ms}];
  }
  std::vector<NoiryRow> rows;
  for (const auto& [key, count] : table) {
    rows.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), count});
  }
  return rows;
}

std::string noiry_csv(int k, const std::vector<NoiryRow>& rows) {
  std::string out = "k,a,l,multiset,count\n";
  for (const auto& r : rows) out += fmt::format("{},{},{},{},{}\n", k, r.a, r.l, fmt::join(r.multiset, " "), r.count);
  return out;
}

}  // namespace sscov::hypergraph
