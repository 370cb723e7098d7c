#pragma once

#include <map>
#include <string>
#include <vector>

#include "sscov/partition.hpp"

namespace sscov::hypergraph {

/// Vertices are the blocks of sigma, edges the blocks of tau, both
/// partitions of {1..k}. Index i of sigma stands for the even vertex pi(2i-2)
/// and index i of tau for the odd vertex pi(2i-1); tau-index i touches
/// sigma-indices i and i+1 (cyclically, so k touches 1).
class Hypergraph {
 public:
  Hypergraph(Partition sigma, Partition tau);

  int k() const { return sigma_.ground_size(); }
  const Partition& sigma() const { return sigma_; }
  const Partition& tau() const { return tau_; }

  /// incidence()[w] lists the sigma-blocks touched by tau-block w, ascending.
  const std::vector<std::vector<int>>& incidence() const { return incidence_; }

  /// Distinct (sigma-block, tau-block) incident pairs; equals b for
  /// hypergraphs produced from words.
  int incident_pairs() const { return pairs_; }

  std::string to_json() const;

 private:
  Partition sigma_;
  Partition tau_;
  std::vector<std::vector<int>> incidence_;
  int pairs_ = 0;
};

struct Acyclicity {
  bool pairwise = false;  // no two edges share two or more vertices
  bool forest = false;    // bipartite incidence graph has no cycle
  bool acyclic() const { return pairwise && forest; }
  bool agree() const { return pairwise == forest; }
};

Acyclicity check_acyclicity(const Hypergraph& h);
bool is_acyclic(const Hypergraph& h);

/// Throws DomainError unless w is special symmetric.
Hypergraph word_to_hypergraph(const Word& w);

/// Inverse of word_to_hypergraph. Throws DomainError for cyclic input or
/// when |sigma| + |tau| != b + 1.
Word hypergraph_to_word(const Hypergraph& h);

struct BijectionCount {
  int k = 0;
  std::map<int, std::uint64_t> acyclic_by_b;  // acyclic, |sigma|+|tau| = b+1
  std::uint64_t pairs_checked = 0;
  std::uint64_t disagreements = 0;            // pairwise != forest, any pair
  std::uint64_t disagreements_on_condition = 0;  // among |sigma|+|tau| = b+1
  std::vector<std::pair<Partition, Partition>> examples;  // first few disagreements
};

/// Exhaustive over P(k) x P(k).
BijectionCount count_acyclic(int k, EnumerationLimits limits = {});

struct NoiryRow {
  int a = 0;                     // distinct letters
  int l = 0;                     // odd generating vertices
  std::vector<int> multiset;     // letter multiplicities, descending
  std::uint64_t count = 0;
};

std::vector<NoiryRow> count_noiry_classes(int k);
std::string noiry_csv(int k, const std::vector<NoiryRow>& rows);

}  // namespace sscov::hypergraph
