#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sscov/partition.hpp"

namespace sscov::census {

enum class Link { S, Wigner };

/// How letter equality relates to edge equality.
///   Implied: equal letters force equal edges; distinct letters may collide.
///   Exact:   equal letters iff equal edges.
/// The closed-form count p^{r+1} n^{b-r} is exact under Implied; under Exact
/// it holds only asymptotically.
enum class MatchRule { Implied, Exact };

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct CensusOptions {
  std::uint64_t budget = kDefaultBudget;  // candidate generating-vertex assignments
  MatchRule rule = MatchRule::Implied;
};

struct CensusResult {
  Word word;
  Link link = Link::S;
  std::int64_t p = 0;
  std::int64_t n = 0;
  std::uint64_t exact_count = 0;
  std::optional<std::uint64_t> predicted_count;
};

/// Vertex sequence pi(0..2k), pi(2k) == pi(0).
using Circuit = std::span<const int>;

/// Visits every circuit in Pi_S(w) (even vertices in 1..p, odd in 1..n) or
/// Pi_W(w) (all vertices in 1..p; n ignored). Throws SizeLimitError when the
/// number of candidate generating-vertex assignments exceeds the budget.
void for_each_circuit(const Word& w, Link link, std::int64_t p, std::int64_t n,
                      const CensusOptions& opts, const std::function<void(Circuit)>& visit);

/// Number of candidate assignments the search would try.
std::uint64_t candidate_assignments(const Word& w, Link link, std::int64_t p, std::int64_t n);

CensusResult census_S(const Word& w, std::int64_t p, std::int64_t n, const CensusOptions& opts = {});
CensusResult census_W(const Word& w, std::int64_t N, const CensusOptions& opts = {});

/// p^{r+1} n^{b-r} for special symmetric words, nullopt otherwise.
std::optional<std::uint64_t> predicted_count_S(const Word& w, std::int64_t p, std::int64_t n);

/// Every circuit of Pi_S(w) also lies in the Wigner class on the range
/// 1..max(p, n).
bool verify_containment(const Word& w, std::int64_t p, std::int64_t n,
                        const CensusOptions& opts = {});

std::string link_name(Link link);
std::string census_csv_header();
std::string census_csv_row(const CensusResult& r);

}  // namespace sscov::census
