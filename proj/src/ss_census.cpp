#include <algorithm>
#include <map>
#include <tuple>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "sscov/errors.hpp"
#include "sscov/partition.hpp"

namespace sscov {

std::vector<CountRow> count_ss(int k, CountKey by, SsFilter filter, EnumerationLimits limits) {
  if (k < 1) throw InputError(fmt::format("k must be >= 1, got {}", k));
  const int m = 2 * k;

  // Finest grouping; projected onto the requested key below.
  using Key = std::tuple<int, int, std::vector<int>>;
  std::map<Key, std::uint64_t> fine;

  PartitionEnumerator it(m, limits);
  std::vector<int> sizes;
  while (it.next()) {
    const auto& rgs = it.growth_string();
    sizes.assign(m, 0);
    int nb = 0;
    for (int x : rgs) {
      ++sizes[x];
      nb = std::max(nb, x + 1);
    }
    sizes.resize(nb);
    if (filter == SsFilter::PairOnly &&
        !std::all_of(sizes.begin(), sizes.end(), [](int s) { return s == 2; })) {
      continue;
    }
    const Partition p = it.partition();
    if (!is_special_symmetric(p)) continue;
    const auto stats = word_statistics(it.word());
    std::vector<int> multiset = sizes;
    std::sort(multiset.rbegin(), multiset.rend());
    ++fine[{stats.b, stats.r_plus_1, std::move(multiset)}];
  }

  std::map<std::tuple<int, int, std::vector<int>>, std::uint64_t> grouped;
  for (const auto& [key, count] : fine) {
    const auto& [b, r1, multiset] = key;
    switch (by) {
      case CountKey::Total: grouped[{-1, -1, {}}] += count; break;
      case CountKey::Blocks: grouped[{b, -1, {}}] += count; break;
      case CountKey::EvenGenerating: grouped[{b, r1, {}}] += count; break;
      case CountKey::BlockSizes: grouped[{-1, -1, multiset}] += count; break;
    }
  }
  if (grouped.empty() && by == CountKey::Total) grouped[{-1, -1, {}}] = 0;

  std::vector<CountRow> rows;
  for (const auto& [key, count] : grouped) {
    const auto& [b, r1, multiset] = key;
    CountRow row;
    row.k = k;
    if (b >= 0) row.b = b;
    if (r1 >= 0) row.r_plus_1 = r1;
    row.block_sizes = multiset;
    row.count = count;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string count_table_csv(const std::vector<CountRow>& rows, CountKey by) {
  std::string out;
  if (by == CountKey::BlockSizes) {
    out += "k,block_sizes,count\n";
    for (const auto& r : rows) {
      out += fmt::format("{},{},{}\n", r.k, fmt::join(r.block_sizes, " "), r.count);
    }
    return out;
  }
  out += "k,b,r_plus_1,count\n";
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string{}; };
  for (const auto& r : rows) out += fmt::format("{},{},{},{}\n", r.k, opt(r.b), opt(r.r_plus_1), r.count);
  return out;
}

}  // namespace sscov
