#include "sscov/partition.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include "json.hpp"

#include "sscov/errors.hpp"

namespace sscov {

namespace {

constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

}  // namespace

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(int m, std::vector<Block> blocks) : m_(m), blocks_(std::move(blocks)) {
  if (m < 1) throw InputError(fmt::format("partition ground set size must be >= 1, got {}", m));
  std::vector<int> seen(m + 1, 0);
  for (auto& block : blocks_) {
    if (block.empty()) throw InputError("partition blocks must be non-empty");
    std::sort(block.begin(), block.end());
    for (int e : block) {
      if (e < 1 || e > m) throw InputError(fmt::format("element {} outside {{1..{}}}", e, m));
      if (seen[e]++) throw InputError(fmt::format("element {} appears in two blocks", e));
    }
  }
  for (int e = 1; e <= m; ++e) {
    if (!seen[e]) throw InputError(fmt::format("element {} is not covered by any block", e));
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const Block& a, const Block& b) { return a.front() < b.front(); });
}

Partition Partition::from_word(const Word& w) {
  std::vector<Block> blocks(w.distinct_letters());
  for (int i = 1; i <= w.length(); ++i) blocks[w.at(i)].push_back(i);
  return Partition(w.length(), std::move(blocks));
}

std::vector<int> Partition::block_of() const {
  std::vector<int> owner(m_);
  for (int b = 0; b < block_count(); ++b) {
    for (int e : blocks_[b]) owner[e - 1] = b;
  }
  return owner;
}

Word Partition::to_word() const { return Word(block_of()); }

std::string Partition::to_json() const { return nlohmann::json(blocks_).dump(); }

// ---------------------------------------------------------------------------
// Word

Word::Word(std::vector<int> letters) : letters_(std::move(letters)) {
  int next = 0;
  for (int x : letters_) {
    if (x < 0 || x > next) throw InputError("word is not in canonical first-occurrence form");
    if (x == next) ++next;
  }
  distinct_ = next;
}

Word Word::canonicalize(const std::vector<int>& sequence) {
  std::map<int, int> relabel;
  std::vector<int> out;
  out.reserve(sequence.size());
  for (int x : sequence) {
    auto [it, inserted] = relabel.try_emplace(x, static_cast<int>(relabel.size()));
    out.push_back(it->second);
  }
  return Word(std::move(out));
}

Word Word::parse(std::string_view text) {
  if (text.empty()) throw InputError("empty word");
  std::vector<int> raw(text.begin(), text.end());
  return canonicalize(raw);
}

std::vector<int> Word::multiplicities() const {
  std::vector<int> mult(distinct_, 0);
  for (int x : letters_) ++mult[x];
  return mult;
}

std::string Word::str() const {
  if (distinct_ > static_cast<int>(kAlphabet.size())) {
    throw InputError(fmt::format("word with {} letters cannot be rendered", distinct_));
  }
  std::string s;
  s.reserve(letters_.size());
  for (int x : letters_) s.push_back(kAlphabet[x]);
  return s;
}

// ---------------------------------------------------------------------------
// Statistics and simple predicates

WordStatistics word_statistics(const Word& w) {
  WordStatistics st;
  st.b = w.distinct_letters();
  st.first_occurrence.assign(st.b, 0);
  st.r_plus_1 = 1;  // pi(0)
  for (int i = 1; i <= w.length(); ++i) {
    int letter = w.at(i);
    if (st.first_occurrence[letter] == 0) {
      st.first_occurrence[letter] = i;
      if (i % 2 == 0) ++st.r_plus_1;
    }
  }
  return st;
}

bool is_pair(const Partition& p) {
  return std::all_of(p.blocks().begin(), p.blocks().end(),
                     [](const Block& b) { return b.size() == 2; });
}

bool has_even_blocks(const Partition& p) {
  return std::all_of(p.blocks().begin(), p.blocks().end(),
                     [](const Block& b) { return b.size() % 2 == 0; });
}

bool is_non_crossing(const Partition& p) {
  // Crossing iff some element strictly between two successive elements of a
  // block belongs to a block that escapes that gap.
  const auto owner = p.block_of();
  const auto& blocks = p.blocks();
  for (const auto& block : blocks) {
    for (std::size_t s = 0; s + 1 < block.size(); ++s) {
      for (int e = block[s] + 1; e < block[s + 1]; ++e) {
        const auto& other = blocks[owner[e - 1]];
        if (other.front() < block[s] || other.back() > block[s + 1]) return false;
      }
    }
  }
  return true;
}

PartitionClass classify(const Partition& p) {
  PartitionClass c;
  c.is_pair = is_pair(p);
  c.is_even_blocks = has_even_blocks(p);
  c.is_non_crossing = is_non_crossing(p);
  c.is_special_symmetric = is_special_symmetric(p);
  c.block_count = p.block_count();
  c.r_plus_1 = word_statistics(p.to_word()).r_plus_1;
  return c;
}

// ---------------------------------------------------------------------------
// Enumeration

PartitionEnumerator::PartitionEnumerator(int m, EnumerationLimits limits)
    : m_(m), rgs_(m, 0), prefix_max_(m, 0) {
  if (m < 1) throw InputError(fmt::format("ground set size must be >= 1, got {}", m));
  if (m > limits.max_ground_set) {
    throw SizeLimitError(fmt::format(
        "enumerating partitions of {{1..{}}} exceeds the enumeration cap of {}", m,
        limits.max_ground_set));
  }
}

bool PartitionEnumerator::next() {
  if (!started_) {
    started_ = true;
    return true;
  }
  for (int i = m_ - 1; i >= 1; --i) {
    if (rgs_[i] <= prefix_max_[i - 1]) {
      ++rgs_[i];
      prefix_max_[i] = std::max(prefix_max_[i - 1], rgs_[i]);
      for (int j = i + 1; j < m_; ++j) {
        rgs_[j] = 0;
        prefix_max_[j] = prefix_max_[i];
      }
      return true;
    }
  }
  return false;
}

Word PartitionEnumerator::word() const { return Word(rgs_); }

Partition PartitionEnumerator::partition() const { return Partition::from_word(word()); }

std::vector<Partition> enumerate_partitions(int m, EnumerationLimits limits) {
  std::vector<Partition> out;
  PartitionEnumerator it(m, limits);
  while (it.next()) out.push_back(it.partition());
  return out;
}

void for_each_partition(int m, const std::function<void(const std::vector<int>&)>& visit,
                        EnumerationLimits limits) {
  PartitionEnumerator it(m, limits);
  while (it.next()) visit(it.growth_string());
}

std::uint64_t bell_number(int m) {
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i < m; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.back();
}

}  // namespace sscov
