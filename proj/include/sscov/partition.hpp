#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sscov {

inline constexpr int kDefaultEnumerationCap = 14;

/// Largest k for which SS(2k) is generated directly as tree walks.
inline constexpr int kMaxGeneratedHalfLength = 10;

/// Runtime bound on exhaustive enumeration over P(m); Bell(14) ~ 1.9e8.
struct EnumerationLimits {
  int max_ground_set = kDefaultEnumerationCap;
};

class Word;

using Block = std::vector<int>;

/// A set partition of {1..m}. Blocks are sorted ascending and ordered by
/// their least element; the constructor normalizes and validates.
class Partition {
 public:
  Partition(int m, std::vector<Block> blocks);

  static Partition from_word(const Word& w);

  int ground_size() const { return m_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }

  /// block_of()[e - 1] is the index of the block containing element e.
  std::vector<int> block_of() const;

  Word to_word() const;
  std::string to_json() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  int m_;
  std::vector<Block> blocks_;
};

/// Canonical letter sequence (restricted growth string). Letters are stored
/// 0-based; letter j first appears before letter j+1. Rendered as a, b, c, ...
class Word {
 public:
  Word() = default;
  /// Throws InputError unless `letters` is already canonical.
  explicit Word(std::vector<int> letters);

  /// Relabels an arbitrary letter sequence by first occurrence.
  static Word canonicalize(const std::vector<int>& sequence);
  /// Parses "abba"-style text; any distinct characters are accepted and
  /// relabeled by first occurrence.
  static Word parse(std::string_view text);

  int length() const { return static_cast<int>(letters_.size()); }
  int distinct_letters() const { return distinct_; }
  /// 0-based letter at 1-based position i (1 <= i <= length()).
  int at(int position) const { return letters_[position - 1]; }
  const std::vector<int>& letters() const { return letters_; }

  /// Number of occurrences of each letter, indexed by letter.
  std::vector<int> multiplicities() const;

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<int> letters_;
  int distinct_ = 0;
};

struct WordStatistics {
  int b = 0;          // distinct letters
  int r_plus_1 = 0;   // even generating vertices, pi(0) included
  std::vector<int> first_occurrence;  // 1-based position of each letter's first use

  int odd_generating() const { return b + 1 - r_plus_1; }
};

WordStatistics word_statistics(const Word& w);

struct PartitionClass {
  bool is_pair = false;
  bool is_even_blocks = false;
  bool is_non_crossing = false;
  bool is_special_symmetric = false;
  int block_count = 0;
  int r_plus_1 = 0;
};

bool is_pair(const Partition& p);
bool has_even_blocks(const Partition& p);
bool is_non_crossing(const Partition& p);

/// Literal membership test for SS(m); see special_symmetric.cpp for the
/// reading of both conditions.
bool is_special_symmetric(const Partition& p);

PartitionClass classify(const Partition& p);

/// Lexicographic stream of all partitions of {1..m} as restricted growth
/// strings. Throws SizeLimitError when m exceeds the configured cap.
class PartitionEnumerator {
 public:
  explicit PartitionEnumerator(int m, EnumerationLimits limits = {});

  /// Advances to the next partition; false once the stream is exhausted.
  /// The first call yields the one-block partition.
  bool next();

  const std::vector<int>& growth_string() const { return rgs_; }
  Word word() const;
  Partition partition() const;

 private:
  int m_;
  bool started_ = false;
  std::vector<int> rgs_;
  std::vector<int> prefix_max_;
};

/// Materializes the stream; convenient for small m.
std::vector<Partition> enumerate_partitions(int m, EnumerationLimits limits = {});

void for_each_partition(int m, const std::function<void(const std::vector<int>&)>& visit,
                        EnumerationLimits limits = {});

std::uint64_t bell_number(int m);

/// A special symmetric word with its generating-vertex statistics.
struct SsWord {
  Word word;
  WordStatistics stats;
  std::vector<int> multiplicities;  // indexed by letter
};

/// SS(2k) generated as closed walks on trees in which every new letter opens
/// a fresh vertex. Sorted in the same lexicographic order as
/// PartitionEnumerator. Cached per k; safe to call concurrently.
const std::vector<SsWord>& special_symmetric_words(int k);

enum class CountKey { Total, Blocks, EvenGenerating, BlockSizes };
enum class SsFilter { All, PairOnly };

struct CountRow {
  int k = 0;
  std::optional<int> b;
  std::optional<int> r_plus_1;
  std::vector<int> block_sizes;  // sorted descending, BlockSizes key only
  std::uint64_t count = 0;
};

/// Exhaustive census of SS(2k) by literal classification of every partition
/// of {1..2k}.
std::vector<CountRow> count_ss(int k, CountKey by, SsFilter filter = SsFilter::All,
                               EnumerationLimits limits = {});

std::string count_table_csv(const std::vector<CountRow>& rows, CountKey by);

}  // namespace sscov
