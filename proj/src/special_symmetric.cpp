#include <map>
#include <mutex>

#include <fmt/format.h>

#include "sscov/errors.hpp"
#include "sscov/partition.hpp"

namespace sscov {

// Condition (i) is applied to the last block, then recursively to the last
// block of what remains once it is removed: after removing blocks the
// survivors are compared by order, so "consecutive" means adjacent among the
// surviving elements. Applying (i) to the last block alone accepts
// partitions with odd blocks (aaabbbcc), which cannot be special symmetric.
//
// Condition (ii) counts positions inside each gap starting at 1 for the
// element right after the left endpoint. Equal odd/even counts per foreign
// block also make the count even.
bool is_special_symmetric(const Partition& p) {
  const int m = p.ground_size();
  if (m % 2 != 0) return false;

  const auto owner = p.block_of();
  const auto& blocks = p.blocks();
  const int nb = p.block_count();

  // (i), peeling blocks from the last one.
  std::vector<char> alive(m, 1);
  for (int j = nb - 1; j >= 0; --j) {
    int run = 0;
    for (int e = 0; e < m; ++e) {
      if (!alive[e]) continue;
      if (owner[e] == j) {
        ++run;
      } else {
        if (run % 2 != 0) return false;
        run = 0;
      }
    }
    if (run % 2 != 0) return false;
    for (int e : blocks[j]) alive[e - 1] = 0;
  }

  // (ii)
  std::vector<int> odd(nb, 0), even(nb, 0);
  for (const auto& block : blocks) {
    for (std::size_t s = 0; s + 1 < block.size(); ++s) {
      const int left = block[s];
      const int right = block[s + 1];
      for (int e = left + 1; e < right; ++e) {
        const int pos = e - left;
        (pos % 2 != 0 ? odd : even)[owner[e - 1]]++;
      }
      bool balanced = true;
      for (int e = left + 1; e < right; ++e) {
        const int c = owner[e - 1];
        if (odd[c] != even[c]) balanced = false;
        odd[c] = even[c] = 0;
      }
      if (!balanced) return false;
    }
  }
  return true;
}

namespace {

// Closed walks of length 2k from a root on a tree that grows by one fresh
// vertex per new letter. Choices are tried in increasing letter order so the
// emitted words come out lexicographically sorted.
class TreeWalkGenerator {
 public:
  explicit TreeWalkGenerator(int k) : length_(2 * k) {}

  std::vector<SsWord> run() {
    depth_.push_back(0);
    walk(0, 0);
    return std::move(out_);
  }

 private:
  struct Edge {
    int upper;
    int lower;
  };

  void walk(int step, int current) {
    const int remaining = length_ - step;
    if (remaining == 0) {
      if (current == 0) emit();
      return;
    }
    if (depth_[current] > remaining) return;

    for (int letter = 0; letter < static_cast<int>(edges_.size()); ++letter) {
      const Edge& e = edges_[letter];
      int target;
      if (e.upper == current) {
        target = e.lower;
      } else if (e.lower == current) {
        target = e.upper;
      } else {
        continue;
      }
      letters_.push_back(letter);
      walk(step + 1, target);
      letters_.pop_back();
    }

    // A fresh vertex must be able to get back to the root in time.
    if (depth_[current] + 1 <= remaining - 1) {
      const int fresh = static_cast<int>(depth_.size());
      depth_.push_back(depth_[current] + 1);
      edges_.push_back({current, fresh});
      letters_.push_back(static_cast<int>(edges_.size()) - 1);
      walk(step + 1, fresh);
      letters_.pop_back();
      edges_.pop_back();
      depth_.pop_back();
    }
  }

  void emit() {
    Word w(letters_);
    auto stats = word_statistics(w);
    auto mult = w.multiplicities();
    out_.push_back({std::move(w), std::move(stats), std::move(mult)});
  }

  int length_;
  std::vector<int> depth_;
  std::vector<Edge> edges_;
  std::vector<int> letters_;
  std::vector<SsWord> out_;
};

}  // namespace

const std::vector<SsWord>& special_symmetric_words(int k) {
  static std::mutex mutex;
  static std::map<int, std::vector<SsWord>> cache;
  if (k < 1) throw InputError(fmt::format("k must be >= 1, got {}", k));
  if (k > kMaxGeneratedHalfLength) {
    throw SizeLimitError(fmt::format("SS(2k) generation for k = {} exceeds the cap k <= {}", k,
                                     kMaxGeneratedHalfLength));
  }
  std::lock_guard lock(mutex);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, TreeWalkGenerator(k).run()).first;
  return it->second;
}

}  // namespace sscov
