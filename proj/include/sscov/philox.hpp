#pragma once

#include <array>
#include <cstdint>

namespace sscov::rng {

/// Philox4x32-10 (Salmon et al., Random123). Pure function of counter and key.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

/// A stream of draws for one (seed, replicate, entry) triple. The counter is
/// (entry lo, entry hi, replicate, draw block); the key is the 64-bit seed.
/// Each entry gets 2^32 blocks of 4 words, far more than any sampler uses.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint32_t replicate, std::uint64_t entry);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  double normal();
  double exponential();

 private:
  void refill();

  Philox4x32::Counter ctr_;
  Philox4x32::Key key_;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
  bool have_spare_ = false;
  double spare_ = 0;
};

}  // namespace sscov::rng
