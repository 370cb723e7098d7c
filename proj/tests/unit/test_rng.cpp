#include <cmath>
#include <set>

#include "doctest.h"
#include "sscov/philox.hpp"

using sscov::rng::Philox4x32;
using sscov::rng::Stream;

TEST_CASE("Philox4x32-10 known answers") {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::block(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::block(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::block(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  Stream a(7, 0, 12), b(7, 0, 12);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u32() == b.next_u32());
  std::set<std::uint64_t> firsts;
  for (std::uint64_t seed : {1ULL, 2ULL})
    for (std::uint32_t rep : {0U, 1U})
      for (std::uint64_t entry : {0ULL, 1ULL, 1ULL << 33}) firsts.insert(Stream(seed, rep, entry).next_u64());
  CHECK(firsts.size() == 12);
}

TEST_CASE("uniform, normal and exponential sanity") {
  Stream s(20230917, 3, 99);
  const int N = 200000;
  double su = 0, sn = 0, sn2 = 0, sn4 = 0, se = 0;
  double umin = 1, umax = 0;
  for (int i = 0; i < N; ++i) {
    const double u = s.uniform();
    umin = std::min(umin, u);
    umax = std::max(umax, u);
    su += u;
    const double z = s.normal();
    sn += z;
    sn2 += z * z;
    sn4 += z * z * z * z;
    se += s.exponential();
  }
  CHECK(umin > 0.0);
  CHECK(umax < 1.0);
  CHECK(std::abs(su / N - 0.5) < 0.005);
  CHECK(std::abs(sn / N) < 0.01);
  CHECK(std::abs(sn2 / N - 1) < 0.015);
  CHECK(std::abs(sn4 / N - 3) < 0.1);
  CHECK(std::abs(se / N - 1) < 0.015);
}
