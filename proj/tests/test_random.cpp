#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "permqio/random.hpp"

using permqio::RandomStream;

TEST_CASE("mix64 matches the published SplitMix64 sequence for seed 0") {
  // Reference outputs of splitmix64 started from state 0.
  const std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
  CHECK(permqio::mix64(golden) == 0xE220A8397B1DCDAFULL);
  CHECK(permqio::mix64(2 * golden) == 0x6E789E6AA1B965F4ULL);
  CHECK(permqio::mix64(3 * golden) == 0x06C45D188009454FULL);
}

TEST_CASE("equal seeds give equal streams") {
  RandomStream a(42), b(42), c(43);
  std::vector<std::uint64_t> xa, xb, xc;
  for (int i = 0; i < 100; ++i) {
    xa.push_back(a.next_u64());
    xb.push_back(b.next_u64());
    xc.push_back(c.next_u64());
  }
  CHECK(xa == xb);
  CHECK(xa != xc);
  CHECK(a == b);
  CHECK(a.counter() == 100);
}

TEST_CASE("split children are distinct and do not advance the parent") {
  RandomStream parent(7);
  const RandomStream before = parent;
  std::set<std::uint64_t> firsts;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    RandomStream child = parent.split(i);
    firsts.insert(child.next_u64());
  }
  CHECK(firsts.size() == 1000);
  CHECK(parent == before);
  CHECK(RandomStream::derive(7, 3, 1) == RandomStream(7).split(3).split(1));
  CHECK(!(RandomStream::derive(7, 3, 1) == RandomStream::derive(7, 1, 3)));
}

TEST_CASE("uniform lies in [0, 1) with mean near one half") {
  RandomStream rng(1);
  double sum = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // sd of the mean is sqrt(1/12 / draws) ~ 9.1e-4
  CHECK(std::abs(sum / draws - 0.5) < 4e-3);
}

TEST_CASE("below is in range and roughly uniform") {
  RandomStream rng(99);
  const std::uint64_t bound = 7;
  std::vector<int> counts(bound, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) {
    const auto v = rng.below(bound);
    REQUIRE(v < bound);
    ++counts[v];
  }
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - 10000.0) * (c - 10000.0) / 10000.0;
  CHECK(chi2 < 16.812);  // chi-square 99% quantile, 6 d.o.f.
  CHECK(rng.below(1) == 0);
}
