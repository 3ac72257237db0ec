#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "hopset/rng.hpp"

using namespace hopset;

TEST_CASE("same seed reproduces the stream exactly") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds give different streams") {
  Rng a(1), b(2);
  int matches = 0;
  for (int i = 0; i < 100; ++i)
    if (a.next_u64() == b.next_u64()) ++matches;
  CHECK(matches == 0);
}

TEST_CASE("split streams are reproducible and distinct") {
  Rng base(7);
  Rng s1 = base.split(1);
  Rng s2 = base.split(2);
  Rng s1_again = base.split(1);
  bool all_equal = true, any_equal = false;
  for (int i = 0; i < 50; ++i) {
    const auto x = s1.next_u64();
    all_equal = all_equal && (x == s1_again.next_u64());
    any_equal = any_equal || (x == s2.next_u64());
  }
  CHECK(all_equal);
  CHECK_FALSE(any_equal);
}

TEST_CASE("uniform_u64 respects inclusive bounds") {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto x = rng.uniform_u64(5, 9);
    CHECK(x >= 5);
    CHECK(x <= 9);
  }
  CHECK(rng.uniform_u64(17, 17) == 17);
}

TEST_CASE("uniform_i64 covers negative ranges") {
  Rng rng(4);
  bool saw_low = false, saw_high = false;
  for (int i = 0; i < 2000; ++i) {
    const auto x = rng.uniform_i64(-3, 3);
    CHECK(x >= -3);
    CHECK(x <= 3);
    saw_low = saw_low || x == -3;
    saw_high = saw_high || x == 3;
  }
  CHECK(saw_low);
  CHECK(saw_high);
}

TEST_CASE("chance at the extremes") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    CHECK_FALSE(rng.chance(0.0));
    CHECK(rng.chance(1.0));
  }
}

TEST_CASE("next_double stays in [0,1)") {
  Rng rng(6);
  for (int i = 0; i < 10000; ++i) {
    const double d = rng.next_double();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
  }
}

TEST_CASE("exponential draws are nonnegative with mean near 1/rate") {
  Rng rng(8);
  const int kDraws = 100000;
  double sum = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = rng.exponential(1.0);
    REQUIRE(x >= 0.0);
    sum += x;
  }
  const double mean = sum / kDraws;
  CHECK(std::abs(mean - 1.0) < 0.05);  // law of large numbers at rate 1
}

TEST_CASE("exponential respects the rate parameter") {
  Rng rng(9);
  const int kDraws = 100000;
  double sum = 0;
  for (int i = 0; i < kDraws; ++i) sum += rng.exponential(4.0);
  CHECK(std::abs(sum / kDraws - 0.25) < 0.02);
}

TEST_CASE("label hashing is deterministic and collision-free on our labels") {
  CHECK(hash_label("cover/rep0") == hash_label("cover/rep0"));
  const std::vector<std::string> labels = {"cover", "cover/rep0", "cover/rep1",
                                           "mssp",  "s3/cover",   "s4/cover"};
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      CHECK(hash_label(labels[i]) != hash_label(labels[j]));
}
