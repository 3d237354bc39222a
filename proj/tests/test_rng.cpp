#include <doctest.h>

#include <cmath>
#include <vector>

#include "navtrust/rng.hpp"

using namespace navtrust;

TEST_CASE("identical seed paths derive bit-identical streams") {
  const SeedPath path{42, "ep-001", 7, "motion_blur"};
  RandomStream a = derive_rng(path);
  RandomStream b = derive_rng(path);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("changing any seed path field changes the stream") {
  const SeedPath base{0, "ep-001", 0, "spatter"};

  SUBCASE("frame index 0 vs 1") {
    SeedPath other = base;
    other.frame_index = 1;
    CHECK(derive_rng(base).next_u64() != derive_rng(other).next_u64());
  }
  SUBCASE("op name") {
    SeedPath other = base;
    other.op_name = "flare";
    CHECK(derive_rng(base).next_u64() != derive_rng(other).next_u64());
  }
  SUBCASE("episode id") {
    SeedPath other = base;
    other.episode_id = "ep-002";
    CHECK(derive_rng(base).next_u64() != derive_rng(other).next_u64());
  }
  SUBCASE("global seed") {
    SeedPath other = base;
    other.global_seed = 1;
    CHECK(derive_rng(base).next_u64() != derive_rng(other).next_u64());
  }
}

TEST_CASE("string fields are length-separated in the key") {
  // ("ab" + "c") must not alias ("a" + "bc") across the field boundary
  const SeedPath a{0, "ab", 0, "c"};
  const SeedPath b{0, "a", 0, "bc"};
  CHECK(seed_key(a) != seed_key(b));
}

TEST_CASE("next_double stays in [0, 1) and open_double in (0, 1)") {
  RandomStream rng(12345);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.open_double();
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("below produces every value in range") {
  RandomStream rng(7);
  std::vector<int> counts(10, 0);
  for (int i = 0; i < 10000; ++i) {
    const auto v = rng.below(10);
    REQUIRE(v < 10);
    ++counts[v];
  }
  for (int c : counts) CHECK(c > 800);  // crude uniformity floor
}

TEST_CASE("normal draws have the requested moments") {
  RandomStream rng(99);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = rng.normal(2.0, 3.0);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(mean == doctest::Approx(2.0).epsilon(0.02));
  CHECK(std::sqrt(var) == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("poisson draws match their mean and variance") {
  SUBCASE("small mean (Knuth sampler)") {
    RandomStream rng(1);
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto v = static_cast<double>(rng.poisson(4.5));
      sum += v;
      sq += v * v;
    }
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(4.5).epsilon(0.02));
    CHECK(sq / n - mean * mean == doctest::Approx(4.5).epsilon(0.05));
  }
  SUBCASE("large mean (PTRS sampler)") {
    RandomStream rng(2);
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto v = static_cast<double>(rng.poisson(400.0));
      sum += v;
      sq += v * v;
    }
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(400.0).epsilon(0.005));
    CHECK(sq / n - mean * mean == doctest::Approx(400.0).epsilon(0.05));
  }
  SUBCASE("zero mean") {
    RandomStream rng(3);
    CHECK(rng.poisson(0.0) == 0);
  }
}
