#pragma once

#include <cstdint>
#include <string>

namespace navtrust {

/// Addresses one random stream inside a benchmark run. Identical paths
/// always derive identical streams, so frames can be corrupted in any order
/// (or in parallel) without changing a single output byte.
struct SeedPath {
  std::uint64_t global_seed = 0;
  std::string episode_id;
  std::int64_t frame_index = 0;
  std::string op_name;
};

/// Counter-based generator (splitmix64 core). The whole stream is a pure
/// function of its 64-bit key; draws never touch global state.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64();

  /// Uniform draw in [0, 1) with 53 bits of resolution.
  double next_double();

  /// Uniform draw in the open interval (0, 1); safe to feed into quantile
  /// functions and logarithms.
  double open_double();

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Unbiased integer draw in [0, n); rejection-sampled.
  std::uint64_t below(std::uint64_t n);

  bool bernoulli(double p) { return next_double() < p; }

  /// Gaussian draw via Box-Muller; the spare variate is cached.
  double normal(double mean = 0.0, double stddev = 1.0);

  /// Exact Poisson sampling: Knuth multiplication for small means,
  /// Hormann's PTRS transformed rejection for large ones.
  std::uint64_t poisson(double mean);

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// 64-bit key mixing all four SeedPath fields with domain separation.
std::uint64_t seed_key(const SeedPath& path);

RandomStream derive_rng(const SeedPath& path);

}  // namespace navtrust
