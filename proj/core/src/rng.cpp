#include "navtrust/rng.hpp"

#include <cmath>

#include "navtrust/error.hpp"

namespace navtrust {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// FNV-1a over the bytes plus the length, so adjacent string fields cannot
// alias each other across the field boundary.
std::uint64_t hash_string(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  h ^= s.size();
  return h * 0x100000001B3ULL;
}

std::uint64_t fold(std::uint64_t h, std::uint64_t v) {
  return mix64(h + kGamma + v);
}

}  // namespace

std::uint64_t RandomStream::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double RandomStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::open_double() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t RandomStream::below(std::uint64_t n) {
  if (n == 0) throw ValidationError("below(0) is undefined");
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

double RandomStream::normal(double mean, double stddev) {
  if (has_spare_) {
    has_spare_ = false;
    return mean + stddev * spare_;
  }
  const double u1 = open_double();
  const double u2 = next_double();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return mean + stddev * radius * std::cos(angle);
}

std::uint64_t RandomStream::poisson(double mean) {
  if (!(mean >= 0.0)) throw ValidationError("poisson mean must be >= 0");
  if (mean == 0.0) return 0;

  if (mean < 30.0) {
    // Knuth: count uniforms until their product drops below exp(-mean).
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double product = next_double();
    while (product > limit) {
      ++k;
      product *= next_double();
    }
    return k;
  }

  // PTRS transformed rejection (Hormann 1993), exact for mean >= 10.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    double u = next_double() - 0.5;
    double v = next_double();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        k * log_mean - mean - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

std::uint64_t seed_key(const SeedPath& path) {
  std::uint64_t h = fold(0x6E617674727573ULL, path.global_seed);
  h = fold(h, hash_string(path.episode_id));
  h = fold(h, static_cast<std::uint64_t>(path.frame_index));
  h = fold(h, hash_string(path.op_name));
  return h;
}

RandomStream derive_rng(const SeedPath& path) {
  return RandomStream(seed_key(path));
}

}  // namespace navtrust
