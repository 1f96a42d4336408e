#pragma once

#include <cstdint>
#include <string_view>

namespace lrrt {

/// SplitMix64 generator (Steele, Lea, Flood 2014). All randomness in the
/// library flows through this type so that datasets and planner runs are
/// bit-reproducible across platforms and ports:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// `uniform()` maps the top 53 bits to [0, 1); `below(n)` uses modulo with
/// rejection of the low 2^64 mod n outputs, so it is exactly uniform.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next();
  result_type operator()() { return next(); }

  /// Uniform double in [0, 1).
  double uniform();
  /// Uniform integer in [0, n). `n` must be positive.
  std::uint64_t below(std::uint64_t n);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

 private:
  std::uint64_t state_;
};

/// The SplitMix64 output finalizer as a stateless 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

/// 64-bit FNV-1a over the bytes of `s`.
std::uint64_t fnv1a64(std::string_view s);

/// Folds `value` into `seed`: mix64(seed ^ mix64(value + golden)).
std::uint64_t combine_seed(std::uint64_t seed, std::uint64_t value);

}  // namespace lrrt
