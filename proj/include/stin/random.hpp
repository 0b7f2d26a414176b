#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace stin {

/// SplitMix64 finalizer. Bijective on 64-bit words; used to turn structured
/// keys (seed, replication, purpose) into well-mixed engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Mixes an ordered list of words into one key.
constexpr std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) noexcept {
  return splitmix64(a ^ splitmix64(b + 0x632be59bd9b4e019ULL));
}

/// Maps a 64-bit word to a double in [0, 1) using the top 53 bits.
constexpr double to_unit_interval(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Independent sub-streams of one replication.
enum class StreamPurpose : std::uint64_t {
  geometry = 1,
  policy = 2,
  fading = 3,
  sensing = 4,
};

/// A seedable random stream. Satisfies UniformRandomBitGenerator so it can
/// drive standard distributions; the convenience draws below avoid
/// implementation-defined distribution code where that is cheap to do.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  result_type operator()() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return to_unit_interval(engine_()); }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  /// Unit-mean exponential.
  double exponential() { return -std::log1p(-uniform()); }

  std::uint64_t poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(engine_);
  }

  /// Draws a fresh seed, used to fork child streams.
  std::uint64_t fork_seed() { return splitmix64(engine_()); }

 private:
  std::mt19937_64 engine_;
};

/// Counter-based child stream: depends only on (master, replication, purpose),
/// never on how many draws other streams have consumed.
inline RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t replication,
                                  StreamPurpose purpose) {
  const auto key = mix_key(mix_key(master_seed, replication), static_cast<std::uint64_t>(purpose));
  return RandomStream(key);
}

}  // namespace stin
