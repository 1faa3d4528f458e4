#pragma once

#include <cstdint>
#include <limits>

namespace opdyn {

/// SplitMix64 (Steele, Lea, Flood 2014). Small state makes it cheap to
/// instantiate one independent stream per Monte-Carlo walk. Satisfies
/// UniformRandomBitGenerator, so it plugs into <random> distributions.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  /// Stream for (seed, stream_id); distinct ids give decorrelated streams.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t stream_id) noexcept {
    return SplitMix64(mix(seed ^ mix(stream_id + 0x632be59bd9b4e019ULL)));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace opdyn
