#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace maxmean {

/// SplitMix64 finalizer; used to derive independent substream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Generator for substream `stream` of `seed`. The engine's output sequence
/// is fixed by the standard, so streams are reproducible across platforms.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL)));
}

/// Uniform on (0, 1], 53 random bits.
inline double uniform_open0(std::mt19937_64& gen) {
  return static_cast<double>((gen() >> 11) + 1) * 0x1.0p-53;
}

/// Unit exponential by inversion.
inline double exponential(std::mt19937_64& gen) { return -std::log(uniform_open0(gen)); }

}  // namespace maxmean
