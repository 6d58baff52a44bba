#pragma once

#include <cstdint>
#include <random>

namespace plasmoscan {

/// splitmix64 mixer; the named substream scheme for all Monte Carlo in this
/// project ("splitmix64/mt19937_64" in manifests).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent substream seed derived from (master seed, stream index).
/// Per-pixel engines make parallel runs reproducible for any thread count.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index * 0xD1B54A32D192ED03ULL + 1));
}

inline std::mt19937_64 make_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace plasmoscan
