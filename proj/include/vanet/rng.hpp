#pragma once

#include <cstdint>
#include <random>

namespace vanet {

// mt19937_64 output is fixed by the standard, so streams are reproducible
// across compilers. Distributions are hand-rolled for the same reason.
using Rng = std::mt19937_64;

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based seed for one independent stream.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t grid_index,
                                    std::uint64_t trial_index,
                                    std::uint64_t stream = 0) noexcept {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ grid_index);
  h = mix64(h ^ trial_index);
  return mix64(h ^ stream);
}

// Uniform on (0, 1].
inline double uniform_open_closed(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Uniform on [0, 1).
inline double uniform_closed_open(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace vanet
