#pragma once

#include <cstdint>
#include <random>

namespace scanplan {

// Random streams
// --------------
// Every stream is a std::mt19937_64 whose seed is derived with the SplitMix64
// finalizer. Seeds for sub-streams are built by folding indices into a parent
// seed with `mix_seed`, so any block of any sweep cell can be regenerated in
// isolation and results never depend on evaluation order.

constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Child seed for sub-stream `index` of `parent`.
constexpr std::uint64_t mix_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(parent) ^ splitmix64(index + 0x632be59bd9b4e019ull));
}

using Engine = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace scanplan
