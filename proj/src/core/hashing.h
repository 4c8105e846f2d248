// Stable content hashing used for caching, checkpoint headers, and WL labels.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace melograph {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

/// 64-bit FNV-1a over a byte string, optionally chained from a prior state.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t state = kFnvOffset) {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= kFnvPrime;
  }
  return state;
}

/// Fixed-width lowercase hex rendering of a 64-bit hash.
std::string hashToHex(std::uint64_t hash);

/// fnv1a64 rendered as 16 hex characters.
inline std::string fnv1a64Hex(std::string_view bytes) { return hashToHex(fnv1a64(bytes)); }

}  // namespace melograph
