#pragma once

// Arithmetic modulo the Mersenne prime 2^61 - 1.

#include <cstdint>

namespace gerry::mersenne {

inline constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t reduce(std::uint64_t x) {
  x = (x & kMod) + (x >> 61);
  return x >= kMod ? x - kMod : x;
}

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kMod ? s - kMod : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kMod - b; }

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(z) & kMod;
  std::uint64_t hi = static_cast<std::uint64_t>(z >> 61);
  return reduce(lo + hi);
}

inline std::uint64_t pow(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t inv(std::uint64_t a) { return pow(a, kMod - 2); }

}  // namespace gerry::mersenne
