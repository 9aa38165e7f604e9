#pragma once

// Number-theoretic transform over the prime 2^64 - 2^32 + 1.

#include <cstdint>
#include <vector>

#include "model.hpp"

namespace gerry::ntt {

inline constexpr std::uint64_t kPrime = 0xffffffff00000001ULL;
inline constexpr std::uint64_t kGenerator = 7;
inline constexpr int kMaxLog = 32;

inline std::uint64_t reduce128(unsigned __int128 x) {
  auto lo = static_cast<std::uint64_t>(x);
  auto hi = static_cast<std::uint64_t>(x >> 64);
  std::uint64_t hh = hi >> 32, hl = hi & 0xffffffffULL;
  std::uint64_t t0 = lo - hh;
  if (lo < hh) t0 -= 0xffffffffULL;  // borrow: 2^64 = 2^32 - 1 (mod p)
  std::uint64_t t1 = hl * 0xffffffffULL;
  std::uint64_t r = t0 + t1;
  if (r < t1) r += 0xffffffffULL;  // carry
  return r >= kPrime ? r - kPrime : r;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return reduce128(static_cast<unsigned __int128>(a) * b);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  if (s < a || s >= kPrime) s -= kPrime;
  return s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + (kPrime - b); }

inline std::uint64_t pow(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

/// In-place transform of length 2^log_n (inverse includes the 1/N factor).
class Transform {
 public:
  explicit Transform(int log_n) : log_n_(log_n), n_(std::size_t{1} << log_n) {
    if (log_n < 0 || log_n > kMaxLog) throw Error("transform length out of range");
    roots_.assign(n_ / 2 + 1, 1);
    iroots_.assign(n_ / 2 + 1, 1);
    std::uint64_t w = pow(kGenerator, (kPrime - 1) >> log_n);
    std::uint64_t iw = pow(w, kPrime - 2);
    for (std::size_t i = 1; i <= n_ / 2; ++i) {
      roots_[i] = mul(roots_[i - 1], w);
      iroots_[i] = mul(iroots_[i - 1], iw);
    }
    inv_n_ = pow(n_ % kPrime, kPrime - 2);
  }

  std::size_t size() const { return n_; }

  void forward(std::vector<std::uint64_t>& a) const { run(a, roots_); }

  void inverse(std::vector<std::uint64_t>& a) const {
    run(a, iroots_);
    for (auto& x : a) x = mul(x, inv_n_);
  }

 private:
  void run(std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& roots) const {
    if (a.size() != n_) throw Error("transform input has wrong length");
    for (std::size_t i = 1, j = 0; i < n_; ++i) {
      std::size_t bit = n_ >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      std::size_t half = len >> 1, step = n_ / len;
      for (std::size_t i = 0; i < n_; i += len)
        for (std::size_t j = 0; j < half; ++j) {
          std::uint64_t u = a[i + j];
          std::uint64_t v = mul(a[i + j + half], roots[j * step]);
          a[i + j] = add(u, v);
          a[i + j + half] = sub(u, v);
        }
    }
  }

  int log_n_;
  std::size_t n_;
  std::vector<std::uint64_t> roots_, iroots_;
  std::uint64_t inv_n_ = 1;
};

}  // namespace gerry::ntt
