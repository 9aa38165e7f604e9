#pragma once

// GF(2^l) for 1 <= l <= 32, and the group algebra GF(2^l)[Z_2^D] whose
// elements are coefficient vectors indexed by D-bit group elements, with
// product given by XOR-convolution.

#include <cstdint>
#include <random>
#include <vector>

#include "model.hpp"

namespace gerry {

class GF2L {
 public:
  static constexpr int kMaxDegree = 32;

  explicit GF2L(int ell) : ell_(ell) {
    if (ell < 1 || ell > kMaxDegree) throw Error("field degree must be in 1..32");
    poly_ = kPolys[ell];
    if (ell <= 16) build_tables();
  }

  int degree() const { return ell_; }
  std::uint32_t order_mask() const {
    return ell_ == 32 ? 0xffffffffu : ((std::uint32_t{1} << ell_) - 1);
  }
  /// Low bits of the reduction polynomial x^l + poly().
  std::uint32_t poly() const { return poly_; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) return exp_[log_[a] + log_[b]];
    return slow_mul(a, b);
  }

  std::uint32_t random(std::mt19937_64& rng) const {
    return static_cast<std::uint32_t>(rng()) & order_mask();
  }

  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t r = 0;
    for (int i = 0; i < ell_; ++i)
      if ((b >> i) & 1) r ^= std::uint64_t{a} << i;
    for (int i = 2 * ell_ - 2; i >= ell_; --i)
      if ((r >> i) & 1) r ^= (std::uint64_t{1} << i) ^ (std::uint64_t{poly_} << (i - ell_));
    return static_cast<std::uint32_t>(r);
  }

  bool has_tables() const { return !exp_.empty(); }
  std::uint32_t log(std::uint32_t a) const { return log_[a]; }
  std::uint32_t exp(std::uint32_t e) const { return exp_[e]; }

 private:
  void build_tables() {
    const std::uint32_t q1 = (std::uint32_t{1} << ell_) - 1;
    exp_.assign(2 * q1 + 2, 0);
    log_.assign(q1 + 1, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < q1; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = slow_mul(x, ell_ == 1 ? 1 : 2);
    }
    for (std::uint32_t i = q1; i < exp_.size(); ++i) exp_[i] = exp_[i - q1];
  }

  // Primitive polynomials, lower terms only (x^l implied).
  static constexpr std::uint32_t kPolys[kMaxDegree + 1] = {
      0,
      0x1,                                      // x + 1
      0x3,        0x3,        0x3,  0x5,  0x3,  0x3,
      0x1d,                                     // x^8 + x^4 + x^3 + x^2 + 1
      0x11,       0x9,        0x5,  0x53, 0x1b, 0x443, 0x3,
      0x100b,                                   // x^16 + x^12 + x^3 + x + 1
      0x9,        0x81,       0x27, 0x9,  0x5,  0x3,  0x21,
      0x87,       0x9,        0x47, 0x27, 0x9,  0x5,  0x800007, 0x9,
      0x400007};

  int ell_;
  std::uint32_t poly_ = 0;
  std::vector<std::uint32_t> exp_, log_;
};

/// Element of GF(2^l)[Z_2^D], stored densely (2^D coefficients).
struct GroupAlgebraElement {
  int dim = 0;
  std::vector<std::uint32_t> coef;

  static GroupAlgebraElement zero(int dim) {
    return GroupAlgebraElement{dim, std::vector<std::uint32_t>(std::size_t{1} << dim, 0)};
  }
  static GroupAlgebraElement one(int dim) {
    auto e = zero(dim);
    e.coef[0] = 1;
    return e;
  }
  bool is_zero() const {
    for (auto c : coef)
      if (c) return false;
    return true;
  }
  friend bool operator==(const GroupAlgebraElement&, const GroupAlgebraElement&) = default;
};

inline GroupAlgebraElement ga_add(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  auto r = a;
  for (std::size_t i = 0; i < r.coef.size(); ++i) r.coef[i] ^= b.coef[i];
  return r;
}

/// out += s * a (s a field scalar).
inline void ga_axpy(const GF2L& f, std::uint32_t s, const std::vector<std::uint32_t>& a,
                    std::vector<std::uint32_t>& out) {
  if (s == 0) return;
  if (f.has_tables()) {
    std::uint32_t ls = f.log(s);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i]) out[i] ^= f.exp(f.log(a[i]) + ls);
  } else {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i]) out[i] ^= f.slow_mul(a[i], s);
  }
}

/// out += a * b, iterating over the nonzero entries of the sparser factor.
inline void ga_mul_acc(const GF2L& f, const std::vector<std::uint32_t>& a,
                       const std::vector<std::uint32_t>& b, std::vector<std::uint32_t>& out) {
  std::size_t nza = 0, nzb = 0;
  for (auto x : a) nza += x != 0;
  for (auto x : b) nzb += x != 0;
  const auto& dense = nza >= nzb ? a : b;
  const auto& sparse = nza >= nzb ? b : a;
  const std::size_t size = dense.size();
  for (std::size_t h = 0; h < size; ++h) {
    std::uint32_t s = sparse[h];
    if (!s) continue;
    if (f.has_tables()) {
      std::uint32_t ls = f.log(s);
      for (std::size_t g = 0; g < size; ++g)
        if (dense[g]) out[g ^ h] ^= f.exp(f.log(dense[g]) + ls);
    } else {
      for (std::size_t g = 0; g < size; ++g)
        if (dense[g]) out[g ^ h] ^= f.slow_mul(dense[g], s);
    }
  }
}

inline GroupAlgebraElement ga_mul(const GF2L& f, const GroupAlgebraElement& a,
                                  const GroupAlgebraElement& b) {
  auto r = GroupAlgebraElement::zero(a.dim);
  ga_mul_acc(f, a.coef, b.coef, r.coef);
  return r;
}

}  // namespace gerry
