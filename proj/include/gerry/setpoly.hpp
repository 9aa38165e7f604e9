#pragma once

// Polynomials in one variable y whose exponents are characteristic vectors of
// vertex sets. y^a * y^b keeps popcount(a) + popcount(b) as the popcount of
// a + b exactly when a and b are disjoint, so a Hamming projection after a
// product filters down to disjoint unions.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ntt.hpp"

namespace gerry {

struct Term {
  std::uint64_t exp = 0;
  std::uint64_t coef = 0;
  friend bool operator==(const Term&, const Term&) = default;
};

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? ~std::uint64_t{0} : s;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p >> 64 ? ~std::uint64_t{0} : static_cast<std::uint64_t>(p);
}

/// Sparse polynomial, terms sorted by exponent with nonzero coefficients.
class SetPolynomial {
 public:
  SetPolynomial() = default;

  static SetPolynomial from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    SetPolynomial p;
    for (const auto& t : terms) {
      if (t.coef == 0) continue;
      if (!p.terms_.empty() && p.terms_.back().exp == t.exp)
        p.terms_.back().coef = sat_add(p.terms_.back().coef, t.coef);
      else
        p.terms_.push_back(t);
    }
    return p;
  }

  /// Sum of y^e over the given exponents (coefficient 1 each, duplicates add).
  static SetPolynomial from_exponents(const std::vector<std::uint64_t>& exps) {
    std::vector<Term> t;
    t.reserve(exps.size());
    for (auto e : exps) t.push_back({e, 1});
    return from_terms(std::move(t));
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::uint64_t coefficient(std::uint64_t e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, std::uint64_t x) { return t.exp < x; });
    return it != terms_.end() && it->exp == e ? it->coef : 0;
  }
  bool contains(std::uint64_t e) const { return coefficient(e) != 0; }

  std::uint64_t max_exponent() const { return terms_.empty() ? 0 : terms_.back().exp; }

  std::vector<std::uint64_t> exponents() const {
    std::vector<std::uint64_t> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back(t.exp);
    return out;
  }

  friend SetPolynomial operator+(const SetPolynomial& a, const SetPolynomial& b) {
    std::vector<Term> t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return from_terms(std::move(t));
  }

  friend bool operator==(const SetPolynomial&, const SetPolynomial&) = default;

 private:
  std::vector<Term> terms_;
};

/// Monomials whose exponent has popcount h.
inline SetPolynomial hamming_projection(const SetPolynomial& p, int h) {
  std::vector<Term> out;
  for (const auto& t : p.terms())
    if (std::popcount(t.exp) == h) out.push_back(t);
  return SetPolynomial::from_terms(std::move(out));
}

/// Same support, every coefficient set to 1.
inline SetPolynomial representative(const SetPolynomial& p) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.exp, 1});
  return SetPolynomial::from_terms(std::move(out));
}

enum class MultiplyBackend { automatic, schoolbook, ntt };

/// Pairwise product with saturating coefficients.
inline SetPolynomial multiply_schoolbook(const SetPolynomial& a, const SetPolynomial& b) {
  std::unordered_map<std::uint64_t, std::uint64_t> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) {
      auto& c = acc[x.exp + y.exp];
      c = sat_add(c, sat_mul(x.coef, y.coef));
    }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (const auto& [e, c] : acc) out.push_back({e, c});
  return SetPolynomial::from_terms(std::move(out));
}

/// Dense product via the transform. Exact as long as every true coefficient
/// is below the prime (about 1.8e19).
inline SetPolynomial multiply_ntt(const SetPolynomial& a, const SetPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::uint64_t top = a.max_exponent() + b.max_exponent();
  int lg = 0;
  while ((std::uint64_t{1} << lg) <= top) ++lg;
  if (lg > 26) throw Error("transform product too large");
  ntt::Transform tr(lg);
  std::vector<std::uint64_t> fa(tr.size(), 0), fb(tr.size(), 0);
  for (const auto& t : a.terms()) fa[t.exp] = t.coef % ntt::kPrime;
  for (const auto& t : b.terms()) fb[t.exp] = t.coef % ntt::kPrime;
  tr.forward(fa);
  tr.forward(fb);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] = ntt::mul(fa[i], fb[i]);
  tr.inverse(fa);
  std::vector<Term> out;
  for (std::size_t e = 0; e < fa.size(); ++e)
    if (fa[e]) out.push_back({e, fa[e]});
  return SetPolynomial::from_terms(std::move(out));
}

inline SetPolynomial poly_multiply(const SetPolynomial& a, const SetPolynomial& b,
                                   MultiplyBackend backend = MultiplyBackend::automatic) {
  if (backend == MultiplyBackend::automatic) {
    std::uint64_t len = std::bit_ceil(a.max_exponent() + b.max_exponent() + 1);
    double dense = static_cast<double>(len) * (std::bit_width(len) + 1) * 3;
    double sparse = static_cast<double>(a.size()) * static_cast<double>(b.size());
    backend = (len < 1024 || sparse <= dense) ? MultiplyBackend::schoolbook : MultiplyBackend::ntt;
  }
  return backend == MultiplyBackend::ntt ? multiply_ntt(a, b) : multiply_schoolbook(a, b);
}

}  // namespace gerry
