#pragma once

// Label sets, families of label sets, and q-representative subfamilies.
//
// A subfamily S' of S q-represents S if for every q-set B that some A in S
// avoids, some A' in S' also avoids B. We build one by lifting every p-set A
// to the wedge of its columns in a random (p+q) x |U| matrix over GF(2^61-1)
// and keeping a row basis. Over the uniform matroid this keeps at most
// C(p+q, p) sets.

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "model.hpp"
#include "prime_field.hpp"

namespace gerry {

/// Subset of a label universe of at most 256 elements.
struct LabelSet {
  static constexpr int kCapacity = 256;
  std::array<std::uint64_t, 4> words{};

  static LabelSet of(std::initializer_list<int> elems) {
    LabelSet s;
    for (int e : elems) s.insert(e);
    return s;
  }

  void insert(int e) {
    if (e < 0 || e >= kCapacity) throw Error("label index exceeds 256-element universe");
    words[e >> 6] |= std::uint64_t{1} << (e & 63);
  }
  bool contains(int e) const { return (words[e >> 6] >> (e & 63)) & 1; }
  int size() const {
    int s = 0;
    for (auto w : words) s += std::popcount(w);
    return s;
  }
  bool empty() const { return (words[0] | words[1] | words[2] | words[3]) == 0; }
  bool intersects(const LabelSet& o) const {
    for (int i = 0; i < 4; ++i)
      if (words[i] & o.words[i]) return true;
    return false;
  }
  LabelSet operator|(const LabelSet& o) const {
    LabelSet r;
    for (int i = 0; i < 4; ++i) r.words[i] = words[i] | o.words[i];
    return r;
  }
  LabelSet with(int e) const {
    LabelSet r = *this;
    r.insert(e);
    return r;
  }
  std::vector<int> elements() const {
    std::vector<int> out;
    for (int i = 0; i < 4; ++i)
      for (auto w = words[i]; w; w &= w - 1) out.push_back(i * 64 + std::countr_zero(w));
    return out;
  }
  int max_element() const {
    for (int i = 3; i >= 0; --i)
      if (words[i]) return i * 64 + 63 - std::countl_zero(words[i]);
    return -1;
  }
  friend bool operator==(const LabelSet&, const LabelSet&) = default;
  friend auto operator<=>(const LabelSet& a, const LabelSet& b) {
    for (int i = 3; i >= 0; --i)
      if (a.words[i] != b.words[i]) return a.words[i] <=> b.words[i];
    return std::strong_ordering::equal;
  }
};

struct LabelSetHash {
  std::size_t operator()(const LabelSet& s) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : s.words) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

/// Family of sets that all have cardinality `p`.
struct LabelFamily {
  int p = 0;
  std::vector<LabelSet> sets;

  bool empty() const { return sets.empty(); }
  std::size_t size() const { return sets.size(); }

  /// Builds a family, dropping duplicates (first occurrence wins).
  static LabelFamily make(int p, const std::vector<LabelSet>& sets) {
    LabelFamily f;
    f.p = p;
    std::unordered_set<LabelSet, LabelSetHash> seen;
    for (const auto& s : sets) {
      if (s.size() != p) throw Error("family sets must all have the same cardinality");
      if (seen.insert(s).second) f.sets.push_back(s);
    }
    return f;
  }

  /// The family {emptyset}.
  static LabelFamily unit() { return LabelFamily{0, {LabelSet{}}}; }
};

/// {A u B : A in a, B in b, A and B disjoint}, deduplicated.
inline LabelFamily star(const LabelFamily& a, const LabelFamily& b) {
  LabelFamily out;
  out.p = a.p + b.p;
  std::unordered_set<LabelSet, LabelSetHash> seen;
  for (const auto& x : a.sets)
    for (const auto& y : b.sets)
      if (!x.intersects(y)) {
        auto u = x | y;
        if (seen.insert(u).second) out.sets.push_back(u);
      }
  return out;
}

inline int universe_of(const LabelFamily& f) {
  int mx = -1;
  for (const auto& s : f.sets) mx = std::max(mx, s.max_element());
  return mx + 1;
}

/// Lifts p-sets to exterior-power coordinates of a random rank x universe
/// matrix and picks a linearly independent subfamily.
class Representer {
 public:
  static constexpr int kMaxRank = 20;

  Representer(int rank, int universe, std::uint64_t seed) : rank_(rank), universe_(universe) {
    if (rank < 0 || rank > kMaxRank)
      throw Error("representative families support p+q <= " + std::to_string(kMaxRank));
    if (universe < 0 || universe > LabelSet::kCapacity) throw Error("label universe too large");
    std::mt19937_64 rng(seed);
    matrix_.assign(static_cast<std::size_t>(rank) * universe, 0);
    for (auto& x : matrix_) {
      std::uint64_t v;
      do v = rng() >> 3;
      while (v >= mersenne::kMod);
      x = v;
    }
    binom_.assign(rank + 2, std::vector<std::uint64_t>(rank + 2, 0));
    for (int a = 0; a <= rank + 1; ++a) {
      binom_[a][0] = 1;
      for (int b = 1; b <= a; ++b) binom_[a][b] = binom_[a - 1][b - 1] + binom_[a - 1][b];
    }
    steps_.resize(rank);
  }

  int rank() const { return rank_; }
  std::size_t dimension(int p) const { return p > rank_ ? 0 : binom_[rank_][p]; }

  /// Wedge coordinates of the columns of `s`, indexed by |s|-subsets of rows
  /// in colexicographic rank.
  std::vector<std::uint64_t> lift(const LabelSet& s) {
    std::vector<std::uint64_t> cur{1}, next;
    int a = 0;
    for (int e : s.elements()) {
      if (e >= universe_) throw Error("label outside representer universe");
      if (a >= rank_) return std::vector<std::uint64_t>(0);
      const auto& st = step_table(a);
      next.assign(binom_[rank_][a + 1], 0);
      std::size_t pos = 0;
      for (std::size_t idx = 0; idx < next.size(); ++idx) {
        std::uint64_t acc = 0;
        for (int t = 0; t <= a; ++t, ++pos) {
          const auto& term = st[pos];
          std::uint64_t prod = mersenne::mul(entry(term.row, e), cur[term.sub]);
          acc = term.negative ? mersenne::sub(acc, prod) : mersenne::add(acc, prod);
        }
        next[idx] = acc;
      }
      cur.swap(next);
      ++a;
    }
    return cur;
  }

  /// Indices of a subfamily of `sets` (all of size p) that (rank-p)-represents
  /// it. Keeps everything when there are at most C(rank, p) sets.
  std::vector<std::size_t> reduce(const std::vector<LabelSet>& sets, int p) {
    std::vector<std::size_t> kept;
    if (p > rank_) return kept;
    const std::size_t dim = dimension(p);
    if (sets.size() <= dim) {
      kept.resize(sets.size());
      for (std::size_t i = 0; i < sets.size(); ++i) kept[i] = i;
      return kept;
    }
    std::vector<std::vector<std::uint64_t>> basis;
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < sets.size() && basis.size() < dim; ++i) {
      auto v = lift(sets[i]);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        std::uint64_t c = v[pivots[b]];
        if (c == 0) continue;
        const auto& row = basis[b];
        for (std::size_t j = 0; j < dim; ++j)
          if (row[j]) v[j] = mersenne::sub(v[j], mersenne::mul(c, row[j]));
      }
      std::size_t piv = 0;
      while (piv < dim && v[piv] == 0) ++piv;
      if (piv == dim) continue;
      std::uint64_t inv = mersenne::inv(v[piv]);
      for (auto& x : v) x = mersenne::mul(x, inv);
      basis.push_back(std::move(v));
      pivots.push_back(piv);
      kept.push_back(i);
    }
    return kept;
  }

 private:
  struct Term {
    std::uint32_t sub;
    std::uint8_t row;
    bool negative;
  };

  std::uint64_t entry(int row, int col) const {
    return matrix_[static_cast<std::size_t>(row) * universe_ + col];
  }

  // For extending a-sets to (a+1)-sets: for each (a+1)-subset R in rank
  // order, the a+1 terms (row R[t], rank of R without R[t], sign of t).
  const std::vector<Term>& step_table(int a) {
    auto& st = steps_[a];
    if (!st.empty()) return st;
    const int size = a + 1;
    st.reserve(binom_[rank_][size] * size);
    std::vector<int> rows(size);
    for (int i = 0; i < size; ++i) rows[i] = i;
    while (true) {
      for (int t = 0; t < size; ++t) {
        std::uint64_t sub = 0;
        int pos = 0;
        for (int u = 0; u < size; ++u) {
          if (u == t) continue;
          sub += binom_[rows[u]][pos + 1];
          ++pos;
        }
        st.push_back(Term{static_cast<std::uint32_t>(sub), static_cast<std::uint8_t>(rows[t]),
                          (t & 1) != 0});
      }
      // next combination in colex order
      int i = 0;
      while (i < size && rows[i] + 1 == (i + 1 < size ? rows[i + 1] : rank_)) ++i;
      if (i == size) break;
      ++rows[i];
      for (int j = 0; j < i; ++j) rows[j] = j;
    }
    return st;
  }

  int rank_;
  int universe_;
  std::vector<std::uint64_t> matrix_;
  std::vector<std::vector<std::uint64_t>> binom_;
  std::vector<std::vector<Term>> steps_;
};

/// A q-representative subfamily of `s` over labels 0..universe-1. With
/// universe < 0 the universe is taken from the largest label in `s`.
inline LabelFamily represent(const LabelFamily& s, int q, std::uint64_t seed, int universe = -1) {
  if (q < 0) throw Error("q must be nonnegative");
  LabelFamily out;
  out.p = s.p;
  if (s.empty()) return out;
  if (universe < 0) universe = universe_of(s);
  Representer rep(s.p + q, universe, seed);
  for (std::size_t i : rep.reduce(s.sets, s.p)) out.sets.push_back(s.sets[i]);
  return out;
}

/// Exhaustive check over all q-subsets of 0..universe-1 that `rep` is a
/// subfamily of `s` that q-represents it.
inline bool verify_representative(const LabelFamily& s, const LabelFamily& rep, int q,
                                  int universe = -1) {
  if (universe < 0) universe = std::max(universe_of(s), universe_of(rep));
  if (universe > 30) throw Error("exhaustive representative check needs universe <= 30");
  {
    std::unordered_set<LabelSet, LabelSetHash> all(s.sets.begin(), s.sets.end());
    for (const auto& a : rep.sets)
      if (!all.count(a)) return false;
  }
  if (q > universe) return true;
  auto to_mask = [](const LabelSet& x) { return static_cast<std::uint32_t>(x.words[0]); };
  std::vector<std::uint32_t> sm, rm;
  for (const auto& a : s.sets) sm.push_back(to_mask(a));
  for (const auto& a : rep.sets) rm.push_back(to_mask(a));
  // iterate q-subsets with Gosper's hack
  std::uint64_t b = q == 0 ? 0 : (std::uint64_t{1} << q) - 1;
  const std::uint64_t limit = std::uint64_t{1} << universe;
  while (b < limit) {
    bool some = false, kept = false;
    for (auto a : sm)
      if ((a & b) == 0) {
        some = true;
        break;
      }
    if (some) {
      for (auto a : rm)
        if ((a & b) == 0) {
          kept = true;
          break;
        }
      if (!kept) return false;
    }
    if (b == 0) break;
    std::uint64_t c = b & (~b + 1), r = b + c;
    b = (((r ^ b) >> 2) / c) | r;
  }
  return true;
}

}  // namespace gerry
