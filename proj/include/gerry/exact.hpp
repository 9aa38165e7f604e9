#pragma once

// Exact target solver for arbitrary graphs in 2^n * poly time.
//
// P_c^s is the sum of y^chi(D) over connected districts D of size s won by c.
// Products followed by a Hamming projection keep only disjoint unions.
//
//   Q_{1,1}^s = R(H_s(sum P_p^{s'} P_p^{s''}))        unions of 2 p-districts
//   Q_{1,j}^s = R(H_s(sum P_p^{s'} Q_{1,j-1}^{s''}))  unions of j+1
//   T_{k*}    = sum_s Q_{1,k*-1}^s                      (sum_s P_p^s if k* = 1)
//
// Then for each other candidate c and each round j = 1..min(k-1, k-k*, k*-1),
// every T_{k*+l} absorbs R(H_s(P_c x T_{k*+l-1})) with T read from a snapshot
// taken at the start of the round, so c gains at most one district per round.
// The answer is yes iff T_k contains the all-ones exponent.

#include <bit>
#include <functional>
#include <optional>
#include <vector>

#include "model.hpp"
#include "setpoly.hpp"

namespace gerry {

inline constexpr int kExactDefaultCap = 22;

/// Connected districts grouped by winner; masks ascending within each group.
struct DistrictFamily {
  int n = 0;
  std::vector<std::vector<std::uint64_t>> by_candidate;

  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& f : by_candidate) t += f.size();
    return t;
  }
};

inline DistrictFamily enumerate_districts(const Instance& inst, TieBreakRule rule,
                                          int cap = kExactDefaultCap) {
  const int n = inst.n();
  if (n > cap) throw Error("exact solver is capped at n=" + std::to_string(cap));
  if (n > 30) throw Error("exact solver needs n <= 30");
  DistrictFamily fam;
  fam.n = n;
  fam.by_candidate.assign(inst.m(), {});
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::vector<Weight> totals(inst.m());
  for (std::uint64_t s = 1; s < limit; ++s) {
    if (!inst.is_connected_mask(s)) continue;
    std::fill(totals.begin(), totals.end(), 0);
    for (std::uint64_t x = s; x; x &= x - 1) {
      const auto& row = inst.weights()[std::countr_zero(x)];
      for (int c = 0; c < inst.m(); ++c) totals[c] += row[c];
    }
    fam.by_candidate[winner_from_totals(totals, inst.p(), rule).id].push_back(s);
  }
  return fam;
}

struct ExactOptions {
  MultiplyBackend backend = MultiplyBackend::automatic;
  std::size_t memory_cap = std::size_t{2} << 30;
  int cap = kExactDefaultCap;
  // Drop unions too large to leave one vertex for each remaining district.
  bool prune = true;
  // Clamp the rounds per candidate to k*-1 (the win limit for non-p candidates).
  bool clamp_rounds = true;
  // Called after every (candidate, round) with T_{k*}..T_k (index t - k*).
  std::function<void(Candidate, int, const std::vector<SetPolynomial>&)> observer;
};

struct ExactResult {
  bool found = false;
  std::size_t sparse_products = 0;
  std::size_t ntt_products = 0;
};

namespace detail {

// Set family split by popcount; index = set size.
using Layered = std::vector<std::vector<std::uint64_t>>;

inline Layered layer(int n, const std::vector<std::uint64_t>& sets) {
  Layered out(n + 1);
  for (auto s : sets) out[std::popcount(s)].push_back(s);
  return out;
}

inline SetPolynomial to_poly(const Layered& l) {
  std::vector<std::uint64_t> all;
  for (const auto& v : l) all.insert(all.end(), v.begin(), v.end());
  return SetPolynomial::from_exponents(all);
}

class ExactEngine {
 public:
  ExactEngine(int n, const ExactOptions& opts, ExactResult& stats)
      : n_(n), opts_(opts), stats_(stats), seen_(((std::size_t{1} << n) + 63) / 64, 0) {}

  // R(H_s(sum_{s'+s''=s} A^{s'} x B^{s''})) for s in [lo, hi]. `b_len[s'']`
  // limits how many sets of B^{s''} are read (snapshot semantics).
  Layered product(const Layered& a, const Layered& b, const std::vector<std::size_t>& b_len, int lo,
                  int hi, const std::vector<std::vector<std::uint64_t>>* a_hat = nullptr) {
    Layered out(n_ + 1);
    if (lo > hi) return out;
    double pairs = 0;
    for (int s1 = 1; s1 <= n_; ++s1)
      for (int s2 = 0; s2 <= n_; ++s2)
        if (s1 + s2 >= lo && s1 + s2 <= hi) pairs += double(a[s1].size()) * double(b_len[s2]);
    if (pairs == 0) return out;
    const double len = double(std::size_t{2} << n_);
    const double dense = len * (n_ + 2) * (2.0 * (n_ + 1)) + len * double(n_ + 1) * (hi - lo + 1);
    const std::size_t ntt_bytes = (2 * std::size_t(n_ + 1) + 1) * (std::size_t{2} << n_) * 8;
    MultiplyBackend backend = opts_.backend;
    if (backend == MultiplyBackend::automatic)
      backend = (pairs * 4 <= dense || ntt_bytes > opts_.memory_cap) ? MultiplyBackend::schoolbook
                                                                     : MultiplyBackend::ntt;
    if (backend == MultiplyBackend::ntt) {
      if (ntt_bytes > opts_.memory_cap) throw Error("transform tables would exceed the memory cap");
      ++stats_.ntt_products;
      return product_ntt(a, b, b_len, lo, hi, a_hat);
    }
    ++stats_.sparse_products;
    return product_sparse(a, b, b_len, lo, hi);
  }

  // Forward transforms of each layer of `a` (indicator vectors).
  std::vector<std::vector<std::uint64_t>> transform_layers(const Layered& a) {
    ensure_transform();
    std::vector<std::vector<std::uint64_t>> out(n_ + 1);
    for (int s = 0; s <= n_; ++s) {
      if (a[s].empty()) continue;
      out[s].assign(tr_->size(), 0);
      for (auto x : a[s]) out[s][x] = 1;
      tr_->forward(out[s]);
    }
    return out;
  }

 private:
  Layered product_sparse(const Layered& a, const Layered& b, const std::vector<std::size_t>& b_len,
                         int lo, int hi) {
    Layered out(n_ + 1);
    for (int s = lo; s <= hi; ++s) {
      auto& dst = out[s];
      for (int s1 = 1; s1 < s && s1 <= n_; ++s1) {
        int s2 = s - s1;
        if (s2 > n_) continue;
        for (auto x : a[s1])
          for (std::size_t yi = 0; yi < b_len[s2]; ++yi) {
            std::uint64_t e = x + b[s2][yi];
            if (std::popcount(e) != s) continue;
            if (mark(e)) dst.push_back(e);
          }
      }
      // s1 = s, s2 = 0: B may contain the empty set only in tests
      if (s <= n_ && b_len[0] > 0)
        for (auto x : a[s])
          for (std::size_t yi = 0; yi < b_len[0]; ++yi) {
            std::uint64_t e = x + b[0][yi];
            if (std::popcount(e) == s && mark(e)) dst.push_back(e);
          }
      for (auto e : dst) unmark(e);
      std::sort(dst.begin(), dst.end());
    }
    return out;
  }

  Layered product_ntt(const Layered& a, const Layered& b, const std::vector<std::size_t>& b_len,
                      int lo, int hi, const std::vector<std::vector<std::uint64_t>>* a_hat) {
    ensure_transform();
    std::vector<std::vector<std::uint64_t>> local_a;
    if (!a_hat) {
      local_a = transform_layers(a);
      a_hat = &local_a;
    }
    std::vector<std::vector<std::uint64_t>> b_hat(n_ + 1);
    for (int s = 0; s <= n_; ++s) {
      if (b_len[s] == 0) continue;
      b_hat[s].assign(tr_->size(), 0);
      for (std::size_t i = 0; i < b_len[s]; ++i) b_hat[s][b[s][i]] = 1;
      tr_->forward(b_hat[s]);
    }
    Layered out(n_ + 1);
    std::vector<std::uint64_t> acc(tr_->size());
    for (int s = lo; s <= hi; ++s) {
      std::fill(acc.begin(), acc.end(), 0);
      bool any = false;
      for (int s1 = 1; s1 <= s && s1 <= n_; ++s1) {
        int s2 = s - s1;
        if (s2 > n_ || (*a_hat)[s1].empty() || b_hat[s2].empty()) continue;
        any = true;
        const auto& x = (*a_hat)[s1];
        const auto& y = b_hat[s2];
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = ntt::add(acc[i], ntt::mul(x[i], y[i]));
      }
      if (!any) continue;
      tr_->inverse(acc);
      // pair counts stay far below the prime, so nonzero here means nonzero
      for (std::size_t e = 0; e < acc.size(); ++e)
        if (acc[e] && std::popcount(e) == s) out[s].push_back(e);
    }
    return out;
  }

  void ensure_transform() {
    if (!tr_) tr_.emplace(n_ + 1);
  }
  bool mark(std::uint64_t e) {
    auto& w = seen_[e >> 6];
    std::uint64_t bit = std::uint64_t{1} << (e & 63);
    if (w & bit) return false;
    w |= bit;
    return true;
  }
  void unmark(std::uint64_t e) { seen_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }

  int n_;
  const ExactOptions& opts_;
  ExactResult& stats_;
  std::vector<std::uint64_t> seen_;
  std::optional<ntt::Transform> tr_;
};

inline std::vector<std::size_t> full_lengths(const Layered& l) {
  std::vector<std::size_t> len(l.size());
  for (std::size_t s = 0; s < l.size(); ++s) len[s] = l[s].size();
  return len;
}

}  // namespace detail

/// Q_{1,j}^s for j = 1..k*-1 as polynomials; result[j][s]. Entry [0] holds the
/// single-district polynomials P_p^s.
inline std::vector<std::vector<SetPolynomial>> build_Q1(const DistrictFamily& fam, Candidate p,
                                                        int k_star,
                                                        MultiplyBackend backend = MultiplyBackend::automatic) {
  const int n = fam.n;
  ExactOptions opts;
  opts.backend = backend;
  ExactResult stats;
  detail::ExactEngine eng(n, opts, stats);
  auto pp = detail::layer(n, fam.by_candidate[p.id]);
  std::vector<std::vector<SetPolynomial>> out(std::max(k_star, 1),
                                              std::vector<SetPolynomial>(n + 1));
  for (int s = 0; s <= n; ++s) out[0][s] = SetPolynomial::from_exponents(pp[s]);
  detail::Layered prev = pp;
  for (int j = 1; j <= k_star - 1; ++j) {
    prev = eng.product(pp, prev, detail::full_lengths(prev), j + 1, n);
    for (int s = 0; s <= n; ++s) out[j][s] = SetPolynomial::from_exponents(prev[s]);
  }
  return out;
}

inline ExactResult solve_target_exact(const Instance& inst, int k_star, TieBreakRule rule,
                                      const ExactOptions& opts = {}) {
  ExactResult res;
  const int n = inst.n(), k = inst.k();
  if (n > opts.cap) throw Error("exact solver is capped at n=" + std::to_string(opts.cap));
  if (k_star < 1 || k_star > k) return res;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const int budget = k - k_star;
  {
    std::size_t base = (std::size_t{1} << n) / 8 * (budget + 2) + (std::size_t{1} << n) * 8;
    if (base > opts.memory_cap) throw Error("exact solver would exceed the memory cap");
  }
  auto fam = enumerate_districts(inst, rule, opts.cap);
  detail::ExactEngine eng(n, opts, res);
  // largest union of t districts that still leaves room for k - t more
  auto max_size = [&](int t) { return opts.prune ? n - (k - t) : n; };

  auto pp = detail::layer(n, fam.by_candidate[inst.p().id]);
  detail::Layered base = pp;
  for (int j = 1; j <= k_star - 1; ++j)
    base = eng.product(pp, base, detail::full_lengths(base), j + 1, max_size(j + 1));
  for (int s = max_size(k_star) + 1; s <= n; ++s) base[s].clear();

  // T[t - k*] for t = k*..k, each with a membership bitmap.
  std::vector<detail::Layered> T(budget + 1, detail::Layered(n + 1));
  std::vector<std::vector<std::uint64_t>> member(
      budget + 1, std::vector<std::uint64_t>(((std::size_t{1} << n) + 63) / 64, 0));
  std::size_t stored = 0;
  auto insert = [&](int idx, std::uint64_t e) {
    auto& w = member[idx][e >> 6];
    std::uint64_t bit = std::uint64_t{1} << (e & 63);
    if (w & bit) return;
    w |= bit;
    T[idx][std::popcount(e)].push_back(e);
    if (++stored * 8 > opts.memory_cap) throw Error("exact solver exceeded the memory cap");
  };
  for (int s = 0; s <= n; ++s)
    for (auto e : base[s]) insert(0, e);

  auto contains_full = [&](int idx) { return (member[idx][full >> 6] >> (full & 63)) & 1; };
  auto notify = [&](Candidate c, int j) {
    if (!opts.observer) return;
    std::vector<SetPolynomial> polys;
    for (const auto& t : T) polys.push_back(detail::to_poly(t));
    opts.observer(c, j, polys);
  };

  bool empty_base = true;
  for (const auto& l : T[0]) empty_base = empty_base && l.empty();
  if (empty_base) return res;
  if (budget == 0) {
    res.found = contains_full(0);
    return res;
  }

  int rounds = std::min(k - 1, budget);
  if (opts.clamp_rounds) rounds = std::min(rounds, k_star - 1);
  for (std::uint32_t cid = 0; cid < static_cast<std::uint32_t>(inst.m()); ++cid) {
    if (cid == inst.p().id) continue;
    auto pc = detail::layer(n, fam.by_candidate[cid]);
    bool has_any = false;
    for (const auto& l : pc) has_any = has_any || !l.empty();
    if (!has_any) continue;
    std::optional<std::vector<std::vector<std::uint64_t>>> pc_hat;
    for (int j = 1; j <= rounds; ++j) {
      std::vector<std::vector<std::size_t>> snap(budget + 1);
      for (int l = 0; l <= budget; ++l) snap[l] = detail::full_lengths(T[l]);
      for (int l = 1; l <= budget; ++l) {
        std::size_t avail = 0;
        for (auto x : snap[l - 1]) avail += x;
        if (avail == 0) continue;
        if (opts.backend == MultiplyBackend::ntt && !pc_hat) pc_hat = eng.transform_layers(pc);
        auto add = eng.product(pc, T[l - 1], snap[l - 1], k_star + 1,
                               std::min(n, max_size(k_star + l)), pc_hat ? &*pc_hat : nullptr);
        for (int s = 0; s <= n; ++s)
          for (auto e : add[s]) insert(l, e);
      }
      notify(Candidate{cid}, j);
      if (contains_full(budget)) {
        res.found = true;
        return res;
      }
    }
  }
  res.found = contains_full(budget);
  return res;
}

}  // namespace gerry
