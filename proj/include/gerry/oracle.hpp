#pragma once

// Brute-force ground truth. Enumerates connected k-partitions and checks the
// target condition on each one.
//
// Trees and paths: pick k-1 edges to delete (C(n-1, k-1) partitions).
// General graphs: canonical growth, where the smallest unassigned vertex
// always seeds the next district, so every partition appears once.
// Districts are passed to visitors as vertex bitmasks; a visitor returns true
// to stop early.

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "model.hpp"

namespace gerry {

using Mask = std::uint64_t;

inline constexpr int kOracleGeneralCap = 16;
inline constexpr int kOracleMaskCap = 64;

enum class PartitionStrategy { automatic, cut_edges, recursive_general, set_partitions };

using PartitionVisitor = std::function<bool(std::span<const Mask>)>;

inline Partition partition_from_masks(std::span<const Mask> masks) {
  Partition part;
  for (Mask m : masks) {
    District d;
    for (Mask s = m; s; s &= s - 1) d.vertices.push_back(std::countr_zero(s));
    part.districts.push_back(std::move(d));
  }
  return part;
}

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Returns true if the visitor asked to stop.
inline bool enumerate_cut_edges(const Instance& inst, int k, const PartitionVisitor& visit) {
  const int n = inst.n();
  const auto& edges = inst.edges();
  const int e = static_cast<int>(edges.size());
  const int cuts = k - 1;
  if (cuts > e) return false;
  std::vector<int> idx(cuts);
  for (int i = 0; i < cuts; ++i) idx[i] = i;
  std::vector<char> removed(e);
  std::vector<Mask> masks;
  while (true) {
    std::fill(removed.begin(), removed.end(), 0);
    for (int i : idx) removed[i] = 1;
    UnionFind uf(n);
    for (int i = 0; i < e; ++i)
      if (!removed[i]) uf.unite(edges[i].first, edges[i].second);
    std::vector<Mask> by_root(n, 0);
    for (int v = 0; v < n; ++v) by_root[uf.find(v)] |= Mask{1} << v;
    masks.clear();
    for (int v = 0; v < n; ++v)
      if (by_root[v]) masks.push_back(by_root[v]);
    std::sort(masks.begin(), masks.end(),
              [](Mask a, Mask b) { return std::countr_zero(a) < std::countr_zero(b); });
    if (static_cast<int>(masks.size()) == k && visit(masks)) return true;
    int i = cuts - 1;
    while (i >= 0 && idx[i] == e - cuts + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < cuts; ++j) idx[j] = idx[j - 1] + 1;
  }
  return false;
}

class GeneralEnumerator {
 public:
  GeneralEnumerator(const Instance& inst, int k, const PartitionVisitor& visit)
      : inst_(inst), k_(k), visit_(visit), full_((inst.n() == 64) ? ~Mask{0} : (Mask{1} << inst.n()) - 1) {}

  bool run() {
    stack_.clear();
    return place(0);
  }

 private:
  bool place(Mask assigned) {
    Mask free = full_ & ~assigned;
    int left = k_ - static_cast<int>(stack_.size());
    if (free == 0) return left == 0 ? visit_(stack_) : false;
    if (left == 0) return false;
    int seed = std::countr_zero(free);
    Mask s = Mask{1} << seed;
    if (left == 1) {
      if (!inst_.is_connected_mask(free)) return false;
      stack_.push_back(free);
      bool stop = visit_(stack_);
      stack_.pop_back();
      return stop;
    }
    return grow(assigned, free, s, inst_.adjacency_mask(seed) & free & ~s, s, left);
  }

  // Enumerates each connected set containing the seed exactly once; `excl`
  // holds vertices already decided to be outside the current district.
  bool grow(Mask assigned, Mask free, Mask set, Mask cand, Mask excl, int left) {
    // Remaining vertices must be able to form the other left-1 districts.
    if (std::popcount(free & ~set) >= left - 1) {
      stack_.push_back(set);
      bool stop = place(assigned | set);
      stack_.pop_back();
      if (stop) return true;
    }
    Mask c = cand;
    while (c) {
      int u = std::countr_zero(c);
      Mask ub = Mask{1} << u;
      c &= ~ub;
      excl |= ub;
      Mask next_set = set | ub;
      Mask next_cand = (c | (inst_.adjacency_mask(u) & free)) & ~next_set & ~excl;
      if (grow(assigned, free, next_set, next_cand, excl, left)) return true;
    }
    return false;
  }

  const Instance& inst_;
  int k_;
  const PartitionVisitor& visit_;
  Mask full_;
  std::vector<Mask> stack_;
};

// Restricted-growth strings over all set partitions, filtered for
// connectivity. Exponentially worse; kept as an independent cross-check.
inline bool enumerate_set_partitions(const Instance& inst, int k, const PartitionVisitor& visit) {
  const int n = inst.n();
  std::vector<int> block(n, 0);
  std::vector<Mask> masks;
  std::function<bool(int, int)> rec = [&](int v, int used) -> bool {
    if (v == n) {
      if (used != k) return false;
      masks.assign(k, 0);
      for (int u = 0; u < n; ++u) masks[block[u]] |= Mask{1} << u;
      for (Mask m : masks)
        if (!inst.is_connected_mask(m)) return false;
      return visit(masks);
    }
    if (used + (n - v) < k) return false;
    for (int b = 0; b <= used && b < k; ++b) {
      block[v] = b;
      if (rec(v + 1, std::max(used, b + 1))) return true;
    }
    return false;
  };
  return rec(0, 0);
}

}  // namespace detail

/// Streams every connected k-partition of `inst` to `visit`. Returns true if
/// the visitor stopped the enumeration early.
inline bool enumerate_partitions(const Instance& inst, int k, const PartitionVisitor& visit,
                                 PartitionStrategy strategy = PartitionStrategy::automatic) {
  if (k < 1 || k > inst.n()) throw Error("district count out of range");
  if (inst.n() > kOracleMaskCap) throw Error("oracle supports at most 64 vertices");
  if (strategy == PartitionStrategy::automatic)
    strategy = inst.belongs_to(GraphClass::tree) ? PartitionStrategy::cut_edges
                                                 : PartitionStrategy::recursive_general;
  switch (strategy) {
    case PartitionStrategy::cut_edges:
      if (!inst.belongs_to(GraphClass::tree)) throw Error("cut-edge enumeration needs a tree");
      return detail::enumerate_cut_edges(inst, k, visit);
    case PartitionStrategy::recursive_general: {
      if (inst.n() > kOracleGeneralCap)
        throw Error("general partition enumeration is capped at n=" +
                    std::to_string(kOracleGeneralCap));
      detail::GeneralEnumerator gen(inst, k, visit);
      return gen.run();
    }
    case PartitionStrategy::set_partitions:
      if (inst.n() > 12) throw Error("set-partition enumeration is capped at n=12");
      return detail::enumerate_set_partitions(inst, k, visit);
    case PartitionStrategy::automatic: break;
  }
  return false;
}

inline std::vector<int> wins_of_masks(const Instance& inst, std::span<const Mask> masks,
                                      TieBreakRule rule) {
  std::vector<int> wins(inst.m(), 0);
  for (Mask m : masks) ++wins[district_winner_mask(inst, m, rule).id];
  return wins;
}

struct TargetResult {
  bool found = false;
  std::optional<Partition> witness;
};

struct WgmResult {
  bool found = false;
  int k_star = 0;
  std::optional<Partition> witness;
};

/// Target condition at the instance's k: p wins exactly k_star districts and
/// every other candidate at most k_star - 1.
inline TargetResult solve_target_oracle(const Instance& inst, int k_star, TieBreakRule rule) {
  TargetResult res;
  if (k_star < 1 || k_star > inst.k()) return res;
  enumerate_partitions(inst, inst.k(), [&](std::span<const Mask> masks) {
    auto wins = wins_of_masks(inst, masks, rule);
    if (!meets_target(inst, wins, k_star)) return false;
    res.found = true;
    res.witness = partition_from_masks(masks);
    return true;
  });
  return res;
}

inline WgmResult solve_wgm_oracle(const Instance& inst, TieBreakRule rule) {
  WgmResult res;
  enumerate_partitions(inst, inst.k(), [&](std::span<const Mask> masks) {
    auto wins = wins_of_masks(inst, masks, rule);
    int wp = wins[inst.p().id];
    if (wp == 0 || !meets_target(inst, wins, wp)) return false;
    res.found = true;
    res.k_star = wp;
    res.witness = partition_from_masks(masks);
    return true;
  });
  return res;
}

/// achievable[k_star] for k_star in 0..k, from a single enumeration pass.
inline std::vector<bool> achievable_targets(const Instance& inst, TieBreakRule rule) {
  std::vector<bool> out(inst.k() + 1, false);
  enumerate_partitions(inst, inst.k(), [&](std::span<const Mask> masks) {
    auto wins = wins_of_masks(inst, masks, rule);
    int wp = wins[inst.p().id];
    if (wp >= 1 && meets_target(inst, wins, wp)) out[wp] = true;
    return false;
  });
  return out;
}

inline std::uint64_t count_partitions(const Instance& inst, int k,
                                      PartitionStrategy strategy = PartitionStrategy::automatic) {
  std::uint64_t count = 0;
  enumerate_partitions(
      inst, k,
      [&](std::span<const Mask>) {
        ++count;
        return false;
      },
      strategy);
  return count;
}

}  // namespace gerry
