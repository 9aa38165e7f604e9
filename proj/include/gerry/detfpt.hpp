#pragma once

// Deterministic target solver on paths: dynamic programming over the
// auxiliary graph, storing for each (i, r, v) the family of label sets of
// s->v paths with i arcs, r of them unlabeled, and pruning every family to a
// (k-k*-(i-r))-representative subfamily.
//
// All vertices v(b+1, e) share the same in-neighbours v(a, b), so the family
// at v(b+1, e) depends only on b. Cells are therefore indexed by the covered
// prefix length b in 0..n, with b = n standing for t.

#include <optional>
#include <unordered_map>
#include <vector>

#include "auxgraph.hpp"
#include "repset.hpp"

namespace gerry {

struct DetOptions {
  bool represent = true;            // false: keep exact families
  std::uint64_t seed = 0x5eed0001;  // matrix seed for the representer
};

struct DetResult {
  bool found = false;
  std::optional<Partition> witness;
  std::size_t stored_sets = 0;
};

class DetSolver {
 public:
  struct BackPointer {
    int a = 0;       // predecessor is v(a, b)
    int prev_r = 0;
    int label = -1;  // label index, or -1 for an unlabeled arc
    std::uint32_t prev_index = 0;
  };

  struct Cell {
    std::vector<LabelSet> sets;
    std::vector<BackPointer> back;
  };

  DetSolver(const AuxGraph& aux, DetOptions opts = {})
      : aux_(aux), opts_(opts), n_(aux.n()), k_(aux.k()), ks_(aux.k_star()),
        budget_(aux.k() - aux.k_star()) {
    if (aux.universe_size() > LabelSet::kCapacity)
      throw Error("label universe (k*-1)(m-1) exceeds 256");
    cells_.assign(k_ + 2, std::vector<std::vector<Cell>>(ks_ + 2, std::vector<Cell>(n_ + 1)));
    cells_[1][1][0].sets.push_back(LabelSet{});
    cells_[1][1][0].back.push_back(BackPointer{});
    if (opts_.represent && budget_ > Representer::kMaxRank)
      throw Error("k - k* too large for representative families");
    if (opts_.represent) representer_.emplace(budget_, std::max(aux.universe_size(), 1), opts_.seed);
  }

  /// Fills every layer.
  void run() {
    for (int i = 2; i <= k_ + 1; ++i)
      for (int r = 1; r <= std::min(i, ks_ + 1); ++r)
        for (int b = 1; b <= n_; ++b) dp_step(i, r, b);
  }

  /// Computes cell (i, r, b) from layer i-1.
  const Cell& dp_step(int i, int r, int b) {
    Cell& out = cells_[i][r][b];
    out.sets.clear();
    out.back.clear();
    const int p = i - r;
    if (p < 0) return out;
    if (opts_.represent) {
      if (p > budget_) return out;
      // b districts' worth of prefix must leave room for the remaining ones
      if (b < i - 1 || n_ - b < k_ + 1 - i) return out;
      if (b == n_ && i != k_ + 1) return out;
    }
    seen_.clear();
    auto add = [&](const LabelSet& s, BackPointer bp) {
      if (seen_.emplace(s, static_cast<std::uint32_t>(out.sets.size())).second) {
        out.sets.push_back(s);
        out.back.push_back(bp);
      }
    };
    for (int a = 1; a <= b; ++a) {
      if (aux_.p_wins(a, b)) {
        if (r - 1 < 1) continue;
        const Cell& prev = cells_[i - 1][r - 1][a - 1];
        for (std::uint32_t x = 0; x < prev.sets.size(); ++x)
          add(prev.sets[x], BackPointer{a, r - 1, -1, x});
      } else {
        if (ks_ == 1 || r > std::min(i - 1, ks_ + 1)) continue;
        const Cell& prev = cells_[i - 1][r][a - 1];
        if (prev.sets.empty()) continue;
        int base = aux_.label_index(ArcLabel{aux_.winner(a, b), 1});
        for (std::uint32_t x = 0; x < prev.sets.size(); ++x)
          for (int j = 0; j < ks_ - 1; ++j) {
            int lab = base + j;
            if (prev.sets[x].contains(lab)) continue;
            add(prev.sets[x].with(lab), BackPointer{a, r, lab, x});
          }
      }
    }
    if (opts_.represent && out.sets.size() > 1) {
      auto keep = representer_->reduce(out.sets, p);
      if (keep.size() != out.sets.size()) {
        Cell pruned;
        for (auto idx : keep) {
          pruned.sets.push_back(out.sets[idx]);
          pruned.back.push_back(out.back[idx]);
        }
        out = std::move(pruned);
      }
    }
    return out;
  }

  /// Stored family for (i, r, v); v is an auxiliary vertex id.
  LabelFamily family(int i, int r, int v) const {
    LabelFamily f;
    f.p = i - r;
    if (i < 1 || i > k_ + 1 || r < 1 || r > ks_ + 1 || v == AuxGraph::kSource) return f;
    int b = v == AuxGraph::kSink ? n_ : aux_.interval(v).first - 1;
    f.sets = cells_[i][r][b].sets;
    return f;
  }

  const Cell& cell(int i, int r, int b) const { return cells_[i][r][b]; }

  std::size_t stored_sets() const {
    std::size_t total = 0;
    for (const auto& layer : cells_)
      for (const auto& row : layer)
        for (const auto& c : row) total += c.sets.size();
    return total;
  }

  bool accepted() const { return !cells_[k_ + 1][ks_ + 1][n_].sets.empty(); }

  /// Follows back-pointers from the first accepted set and re-validates.
  Partition witness(const Instance& inst, TieBreakRule rule) const {
    if (!accepted()) throw Error("no witness: instance rejected");
    std::vector<int> path{AuxGraph::kSink};
    int i = k_ + 1, r = ks_ + 1, b = n_;
    std::uint32_t idx = 0;
    while (i > 1) {
      const auto& bp = cells_[i][r][b].back[idx];
      path.push_back(aux_.vertex(bp.a, b));
      idx = bp.prev_index;
      r = bp.prev_r;
      b = bp.a - 1;
      --i;
    }
    path.push_back(AuxGraph::kSource);
    std::reverse(path.begin(), path.end());
    Partition part = aux_.decode_path(path);
    auto ev = evaluate_partition(inst, part, rule);
    if (!meets_target(inst, ev.wins, ks_)) throw Error("internal error: witness fails target check");
    return part;
  }

 private:
  const AuxGraph& aux_;
  DetOptions opts_;
  int n_, k_, ks_, budget_;
  std::vector<std::vector<std::vector<Cell>>> cells_;  // [i][r][b]
  std::optional<Representer> representer_;
  std::unordered_map<LabelSet, std::uint32_t, LabelSetHash> seen_;
};

inline DetResult solve_target_det(const Instance& inst, int k_star, TieBreakRule rule,
                                  DetOptions opts = {}) {
  if (!inst.is_path()) throw Error("deterministic solver needs a path instance");
  DetResult res;
  if (k_star < 1 || k_star > inst.k()) return res;
  AuxGraph aux(inst, k_star, rule);
  DetSolver dp(aux, opts);
  dp.run();
  res.stored_sets = dp.stored_sets();
  res.found = dp.accepted();
  if (res.found) res.witness = dp.witness(inst, rule);
  return res;
}

}  // namespace gerry
