#pragma once

// Core problem representation for weighted gerrymandering on graphs:
// instances, districts, tie-breaking, and partition checking.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gerry {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Candidate {
  std::uint32_t id = 0;
  friend constexpr auto operator<=>(Candidate, Candidate) = default;
};

enum class GraphClass { path, tree, general };

inline const char* to_string(GraphClass g) {
  switch (g) {
    case GraphClass::path: return "path";
    case GraphClass::tree: return "tree";
    case GraphClass::general: return "general";
  }
  return "?";
}

inline GraphClass graph_class_from_string(const std::string& s) {
  if (s == "path") return GraphClass::path;
  if (s == "tree") return GraphClass::tree;
  if (s == "general") return GraphClass::general;
  throw Error("unknown graph_class '" + s + "'");
}

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;
using Weight = std::int64_t;

namespace detail {

inline bool is_connected_graph(int n, const std::vector<std::vector<Vertex>>& adj) {
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == n;
}

}  // namespace detail

/// A weighted gerrymandering instance. Immutable once built; `create`
/// validates every invariant and throws `Error` on violation.
///
/// Weights are stored densely (vertex x candidate); an absent entry is 0.
/// Present entries must be strictly positive.
class Instance {
 public:
  static Instance create(int n, std::vector<Edge> edges, GraphClass graph_class,
                         std::vector<std::string> candidates,
                         std::vector<std::vector<Weight>> weights, Candidate p, int k) {
    Instance inst;
    if (n < 1) throw Error("instance needs at least one vertex");
    if (candidates.empty()) throw Error("instance needs at least one candidate");
    if (k < 1 || k > n) throw Error("district count k must satisfy 1 <= k <= n");
    if (p.id >= candidates.size()) throw Error("distinguished candidate out of range");
    {
      auto sorted = candidates;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error("duplicate candidate name");
    }
    if (static_cast<int>(weights.size()) != n) throw Error("need one weight row per vertex");
    for (const auto& row : weights) {
      if (row.size() != candidates.size()) throw Error("weight row has wrong width");
      for (Weight w : row)
        if (w < 0) throw Error("weights must be positive (absent entries count as 0)");
    }
    for (auto& [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) throw Error("edge endpoint out of range");
      if (u == v) throw Error("self-loops are not allowed");
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw Error("duplicate edge");

    inst.n_ = n;
    inst.edges_ = std::move(edges);
    inst.graph_class_ = graph_class;
    inst.candidates_ = std::move(candidates);
    inst.weights_ = std::move(weights);
    inst.p_ = p;
    inst.k_ = k;
    inst.adj_.assign(n, {});
    for (auto [u, v] : inst.edges_) {
      inst.adj_[u].push_back(v);
      inst.adj_[v].push_back(u);
    }
    if (n <= 64) {
      inst.adj_mask_.assign(n, 0);
      for (auto [u, v] : inst.edges_) {
        inst.adj_mask_[u] |= std::uint64_t{1} << v;
        inst.adj_mask_[v] |= std::uint64_t{1} << u;
      }
    }
    if (!inst.belongs_to(graph_class))
      throw Error(std::string("graph does not match declared graph_class '") +
                  to_string(graph_class) + "'");
    return inst;
  }

  int n() const { return n_; }
  int m() const { return static_cast<int>(candidates_.size()); }
  int k() const { return k_; }
  Candidate p() const { return p_; }
  GraphClass graph_class() const { return graph_class_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& candidates() const { return candidates_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  Weight weight(Vertex v, Candidate c) const { return weights_[v][c.id]; }
  const std::vector<std::vector<Weight>>& weights() const { return weights_; }

  /// Bitmask adjacency; only available when n <= 64.
  std::uint64_t adjacency_mask(Vertex v) const { return adj_mask_.at(v); }
  bool has_mask_adjacency() const { return !adj_mask_.empty(); }

  std::optional<Candidate> find_candidate(const std::string& name) const {
    for (std::uint32_t i = 0; i < candidates_.size(); ++i)
      if (candidates_[i] == name) return Candidate{i};
    return std::nullopt;
  }

  /// Same graph and weights, different district count.
  Instance with_k(int k) const {
    if (k < 1 || k > n_) throw Error("district count k must satisfy 1 <= k <= n");
    Instance copy = *this;
    copy.k_ = k;
    return copy;
  }

  /// Most specific class the graph belongs to.
  GraphClass detected_class() const {
    if (is_index_path()) return GraphClass::path;
    if (is_tree()) return GraphClass::tree;
    return GraphClass::general;
  }

  bool belongs_to(GraphClass g) const {
    switch (g) {
      case GraphClass::path: return is_index_path();
      case GraphClass::tree: return is_tree();
      case GraphClass::general: return true;
    }
    return false;
  }

  bool is_path() const { return graph_class_ == GraphClass::path; }

  bool is_connected_subset(std::span<const Vertex> vs) const {
    if (vs.empty()) return false;
    std::vector<char> in(n_, 0), seen(n_, 0);
    for (Vertex v : vs) in[v] = 1;
    std::vector<Vertex> stack{vs.front()};
    seen[vs.front()] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex u : adj_[v]) {
        if (in[u] && !seen[u]) {
          seen[u] = 1;
          ++count;
          stack.push_back(u);
        }
      }
    }
    return count == vs.size();
  }

  /// Connectivity of a vertex set given as a bitmask (n <= 64).
  bool is_connected_mask(std::uint64_t set) const {
    if (set == 0) return false;
    std::uint64_t reached = set & (~set + 1);
    std::uint64_t frontier = reached;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1)
        next |= adj_mask_[std::countr_zero(f)];
      next &= set & ~reached;
      reached |= next;
      frontier = next;
    }
    return reached == set;
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Instance() = default;

  bool is_index_path() const {
    if (static_cast<int>(edges_.size()) != n_ - 1) return false;
    for (int i = 0; i + 1 < n_; ++i)
      if (edges_[i] != Edge{i, i + 1}) return false;
    return true;
  }

  bool is_tree() const {
    return static_cast<int>(edges_.size()) == n_ - 1 && detail::is_connected_graph(n_, adj_);
  }

  int n_ = 0;
  std::vector<Edge> edges_;
  GraphClass graph_class_ = GraphClass::general;
  std::vector<std::string> candidates_;
  std::vector<std::vector<Weight>> weights_;
  Candidate p_{};
  int k_ = 1;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> adj_mask_;
};

/// Deterministic rule that picks one winner out of an argmax set.
enum class TieBreakRule { lex_min_candidate, prefer_p_then_lex };

inline const char* to_string(TieBreakRule r) {
  return r == TieBreakRule::lex_min_candidate ? "lexmin" : "preferp";
}

inline TieBreakRule tiebreak_from_string(const std::string& s) {
  if (s == "lexmin" || s == "lex_min_candidate") return TieBreakRule::lex_min_candidate;
  if (s == "preferp" || s == "prefer_p_then_lex") return TieBreakRule::prefer_p_then_lex;
  throw Error("unknown tie-break rule '" + s + "'");
}

/// Resolves a winner from per-candidate totals.
inline Candidate winner_from_totals(std::span<const Weight> totals, Candidate p,
                                    TieBreakRule rule) {
  Weight best = *std::max_element(totals.begin(), totals.end());
  if (rule == TieBreakRule::prefer_p_then_lex && totals[p.id] == best) return p;
  for (std::uint32_t c = 0; c < totals.size(); ++c)
    if (totals[c] == best) return Candidate{c};
  return Candidate{0};
}

struct District {
  std::vector<Vertex> vertices;
  friend bool operator==(const District&, const District&) = default;
};

struct Partition {
  std::vector<District> districts;
  friend bool operator==(const Partition&, const Partition&) = default;
};

inline Candidate district_winner(const Instance& inst, std::span<const Vertex> d,
                                 TieBreakRule rule) {
  if (d.empty()) throw Error("district is empty");
  std::vector<Weight> totals(inst.m(), 0);
  for (Vertex v : d) {
    if (v < 0 || v >= inst.n()) throw Error("district vertex out of range");
    for (int c = 0; c < inst.m(); ++c) totals[c] += inst.weight(v, Candidate{std::uint32_t(c)});
  }
  return winner_from_totals(totals, inst.p(), rule);
}

inline Candidate district_winner(const Instance& inst, const District& d, TieBreakRule rule) {
  return district_winner(inst, std::span<const Vertex>(d.vertices), rule);
}

/// Winner of a district given as a bitmask (n <= 64).
inline Candidate district_winner_mask(const Instance& inst, std::uint64_t set,
                                      TieBreakRule rule) {
  if (set == 0) throw Error("district is empty");
  std::vector<Weight> totals(inst.m(), 0);
  for (std::uint64_t s = set; s; s &= s - 1) {
    const auto& row = inst.weights()[std::countr_zero(s)];
    for (int c = 0; c < inst.m(); ++c) totals[c] += row[c];
  }
  return winner_from_totals(totals, inst.p(), rule);
}

struct ValidationResult {
  bool ok = true;
  std::vector<std::string> reasons;
  explicit operator bool() const { return ok; }
};

inline ValidationResult validate_partition(const Instance& inst, const Partition& part) {
  ValidationResult res;
  auto fail = [&](std::string why) {
    res.ok = false;
    res.reasons.push_back(std::move(why));
  };
  if (static_cast<int>(part.districts.size()) != inst.k())
    fail("expected " + std::to_string(inst.k()) + " districts, got " +
         std::to_string(part.districts.size()));
  std::vector<int> owner(inst.n(), -1);
  for (std::size_t i = 0; i < part.districts.size(); ++i) {
    const auto& d = part.districts[i].vertices;
    if (d.empty()) {
      fail("district " + std::to_string(i) + " is empty");
      continue;
    }
    bool in_range = true;
    for (Vertex v : d) {
      if (v < 0 || v >= inst.n()) {
        fail("district " + std::to_string(i) + " has out-of-range vertex " + std::to_string(v));
        in_range = false;
        continue;
      }
      if (owner[v] != -1)
        fail("vertex " + std::to_string(v) + " is in districts " + std::to_string(owner[v]) +
             " and " + std::to_string(i));
      owner[v] = static_cast<int>(i);
    }
    if (in_range && !inst.is_connected_subset(d))
      fail("district " + std::to_string(i) + " is disconnected");
  }
  for (int v = 0; v < inst.n(); ++v)
    if (owner[v] == -1) fail("vertex " + std::to_string(v) + " is not covered");
  return res;
}

struct Evaluation {
  std::vector<int> wins;
  bool p_strictly_best = false;
};

inline Evaluation evaluate_partition(const Instance& inst, const Partition& part,
                                     TieBreakRule rule) {
  auto valid = validate_partition(inst, part);
  if (!valid) throw Error("invalid partition: " + valid.reasons.front());
  Evaluation ev;
  ev.wins.assign(inst.m(), 0);
  for (const auto& d : part.districts) ++ev.wins[district_winner(inst, d, rule).id];
  ev.p_strictly_best = true;
  for (int c = 0; c < inst.m(); ++c)
    if (c != static_cast<int>(inst.p().id) && ev.wins[c] >= ev.wins[inst.p().id])
      ev.p_strictly_best = false;
  return ev;
}

/// True iff p wins exactly `k_star` districts and every other candidate at most k_star-1.
inline bool meets_target(const Instance& inst, std::span<const int> wins, int k_star) {
  if (wins[inst.p().id] != k_star) return false;
  for (int c = 0; c < inst.m(); ++c)
    if (c != static_cast<int>(inst.p().id) && wins[c] > k_star - 1) return false;
  return true;
}

/// Converts a plain (single-approval) instance: vertex v contributes weight(v)
/// to its approved candidate and nothing to anyone else.
inline Instance gm_to_wgm(int n, std::vector<Edge> edges, GraphClass graph_class,
                          std::vector<std::string> candidates,
                          std::span<const Candidate> approvals, std::span<const Weight> weight,
                          Candidate p, int k) {
  if (static_cast<int>(approvals.size()) != n || static_cast<int>(weight.size()) != n)
    throw Error("approval and weight tables must have one entry per vertex");
  std::vector<std::vector<Weight>> w(n, std::vector<Weight>(candidates.size(), 0));
  for (int v = 0; v < n; ++v) {
    if (weight[v] < 1) throw Error("voter weight must be >= 1");
    if (approvals[v].id >= candidates.size()) throw Error("approval names unknown candidate");
    w[v][approvals[v].id] = weight[v];
  }
  return Instance::create(n, std::move(edges), graph_class, std::move(candidates), std::move(w),
                          p, k);
}

/// Path graph 0-1-...-(n-1) edge list.
inline std::vector<Edge> path_edges(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return e;
}

inline std::uint64_t binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (int i = 1; i <= r; ++i) out = out * static_cast<std::uint64_t>(n - r + i) / i;
  return out;
}

}  // namespace gerry
