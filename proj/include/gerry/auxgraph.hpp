#pragma once

// Layered DAG over the subpaths of a path instance.
//
// Vertices: s, t, and v(i,j) for every subpath P[i..j] (1-based, i <= j).
// Arcs go v(i,j) -> v(j+1,r), v(i,n) -> t, and s -> v(1,j). An arc leaving a
// vertex whose subpath is won by p is a single unlabeled arc; otherwise it is
// k*-1 parallel arcs labeled <winner, 1..k*-1>. Arcs out of s are unlabeled.
//
// An s-t path on k+2 vertices with k*+1 unlabeled arcs and k-k* distinctly
// labeled arcs is exactly a partition into k subpaths where p wins k* and
// everyone else at most k*-1.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "model.hpp"

namespace gerry {

struct ArcLabel {
  Candidate candidate;
  int copy = 1;  // 1..k*-1
  friend bool operator==(const ArcLabel&, const ArcLabel&) = default;
};

struct AuxArc {
  int tail = 0;
  int head = 0;
  std::optional<ArcLabel> label;
};

class AuxGraph {
 public:
  static constexpr int kSource = 0;
  static constexpr int kSink = 1;

  AuxGraph(const Instance& inst, int k_star, TieBreakRule rule)
      : n_(inst.n()), k_(inst.k()), k_star_(k_star), m_(inst.m()), p_(inst.p()),
        names_(inst.candidates()) {
    if (!inst.is_path()) throw Error("auxiliary graph needs a path instance");
    if (k_star < 1 || k_star > inst.k()) throw Error("k* must satisfy 1 <= k* <= k");
    offset_.assign(n_ + 2, 0);
    for (int i = 1; i <= n_; ++i) offset_[i + 1] = offset_[i] + (n_ - i + 1);
    // prefix[v][c] = total weight of vertices 0..v-1 for candidate c
    std::vector<std::vector<Weight>> prefix(n_ + 1, std::vector<Weight>(m_, 0));
    for (int v = 0; v < n_; ++v)
      for (int c = 0; c < m_; ++c) prefix[v + 1][c] = prefix[v][c] + inst.weights()[v][c];
    winner_.assign(offset_[n_ + 1], Candidate{});
    std::vector<Weight> totals(m_);
    for (int i = 1; i <= n_; ++i)
      for (int j = i; j <= n_; ++j) {
        for (int c = 0; c < m_; ++c) totals[c] = prefix[j][c] - prefix[i - 1][c];
        winner_[offset_[i] + (j - i)] = winner_from_totals(totals, p_, rule);
      }
  }

  int n() const { return n_; }
  int k() const { return k_; }
  int k_star() const { return k_star_; }
  int m() const { return m_; }
  Candidate p() const { return p_; }

  int vertex_count() const { return 2 + offset_[n_ + 1]; }

  /// Id of v(i,j), 1 <= i <= j <= n.
  int vertex(int i, int j) const {
    if (i < 1 || j < i || j > n_) throw Error("no auxiliary vertex v(" + std::to_string(i) + "," +
                                              std::to_string(j) + ")");
    return 2 + offset_[i] + (j - i);
  }

  /// (i,j) for an interior vertex id.
  std::pair<int, int> interval(int id) const {
    if (id < 2 || id >= vertex_count()) throw Error("not an interior auxiliary vertex");
    int idx = id - 2;
    int i = static_cast<int>(std::upper_bound(offset_.begin() + 1, offset_.end(), idx) -
                             offset_.begin()) - 1;
    return {i, i + (idx - offset_[i])};
  }

  Candidate winner(int i, int j) const { return winner_[offset_[i] + (j - i)]; }
  bool p_wins(int i, int j) const { return winner(i, j) == p_; }

  /// Number of distinct arc labels, (k*-1)(m-1).
  int universe_size() const { return (k_star_ - 1) * (m_ - 1); }

  /// Dense index of a label in 0..universe_size()-1.
  int label_index(ArcLabel l) const {
    if (l.candidate == p_ || l.copy < 1 || l.copy > k_star_ - 1) throw Error("invalid arc label");
    int rank = static_cast<int>(l.candidate.id) - (l.candidate.id > p_.id ? 1 : 0);
    return rank * (k_star_ - 1) + (l.copy - 1);
  }

  ArcLabel label_at(int index) const {
    int rank = index / (k_star_ - 1);
    auto id = static_cast<std::uint32_t>(rank + (static_cast<std::uint32_t>(rank) >= p_.id ? 1 : 0));
    return ArcLabel{Candidate{id}, index % (k_star_ - 1) + 1};
  }

  /// Heads reachable from `tail` (ignoring multiplicity).
  std::vector<int> successors(int tail) const {
    std::vector<int> out;
    if (tail == kSink) return out;
    if (tail == kSource) {
      for (int j = 1; j <= n_; ++j) out.push_back(vertex(1, j));
      return out;
    }
    auto [i, j] = interval(tail);
    if (!p_wins(i, j) && k_star_ == 1) return out;
    if (j == n_) return {kSink};
    for (int r = j + 1; r <= n_; ++r) out.push_back(vertex(j + 1, r));
    return out;
  }

  /// Materializes every arc, parallel copies included.
  std::vector<AuxArc> arcs() const {
    std::vector<AuxArc> out;
    for (int j = 1; j <= n_; ++j) out.push_back({kSource, vertex(1, j), std::nullopt});
    for (int i = 1; i <= n_; ++i)
      for (int j = i; j <= n_; ++j) {
        int tail = vertex(i, j);
        for (int head : successors(tail)) {
          if (p_wins(i, j)) {
            out.push_back({tail, head, std::nullopt});
          } else {
            for (int c = 1; c <= k_star_ - 1; ++c)
              out.push_back({tail, head, ArcLabel{winner(i, j), c}});
          }
        }
      }
    return out;
  }

  /// Kahn's algorithm over the materialized arcs; empty if a cycle exists.
  std::vector<int> topological_order() const {
    int nv = vertex_count();
    std::vector<std::vector<int>> adj(nv);
    std::vector<int> indeg(nv, 0);
    for (const auto& a : arcs()) {
      adj[a.tail].push_back(a.head);
      ++indeg[a.head];
    }
    std::vector<int> order, queue;
    for (int v = 0; v < nv; ++v)
      if (indeg[v] == 0) queue.push_back(v);
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      order.push_back(v);
      for (int u : adj[v])
        if (--indeg[u] == 0) queue.push_back(u);
    }
    if (static_cast<int>(order.size()) != nv) order.clear();
    return order;
  }

  bool is_acyclic() const { return !topological_order().empty(); }

  std::string vertex_name(int id) const {
    if (id == kSource) return "s";
    if (id == kSink) return "t";
    auto [i, j] = interval(id);
    return "v(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }

  /// One line per arc: "v(i,j) -> v(j+1,r) [c,idx]" or "[-]" when unlabeled.
  std::string dump() const {
    std::ostringstream os;
    for (const auto& a : arcs()) {
      os << vertex_name(a.tail) << " -> " << vertex_name(a.head) << " [";
      if (a.label)
        os << names_[a.label->candidate.id] << "," << a.label->copy;
      else
        os << "-";
      os << "]\n";
    }
    return os.str();
  }

  /// Converts an s-t path (vertex ids) into the partition it names. Vertices
  /// of the returned partition are 0-based.
  Partition decode_path(std::span<const int> path) const {
    if (static_cast<int>(path.size()) != k_ + 2) throw Error("s-t path must have k+2 vertices");
    if (path.front() != kSource || path.back() != kSink) throw Error("path must run from s to t");
    Partition part;
    int expect_start = 1;
    for (std::size_t idx = 1; idx + 1 < path.size(); ++idx) {
      if (path[idx] < 2 || path[idx] >= vertex_count()) throw Error("path has a non-interior vertex");
      auto [i, j] = interval(path[idx]);
      if (i != expect_start) throw Error("consecutive path vertices are not joined by an arc");
      if (idx >= 2) {
        auto [pi, pj] = interval(path[idx - 1]);
        if (!p_wins(pi, pj) && k_star_ == 1) throw Error("path uses an arc that does not exist");
      }
      District d;
      for (int v = i; v <= j; ++v) d.vertices.push_back(v - 1);
      part.districts.push_back(std::move(d));
      expect_start = j + 1;
    }
    if (expect_start != n_ + 1) throw Error("last interior vertex must end at n");
    auto [li, lj] = interval(path[path.size() - 2]);
    if (!p_wins(li, lj) && k_star_ == 1) throw Error("path uses an arc that does not exist");
    return part;
  }

 private:
  int n_, k_, k_star_, m_;
  Candidate p_;
  std::vector<std::string> names_;
  std::vector<int> offset_;  // offset_[i] = index of v(i,i) among interior vertices
  std::vector<Candidate> winner_;
};

inline AuxGraph build_aux_graph(const Instance& inst, int k_star, TieBreakRule rule) {
  return AuxGraph(inst, k_star, rule);
}

}  // namespace gerry
