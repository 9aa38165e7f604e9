#pragma once

// Reduction from rainbow matching on a path to plain gerrymandering on a path.
//
// Layout of the produced path, for a matching target k and an input path
// v_1 .. v_n~ with edge colors:
//
//   s_1 d_1 s_2 d_2 ... d_{k+1} s_{k+2} v_1 [seg 1] v_2 vbar_2 [seg 2] ... [seg n~-1] v_n~
//   [seg i] = x_i^1 xbar_i^1 ... x_i^{k+1} xbar_i^{k+1}
//
// Approvals: s -> c_star, d -> c_hat, v -> c, vbar -> c_hat, x_i^j -> color of
// edge i, xbar -> c. Weights: v 3k+4, vbar 3k+5, x 5, xbar 4 (last one 1),
// s 1, d 3. District count k^2 + 4k + 4.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "model.hpp"

namespace gerry {

struct RainbowInstance {
  int n = 0;                // path vertices
  std::vector<int> colors;  // colors[i] is the color of edge (i, i+1), 0-based
  int k = 0;

  void validate() const {
    if (n < 2) throw Error("rainbow instance needs at least two vertices");
    if (static_cast<int>(colors.size()) != n - 1) throw Error("need one color per path edge");
    if (k < 1) throw Error("matching size must be positive");
  }
};

inline RainbowInstance rainbow_from_json(const nlohmann::json& j) {
  try {
    RainbowInstance rm{j.at("n").get<int>(), j.at("colors").get<std::vector<int>>(),
                       j.at("k").get<int>()};
    rm.validate();
    return rm;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed rainbow instance: ") + e.what());
  }
}

inline nlohmann::json rainbow_to_json(const RainbowInstance& rm) {
  return {{"n", rm.n}, {"colors", rm.colors}, {"k", rm.k}};
}

/// Matched edges given by their 0-based index i (edge i joins v_{i+1}, v_{i+2}).
using Matching = std::vector<int>;

inline bool is_rainbow_matching(const RainbowInstance& rm, const Matching& m) {
  std::vector<int> sorted = m;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    if (sorted[a] < 0 || sorted[a] >= rm.n - 1) return false;
    if (a > 0 && sorted[a] - sorted[a - 1] < 2) return false;
  }
  std::vector<int> cols;
  for (int e : sorted) cols.push_back(rm.colors[e]);
  std::sort(cols.begin(), cols.end());
  return std::adjacent_find(cols.begin(), cols.end()) == cols.end();
}

/// Exhaustive search for a rainbow matching of size k.
inline std::optional<Matching> solve_rainbow_bruteforce(const RainbowInstance& rm) {
  rm.validate();
  if (rm.n > 24) throw Error("rainbow brute force is capped at 24 vertices");
  Matching cur;
  std::vector<int> used;
  std::optional<Matching> found;
  auto rec = [&](auto&& self, int next) -> bool {
    if (static_cast<int>(cur.size()) == rm.k) {
      found = cur;
      return true;
    }
    int need = rm.k - static_cast<int>(cur.size());
    for (int e = next; e < rm.n - 1; ++e) {
      // remaining edges e, e+2, ... must still fit
      if ((rm.n - 1 - e + 1) / 2 < need) break;
      if (std::find(used.begin(), used.end(), rm.colors[e]) != used.end()) continue;
      cur.push_back(e);
      used.push_back(rm.colors[e]);
      if (self(self, e + 2)) return true;
      cur.pop_back();
      used.pop_back();
    }
    return false;
  };
  rec(rec, 0);
  return found;
}

struct ReducedInstance {
  // Empty when k' exceeds the vertex count: no partition into k' districts
  // exists, so the plain instance is a trivial no and cannot be represented.
  std::optional<Instance> instance;
  int k_prime = 0;
  std::vector<std::string> candidates;
  std::vector<std::string> vertex_names;
  std::vector<Candidate> approvals;
  std::vector<Weight> weights;
  std::vector<int> s, d;                  // special and dummy vertices
  std::vector<int> v, vbar;               // v[i] for i in 0..n-1; vbar[i] = -1 at the ends
  std::vector<std::vector<int>> x, xbar;  // [edge][j], j in 0..k
  std::map<int, Candidate> color_candidate;

  Candidate c_star() const { return Candidate{0}; }
  Candidate c() const { return Candidate{1}; }
  Candidate c_hat() const { return Candidate{2}; }
  int vertex_count() const { return static_cast<int>(vertex_names.size()); }
};

inline ReducedInstance reduce(const RainbowInstance& rm) {
  rm.validate();
  const int k = rm.k;
  if (k < 5) throw Error("reduction requires k >= 5");
  std::vector<std::string> cand{"c_star", "c", "c_hat"};
  std::map<int, Candidate> color_cand;
  {
    std::vector<int> cols = rm.colors;
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    for (int col : cols) {
      color_cand[col] = Candidate{static_cast<std::uint32_t>(cand.size())};
      cand.push_back("color_" + std::to_string(col));
    }
  }
  ReducedInstance out;
  out.color_candidate = color_cand;
  auto add = [&](std::string name, Candidate a, Weight w) {
    out.vertex_names.push_back(std::move(name));
    out.approvals.push_back(a);
    out.weights.push_back(w);
    return static_cast<int>(out.vertex_names.size()) - 1;
  };
  const Candidate cs{0}, cc{1}, ch{2};
  for (int i = 1; i <= k + 2; ++i) {
    out.s.push_back(add("s" + std::to_string(i), cs, 1));
    if (i <= k + 1) out.d.push_back(add("d" + std::to_string(i), ch, 3));
  }
  out.v.assign(rm.n, -1);
  out.vbar.assign(rm.n, -1);
  out.x.assign(rm.n - 1, {});
  out.xbar.assign(rm.n - 1, {});
  for (int i = 0; i < rm.n; ++i) {
    out.v[i] = add("v" + std::to_string(i + 1), cc, 3 * k + 4);
    if (i > 0 && i < rm.n - 1) out.vbar[i] = add("vbar" + std::to_string(i + 1), ch, 3 * k + 5);
    if (i < rm.n - 1) {
      Candidate col = color_cand.at(rm.colors[i]);
      for (int j = 1; j <= k + 1; ++j) {
        std::string suffix = std::to_string(i + 1) + "_" + std::to_string(j);
        out.x[i].push_back(add("x" + suffix, col, 5));
        out.xbar[i].push_back(add("xbar" + suffix, cc, j <= k ? 4 : 1));
      }
    }
  }
  const int total = static_cast<int>(out.vertex_names.size());
  out.k_prime = k * k + 4 * k + 4;
  out.candidates = cand;
  if (out.k_prime <= total)
    out.instance = gm_to_wgm(total, path_edges(total), GraphClass::path, cand, out.approvals,
                             out.weights, cs, out.k_prime);
  return out;
}

/// The partition built from a rainbow matching: singletons for special and
/// dummy vertices, pairs {x_i^j, xbar_i^j} along matched segments, and the
/// remaining path pieces.
inline Partition forward_witness(const RainbowInstance& rm, const ReducedInstance& red,
                                 const Matching& m) {
  if (static_cast<int>(m.size()) != rm.k || !is_rainbow_matching(rm, m))
    throw Error("not a rainbow matching of size k");
  const int total = red.vertex_count();
  std::vector<char> taken(total, 0);
  Partition part;
  for (int s : red.s) {
    part.districts.push_back({{s}});
    taken[s] = 1;
  }
  for (int d : red.d) {
    part.districts.push_back({{d}});
    taken[d] = 1;
  }
  for (int e : m)
    for (int j = 0; j <= rm.k; ++j) {
      part.districts.push_back({{red.x[e][j], red.xbar[e][j]}});
      taken[red.x[e][j]] = taken[red.xbar[e][j]] = 1;
    }
  District run;
  for (int u = 0; u < total; ++u) {
    if (taken[u]) {
      if (!run.vertices.empty()) part.districts.push_back(std::move(run));
      run = {};
    } else {
      run.vertices.push_back(u);
    }
  }
  if (!run.vertices.empty()) part.districts.push_back(std::move(run));
  return part;
}

/// "index name weight approval" per vertex in path order.
inline std::string reduction_table(const ReducedInstance& red) {
  std::string out;
  for (std::size_t i = 0; i < red.vertex_names.size(); ++i)
    out += std::to_string(i) + " " + red.vertex_names[i] + " " + std::to_string(red.weights[i]) +
           " " + red.candidates[red.approvals[i].id] + "\n";
  return out;
}

}  // namespace gerry
