#pragma once

// Seeded random instances. Output depends only on the parameters and the seed
// (mt19937_64 is fully specified, and bounded draws avoid library
// distributions, whose algorithms vary between standard libraries).

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "model.hpp"

namespace gerry {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [lo, hi].
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t range = hi - lo + 1;
    if (range == 0) return eng_();
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range);
    std::uint64_t x;
    do x = eng_();
    while (x >= limit);
    return lo + x % range;
  }
  int uniform_int(int lo, int hi) {
    return static_cast<int>(uniform(0, static_cast<std::uint64_t>(hi - lo))) + lo;
  }
  bool chance(std::uint64_t num, std::uint64_t den) { return uniform(0, den - 1) < num; }
  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

struct GenParams {
  int n = 8;
  int m = 3;
  GraphClass graph_class = GraphClass::path;
  int weight_max = 5;
  int k = 3;
  std::uint64_t seed = 1;
  int extra_edge_percent = 30;  // general graphs: chance of each extra edge
};

/// Random labeled tree from a random Pruefer sequence.
inline std::vector<Edge> random_tree(int n, Rng& rng) {
  std::vector<Edge> edges;
  if (n < 2) return edges;
  if (n == 2) return {{0, 1}};
  std::vector<int> seq(n - 2);
  for (auto& x : seq) x = rng.uniform_int(0, n - 1);
  std::vector<int> degree(n, 1);
  for (int x : seq) ++degree[x];
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  for (int x : seq) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(leaf, x);
    if (--degree[x] == 1) leaves.insert(x);
  }
  int a = *leaves.begin();
  int b = *std::next(leaves.begin());
  edges.emplace_back(a, b);
  return edges;
}

inline Instance generate_instance(const GenParams& g) {
  if (g.n < 1 || g.m < 1 || g.weight_max < 1 || g.k < 1) throw Error("generator parameters must be positive");
  if (g.k > g.n) throw Error("k must not exceed n");
  Rng rng(g.seed);
  std::vector<Edge> edges;
  switch (g.graph_class) {
    case GraphClass::path: edges = path_edges(g.n); break;
    case GraphClass::tree: edges = random_tree(g.n, rng); break;
    case GraphClass::general: {
      edges = random_tree(g.n, rng);
      std::set<Edge> have;
      for (auto [u, v] : edges) have.insert({std::min(u, v), std::max(u, v)});
      for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
          if (!have.count({u, v}) && rng.chance(g.extra_edge_percent, 100)) edges.emplace_back(u, v);
      break;
    }
  }
  std::vector<std::string> names;
  for (int c = 0; c < g.m; ++c) names.push_back("c" + std::to_string(c));
  std::vector<std::vector<Weight>> w(g.n, std::vector<Weight>(g.m, 0));
  for (auto& row : w) {
    bool any = false;
    for (auto& x : row)
      if (rng.chance(1, 2)) {
        x = rng.uniform_int(1, g.weight_max);
        any = true;
      }
    if (!any) row[rng.uniform_int(0, g.m - 1)] = rng.uniform_int(1, g.weight_max);
  }
  return Instance::create(g.n, std::move(edges), g.graph_class, std::move(names), std::move(w),
                          Candidate{0}, g.k);
}

}  // namespace gerry
