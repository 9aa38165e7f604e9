#pragma once

// Randomized target solver on paths. Builds a circuit whose output polynomial
// has one monomial per s-t walk in the auxiliary graph (product of arc labels
// along it); a multilinear monomial exists iff some such path uses distinct
// labels. Detection then runs in the group algebra over Z_2^D.
//
// psi(i, r, b) sums over predecessors v(a, b):
//   p wins P[a..b]:  psi(i-1, r-1, a-1)
//   c wins P[a..b]:  psi(i-1, r, a-1) * (<c,1> + ... + <c,k*-1>)
// Predecessors with the same winner c are summed first and multiplied by one
// label-sum gate that is private to this (i, r, b, c).

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "auxgraph.hpp"
#include "circuit.hpp"

namespace gerry {

struct CircuitOptions {
  bool prune = true;  // drop cells that cannot reach the output
};

struct PsiCircuit {
  Circuit circuit;
  int k = 0, k_star = 0, n = 0;
  // gate for (i, r, b), or -1 when that polynomial is identically zero
  std::vector<std::vector<std::vector<int>>> psi;

  int psi_gate(int i, int r, int b) const {
    if (i < 1 || i >= static_cast<int>(psi.size()) || r < 1 ||
        r >= static_cast<int>(psi[i].size()) || b < 0 || b > n)
      return -1;
    return psi[i][r][b];
  }
  /// Degree of every monomial of the output polynomial.
  int degree() const { return k - k_star; }
};

inline PsiCircuit build_circuit(const AuxGraph& aux, CircuitOptions opts = {}) {
  const int n = aux.n(), k = aux.k(), ks = aux.k_star(), budget = k - ks;
  PsiCircuit pc;
  pc.k = k;
  pc.k_star = ks;
  pc.n = n;
  pc.psi.assign(k + 2, std::vector<std::vector<int>>(ks + 2, std::vector<int>(n + 1, -1)));
  Circuit& c = pc.circuit;
  std::vector<int> var_gate(aux.universe_size(), -1);
  auto var = [&](int idx) {
    if (var_gate[idx] < 0) var_gate[idx] = c.add_var(idx);
    return var_gate[idx];
  };
  pc.psi[1][1][0] = c.add_const(true);
  for (int i = 2; i <= k + 1; ++i)
    for (int r = 1; r <= std::min(i, ks + 1); ++r)
      for (int b = 1; b <= n; ++b) {
        if (opts.prune) {
          if (i - r > budget) continue;
          if (b < i - 1 || n - b < k + 1 - i) continue;
          if (b == n && i != k + 1) continue;
        }
        std::vector<int> terms;
        std::map<std::uint32_t, std::vector<int>> by_winner;
        for (int a = 1; a <= b; ++a) {
          if (aux.p_wins(a, b)) {
            int g = pc.psi_gate(i - 1, r - 1, a - 1);
            if (g >= 0) terms.push_back(g);
          } else if (ks > 1 && r <= i - 1) {
            int g = pc.psi_gate(i - 1, r, a - 1);
            if (g >= 0) by_winner[aux.winner(a, b).id].push_back(g);
          }
        }
        for (auto& [cand, preds] : by_winner) {
          int left = preds.size() == 1 ? preds[0] : c.add_plus(std::move(preds));
          std::vector<int> labels;
          int base = aux.label_index(ArcLabel{Candidate{cand}, 1});
          for (int j = 0; j < ks - 1; ++j) labels.push_back(var(base + j));
          int sum = c.add_plus(std::move(labels));
          terms.push_back(c.add_times(left, sum));
        }
        if (terms.empty()) continue;
        pc.psi[i][r][b] = c.add_plus(std::move(terms));
      }
  int out = pc.psi_gate(k + 1, ks + 1, n);
  c.set_output(out >= 0 ? out : c.add_const(false));
  return pc;
}

struct RandOptions {
  int trials = 3;
  int ell = 0;  // 0: default for the degree
  std::uint64_t seed = 1;
  int extra_dims = 2;
};

inline bool solve_target_rand(const Instance& inst, int k_star, TieBreakRule rule,
                              RandOptions opts = {}) {
  if (!inst.is_path()) throw Error("randomized solver needs a path instance");
  if (k_star < 1 || k_star > inst.k()) return false;
  AuxGraph aux(inst, k_star, rule);
  if (aux.universe_size() > 0 && aux.universe_size() < inst.k() - k_star) return false;
  PsiCircuit pc = build_circuit(aux);
  const Gate& out = pc.circuit.gate(pc.circuit.output());
  if (out.kind == GateKind::const0) return false;
  if (out.kind == GateKind::const1) return true;
  return detect_multilinear(pc.circuit, pc.degree(),
                            DetectOptions{opts.ell, opts.trials, opts.seed, opts.extra_dims});
}

}  // namespace gerry
