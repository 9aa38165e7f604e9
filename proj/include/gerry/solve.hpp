#pragma once

// Solver dispatch. The full problem (p wins strictly more districts than
// anyone else) is the OR over k* = 1..k of the target problem, where p wins
// exactly k* and everyone else at most k*-1.

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "detfpt.hpp"
#include "exact.hpp"
#include "oracle.hpp"
#include "randfpt.hpp"

namespace gerry {

enum class Algo { oracle, detfpt, randfpt, exact, automatic };

inline const char* to_string(Algo a) {
  switch (a) {
    case Algo::oracle: return "oracle";
    case Algo::detfpt: return "detfpt";
    case Algo::randfpt: return "randfpt";
    case Algo::exact: return "exact";
    case Algo::automatic: return "auto";
  }
  return "?";
}

inline Algo algo_from_string(const std::string& s) {
  if (s == "oracle") return Algo::oracle;
  if (s == "detfpt") return Algo::detfpt;
  if (s == "randfpt") return Algo::randfpt;
  if (s == "exact") return Algo::exact;
  if (s == "auto") return Algo::automatic;
  throw Error("unknown algorithm '" + s + "'");
}

struct SolveOptions {
  Algo algo = Algo::automatic;
  TieBreakRule rule = TieBreakRule::lex_min_candidate;
  std::optional<int> k_star;  // restrict to one target value
  int trials = 3;
  int ell = 0;
  std::uint64_t seed = 1;
  bool want_witness = false;
  ExactOptions exact;
};

struct TargetStep {
  int k_star = 0;
  Algo algo = Algo::oracle;
  bool answer = false;
  double seconds = 0;
};

struct SolveReport {
  bool answer = false;
  int k_star = 0;
  std::optional<Partition> witness;
  std::vector<TargetStep> steps;
  double seconds = 0;
};

namespace detail {

inline double cut_edge_work(const Instance& inst) {
  return std::exp(std::lgamma(inst.n()) - std::lgamma(inst.k()) - std::lgamma(inst.n() - inst.k() + 1));
}

inline bool oracle_feasible(const Instance& inst) {
  if (inst.n() > kOracleMaskCap) return false;
  if (inst.belongs_to(GraphClass::tree)) return cut_edge_work(inst) < 5e7;
  return inst.n() <= kOracleGeneralCap;
}

}  // namespace detail

/// Work-estimate based choice for one target value. Never picks a path-only
/// solver for a non-path instance.
inline Algo choose_algo(const Instance& inst, int k_star, const ExactOptions& exact = {}) {
  const int n = inst.n();
  const double cut = inst.belongs_to(GraphClass::tree) && n <= kOracleMaskCap
                         ? detail::cut_edge_work(inst)
                         : INFINITY;
  const double exact_work = n <= exact.cap ? std::ldexp(double(n) * n, n) : INFINITY;
  if (inst.is_path()) {
    const int budget = inst.k() - k_star;
    const double det = budget <= Representer::kMaxRank
                           ? std::pow(4.0, budget) * double(n) * n * n
                           : INFINITY;
    if (cut <= det && cut <= exact_work) return Algo::oracle;
    if (det <= exact_work) return Algo::detfpt;
    return Algo::exact;
  }
  if (cut <= exact_work) return Algo::oracle;
  if (std::isfinite(exact_work)) return Algo::exact;
  if (n <= kOracleGeneralCap) return Algo::oracle;
  throw Error("no solver can handle this instance size");
}

struct TargetAnswer {
  bool answer = false;
  std::optional<Partition> witness;
  Algo algo = Algo::oracle;
};

inline TargetAnswer solve_target(const Instance& inst, int k_star, const SolveOptions& opts) {
  Algo algo = opts.algo == Algo::automatic ? choose_algo(inst, k_star, opts.exact) : opts.algo;
  if ((algo == Algo::detfpt || algo == Algo::randfpt) && !inst.is_path())
    throw Error(std::string(to_string(algo)) + " needs a path instance");
  TargetAnswer out;
  out.algo = algo;
  switch (algo) {
    case Algo::oracle: {
      auto r = solve_target_oracle(inst, k_star, opts.rule);
      out.answer = r.found;
      out.witness = r.witness;
      break;
    }
    case Algo::detfpt: {
      auto r = solve_target_det(inst, k_star, opts.rule, DetOptions{true, opts.seed});
      out.answer = r.found;
      out.witness = r.witness;
      break;
    }
    case Algo::randfpt:
      out.answer = solve_target_rand(inst, k_star, opts.rule,
                                     RandOptions{opts.trials, opts.ell, opts.seed, 2});
      break;
    case Algo::exact: out.answer = solve_target_exact(inst, k_star, opts.rule, opts.exact).found; break;
    case Algo::automatic: break;
  }
  return out;
}

/// Re-derives a witness for a known-yes target with a solver that produces one.
inline std::optional<Partition> find_witness(const Instance& inst, int k_star, TieBreakRule rule,
                                             std::uint64_t seed = 1) {
  if (inst.is_path() && inst.k() - k_star <= Representer::kMaxRank)
    return solve_target_det(inst, k_star, rule, DetOptions{true, seed}).witness;
  if (detail::oracle_feasible(inst)) return solve_target_oracle(inst, k_star, rule).witness;
  return std::nullopt;
}

inline SolveReport solve_wgm(const Instance& inst, const SolveOptions& opts) {
  using clock = std::chrono::steady_clock;
  auto start = clock::now();
  SolveReport rep;
  int lo = 1, hi = inst.k();
  if (opts.k_star) {
    if (*opts.k_star < 1 || *opts.k_star > inst.k()) throw Error("--k-star must be in 1..k");
    lo = hi = *opts.k_star;
  }
  for (int ks = lo; ks <= hi; ++ks) {
    auto t0 = clock::now();
    auto ans = solve_target(inst, ks, opts);
    rep.steps.push_back(
        {ks, ans.algo, ans.answer, std::chrono::duration<double>(clock::now() - t0).count()});
    if (!ans.answer) continue;
    rep.answer = true;
    rep.k_star = ks;
    if (opts.want_witness) {
      rep.witness = ans.witness ? ans.witness : find_witness(inst, ks, opts.rule, opts.seed);
      if (rep.witness) {
        auto ev = evaluate_partition(inst, *rep.witness, opts.rule);
        if (!meets_target(inst, ev.wins, ks))
          throw Error("internal error: witness does not meet the target");
      }
    }
    break;
  }
  rep.seconds = std::chrono::duration<double>(clock::now() - start).count();
  return rep;
}

}  // namespace gerry
