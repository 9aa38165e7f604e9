#pragma once

// Differential test driver: random paths, trees and general graphs, every
// district count k and every target k*, all applicable solvers compared
// against the brute-force oracle.

#include <chrono>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "generate.hpp"
#include "instance_io.hpp"
#include "solve.hpp"

namespace gerry {

struct DiffConfig {
  int count = 500;
  int path_max_n = 12;
  int tree_max_n = 10;
  int general_max_n = 9;
  int max_m = 4;
  int weight_max = 6;
  std::uint64_t seed = 2024;
  TieBreakRule rule = TieBreakRule::lex_min_candidate;
  bool run_randfpt = true;
  int rand_trials_yes = 30;
  int rand_trials_no = 3;
  bool run_exact = true;
  bool run_detfpt = true;
};

struct SolverTiming {
  std::size_t calls = 0;
  double seconds = 0;
};

struct DiffReport {
  int instances = 0;
  std::size_t decisions = 0;
  std::size_t yes_decisions = 0;
  std::vector<nlohmann::json> disagreements;
  std::map<std::string, SolverTiming> timing;
  std::size_t rand_yes = 0, rand_detected = 0, rand_false_negatives = 0, rand_false_positives = 0,
              rand_no = 0;
  double rand_trial_bound = 0;  // per-instance false-negative bound (1/3)^trials

  /// Fatal disagreements: any deterministic mismatch, any randomized false
  /// positive, or randomized false negatives above 3x the theoretical rate.
  bool ok() const {
    if (!disagreements.empty() || rand_false_positives > 0) return false;
    if (rand_yes == 0) return true;
    double rate = double(rand_false_negatives) / double(rand_yes);
    return rate <= 3 * rand_trial_bound;
  }

  nlohmann::json to_json() const {
    nlohmann::json t = nlohmann::json::object();
    for (const auto& [name, st] : timing) t[name] = {{"calls", st.calls}, {"seconds", st.seconds}};
    return {{"instances", instances},
            {"decisions", decisions},
            {"yes_decisions", yes_decisions},
            {"disagreements", disagreements},
            {"timing", t},
            {"randfpt",
             {{"yes", rand_yes},
              {"no", rand_no},
              {"detected", rand_detected},
              {"false_negatives", rand_false_negatives},
              {"false_positives", rand_false_positives},
              {"per_instance_bound", rand_trial_bound}}},
            {"ok", ok()}};
  }
};

inline GenParams difftest_params(const DiffConfig& cfg, int index, Rng& rng) {
  GenParams g;
  switch (index % 3) {
    case 0:
      g.graph_class = GraphClass::path;
      g.n = rng.uniform_int(1, cfg.path_max_n);
      break;
    case 1:
      g.graph_class = GraphClass::tree;
      g.n = rng.uniform_int(1, cfg.tree_max_n);
      break;
    default:
      g.graph_class = GraphClass::general;
      g.n = rng.uniform_int(1, cfg.general_max_n);
      break;
  }
  g.m = rng.uniform_int(1, cfg.max_m);
  g.weight_max = rng.uniform_int(1, cfg.weight_max);
  g.k = 1;
  g.seed = rng.next();
  return g;
}

inline DiffReport run_difftest(const DiffConfig& cfg) {
  using clock = std::chrono::steady_clock;
  DiffReport rep;
  rep.rand_trial_bound = std::pow(1.0 / 3.0, cfg.rand_trials_yes);
  Rng rng(cfg.seed);
  auto timed = [&](const std::string& name, auto&& fn) {
    auto t0 = clock::now();
    auto out = fn();
    auto& st = rep.timing[name];
    ++st.calls;
    st.seconds += std::chrono::duration<double>(clock::now() - t0).count();
    return out;
  };
  for (int idx = 0; idx < cfg.count; ++idx) {
    GenParams g = difftest_params(cfg, idx, rng);
    Instance base = generate_instance(g);
    ++rep.instances;
    ExactOptions eopts;
    eopts.backend = idx % 2 ? MultiplyBackend::ntt : MultiplyBackend::automatic;
    for (int k = 1; k <= base.n(); ++k) {
      Instance inst = base.with_k(k);
      auto truth = timed("oracle", [&] { return achievable_targets(inst, cfg.rule); });
      for (int ks = 1; ks <= k; ++ks) {
        const bool want = truth[ks];
        ++rep.decisions;
        rep.yes_decisions += want;
        auto record = [&](const char* solver, bool got) {
          nlohmann::json d = {{"instance", instance_to_json(inst)},
                              {"k_star", ks},
                              {"solver", solver},
                              {"expected", want},
                              {"got", got}};
          rep.disagreements.push_back(std::move(d));
        };
        if (cfg.run_exact) {
          bool got = timed("exact", [&] { return solve_target_exact(inst, ks, cfg.rule, eopts).found; });
          if (got != want) record("exact", got);
        }
        if (!inst.is_path()) continue;
        if (cfg.run_detfpt) {
          auto r = timed("detfpt", [&] { return solve_target_det(inst, ks, cfg.rule); });
          if (r.found != want) record("detfpt", r.found);
          if (r.found) {
            auto ev = evaluate_partition(inst, *r.witness, cfg.rule);
            if (!meets_target(inst, ev.wins, ks)) record("detfpt-witness", true);
          }
        }
        if (cfg.run_randfpt) {
          RandOptions ro;
          ro.trials = want ? cfg.rand_trials_yes : cfg.rand_trials_no;
          ro.seed = rng.next();
          bool got = timed("randfpt", [&] { return solve_target_rand(inst, ks, cfg.rule, ro); });
          if (want) {
            ++rep.rand_yes;
            if (got)
              ++rep.rand_detected;
            else
              ++rep.rand_false_negatives;
          } else {
            ++rep.rand_no;
            if (got) {
              ++rep.rand_false_positives;
              record("randfpt", got);
            }
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace gerry
