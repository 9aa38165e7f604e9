// Command-line front end.
//
//   gerry solve instance.json [--algo auto] [--k-star K] [--witness]
//   gerry gen --n 10 --m 3 --graph-class tree --k 4 [--out file]
//   gerry reduce-rainbow rm.json [--out file]
//   gerry difftest [--count 500]
//
// Exit status: 0 yes / success, 1 no / disagreement, 2 error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gerry/gerry.hpp"

namespace {

using gerry::json;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gerry::Error("cannot write '" + path + "'");
  out << text;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gerry::Error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw gerry::Error("cannot parse '" + path + "': " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted gerrymandering solvers"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string tiebreak = "lexmin";
  std::uint64_t seed = 1;
  bool as_json = false;
  app.add_option("--tiebreak", tiebreak, "Tie-breaking rule")
      ->check(CLI::IsMember({"lexmin", "preferp"}));
  app.add_option("--seed", seed, "Random seed");
  app.add_flag("--json", as_json, "Print one JSON object on stdout");

  // solve
  auto* solve = app.add_subcommand("solve", "Decide an instance");
  std::string solve_file, algo = "auto";
  int k_star = 0, trials = 3, ell = 0;
  bool witness = false;
  double memory_gib = 2.0;
  solve->add_option("file", solve_file, "Instance JSON")->required();
  solve->add_option("--algo", algo, "Solver")
      ->check(CLI::IsMember({"oracle", "detfpt", "randfpt", "exact", "auto"}));
  solve->add_option("--k-star", k_star, "Only try this number of wins for p");
  solve->add_option("--trials", trials, "Randomized solver trials");
  solve->add_option("--ell", ell, "Field degree for the randomized solver (0 = default)");
  solve->add_flag("--witness", witness, "Print a partition on yes");
  solve->add_option("--memory-cap", memory_gib, "Exact solver memory cap in GiB");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gerry::GenParams gp;
  std::string gen_class = "path", gen_out;
  gen->add_option("--n", gp.n)->required();
  gen->add_option("--m", gp.m)->required();
  gen->add_option("--graph-class", gen_class)->check(CLI::IsMember({"path", "tree", "general"}));
  gen->add_option("--weight-max", gp.weight_max);
  gen->add_option("--k", gp.k)->required();
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // reduce-rainbow
  auto* red = app.add_subcommand("reduce-rainbow", "Reduce a rainbow matching instance");
  std::string red_file, red_out;
  red->add_option("file", red_file, "Rainbow matching JSON {n, colors, k}")->required();
  red->add_option("--out", red_out, "Output file (default stdout)");

  // difftest
  auto* diff = app.add_subcommand("difftest", "Cross-check all solvers on random instances");
  gerry::DiffConfig dc;
  bool no_rand = false;
  diff->add_option("--count", dc.count);
  diff->add_option("--path-max-n", dc.path_max_n);
  diff->add_option("--tree-max-n", dc.tree_max_n);
  diff->add_option("--general-max-n", dc.general_max_n);
  diff->add_option("--max-m", dc.max_m);
  diff->add_option("--trials", dc.rand_trials_yes, "Randomized trials on yes-instances");
  diff->add_flag("--no-randfpt", no_rand);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const auto rule = gerry::tiebreak_from_string(tiebreak);
    if (*solve) {
      auto inst = gerry::load_instance(solve_file);
      gerry::SolveOptions opts;
      opts.algo = gerry::algo_from_string(algo);
      opts.rule = rule;
      if (k_star > 0) opts.k_star = k_star;
      opts.trials = trials;
      opts.ell = ell;
      opts.seed = seed;
      opts.want_witness = witness;
      opts.exact.memory_cap = static_cast<std::size_t>(memory_gib * (1 << 30));
      auto rep = gerry::solve_wgm(inst, opts);
      if (as_json) {
        json j = {{"answer", rep.answer ? "yes" : "no"}, {"seconds", rep.seconds}};
        j["k_star"] = rep.answer ? json(rep.k_star) : json(nullptr);
        j["witness"] = rep.witness ? gerry::partition_to_json(*rep.witness) : json(nullptr);
        json steps = json::array();
        for (const auto& s : rep.steps)
          steps.push_back({{"k_star", s.k_star},
                           {"algo", gerry::to_string(s.algo)},
                           {"answer", s.answer},
                           {"seconds", s.seconds}});
        j["steps"] = steps;
        std::cout << j.dump() << "\n";
      } else {
        std::cout << (rep.answer ? "yes" : "no");
        if (rep.answer) std::cout << " (p wins " << rep.k_star << ")";
        std::cout << "  [" << rep.seconds << " s]\n";
        for (const auto& s : rep.steps)
          std::cout << "  k*=" << s.k_star << " " << gerry::to_string(s.algo) << " "
                    << (s.answer ? "yes" : "no") << " " << s.seconds << " s\n";
        if (rep.witness) {
          std::cout << "witness:\n";
          for (const auto& d : rep.witness->districts) {
            std::cout << "  {";
            for (std::size_t i = 0; i < d.vertices.size(); ++i)
              std::cout << (i ? "," : "") << d.vertices[i];
            std::cout << "} -> "
                      << inst.candidates()[gerry::district_winner(inst, d, rule).id] << "\n";
          }
        } else if (rep.answer && witness) {
          std::cout << "witness: unavailable at this size\n";
        }
      }
      return rep.answer ? 0 : 1;
    }
    if (*gen) {
      gp.graph_class = gerry::graph_class_from_string(gen_class);
      gp.seed = seed;
      write_text(gen_out, gerry::dump_instance(gerry::generate_instance(gp)));
      return 0;
    }
    if (*red) {
      auto rm = gerry::rainbow_from_json(read_json_file(red_file));
      auto reduced = gerry::reduce(rm);
      if (!reduced.instance)
        throw gerry::Error("reduced path has " + std::to_string(reduced.vertex_count()) +
                           " vertices, fewer than k' = " + std::to_string(reduced.k_prime) +
                           " districts; the instance is trivially a no-instance");
      write_text(red_out, gerry::dump_instance(*reduced.instance));
      return 0;
    }
    if (*diff) {
      dc.seed = seed;
      dc.rule = rule;
      dc.run_randfpt = !no_rand;
      auto rep = gerry::run_difftest(dc);
      if (as_json) {
        std::cout << rep.to_json().dump() << "\n";
      } else {
        std::cout << "instances " << rep.instances << ", decisions " << rep.decisions << " ("
                  << rep.yes_decisions << " yes), disagreements " << rep.disagreements.size()
                  << "\n";
        std::cout << "randfpt: " << rep.rand_detected << "/" << rep.rand_yes << " detected, "
                  << rep.rand_false_positives << " false positives\n";
        for (const auto& [name, st] : rep.timing)
          std::cout << "  " << name << ": " << st.calls << " calls, " << st.seconds << " s\n";
        for (const auto& d : rep.disagreements) std::cout << "DISAGREE " << d.dump() << "\n";
      }
      return rep.ok() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
