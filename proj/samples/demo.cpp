// Small end-to-end run: build a path instance, ask every solver, print a witness.

#include <iostream>

#include "gerry/gerry.hpp"

int main() {
  using namespace gerry;
  // 0-1-2-3-4-5, candidates p, a, b
  std::vector<std::vector<Weight>> w = {{3, 1, 0}, {0, 4, 0}, {2, 0, 1},
                                        {0, 0, 5}, {4, 1, 0}, {0, 2, 2}};
  auto inst = Instance::create(6, path_edges(6), GraphClass::path, {"p", "a", "b"}, w,
                               Candidate{0}, 3);
  for (Algo algo : {Algo::oracle, Algo::detfpt, Algo::randfpt, Algo::exact}) {
    SolveOptions opts;
    opts.algo = algo;
    auto rep = solve_wgm(inst, opts);
    std::cout << to_string(algo) << ": " << (rep.answer ? "yes" : "no");
    if (rep.answer) std::cout << ", p wins " << rep.k_star;
    std::cout << "\n";
  }
  SolveOptions opts;
  opts.want_witness = true;
  auto rep = solve_wgm(inst, opts);
  if (rep.witness)
    for (const auto& d : rep.witness->districts) {
      std::cout << "  {";
      for (std::size_t i = 0; i < d.vertices.size(); ++i) std::cout << (i ? "," : "") << d.vertices[i];
      std::cout << "} -> " << inst.candidates()[district_winner(inst, d, TieBreakRule::lex_min_candidate).id] << "\n";
    }
  return 0;
}
