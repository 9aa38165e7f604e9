// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure. `acceptance 3 5` runs only criteria 3 and 5.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace gerry;
using namespace testutil;

namespace {

using clock_type = std::chrono::steady_clock;

double since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::uint64_t binom(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

Instance random_path(Rng& rng, int n, int m, int k, int weight_max = 5) {
  GenParams g;
  g.n = n;
  g.m = m;
  g.k = k;
  g.weight_max = weight_max;
  g.graph_class = GraphClass::path;
  g.seed = rng.next();
  return generate_instance(g);
}

// 1 and 2 share one run of the differential harness.
DiffReport& shared_difftest() {
  static DiffReport rep = [] {
    DiffConfig cfg;
    cfg.count = 500;
    cfg.path_max_n = 12;
    cfg.tree_max_n = 10;
    cfg.general_max_n = 9;
    cfg.max_m = 4;
    cfg.rand_trials_yes = 30;
    return run_difftest(cfg);
  }();
  return rep;
}

Outcome cross_solver() {
  Outcome o;
  auto& rep = shared_difftest();
  std::ostringstream ss;
  ss << rep.instances << " instances, " << rep.decisions << " decisions (" << rep.yes_decisions
     << " yes); oracle " << rep.timing["oracle"].seconds << " s, detfpt "
     << rep.timing["detfpt"].seconds << " s, exact " << rep.timing["exact"].seconds << " s";
  o.detail = ss.str();
  std::size_t det = 0;
  for (const auto& d : rep.disagreements)
    if (d["solver"] != "randfpt") ++det;
  if (rep.instances != 500) o.fail("ran " + std::to_string(rep.instances) + " instances");
  if (det) o.fail(std::to_string(det) + " deterministic disagreements");
  return o;
}

Outcome randomized() {
  Outcome o;
  auto& rep = shared_difftest();
  double rate = rep.rand_yes ? double(rep.rand_detected) / double(rep.rand_yes) : 0;
  std::ostringstream ss;
  ss << rep.rand_detected << "/" << rep.rand_yes << " yes detected (" << rate * 100
     << "%), " << rep.rand_false_positives << "/" << rep.rand_no << " false positives, "
     << rep.timing["randfpt"].seconds << " s";
  o.detail = ss.str();
  if (rep.rand_false_positives) o.fail("false positives: " + o.detail);
  if (rep.rand_yes == 0 || rate < 0.999) o.fail("detection below 99.9%: " + o.detail);
  return o;
}

Outcome aux_counts() {
  Outcome o;
  Rng rng(303);
  std::size_t arcs_checked = 0;
  for (int n = 1; n <= 50; ++n) {
    auto inst = random_path(rng, n, 3, n);
    for (int ks : {1, 2, 3, 4}) {
      if (ks > n) break;
      AuxGraph aux(inst, ks, TieBreakRule::lex_min_candidate);
      const std::uint64_t want = binom(n, 2) + n + 2;
      if (std::uint64_t(aux.vertex_count()) != want) {
        o.fail("n=" + std::to_string(n) + ": " + std::to_string(aux.vertex_count()) +
               " vertices, want " + std::to_string(want));
        continue;
      }
      auto arcs = aux.arcs();
      const int nv = aux.vertex_count();
      // Kahn's algorithm: every vertex must be removed
      std::vector<int> indeg(nv, 0);
      std::vector<std::vector<int>> out(nv);
      for (const auto& a : arcs) {
        out[a.tail].push_back(a.head);
        ++indeg[a.head];
      }
      std::vector<int> ready;
      for (int v = 0; v < nv; ++v)
        if (!indeg[v]) ready.push_back(v);
      int removed = 0;
      while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++removed;
        for (int h : out[v])
          if (--indeg[h] == 0) ready.push_back(h);
      }
      if (removed != nv) o.fail("cycle at n=" + std::to_string(n));
      // arcs per (tail, head): one unlabeled out of p-winners, k*-1 distinct
      // labeled copies out of the rest
      std::map<std::pair<int, int>, std::vector<AuxArc>> pairs;
      for (const auto& a : arcs) pairs[{a.tail, a.head}].push_back(a);
      for (const auto& [key, list] : pairs) {
        ++arcs_checked;
        if (key.first == AuxGraph::kSource) {
          if (list.size() != 1 || list[0].label) o.fail("source arcs must be single and unlabeled");
          continue;
        }
        auto [i, j] = aux.interval(key.first);
        Candidate w = aux.winner(i, j);
        if (w == aux.p()) {
          if (list.size() != 1 || list[0].label) o.fail("p-winner arc must be single and unlabeled");
          continue;
        }
        std::set<int> copies;
        for (const auto& a : list)
          if (a.label && a.label->candidate == w) copies.insert(a.label->copy);
        if (int(list.size()) != ks - 1 || int(copies.size()) != ks - 1)
          o.fail("multiplicity " + std::to_string(list.size()) + " != k*-1 at n=" +
                 std::to_string(n) + ", k*=" + std::to_string(ks));
      }
    }
  }
  if (o.pass)
    o.detail = "n = 1..50, k* = 1..4, " + std::to_string(arcs_checked) + " arc bundles checked";
  return o;
}

Outcome representative_families() {
  Outcome o;
  Rng rng(404);
  int families = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int universe = rng.uniform_int(2, 12);
    int p = rng.uniform_int(1, std::min(4, universe));
    int q = rng.uniform_int(0, universe - p);
    auto s = random_family(rng, universe, p, rng.uniform_int(1, 80));
    auto rep = represent(s, q, rng.next(), universe);
    if (!verify_representative(s, rep, q, universe) || !brute_represents(s, rep, q, universe))
      o.fail("family " + std::to_string(trial) + " not represented");
    if (rep.size() > binom(p + q, p))
      o.fail("family " + std::to_string(trial) + " has " + std::to_string(rep.size()) +
             " sets, bound " + std::to_string(binom(p + q, p)));
    ++families;
  }
  int instances = 0, decisions = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int n = rng.uniform_int(1, 10);
    auto base = random_path(rng, n, rng.uniform_int(1, 4), 1);
    for (int k = 1; k <= n; ++k) {
      auto inst = base.with_k(k);
      for (int ks = 1; ks <= k; ++ks) {
        auto on = solve_target_det(inst, ks, TieBreakRule::lex_min_candidate, DetOptions{true});
        auto off = solve_target_det(inst, ks, TieBreakRule::lex_min_candidate, DetOptions{false});
        if (on.found != off.found)
          o.fail("represent on/off disagree on instance " + std::to_string(trial));
        ++decisions;
      }
    }
    ++instances;
  }
  if (o.pass)
    o.detail = std::to_string(families) + " families verified; " + std::to_string(instances) +
             " instances, " + std::to_string(decisions) + " decisions with represent on/off";
  return o;
}

Outcome circuit() {
  Outcome o;
  Rng rng(505);
  int circuits = 0;
  for (int trial = 0; trial < 150; ++trial) {
    int n = rng.uniform_int(1, 5);
    int k = rng.uniform_int(1, n);
    int ks = rng.uniform_int(1, k);
    auto inst = random_path(rng, n, rng.uniform_int(1, 3), k, 4);
    for (auto rule : {TieBreakRule::lex_min_candidate, TieBreakRule::prefer_p_then_lex}) {
      AuxGraph aux(inst, ks, rule);
      auto want = path_polynomial(aux);
      for (bool prune : {true, false}) {
        auto pc = build_circuit(aux, CircuitOptions{prune});
        auto vals = pc.circuit.expand();
        if (nonzero(vals[pc.circuit.output()]) != want)
          o.fail("expansion differs from path polynomial (trial " + std::to_string(trial) + ")");
        for (int i = 1; i <= k + 1; ++i)
          for (int r = 1; r <= std::min(i, ks + 1); ++r)
            for (int b = 0; b <= n; ++b) {
              int g = pc.psi_gate(i, r, b);
              if (g < 0) continue;
              for (const auto& [mono, c] : vals[g])
                if (c && int(mono.size()) != i - r) o.fail("monomial degree differs from i - r");
            }
        ++circuits;
      }
    }
  }
  // gate count growth with k = n/2, k* = k/2
  std::vector<double> xs, ys;
  std::ostringstream sizes;
  for (int n : {8, 12, 16, 24, 32, 48}) {
    int k = n / 2, ks = std::max(1, k / 2);
    auto inst = random_path(rng, n, 3, k);
    AuxGraph aux(inst, ks, TieBreakRule::lex_min_candidate);
    auto pc = build_circuit(aux);
    xs.push_back(std::log(double(n)));
    ys.push_back(std::log(double(pc.circuit.size())));
    sizes << " " << n << ":" << pc.circuit.size();
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i] / xs.size(), my += ys[i] / ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  double slope = sxy / sxx;
  if (slope > 4) o.fail("gate count exponent " + std::to_string(slope));
  std::ostringstream ss;
  ss << circuits << " circuits expanded; gate counts" << sizes.str() << "; exponent " << slope;
  if (o.pass) o.detail = ss.str();
  return o;
}

Outcome exact_algebra() {
  Outcome o;
  Rng rng(606);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_poly(rng, 10, 30), b = random_poly(rng, 10, 30);
    int h = rng.uniform_int(0, 10);
    auto ha = hamming_projection(a, h);
    bool ok = hamming_projection(ha, h) == ha &&
              hamming_projection(a + b, h) == ha + hamming_projection(b, h);
    for (const auto& t : ha.terms()) ok = ok && std::popcount(t.exp) == h;
    SetPolynomial all;
    for (int g = 0; g <= 10; ++g) all = all + hamming_projection(a, g);
    ok = ok && all == a;
    auto ra = representative(a);
    ok = ok && representative(ra) == ra && ra.exponents() == a.exponents();
    for (const auto& t : ra.terms()) ok = ok && t.coef == 1;
    ok = ok && representative(poly_multiply(a, b)) ==
                   representative(poly_multiply(ra, representative(b)));
    // disjoint single sets: projection keeps exactly the disjoint products
    Mask x = rng.uniform(0, 1023), y = rng.uniform(0, 1023);
    auto prod = hamming_projection(
        poly_multiply(SetPolynomial::from_exponents({x}), SetPolynomial::from_exponents({y})),
        std::popcount(x) + std::popcount(y));
    ok = ok && ((x & y) ? prod.is_zero() : prod == SetPolynomial::from_exponents({x | y}));
    if (!ok) o.fail("projection/representative law broken (trial " + std::to_string(trial) + ")");
  }
  for (int trial = 0; trial < 1000; ++trial) {
    int bits = rng.uniform_int(1, 10);
    auto a = random_poly(rng, bits, rng.uniform_int(0, 40), 1000);
    auto b = random_poly(rng, bits, rng.uniform_int(0, 40), 1000);
    if (multiply_ntt(a, b) != multiply_schoolbook(a, b))
      o.fail("transform product differs (trial " + std::to_string(trial) + ")");
  }
  int tables = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto g = static_cast<GraphClass>(trial % 3);
    int n = rng.uniform_int(1, 10);
    GenParams gp;
    gp.n = n;
    gp.m = rng.uniform_int(1, 3);
    gp.k = 1;
    gp.graph_class = g;
    gp.seed = rng.next();
    auto inst = generate_instance(gp);
    auto fam = enumerate_districts(inst, TieBreakRule::lex_min_candidate);
    int ks = rng.uniform_int(1, 5);
    for (auto backend : {MultiplyBackend::schoolbook, MultiplyBackend::ntt}) {
      auto q = build_Q1(fam, inst.p(), ks, backend);
      for (int j = 0; j <= ks - 1; ++j) {
        auto unions = disjoint_unions(fam.by_candidate[inst.p().id], j + 1);
        for (int s = 0; s <= n; ++s) {
          std::vector<std::uint64_t> want;
          for (Mask u : unions)
            if (std::popcount(u) == s) want.push_back(u);
          if (q[j][s].exponents() != want) o.fail("Q1 table differs (trial " + std::to_string(trial) + ")");
        }
      }
      ++tables;
    }
  }
  if (o.pass)
    o.detail = "200 law checks, 1000 transform products, " + std::to_string(tables) + " Q1 tables";
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome reduction() {
  Outcome o;
  Rng rng(707);
  int yes = 0, tried = 0;
  while (yes < 100 && tried < 20000) {
    ++tried;
    int n = rng.uniform_int(10, 12);
    RainbowInstance rm{n, {}, 5};
    int colors = rng.uniform_int(5, 8);
    for (int e = 0; e < n - 1; ++e) rm.colors.push_back(rng.uniform_int(0, colors - 1));
    auto m = solve_rainbow_bruteforce(rm);
    if (!m) continue;
    ++yes;
    auto red = reduce(rm);
    if (!red.instance) {
      o.fail("reduced instance missing for a yes-instance");
      continue;
    }
    const auto& inst = *red.instance;
    auto part = forward_witness(rm, red, *m);
    if (!validate_partition(inst, part).ok) o.fail("forward witness is not a valid partition");
    if (int(part.districts.size()) != red.k_prime || red.k_prime != 5 * 5 + 4 * 5 + 4)
      o.fail("district count " + std::to_string(part.districts.size()));
    for (auto rule : {TieBreakRule::lex_min_candidate, TieBreakRule::prefer_p_then_lex}) {
      auto ev = evaluate_partition(inst, part, rule);
      if (ev.wins[red.c_star().id] != rm.k + 2)
        o.fail("c_star wins " + std::to_string(ev.wins[red.c_star().id]));
      for (int c = 0; c < inst.m(); ++c)
        if (Candidate{std::uint32_t(c)} != red.c_star() && ev.wins[c] > rm.k + 1)
          o.fail(inst.candidates()[c] + " wins " + std::to_string(ev.wins[c]));
    }
  }
  if (yes < 100) o.fail("only " + std::to_string(yes) + " yes-instances found");
  struct Golden {
    const char* file;
    RainbowInstance rm;
  };
  std::vector<Golden> golden{{"reduction_n3_k5.txt", {3, {1, 4}, 5}},
                             {"reduction_n5_k5.txt", {5, {0, 2, 0, 7}, 5}},
                             {"reduction_n4_k6.txt", {4, {3, 3, 1}, 6}}};
  for (const auto& g : golden) {
    std::string want = read_file(std::string(GERRY_GOLDEN_DIR) + "/" + g.file);
    if (want.empty() || reduction_table(reduce(g.rm)) != want)
      o.fail(std::string("golden table mismatch: ") + g.file);
  }
  if (o.pass)
    o.detail = std::to_string(yes) + " yes-instances (" + std::to_string(tried) +
               " drawn), 3 golden tables byte-equal";
  return o;
}

Outcome scaling() {
  Outcome o;
  std::ostringstream ss;
  const auto rule = TieBreakRule::lex_min_candidate;
  double worst_exact = 0;
  for (int k : {3, 6, 9}) {
    GenParams g;
    g.n = 18;
    g.m = 3;
    g.k = k;
    g.seed = 18 + k;
    auto inst = generate_instance(g);
    auto t0 = clock_type::now();
    std::vector<bool> got(k + 1, false);
    for (int ks = 1; ks <= k; ++ks) got[ks] = solve_target_exact(inst, ks, rule).found;
    double s = since(t0);
    auto truth = achievable_targets(inst, rule);
    for (int ks = 1; ks <= k; ++ks)
      if (got[ks] != truth[ks]) o.fail("exact n=18 disagrees with the oracle");
    worst_exact = std::max(worst_exact, s);
    if (s >= 60) o.fail("exact n=18 k=" + std::to_string(k) + " took " + std::to_string(s) + " s");
  }
  ss << "exact n=18 worst " << worst_exact << " s";
  GenParams g;
  g.n = 60;
  g.m = 5;
  g.k = 14;
  g.seed = 7;
  auto inst = generate_instance(g);
  auto t0 = clock_type::now();
  auto r = solve_target_det(inst, 4, rule);
  double s = since(t0);
  if (s >= 60) o.fail("detfpt n=60 k-k*=10 took " + std::to_string(s) + " s");
  if (r.found && !meets_target(inst, evaluate_partition(inst, *r.witness, rule).wins, 4))
    o.fail("detfpt witness does not meet the target");
  ss << "; detfpt n=60 k-k*=10 " << s << " s (" << (r.found ? "yes" : "no") << ", "
     << r.stored_sets << " stored sets)";
  if (o.pass) o.detail = ss.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "cross-solver equivalence", cross_solver},
      {2, "randomized solver", randomized},
      {3, "auxiliary graph counts", aux_counts},
      {4, "representative families", representative_families},
      {5, "psi circuit", circuit},
      {6, "exact-solver algebra", exact_algebra},
      {7, "reduction", reduction},
      {8, "scaling smoke test", scaling},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = clock_type::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    failed += !out.pass;
    std::printf("%s [%d] %s (%.1f s): %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, since(t0),
                out.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
