#include <map>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "support.hpp"

using namespace gerry;
using testutil::path_instance;

namespace {

std::uint32_t naive_mul(const GF2L& f, std::uint32_t a, std::uint32_t b) { return f.slow_mul(a, b); }

GroupAlgebraElement random_element(const GF2L& f, int dim, std::mt19937_64& rng) {
  auto e = GroupAlgebraElement::zero(dim);
  for (auto& c : e.coef) c = rng() % 3 == 0 ? 0 : f.random(rng);
  return e;
}

GroupAlgebraElement naive_product(const GF2L& f, const GroupAlgebraElement& a,
                                  const GroupAlgebraElement& b) {
  auto r = GroupAlgebraElement::zero(a.dim);
  for (std::size_t g = 0; g < a.coef.size(); ++g)
    for (std::size_t h = 0; h < b.coef.size(); ++h) r.coef[g ^ h] ^= naive_mul(f, a.coef[g], b.coef[h]);
  return r;
}

std::uint32_t field_pow(const GF2L& f, std::uint32_t a, std::uint64_t e) {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = f.slow_mul(r, a);
    a = f.slow_mul(a, a);
    e >>= 1;
  }
  return r;
}

}  // namespace

using testutil::path_polynomial;
using testutil::nonzero;

TEST_CASE("detect_multilinear examples") {
  Circuit xy;
  int x1 = xy.add_var(0), x2 = xy.add_var(1);
  xy.set_output(xy.add_times(x1, x2));
  CHECK(detect_multilinear(xy, 2, DetectOptions{0, 5, 1}));

  Circuit sq;
  int y = sq.add_var(0);
  sq.set_output(sq.add_times(y, y));
  for (std::uint64_t seed = 1; seed <= 50; ++seed)
    CHECK_FALSE(detect_multilinear(sq, 2, DetectOptions{0, 3, seed}));

  Circuit mix;
  int a = mix.add_var(0), b = mix.add_var(1), c = mix.add_var(2);
  mix.set_output(mix.add_plus({mix.add_times(a, a), mix.add_times(b, c)}));
  CHECK(detect_multilinear(mix, 2, DetectOptions{0, 5, 3}));

  // x1 x2 + x2 x1 cancels in characteristic 2 without per-wire scalars
  Circuit twice;
  int p = twice.add_var(0), q = twice.add_var(1);
  twice.set_output(twice.add_plus({twice.add_times(p, q), twice.add_times(q, p)}));
  CHECK(detect_multilinear(twice, 2, DetectOptions{0, 5, 4}));
}

TEST_CASE("detect_multilinear rejects a field that is too small") {
  Circuit c;
  c.set_output(c.add_var(0));
  CHECK_THROWS_AS(detect_multilinear(c, 16, DetectOptions{5, 1, 1}), Error);
  CHECK_NOTHROW(detect_multilinear(c, 16, DetectOptions{6, 1, 1}));
  CHECK(default_field_degree(8) >= 16);
}

TEST_CASE("GF(2^l) reduction polynomials are primitive") {
  for (int ell = 1; ell <= 32; ++ell) {
    GF2L f(ell);
    const std::uint64_t order = (std::uint64_t{1} << ell) - 1;
    const std::uint32_t x = ell == 1 ? 1 : 2;
    CHECK(field_pow(f, x, order) == 1);
    std::uint64_t rest = order;
    for (std::uint64_t q = 2; q * q <= rest; ++q) {
      if (rest % q) continue;
      while (rest % q == 0) rest /= q;
      CHECK(field_pow(f, x, order / q) != 1);
    }
    if (rest > 1 && rest != order) CHECK(field_pow(f, x, order / rest) != 1);
    if (f.has_tables()) {
      std::vector<char> seen(order + 1, 0);
      for (std::uint32_t e = 0; e < order; ++e) seen[f.exp(e)] = 1;
      CHECK(std::count(seen.begin() + 1, seen.end(), 1) == static_cast<long>(order));
    }
  }
}

TEST_CASE("table multiplication matches carry-less multiplication") {
  std::mt19937_64 rng(5);
  for (int ell : {2, 8, 13, 16}) {
    GF2L f(ell);
    for (int t = 0; t < 2000; ++t) {
      auto a = f.random(rng), b = f.random(rng);
      CHECK(f.mul(a, b) == f.slow_mul(a, b));
    }
  }
}

TEST_CASE("group algebra laws") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    int dim = static_cast<int>(rng() % 7);
    int ell = 1 + static_cast<int>(rng() % 16);
    GF2L f(ell);
    auto a = random_element(f, dim, rng), b = random_element(f, dim, rng),
         c = random_element(f, dim, rng);
    CHECK(ga_mul(f, a, b) == ga_mul(f, b, a));
    CHECK(ga_mul(f, ga_mul(f, a, b), c) == ga_mul(f, a, ga_mul(f, b, c)));
    CHECK(ga_mul(f, a, ga_add(b, c)) == ga_add(ga_mul(f, a, b), ga_mul(f, a, c)));
    CHECK(ga_mul(f, a, b) == naive_product(f, a, b));
    CHECK(ga_mul(f, a, GroupAlgebraElement::one(dim)) == a);
  }
  // (e0 + e_u)^2 = 0 in characteristic 2
  GF2L f(8);
  auto v = GroupAlgebraElement::zero(3);
  v.coef[0] = 1;
  v.coef[5] = 1;
  CHECK(ga_mul(f, v, v).is_zero());
}

TEST_CASE("k = k* gives a constant circuit") {
  Rng rng(40);
  for (int trial = 0; trial < 40; ++trial) {
    int n = rng.uniform_int(1, 7);
    int k = rng.uniform_int(1, n);
    auto inst = testutil::random_instance(rng, GraphClass::path, n, 3, k);
    AuxGraph aux(inst, k, TieBreakRule::lex_min_candidate);
    auto pc = build_circuit(aux);
    auto poly = nonzero(pc.circuit.expand()[pc.circuit.output()]);
    bool want = solve_target_oracle(inst, k, TieBreakRule::lex_min_candidate).found;
    CHECK(poly.size() == (want ? 1u : 0u));
    if (want) CHECK(poly.begin()->first.empty());
    CHECK(solve_target_rand(inst, k, TieBreakRule::lex_min_candidate) == want);
  }
}

TEST_CASE("two vertices, k* = 1, p wins only the second") {
  auto inst = path_instance({{0, 1}, {1, 0}}, 2);
  AuxGraph aux(inst, 1, TieBreakRule::lex_min_candidate);
  auto pc = build_circuit(aux);
  CHECK(nonzero(pc.circuit.expand()[pc.circuit.output()]).empty());
  CHECK_FALSE(solve_target_rand(inst, 1, TieBreakRule::lex_min_candidate));
}

TEST_CASE("circuit expansion equals the path polynomial") {
  Rng rng(41);
  int nonconstant = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int n = rng.uniform_int(1, 5);
    int m = rng.uniform_int(1, 3);
    int k = rng.uniform_int(1, n);
    int ks = rng.uniform_int(1, k);
    auto inst = testutil::random_instance(rng, GraphClass::path, n, m, k, 4);
    for (auto rule : {TieBreakRule::lex_min_candidate, TieBreakRule::prefer_p_then_lex}) {
      AuxGraph aux(inst, ks, rule);
      for (bool prune : {true, false}) {
        auto pc = build_circuit(aux, CircuitOptions{prune});
        CHECK(pc.circuit.well_formed());
        auto got = nonzero(pc.circuit.expand()[pc.circuit.output()]);
        auto want = path_polynomial(aux);
        CHECK(got == want);
        // multilinear monomials are exactly the distinct-label paths
        CHECK(multilinear_part(got) == multilinear_part(want));
        nonconstant += !got.empty() && !got.begin()->first.empty();
      }
    }
  }
  CHECK(nonconstant > 20);
}

TEST_CASE("every tabulated gate is homogeneous of degree i - r") {
  Rng rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    int n = rng.uniform_int(2, 6);
    int k = rng.uniform_int(2, n);
    int ks = rng.uniform_int(1, k);
    auto inst = testutil::random_instance(rng, GraphClass::path, n, 3, k, 4);
    AuxGraph aux(inst, ks, TieBreakRule::lex_min_candidate);
    auto pc = build_circuit(aux);
    auto vals = pc.circuit.expand();
    for (int i = 1; i <= k + 1; ++i)
      for (int r = 1; r <= std::min(i, ks + 1); ++r)
        for (int b = 0; b <= n; ++b) {
          int g = pc.psi_gate(i, r, b);
          if (g < 0) continue;
          for (const auto& [mono, c] : vals[g])
            if (c) CHECK(static_cast<int>(mono.size()) == i - r);
        }
  }
}

TEST_CASE("randomized solver agrees with the oracle and never errs on no") {
  Rng rng(43);
  int yes = 0, no = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int n = rng.uniform_int(1, 10);
    int m = rng.uniform_int(1, 4);
    auto base = testutil::random_instance(rng, GraphClass::path, n, m, 1);
    for (int k = 1; k <= n; ++k) {
      auto inst = base.with_k(k);
      auto truth = achievable_targets(inst, TieBreakRule::lex_min_candidate);
      for (int ks = 1; ks <= k; ++ks) {
        bool got = solve_target_rand(inst, ks, TieBreakRule::lex_min_candidate,
                                     RandOptions{truth[ks] ? 30 : 3, 0, rng.next()});
        CHECK(got == truth[ks]);
        (truth[ks] ? yes : no) += 1;
      }
    }
  }
  CHECK(yes > 50);
  CHECK(no > 50);
}

TEST_CASE("k* out of range and reproducibility") {
  auto inst = path_instance({{1, 0}, {0, 1}, {1, 0}, {0, 2}}, 3);
  CHECK_FALSE(solve_target_rand(inst, 4, TieBreakRule::lex_min_candidate));
  CHECK_FALSE(solve_target_rand(inst, 0, TieBreakRule::lex_min_candidate));
  Rng rng(44);
  auto big = testutil::random_instance(rng, GraphClass::path, 12, 3, 7);
  for (int ks = 1; ks <= 7; ++ks) {
    RandOptions o{1, 0, 99};
    CHECK(solve_target_rand(big, ks, TieBreakRule::lex_min_candidate, o) ==
          solve_target_rand(big, ks, TieBreakRule::lex_min_candidate, o));
  }
  auto tree = Instance::create(3, {{0, 1}, {0, 2}}, GraphClass::tree, testutil::names(1),
                               {{1}, {1}, {1}}, Candidate{0}, 1);
  CHECK_THROWS_AS(solve_target_rand(tree, 1, TieBreakRule::lex_min_candidate), Error);
}
