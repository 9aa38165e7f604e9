#pragma once

// Arithmetic circuits over label variables: PLUS gates of any fan-in, TIMES
// gates of fan-in two, variables and the constants 0 and 1. Gates are
// appended in topological order.

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <random>
#include <vector>

#include "gf2l.hpp"
#include "model.hpp"

namespace gerry {

enum class GateKind { var, const0, const1, plus, times };

struct Gate {
  GateKind kind = GateKind::const0;
  int var = -1;             // for var gates
  std::vector<int> inputs;  // earlier gate ids
};

/// Sparse polynomial: sorted variable multiset -> coefficient.
using Monomial = std::vector<int>;
using Polynomial = std::map<Monomial, std::uint64_t>;

class Circuit {
 public:
  int add_var(int var) {
    if (var < 0) throw Error("variable index must be nonnegative");
    num_vars_ = std::max(num_vars_, var + 1);
    return push(Gate{GateKind::var, var, {}});
  }
  int add_const(bool one) { return push(Gate{one ? GateKind::const1 : GateKind::const0, -1, {}}); }
  int add_plus(std::vector<int> inputs) {
    check_inputs(inputs);
    return push(Gate{GateKind::plus, -1, std::move(inputs)});
  }
  int add_times(int a, int b) {
    std::vector<int> in{a, b};
    check_inputs(in);
    return push(Gate{GateKind::times, -1, std::move(in)});
  }

  void set_output(int g) {
    if (g < 0 || g >= size()) throw Error("output gate out of range");
    output_ = g;
  }
  int output() const { return output_; }
  int size() const { return static_cast<int>(gates_.size()); }
  int num_vars() const { return num_vars_; }
  const Gate& gate(int g) const { return gates_[g]; }
  const std::vector<Gate>& gates() const { return gates_; }

  std::size_t wire_count() const {
    std::size_t w = 0;
    for (const auto& g : gates_) w += g.inputs.size();
    return w;
  }

  /// Structural checks: inputs precede their gate, TIMES has two inputs.
  bool well_formed() const {
    for (int g = 0; g < size(); ++g) {
      const auto& gt = gates_[g];
      if (gt.kind == GateKind::times && gt.inputs.size() != 2) return false;
      if ((gt.kind == GateKind::var || gt.kind == GateKind::const0 ||
           gt.kind == GateKind::const1) && !gt.inputs.empty())
        return false;
      for (int in : gt.inputs)
        if (in < 0 || in >= g) return false;
    }
    return true;
  }

  /// Full sum-product expansion of every gate up to `upto` (inclusive).
  /// Exponential in general; for small circuits only.
  std::vector<Polynomial> expand(int upto = -1) const {
    if (upto < 0) upto = size() - 1;
    std::vector<Polynomial> val(upto + 1);
    for (int g = 0; g <= upto; ++g) {
      const auto& gt = gates_[g];
      auto& out = val[g];
      switch (gt.kind) {
        case GateKind::var: out[{gt.var}] = 1; break;
        case GateKind::const0: break;
        case GateKind::const1: out[{}] = 1; break;
        case GateKind::plus:
          for (int in : gt.inputs)
            for (const auto& [mono, c] : val[in]) out[mono] += c;
          break;
        case GateKind::times:
          for (const auto& [ma, ca] : val[gt.inputs[0]])
            for (const auto& [mb, cb] : val[gt.inputs[1]]) {
              Monomial mm;
              std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(mm));
              out[mm] += ca * cb;
            }
          break;
      }
    }
    return val;
  }

 private:
  int push(Gate g) {
    gates_.push_back(std::move(g));
    return size() - 1;
  }
  void check_inputs(const std::vector<int>& in) const {
    for (int g : in)
      if (g < 0 || g >= size()) throw Error("gate input must be an existing gate");
  }

  std::vector<Gate> gates_;
  int output_ = -1;
  int num_vars_ = 0;
};

inline bool is_multilinear(const Monomial& m) {
  return std::adjacent_find(m.begin(), m.end()) == m.end();
}

inline Polynomial multilinear_part(const Polynomial& p) {
  Polynomial out;
  for (const auto& [m, c] : p)
    if (c && is_multilinear(m)) out[m] = c;
  return out;
}

struct DetectOptions {
  int ell = 0;     // 0 picks a default from the degree bound
  int trials = 3;
  std::uint64_t seed = 1;
  int extra_dims = 2;  // group dimension = degree bound + extra_dims
};

inline int default_field_degree(int degree_bound) {
  int lg = 0;
  while ((1 << lg) < std::max(degree_bound, 1)) ++lg;
  return std::max(lg + 4, 16);
}

namespace detail {

// Evaluates the circuit once over GF(2^l)[Z_2^dim]: variable x maps to
// e_0 + e_{u_x} for a random u_x, and every PLUS input wire gets a random
// field scalar. Values are released after their last use.
inline bool evaluate_once(const Circuit& c, const GF2L& field, int dim, std::mt19937_64& rng) {
  const std::size_t size = std::size_t{1} << dim;
  const int ng = c.size();
  std::vector<int> last_use(ng, -1);
  for (int g = 0; g < ng; ++g)
    for (int in : c.gate(g).inputs) last_use[in] = g;
  last_use[c.output()] = ng;
  std::vector<std::uint32_t> u(c.num_vars());
  for (auto& x : u) x = static_cast<std::uint32_t>(rng() & (size - 1));
  std::vector<std::vector<std::uint32_t>> val(ng);
  std::vector<char> zero(ng, 0);
  for (int g = 0; g <= c.output(); ++g) {
    const auto& gt = c.gate(g);
    auto& out = val[g];
    out.assign(size, 0);
    switch (gt.kind) {
      case GateKind::var:
        out[0] ^= 1;
        out[u[gt.var]] ^= 1;
        break;
      case GateKind::const0: break;
      case GateKind::const1: out[0] = 1; break;
      case GateKind::plus:
        for (int in : gt.inputs) {
          std::uint32_t s = field.random(rng);
          if (!zero[in]) ga_axpy(field, s, val[in], out);
        }
        break;
      case GateKind::times:
        if (!zero[gt.inputs[0]] && !zero[gt.inputs[1]])
          ga_mul_acc(field, val[gt.inputs[0]], val[gt.inputs[1]], out);
        break;
    }
    zero[g] = std::all_of(out.begin(), out.end(), [](std::uint32_t x) { return x == 0; });
    if (zero[g]) out = {};
    for (int in : gt.inputs)
      if (last_use[in] == g) std::vector<std::uint32_t>().swap(val[in]);
  }
  return !zero[c.output()];
}

}  // namespace detail

/// One-sided test for a multilinear monomial of degree <= degree_bound in the
/// circuit's output. Never reports true when no such monomial exists.
inline bool detect_multilinear(const Circuit& c, int degree_bound, DetectOptions opts = {}) {
  if (c.output() < 0) throw Error("circuit has no output gate");
  if (degree_bound < 0) throw Error("degree bound must be nonnegative");
  int ell = opts.ell == 0 ? default_field_degree(degree_bound) : opts.ell;
  if (degree_bound >= 1 && ell < std::log2(static_cast<double>(degree_bound)) + 2)
    throw Error("field degree l=" + std::to_string(ell) + " too small for degree bound " +
                std::to_string(degree_bound));
  if (opts.trials < 1) throw Error("need at least one trial");
  int dim = degree_bound + std::max(opts.extra_dims, 0);
  if (dim > 24) throw Error("degree bound too large for group-algebra evaluation");
  GF2L field(ell);
  std::mt19937_64 rng(opts.seed);
  for (int t = 0; t < opts.trials; ++t)
    if (detail::evaluate_once(c, field, dim, rng)) return true;
  return false;
}

}  // namespace gerry
