#pragma once

// Test-side oracles and generators. Everything here is independent of the
// code paths it checks: expansions are brute-force term manipulations, and
// reference answers come from std::sort or direct enumeration.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "polynomial.hpp"
#include "rng.hpp"

namespace psc::testing {

// --- tropical polynomial expander ------------------------------------------

// One linear piece <a, x> + c of a max-plus polynomial.
struct TropTerm {
  std::vector<unsigned> a;
  Rational c;

  bool operator<(const TropTerm& rhs) const {
    return std::tie(a, c) < std::tie(rhs.a, rhs.c);
  }
  bool operator==(const TropTerm& rhs) const {
    return a == rhs.a && c == rhs.c;
  }
};

// Expands a deterministic {max, +, const} circuit into its full term set.
inline std::vector<TropTerm> tropical_expand(const Circuit& c) {
  std::vector<std::vector<TropTerm>> sets(c.nodes.size());
  int n = c.n_det_inputs;
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const Node& node = c.nodes[i];
    switch (node.kind) {
      case Node::Kind::DetInput: {
        TropTerm t{std::vector<unsigned>(n, 0), 0};
        t.a[node.input - 1] = 1;
        sets[i] = {t};
        break;
      }
      case Node::Kind::Const:
        sets[i] = {TropTerm{std::vector<unsigned>(n, 0), node.value}};
        break;
      case Node::Kind::Gate: {
        if (node.op == OpKind::Max) {
          auto merged = sets[node.children[0]];
          merged.insert(merged.end(), sets[node.children[1]].begin(),
                        sets[node.children[1]].end());
          std::sort(merged.begin(), merged.end());
          merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
          sets[i] = merged;
        } else if (node.op == OpKind::Add) {
          std::vector<TropTerm> out;
          for (const auto& ta : sets[node.children[0]]) {
            for (const auto& tb : sets[node.children[1]]) {
              TropTerm t{std::vector<unsigned>(n, 0), ta.c + tb.c};
              for (int v = 0; v < n; ++v) t.a[v] = ta.a[v] + tb.a[v];
              out.push_back(std::move(t));
            }
          }
          std::sort(out.begin(), out.end());
          out.erase(std::unique(out.begin(), out.end()), out.end());
          sets[i] = out;
        } else {
          throw std::runtime_error("tropical_expand: non-{max,+} gate");
        }
        break;
      }
      case Node::Kind::RandInput:
        throw std::runtime_error("tropical_expand: probabilistic circuit");
    }
  }
  return sets[c.output];
}

inline Rational tropical_poly_eval(const std::vector<TropTerm>& terms,
                                   std::span<const Rational> x) {
  bool first = true;
  Rational best;
  for (const auto& t : terms) {
    Rational v = t.c;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (t.a[i]) v += Rational(t.a[i]) * x[i];
    if (first || v > best) best = v;
    first = false;
  }
  return best;
}

// --- arithmetic expander -----------------------------------------------------

// Symbolic (numerator, denominator) of an arithmetic {+,-,*,/} circuit.
inline std::pair<Polynomial, Polynomial> arithmetic_expand(const Circuit& c) {
  int n = c.n_det_inputs;
  std::vector<std::pair<Polynomial, Polynomial>> vals(c.nodes.size());
  Polynomial one = Polynomial::constant(n, 1);
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const Node& node = c.nodes[i];
    switch (node.kind) {
      case Node::Kind::DetInput:
        vals[i] = {Polynomial::variable(n, node.input), one};
        break;
      case Node::Kind::Const:
        vals[i] = {Polynomial::constant(n, node.value), one};
        break;
      case Node::Kind::Gate: {
        if (node.op == OpKind::ConstInject) {
          vals[i] = {Polynomial::constant(n, node.value), one};
          break;
        }
        const auto& [pa, qa] = vals[node.children[0]];
        const auto& [pb, qb] = vals[node.children[1]];
        switch (node.op) {
          case OpKind::Add: vals[i] = {pa * qb + pb * qa, qa * qb}; break;
          case OpKind::Sub: vals[i] = {pa * qb - pb * qa, qa * qb}; break;
          case OpKind::Mul: vals[i] = {pa * pb, qa * qb}; break;
          case OpKind::Div: vals[i] = {pa * qb, qa * pb}; break;
          default: throw std::runtime_error("arithmetic_expand: non-arithmetic gate");
        }
        break;
      }
      case Node::Kind::RandInput:
        throw std::runtime_error("arithmetic_expand: probabilistic circuit");
    }
  }
  return vals[c.output];
}

// --- random circuit generator -----------------------------------------------

struct RandomCircuitSpec {
  int n_inputs = 3;
  int gates = 8;
  std::vector<OpKind> ops = {OpKind::Add, OpKind::Sub, OpKind::Mul,
                             OpKind::Min, OpKind::Max};
  bool with_constants = true;
};

// Random deterministic circuit; the output is always the last gate.
inline Circuit random_circuit(Rng& rng, const RandomCircuitSpec& spec) {
  Circuit c;
  c.n_det_inputs = spec.n_inputs;
  for (int i = 1; i <= spec.n_inputs; ++i) c.nodes.push_back(Node::det_input(i));
  if (spec.with_constants) {
    int extra = static_cast<int>(rng.below(3));
    for (int i = 0; i < extra; ++i)
      c.nodes.push_back(Node::constant(Rational(rng.int_in(-4, 4))));
  }
  for (int g = 0; g < spec.gates; ++g) {
    OpKind op = spec.ops[rng.below(spec.ops.size())];
    int arity = op_arity(op);
    std::vector<int> children;
    for (int a = 0; a < arity; ++a)
      children.push_back(static_cast<int>(rng.below(c.nodes.size())));
    c.nodes.push_back(Node::gate(op, std::move(children)));
  }
  c.output = static_cast<int>(c.nodes.size()) - 1;
  c.validate();
  return c;
}

// --- misc reference helpers ---------------------------------------------------

inline std::vector<Rational> reference_sorted(std::span<const Rational> values) {
  std::vector<Rational> out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Rational> random_point(Rng& rng, int n, const Rational& lo,
                                          const Rational& hi,
                                          unsigned long den = 8) {
  std::vector<Rational> x(n);
  for (auto& xi : x) xi = rng.rational_in(lo, hi, den);
  return x;
}

// max(x1 + x2, x3)
inline Circuit max_sum_circuit() {
  Circuit c;
  c.n_det_inputs = 3;
  c.nodes = {Node::det_input(1), Node::det_input(2), Node::det_input(3),
             Node::gate(OpKind::Add, {0, 1}), Node::gate(OpKind::Max, {3, 2})};
  c.output = 4;
  c.validate();
  return c;
}

}  // namespace psc::testing
