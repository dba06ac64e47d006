#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rational.hpp"
#include "rng.hpp"

namespace psc {

// Gate kinds. const_inject is an arity-0 gate carrying an inline rational,
// for bases where constants are charged as gates; ordinary circuits use
// Const nodes instead, which do not count toward circuit size.
enum class OpKind : std::uint8_t {
  Add,
  Sub,
  Mul,
  Div,
  Min,
  Max,
  IteLt,  // ite_lt(a, b, u, v) = u if a < b else v
  ConstInject,
};

struct BasisOp {
  std::string name;
  OpKind kind;
  int arity;
  int descr_complexity;  // description complexity of the gate's graph formula
};

// Canonical basis table. The descr_complexity values are pinned by the graph
// formula constructions in formula.cpp and checked by a test against
// description_complexity(gate_graph_formula(kind)).
const BasisOp& basis_op(OpKind kind);
const BasisOp* basis_op_by_name(const std::string& name);  // null if unknown
int op_arity(OpKind kind);

struct Node {
  enum class Kind : std::uint8_t { DetInput, RandInput, Const, Gate };

  Kind kind = Kind::Const;
  int input = 0;              // 1-based input number for DetInput/RandInput
  Rational value;             // Const payload; const_inject payload
  OpKind op = OpKind::Add;    // for Gate
  std::vector<int> children;  // node indices, all strictly below this node

  static Node det_input(int i);
  static Node rand_input(int j);
  static Node constant(Rational v);
  static Node gate(OpKind op, std::vector<int> children);
  static Node const_inject(Rational v);
};

// Per-random-input distributions.
struct UniformRational {
  Rational lo, hi;
  unsigned long denominator_bound;
};
struct DiscreteUniform {
  std::vector<Rational> values;  // nonempty; duplicates weight a value up
};
struct PointMass {
  Rational value;
};
using InputDistribution =
    std::variant<UniformRational, DiscreteUniform, PointMass>;

struct RandomInputSpec {
  std::vector<InputDistribution> inputs;  // one per random input

  void validate() const;
  bool finite_support() const;  // no UniformRational entries
  // All support vectors with their exact probabilities (finite specs only).
  std::vector<std::pair<std::vector<Rational>, Rational>> enumerate_support(
      std::size_t budget) const;
};

// Immutable after build; evaluation is reentrant.
struct Circuit {
  int n_det_inputs = 0;   // n
  int n_rand_inputs = 0;  // k
  std::vector<Node> nodes;
  int output = -1;
  std::optional<RandomInputSpec> rand_spec;

  bool deterministic() const { return n_rand_inputs == 0; }
  std::size_t size() const;              // number of Gate nodes
  int max_gate_complexity() const;       // max descr_complexity over gates
  void validate() const;                 // throws Error on any violation
};

Rational evaluate(const Circuit& c, std::span<const Rational> x,
                  std::span<const Rational> r = {});
std::vector<Rational> evaluate_trace(const Circuit& c,
                                     std::span<const Rational> x,
                                     std::span<const Rational> r = {});

// Float mode, for timing experiments only; not used by any test oracle.
double evaluate_double(const Circuit& c, std::span<const double> x,
                       std::span<const double> r = {});

// Replaces every RandInput(j) by Const(r[j-1]); gate structure unchanged.
Circuit fix_random_inputs(const Circuit& c, std::span<const Rational> r);

// Splices src into dst. input_nodes[i] is the dst node standing in for src's
// DetInput(i+1); src must be deterministic. Returns the dst index of src's
// output. Gate count of dst grows by exactly src.size().
int append_subcircuit(Circuit& dst, const Circuit& src,
                      std::span<const int> input_nodes);

// One seed vector for the circuit's random inputs, deterministic in
// (master_seed, stream_index).
std::vector<Rational> sample_seed(const RandomInputSpec& spec,
                                  std::uint64_t master_seed,
                                  std::uint64_t stream_index);

}  // namespace psc
