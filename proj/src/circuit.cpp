#include "circuit.hpp"

#include <algorithm>
#include <array>

#include "error.hpp"

namespace psc {

namespace {

const std::array<BasisOp, 8> kBasisTable = {{
    {"add", OpKind::Add, 2, 1},
    {"sub", OpKind::Sub, 2, 1},
    {"mul", OpKind::Mul, 2, 2},
    {"div", OpKind::Div, 2, 2},
    {"min", OpKind::Min, 2, 2},
    {"max", OpKind::Max, 2, 2},
    {"ite_lt", OpKind::IteLt, 4, 3},
    {"const_inject", OpKind::ConstInject, 0, 1},
}};

}  // namespace

const BasisOp& basis_op(OpKind kind) {
  return kBasisTable[static_cast<std::size_t>(kind)];
}

const BasisOp* basis_op_by_name(const std::string& name) {
  for (const auto& op : kBasisTable)
    if (op.name == name) return &op;
  return nullptr;
}

int op_arity(OpKind kind) { return basis_op(kind).arity; }

Node Node::det_input(int i) {
  Node n;
  n.kind = Kind::DetInput;
  n.input = i;
  return n;
}

Node Node::rand_input(int j) {
  Node n;
  n.kind = Kind::RandInput;
  n.input = j;
  return n;
}

Node Node::constant(Rational v) {
  Node n;
  n.kind = Kind::Const;
  n.value = std::move(v);
  return n;
}

Node Node::gate(OpKind op, std::vector<int> children) {
  Node n;
  n.kind = Kind::Gate;
  n.op = op;
  n.children = std::move(children);
  return n;
}

Node Node::const_inject(Rational v) {
  Node n;
  n.kind = Kind::Gate;
  n.op = OpKind::ConstInject;
  n.value = std::move(v);
  return n;
}

void RandomInputSpec::validate() const {
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    const auto& dist = inputs[j];
    if (const auto* u = std::get_if<UniformRational>(&dist)) {
      if (!(u->lo < u->hi))
        fail(ErrorCode::Invalid,
             "random input " + std::to_string(j + 1) + ": lo must be < hi");
      if (u->denominator_bound == 0)
        fail(ErrorCode::Invalid, "random input " + std::to_string(j + 1) +
                                     ": zero denominator bound");
    } else if (const auto* d = std::get_if<DiscreteUniform>(&dist)) {
      if (d->values.empty())
        fail(ErrorCode::Invalid, "random input " + std::to_string(j + 1) +
                                     ": empty discrete list");
    }
  }
}

bool RandomInputSpec::finite_support() const {
  for (const auto& dist : inputs)
    if (std::holds_alternative<UniformRational>(dist)) return false;
  return true;
}

std::vector<std::pair<std::vector<Rational>, Rational>>
RandomInputSpec::enumerate_support(std::size_t budget) const {
  if (!finite_support())
    fail(ErrorCode::Unsupported,
         "enumerate_support: spec has a continuous component");
  std::size_t total = 1;
  for (const auto& dist : inputs) {
    std::size_t card = std::holds_alternative<PointMass>(dist)
                           ? 1
                           : std::get<DiscreteUniform>(dist).values.size();
    if (total > budget / std::max<std::size_t>(card, 1))
      fail(ErrorCode::Budget, "enumerate_support: support exceeds budget");
    total *= card;
  }
  std::vector<std::pair<std::vector<Rational>, Rational>> out;
  out.reserve(total);
  std::vector<std::size_t> idx(inputs.size(), 0);
  for (std::size_t count = 0; count < total; ++count) {
    std::vector<Rational> vec;
    Rational weight = 1;
    vec.reserve(inputs.size());
    for (std::size_t j = 0; j < inputs.size(); ++j) {
      if (const auto* p = std::get_if<PointMass>(&inputs[j])) {
        vec.push_back(p->value);
      } else {
        const auto& vals = std::get<DiscreteUniform>(inputs[j]).values;
        vec.push_back(vals[idx[j]]);
        weight /= Rational(static_cast<unsigned long>(vals.size()));
      }
    }
    out.emplace_back(std::move(vec), std::move(weight));
    for (std::size_t j = inputs.size(); j-- > 0;) {
      std::size_t card = std::holds_alternative<PointMass>(inputs[j])
                             ? 1
                             : std::get<DiscreteUniform>(inputs[j]).values.size();
      if (++idx[j] < card) break;
      idx[j] = 0;
    }
  }
  return out;
}

std::size_t Circuit::size() const {
  std::size_t s = 0;
  for (const auto& n : nodes)
    if (n.kind == Node::Kind::Gate) ++s;
  return s;
}

int Circuit::max_gate_complexity() const {
  int b = 0;
  for (const auto& n : nodes)
    if (n.kind == Node::Kind::Gate)
      b = std::max(b, basis_op(n.op).descr_complexity);
  return b;
}

void Circuit::validate() const {
  if (n_det_inputs < 0 || n_rand_inputs < 0)
    fail(ErrorCode::Invalid, "negative input counts");
  if (nodes.empty()) fail(ErrorCode::Invalid, "circuit has no nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    switch (n.kind) {
      case Node::Kind::DetInput:
        if (n.input < 1 || n.input > n_det_inputs)
          fail(ErrorCode::Invalid,
               "node " + std::to_string(i) + ": x index out of range");
        break;
      case Node::Kind::RandInput:
        if (n.input < 1 || n.input > n_rand_inputs)
          fail(ErrorCode::Invalid,
               "node " + std::to_string(i) + ": r index out of range");
        break;
      case Node::Kind::Const:
        break;
      case Node::Kind::Gate: {
        int arity = op_arity(n.op);
        if (static_cast<int>(n.children.size()) != arity)
          fail(ErrorCode::Invalid, "node " + std::to_string(i) +
                                       ": arity mismatch for " +
                                       basis_op(n.op).name);
        for (int child : n.children) {
          if (child < 0 || static_cast<std::size_t>(child) >= nodes.size())
            fail(ErrorCode::Invalid,
                 "node " + std::to_string(i) + ": dangling child index");
          if (static_cast<std::size_t>(child) >= i)
            fail(ErrorCode::Invalid,
                 "node " + std::to_string(i) + ": cycle/forward reference");
        }
        break;
      }
    }
  }
  if (output < 0 || static_cast<std::size_t>(output) >= nodes.size())
    fail(ErrorCode::Invalid, "output index out of range");
  if (rand_spec) {
    rand_spec->validate();
    if (static_cast<int>(rand_spec->inputs.size()) != n_rand_inputs)
      fail(ErrorCode::Invalid, "random input spec length != k");
  }
}

namespace {

template <typename Num>
Num apply_gate(const Node& n, const std::vector<Num>& vals, std::size_t i) {
  const auto& ch = n.children;
  switch (n.op) {
    case OpKind::Add: return vals[ch[0]] + vals[ch[1]];
    case OpKind::Sub: return vals[ch[0]] - vals[ch[1]];
    case OpKind::Mul: return vals[ch[0]] * vals[ch[1]];
    case OpKind::Div:
      if (vals[ch[1]] == 0)
        fail(ErrorCode::DivisionByZero,
             "division by zero at node " + std::to_string(i));
      return vals[ch[0]] / vals[ch[1]];
    case OpKind::Min: return std::min(vals[ch[0]], vals[ch[1]]);
    case OpKind::Max: return std::max(vals[ch[0]], vals[ch[1]]);
    case OpKind::IteLt:
      return vals[ch[0]] < vals[ch[1]] ? vals[ch[2]] : vals[ch[3]];
    case OpKind::ConstInject: break;  // handled by caller
  }
  fail(ErrorCode::Internal, "unhandled gate kind");
}

template <typename Num, typename Conv>
std::vector<Num> trace_impl(const Circuit& c, std::span<const Num> x,
                            std::span<const Num> r, Conv conv) {
  if (static_cast<int>(x.size()) != c.n_det_inputs)
    fail(ErrorCode::Invalid, "evaluate: |x| != n");
  if (static_cast<int>(r.size()) != c.n_rand_inputs)
    fail(ErrorCode::Invalid, "evaluate: |r| != k");
  std::vector<Num> vals;
  vals.reserve(c.nodes.size());
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const Node& n = c.nodes[i];
    switch (n.kind) {
      case Node::Kind::DetInput: vals.push_back(x[n.input - 1]); break;
      case Node::Kind::RandInput: vals.push_back(r[n.input - 1]); break;
      case Node::Kind::Const: vals.push_back(conv(n.value)); break;
      case Node::Kind::Gate:
        vals.push_back(n.op == OpKind::ConstInject ? conv(n.value)
                                                   : apply_gate(n, vals, i));
        break;
    }
  }
  return vals;
}

}  // namespace

std::vector<Rational> evaluate_trace(const Circuit& c,
                                     std::span<const Rational> x,
                                     std::span<const Rational> r) {
  return trace_impl<Rational>(c, x, r, [](const Rational& v) { return v; });
}

Rational evaluate(const Circuit& c, std::span<const Rational> x,
                  std::span<const Rational> r) {
  return evaluate_trace(c, x, r)[c.output];
}

double evaluate_double(const Circuit& c, std::span<const double> x,
                       std::span<const double> r) {
  auto vals =
      trace_impl<double>(c, x, r, [](const Rational& v) { return to_double(v); });
  return vals[c.output];
}

Circuit fix_random_inputs(const Circuit& c, std::span<const Rational> r) {
  if (static_cast<int>(r.size()) != c.n_rand_inputs)
    fail(ErrorCode::Invalid, "fix_random_inputs: |r| != k");
  Circuit out = c;
  out.n_rand_inputs = 0;
  out.rand_spec.reset();
  for (auto& n : out.nodes)
    if (n.kind == Node::Kind::RandInput) n = Node::constant(r[n.input - 1]);
  return out;
}

int append_subcircuit(Circuit& dst, const Circuit& src,
                      std::span<const int> input_nodes) {
  if (!src.deterministic())
    fail(ErrorCode::Invalid, "append_subcircuit: src must be deterministic");
  if (static_cast<int>(input_nodes.size()) != src.n_det_inputs)
    fail(ErrorCode::Invalid, "append_subcircuit: input map length mismatch");
  for (int node : input_nodes)
    if (node < 0 || static_cast<std::size_t>(node) >= dst.nodes.size())
      fail(ErrorCode::Invalid, "append_subcircuit: input map out of range");
  std::vector<int> remap(src.nodes.size(), -1);
  for (std::size_t i = 0; i < src.nodes.size(); ++i) {
    const Node& n = src.nodes[i];
    if (n.kind == Node::Kind::DetInput) {
      remap[i] = input_nodes[n.input - 1];
      continue;
    }
    Node copy = n;
    for (int& child : copy.children) child = remap[child];
    dst.nodes.push_back(std::move(copy));
    remap[i] = static_cast<int>(dst.nodes.size()) - 1;
  }
  return remap[src.output];
}

std::vector<Rational> sample_seed(const RandomInputSpec& spec,
                                  std::uint64_t master_seed,
                                  std::uint64_t stream_index) {
  spec.validate();
  Rng rng(master_seed, stream_index);
  std::vector<Rational> out;
  out.reserve(spec.inputs.size());
  for (const auto& dist : spec.inputs) {
    if (const auto* p = std::get_if<PointMass>(&dist)) {
      out.push_back(p->value);
    } else if (const auto* d = std::get_if<DiscreteUniform>(&dist)) {
      out.push_back(d->values[rng.below(d->values.size())]);
    } else {
      const auto& u = std::get<UniformRational>(dist);
      out.push_back(rng.rational_in(u.lo, u.hi, u.denominator_bound));
    }
  }
  return out;
}

}  // namespace psc
