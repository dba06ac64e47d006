#include "circuit_text.hpp"

#include <fstream>
#include <sstream>

#include "error.hpp"

namespace psc {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::stringstream ss(line);
  std::string tok;
  while (ss >> tok) {
    if (tok[0] == '#') break;
    toks.push_back(tok);
  }
  return toks;
}

[[noreturn]] void parse_fail(int lineno, const std::string& what) {
  fail(ErrorCode::Parse, "circuit line " + std::to_string(lineno) + ": " + what);
}

int parse_int(const std::string& tok, int lineno, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    parse_fail(lineno, std::string("expected integer for ") + what);
  }
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  Circuit c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool started = false, ended = false, have_output = false;
  std::vector<std::pair<int, InputDistribution>> rand_lines;

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (ended) parse_fail(lineno, "content after 'end'");
    const std::string& head = toks[0];
    if (!started) {
      if (head != "circuit") parse_fail(lineno, "expected 'circuit' header");
      started = true;
      continue;
    }
    if (head == "n") {
      if (toks.size() != 2) parse_fail(lineno, "usage: n <count>");
      c.n_det_inputs = parse_int(toks[1], lineno, "n");
    } else if (head == "k") {
      if (toks.size() != 2) parse_fail(lineno, "usage: k <count>");
      c.n_rand_inputs = parse_int(toks[1], lineno, "k");
    } else if (head == "basis") {
      if (toks.size() != 3) parse_fail(lineno, "usage: basis <op> <descr_complexity>");
      const BasisOp* op = basis_op_by_name(toks[1]);
      if (!op) parse_fail(lineno, "unknown op kind '" + toks[1] + "'");
      int declared = parse_int(toks[2], lineno, "descr_complexity");
      if (declared != op->descr_complexity)
        parse_fail(lineno, "descr_complexity of " + op->name + " is " +
                               std::to_string(op->descr_complexity) +
                               ", declared " + std::to_string(declared));
    } else if (head == "node") {
      if (toks.size() < 3) parse_fail(lineno, "usage: node <id> <kind> ...");
      int id = parse_int(toks[1], lineno, "node id");
      if (id != static_cast<int>(c.nodes.size()))
        parse_fail(lineno, "node ids must be consecutive from 0");
      const std::string& kind = toks[2];
      try {
        if (kind == "x") {
          if (toks.size() != 4) parse_fail(lineno, "usage: node <id> x <i>");
          c.nodes.push_back(Node::det_input(parse_int(toks[3], lineno, "x index")));
        } else if (kind == "r") {
          if (toks.size() != 4) parse_fail(lineno, "usage: node <id> r <j>");
          c.nodes.push_back(Node::rand_input(parse_int(toks[3], lineno, "r index")));
        } else if (kind == "const") {
          if (toks.size() != 4) parse_fail(lineno, "usage: node <id> const <rational>");
          c.nodes.push_back(Node::constant(parse_rational(toks[3])));
        } else if (kind == "gate") {
          if (toks.size() < 4) parse_fail(lineno, "usage: node <id> gate <op> <children...>");
          const BasisOp* op = basis_op_by_name(toks[3]);
          if (!op) parse_fail(lineno, "unknown op kind '" + toks[3] + "'");
          if (op->kind == OpKind::ConstInject) {
            if (toks.size() != 5)
              parse_fail(lineno, "usage: node <id> gate const_inject <rational>");
            c.nodes.push_back(Node::const_inject(parse_rational(toks[4])));
          } else {
            std::vector<int> children;
            for (std::size_t t = 4; t < toks.size(); ++t)
              children.push_back(parse_int(toks[t], lineno, "child index"));
            c.nodes.push_back(Node::gate(op->kind, std::move(children)));
          }
        } else {
          parse_fail(lineno, "unknown node kind '" + kind + "'");
        }
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse && std::string(e.what()).rfind("circuit line", 0) != 0)
          parse_fail(lineno, e.what());
        throw;
      }
    } else if (head == "output") {
      if (toks.size() != 2) parse_fail(lineno, "usage: output <node id>");
      c.output = parse_int(toks[1], lineno, "output");
      have_output = true;
    } else if (head == "rand") {
      if (toks.size() < 3) parse_fail(lineno, "usage: rand <j> <dist> ...");
      int j = parse_int(toks[1], lineno, "rand index");
      const std::string& dist = toks[2];
      try {
        if (dist == "uniform") {
          if (toks.size() != 6)
            parse_fail(lineno, "usage: rand <j> uniform <lo> <hi> <den_bound>");
          UniformRational u{parse_rational(toks[3]), parse_rational(toks[4]),
                            static_cast<unsigned long>(
                                std::stoul(toks[5]))};
          rand_lines.emplace_back(j, u);
        } else if (dist == "discrete") {
          DiscreteUniform d;
          for (std::size_t t = 3; t < toks.size(); ++t)
            d.values.push_back(parse_rational(toks[t]));
          if (d.values.empty()) parse_fail(lineno, "discrete list is empty");
          rand_lines.emplace_back(j, d);
        } else if (dist == "point") {
          if (toks.size() != 4) parse_fail(lineno, "usage: rand <j> point <v>");
          rand_lines.emplace_back(j, PointMass{parse_rational(toks[3])});
        } else {
          parse_fail(lineno, "unknown distribution '" + dist + "'");
        }
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse && std::string(e.what()).rfind("circuit line", 0) != 0)
          parse_fail(lineno, e.what());
        throw;
      }
    } else if (head == "end") {
      ended = true;
    } else {
      parse_fail(lineno, "unknown directive '" + head + "'");
    }
  }
  if (!started) fail(ErrorCode::Parse, "missing 'circuit' header");
  if (!ended) fail(ErrorCode::Parse, "missing 'end'");
  if (!have_output) fail(ErrorCode::Parse, "missing 'output'");
  if (!rand_lines.empty()) {
    RandomInputSpec spec;
    spec.inputs.resize(c.n_rand_inputs, PointMass{Rational(0)});
    std::vector<bool> seen(c.n_rand_inputs, false);
    for (auto& [j, dist] : rand_lines) {
      if (j < 1 || j > c.n_rand_inputs)
        fail(ErrorCode::Parse, "rand index " + std::to_string(j) + " out of range");
      if (seen[j - 1])
        fail(ErrorCode::Parse, "duplicate rand line for r" + std::to_string(j));
      seen[j - 1] = true;
      spec.inputs[j - 1] = std::move(dist);
    }
    for (int j = 0; j < c.n_rand_inputs; ++j)
      if (!seen[j])
        fail(ErrorCode::Parse,
             "rand block present but r" + std::to_string(j + 1) + " undeclared");
    c.rand_spec = std::move(spec);
  }
  c.validate();
  return c;
}

Circuit load_circuit(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::Parse, "cannot open circuit file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_circuit(ss.str());
}

std::string circuit_str(const Circuit& c) {
  std::ostringstream out;
  out << "circuit\n";
  out << "n " << c.n_det_inputs << "\n";
  out << "k " << c.n_rand_inputs << "\n";
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const Node& n = c.nodes[i];
    out << "node " << i << " ";
    switch (n.kind) {
      case Node::Kind::DetInput: out << "x " << n.input; break;
      case Node::Kind::RandInput: out << "r " << n.input; break;
      case Node::Kind::Const: out << "const " << rational_str(n.value); break;
      case Node::Kind::Gate:
        out << "gate " << basis_op(n.op).name;
        if (n.op == OpKind::ConstInject) {
          out << " " << rational_str(n.value);
        } else {
          for (int child : n.children) out << " " << child;
        }
        break;
    }
    out << "\n";
  }
  out << "output " << c.output << "\n";
  if (c.rand_spec) {
    for (std::size_t j = 0; j < c.rand_spec->inputs.size(); ++j) {
      out << "rand " << (j + 1) << " ";
      const auto& dist = c.rand_spec->inputs[j];
      if (const auto* u = std::get_if<UniformRational>(&dist)) {
        out << "uniform " << rational_str(u->lo) << " " << rational_str(u->hi)
            << " " << u->denominator_bound;
      } else if (const auto* d = std::get_if<DiscreteUniform>(&dist)) {
        out << "discrete";
        for (const auto& v : d->values) out << " " << rational_str(v);
      } else {
        out << "point " << rational_str(std::get<PointMass>(dist).value);
      }
      out << "\n";
    }
  }
  out << "end\n";
  return out.str();
}

void save_circuit(const Circuit& c, const std::string& path) {
  std::ofstream f(path);
  if (!f) fail(ErrorCode::Parse, "cannot open '" + path + "' for writing");
  f << circuit_str(c);
}

}  // namespace psc
