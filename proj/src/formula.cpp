#include "formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "error.hpp"

namespace psc {

const char* rel_str(Rel rel) {
  switch (rel) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Eq: return "=";
    case Rel::Ne: return "!=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
  }
  return "?";
}

std::optional<Rel> parse_rel(const std::string& text) {
  if (text == "<") return Rel::Lt;
  if (text == "<=") return Rel::Le;
  if (text == "=") return Rel::Eq;
  if (text == "!=") return Rel::Ne;
  if (text == ">=") return Rel::Ge;
  if (text == ">") return Rel::Gt;
  return std::nullopt;
}

bool rel_holds(Rel rel, int sign) {
  switch (rel) {
    case Rel::Lt: return sign < 0;
    case Rel::Le: return sign <= 0;
    case Rel::Eq: return sign == 0;
    case Rel::Ne: return sign != 0;
    case Rel::Ge: return sign >= 0;
    case Rel::Gt: return sign > 0;
  }
  return false;
}

void AlgebraicFormula::validate() const {
  std::function<void(const Node&)> walk = [&](const Node& node) {
    switch (node.kind) {
      case Node::Kind::Leaf:
        if (!node.atom) fail(ErrorCode::Invalid, "leaf without atom");
        if (node.atom->poly.n_vars() != free_vars)
          fail(ErrorCode::Invalid, "leaf polynomial n_vars != free_vars");
        return;
      case Node::Kind::Not:
        if (node.children.size() != 1)
          fail(ErrorCode::Invalid, "NOT must have one child");
        break;
      case Node::Kind::And:
      case Node::Kind::Or:
        if (node.children.empty())
          fail(ErrorCode::Invalid, "AND/OR must have children");
        break;
    }
    for (const auto& child : node.children) walk(child);
  };
  walk(root);
}

AlgebraicFormula formula_leaf(Polynomial poly, Rel rel) {
  AlgebraicFormula f;
  f.free_vars = poly.n_vars();
  f.root.kind = AlgebraicFormula::Node::Kind::Leaf;
  f.root.atom = AtomicPredicate{std::move(poly), rel};
  return f;
}

namespace {

AlgebraicFormula combine(AlgebraicFormula::Node::Kind kind,
                         std::vector<AlgebraicFormula> parts) {
  if (parts.empty()) fail(ErrorCode::Invalid, "AND/OR of nothing");
  AlgebraicFormula f;
  f.free_vars = parts[0].free_vars;
  f.root.kind = kind;
  for (auto& part : parts) {
    if (part.free_vars != f.free_vars)
      fail(ErrorCode::Invalid, "combining formulas over different variable spaces");
    f.root.children.push_back(std::move(part.root));
  }
  return f;
}

}  // namespace

AlgebraicFormula formula_and(std::vector<AlgebraicFormula> parts) {
  return combine(AlgebraicFormula::Node::Kind::And, std::move(parts));
}

AlgebraicFormula formula_or(std::vector<AlgebraicFormula> parts) {
  return combine(AlgebraicFormula::Node::Kind::Or, std::move(parts));
}

AlgebraicFormula formula_not(AlgebraicFormula part) {
  AlgebraicFormula f;
  f.free_vars = part.free_vars;
  f.root.kind = AlgebraicFormula::Node::Kind::Not;
  f.root.children.push_back(std::move(part.root));
  return f;
}

namespace {

bool eval_node(const AlgebraicFormula::Node& node, std::span<const Rational> x) {
  using Kind = AlgebraicFormula::Node::Kind;
  switch (node.kind) {
    case Kind::Leaf:
      return rel_holds(node.atom->rel, sign_of(node.atom->poly.eval(x)));
    case Kind::Not:
      return !eval_node(node.children[0], x);
    case Kind::And:
      for (const auto& child : node.children)
        if (!eval_node(child, x)) return false;
      return true;
    case Kind::Or:
      for (const auto& child : node.children)
        if (eval_node(child, x)) return true;
      return false;
  }
  return false;
}

}  // namespace

bool formula_eval(const AlgebraicFormula& f, std::span<const Rational> x) {
  if (static_cast<int>(x.size()) != f.free_vars)
    fail(ErrorCode::Invalid, "formula_eval: |x| != free_vars");
  return eval_node(f.root, x);
}

namespace {

AlgebraicFormula::Node normalize_node(const AlgebraicFormula::Node& node) {
  using Kind = AlgebraicFormula::Node::Kind;
  if (node.kind == Kind::Leaf) {
    const auto& atom = *node.atom;
    auto leaf = [&](Rel rel) {
      AlgebraicFormula::Node n;
      n.kind = Kind::Leaf;
      n.atom = AtomicPredicate{atom.poly, rel};
      return n;
    };
    auto either = [&](Rel a, Rel b) {
      AlgebraicFormula::Node n;
      n.kind = Kind::Or;
      n.children.push_back(leaf(a));
      n.children.push_back(leaf(b));
      return n;
    };
    switch (atom.rel) {
      case Rel::Lt:
      case Rel::Eq:
      case Rel::Gt: return leaf(atom.rel);
      case Rel::Le: return either(Rel::Eq, Rel::Lt);
      case Rel::Ge: return either(Rel::Eq, Rel::Gt);
      case Rel::Ne: return either(Rel::Lt, Rel::Gt);
    }
  }
  AlgebraicFormula::Node out;
  out.kind = node.kind;
  for (const auto& child : node.children)
    out.children.push_back(normalize_node(child));
  return out;
}

}  // namespace

AlgebraicFormula normalize(const AlgebraicFormula& f) {
  AlgebraicFormula out;
  out.free_vars = f.free_vars;
  out.root = normalize_node(f.root);
  return out;
}

std::vector<Polynomial> distinct_polynomials(const AlgebraicFormula& f) {
  std::vector<Polynomial> out;
  std::function<void(const AlgebraicFormula::Node&)> walk =
      [&](const AlgebraicFormula::Node& node) {
        if (node.kind == AlgebraicFormula::Node::Kind::Leaf) {
          const Polynomial& p = node.atom->poly;
          if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
          return;
        }
        for (const auto& child : node.children) walk(child);
      };
  walk(f.root);
  return out;
}

unsigned description_complexity(const AlgebraicFormula& f) {
  auto polys = distinct_polynomials(f);
  unsigned t = 1;
  t = std::max(t, static_cast<unsigned>(polys.size()));
  for (const auto& p : polys) t = std::max(t, p.degree());
  return t;
}

SignPattern sign_pattern(std::span<const Polynomial> polys,
                         std::span<const Rational> x) {
  SignPattern out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(sign_of(p.eval(x)));
  return out;
}

std::uint64_t count_sign_patterns(
    std::span<const Polynomial> polys,
    const std::vector<std::vector<Rational>>& points) {
  std::set<SignPattern> seen;
  for (const auto& x : points) seen.insert(sign_pattern(polys, x));
  return seen.size();
}

namespace {

// Operand of a gate formula: either a variable of the ambient space or a
// constant folded directly into the polynomials.
struct Operand {
  int var = 0;  // 1-based; 0 means constant
  Rational value;

  Polynomial poly(int n_vars) const {
    return var ? Polynomial::variable(n_vars, var)
               : Polynomial::constant(n_vars, value);
  }
};

AlgebraicFormula gate_relation(OpKind kind, const std::vector<Operand>& in,
                               const Operand& out, int n_vars,
                               const Rational& const_value) {
  auto P = [&](const Operand& o) { return o.poly(n_vars); };
  Polynomial y = P(out);
  switch (kind) {
    case OpKind::Add:
      return formula_leaf(y - P(in[0]) - P(in[1]), Rel::Eq);
    case OpKind::Sub:
      return formula_leaf(y - P(in[0]) + P(in[1]), Rel::Eq);
    case OpKind::Mul:
      return formula_leaf(y - P(in[0]) * P(in[1]), Rel::Eq);
    case OpKind::Div:
      return formula_and({formula_leaf(y * P(in[1]) - P(in[0]), Rel::Eq),
                          formula_leaf(P(in[1]), Rel::Ne)});
    case OpKind::Min:
      return formula_and({formula_or({formula_leaf(y - P(in[0]), Rel::Eq),
                                      formula_leaf(y - P(in[1]), Rel::Eq)}),
                          formula_leaf(y - P(in[0]), Rel::Le),
                          formula_leaf(y - P(in[1]), Rel::Le)});
    case OpKind::Max:
      return formula_and({formula_or({formula_leaf(y - P(in[0]), Rel::Eq),
                                      formula_leaf(y - P(in[1]), Rel::Eq)}),
                          formula_leaf(y - P(in[0]), Rel::Ge),
                          formula_leaf(y - P(in[1]), Rel::Ge)});
    case OpKind::IteLt: {
      AlgebraicFormula lt = formula_leaf(P(in[0]) - P(in[1]), Rel::Lt);
      return formula_or(
          {formula_and({lt, formula_leaf(y - P(in[2]), Rel::Eq)}),
           formula_and({formula_not(lt),
                        formula_leaf(y - P(in[3]), Rel::Eq)})});
    }
    case OpKind::ConstInject:
      return formula_leaf(y - Polynomial::constant(n_vars, const_value),
                          Rel::Eq);
  }
  fail(ErrorCode::Unsupported, "unsupported gate kind");
}

}  // namespace

AlgebraicFormula gate_graph_formula(OpKind kind, const Rational& const_value) {
  int arity = op_arity(kind);
  int n_vars = arity + 1;
  std::vector<Operand> in;
  for (int i = 1; i <= arity; ++i) in.push_back(Operand{i, 0});
  Operand out{n_vars, 0};
  return gate_relation(kind, in, out, n_vars, const_value);
}

AlgebraicFormula sorting_graph_formula(int n) {
  if (n < 1) fail(ErrorCode::Invalid, "sorting_graph_formula: n must be >= 1");
  int n_vars = 2 * n;  // x1..xn, y1..yn
  auto xv = [&](int i) { return Polynomial::variable(n_vars, i); };
  auto yv = [&](int i) { return Polynomial::variable(n_vars, n + i); };

  std::vector<AlgebraicFormula> sorted_chain;
  for (int i = 1; i < n; ++i)
    sorted_chain.push_back(formula_leaf(yv(i) - yv(i + 1), Rel::Le));

  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  std::vector<AlgebraicFormula> matchings;
  do {
    std::vector<AlgebraicFormula> eqs;
    for (int i = 1; i <= n; ++i)
      eqs.push_back(formula_leaf(yv(i) - xv(perm[i - 1]), Rel::Eq));
    matchings.push_back(n == 1 ? std::move(eqs[0]) : formula_and(std::move(eqs)));
  } while (std::next_permutation(perm.begin(), perm.end()));

  AlgebraicFormula perm_part = matchings.size() == 1
                                   ? std::move(matchings[0])
                                   : formula_or(std::move(matchings));
  if (sorted_chain.empty()) return perm_part;
  sorted_chain.push_back(std::move(perm_part));
  return formula_and(std::move(sorted_chain));
}

ExistentialFormula circuit_to_existential(const Circuit& c) {
  c.validate();
  if (!c.deterministic())
    fail(ErrorCode::Invalid, "circuit_to_existential: probabilistic circuit passed");
  int n = c.n_det_inputs;
  std::size_t s = c.size();

  ExistentialFormula e;
  e.free_vars = n;

  // s == 0: the output node is an input or a constant.
  if (s == 0) {
    e.quantified_vars = 0;
    const Node& out = c.nodes[c.output];
    int n_vars = n + 1;
    Polynomial y = Polynomial::variable(n_vars, n + 1);
    Polynomial rhs = out.kind == Node::Kind::DetInput
                         ? Polynomial::variable(n_vars, out.input)
                         : Polynomial::constant(n_vars, out.value);
    e.matrix = formula_leaf(y - rhs, Rel::Eq);
    return e;
  }

  if (c.nodes[c.output].kind != Node::Kind::Gate)
    fail(ErrorCode::Unsupported,
         "circuit_to_existential: output of a nonconstant circuit must be a gate");

  int q = static_cast<int>(s) - 1;
  e.quantified_vars = q;
  int n_vars = n + 1 + q;

  // Ambient variable of each node: inputs map to x's, the output gate to y,
  // every other gate to the next z in gate order.
  std::vector<Operand> node_operand(c.nodes.size());
  int next_z = 0;
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const Node& node = c.nodes[i];
    switch (node.kind) {
      case Node::Kind::DetInput:
        node_operand[i] = Operand{node.input, 0};
        break;
      case Node::Kind::Const:
        node_operand[i] = Operand{0, node.value};
        break;
      case Node::Kind::Gate:
        if (static_cast<int>(i) == c.output) {
          node_operand[i] = Operand{n + 1, 0};
        } else {
          ++next_z;
          node_operand[i] = Operand{n + 1 + next_z, 0};
        }
        break;
      case Node::Kind::RandInput:
        fail(ErrorCode::Internal, "deterministic circuit with a RandInput node");
    }
  }

  std::vector<AlgebraicFormula> conjuncts;
  conjuncts.reserve(s);
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const Node& node = c.nodes[i];
    if (node.kind != Node::Kind::Gate) continue;
    std::vector<Operand> in;
    in.reserve(node.children.size());
    for (int child : node.children) in.push_back(node_operand[child]);
    conjuncts.push_back(
        gate_relation(node.op, in, node_operand[i], n_vars, node.value));
  }
  e.matrix = conjuncts.size() == 1 ? std::move(conjuncts[0])
                                   : formula_and(std::move(conjuncts));
  return e;
}

bool eval_with_witness(const ExistentialFormula& e, std::span<const Rational> x,
                       const Rational& y, std::span<const Rational> z) {
  if (static_cast<int>(x.size()) != e.free_vars)
    fail(ErrorCode::Invalid, "eval_with_witness: |x| != free_vars");
  if (static_cast<int>(z.size()) != e.quantified_vars)
    fail(ErrorCode::Invalid, "eval_with_witness: |z| != quantified_vars");
  std::vector<Rational> point(x.begin(), x.end());
  point.push_back(y);
  point.insert(point.end(), z.begin(), z.end());
  return formula_eval(e.matrix, point);
}

// --- s-expression format ------------------------------------------------

namespace {

struct SexprToken {
  enum class Kind { LParen, RParen, Symbol, String };
  Kind kind;
  std::string text;
};

std::vector<SexprToken> sexpr_tokens(const std::string& text) {
  std::vector<SexprToken> toks;
  std::size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (ch == '(') {
      toks.push_back({SexprToken::Kind::LParen, "("});
      ++i;
    } else if (ch == ')') {
      toks.push_back({SexprToken::Kind::RParen, ")"});
      ++i;
    } else if (ch == '"') {
      std::size_t end = text.find('"', i + 1);
      if (end == std::string::npos)
        fail(ErrorCode::Parse, "formula: unterminated string literal");
      toks.push_back({SexprToken::Kind::String, text.substr(i + 1, end - i - 1)});
      i = end + 1;
    } else {
      std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '(' && text[i] != ')' && text[i] != '"')
        ++i;
      toks.push_back({SexprToken::Kind::Symbol, text.substr(start, i - start)});
    }
  }
  return toks;
}

class SexprParser {
 public:
  explicit SexprParser(const std::string& text) : toks_(sexpr_tokens(text)) {}

  AlgebraicFormula::Node parse_tree(int n_vars) {
    expect(SexprToken::Kind::LParen);
    std::string head = expect(SexprToken::Kind::Symbol).text;
    AlgebraicFormula::Node node;
    using Kind = AlgebraicFormula::Node::Kind;
    if (head == "ATOM") {
      node.kind = Kind::Leaf;
      std::string poly_text = expect(SexprToken::Kind::String).text;
      std::string rel_text = expect(SexprToken::Kind::Symbol).text;
      auto rel = parse_rel(rel_text);
      if (!rel) fail(ErrorCode::Parse, "formula: unknown relation '" + rel_text + "'");
      node.atom = AtomicPredicate{Polynomial::parse(poly_text, n_vars), *rel};
    } else if (head == "AND" || head == "OR" || head == "NOT") {
      node.kind = head == "AND" ? Kind::And : head == "OR" ? Kind::Or : Kind::Not;
      while (!peek_rparen()) node.children.push_back(parse_tree(n_vars));
      if (node.children.empty())
        fail(ErrorCode::Parse, "formula: " + head + " needs children");
      if (node.kind == Kind::Not && node.children.size() != 1)
        fail(ErrorCode::Parse, "formula: NOT takes exactly one child");
    } else {
      fail(ErrorCode::Parse, "formula: unknown form '" + head + "'");
    }
    expect(SexprToken::Kind::RParen);
    return node;
  }

  int parse_count(const char* what) {
    std::string tok = expect(SexprToken::Kind::Symbol).text;
    try {
      return std::stoi(tok);
    } catch (const std::exception&) {
      fail(ErrorCode::Parse, std::string("formula: expected integer ") + what);
    }
  }

  void expect_open(const std::string& head) {
    expect(SexprToken::Kind::LParen);
    std::string got = expect(SexprToken::Kind::Symbol).text;
    if (got != head)
      fail(ErrorCode::Parse, "formula: expected (" + head + " ...), got " + got);
  }

  void expect_close_and_eof() {
    expect(SexprToken::Kind::RParen);
    if (pos_ != toks_.size()) fail(ErrorCode::Parse, "formula: trailing tokens");
  }

 private:
  const SexprToken& expect(SexprToken::Kind kind) {
    if (pos_ >= toks_.size()) fail(ErrorCode::Parse, "formula: unexpected end");
    if (toks_[pos_].kind != kind)
      fail(ErrorCode::Parse, "formula: unexpected token '" + toks_[pos_].text + "'");
    return toks_[pos_++];
  }

  bool peek_rparen() const {
    return pos_ < toks_.size() && toks_[pos_].kind == SexprToken::Kind::RParen;
  }

  std::vector<SexprToken> toks_;
  std::size_t pos_ = 0;
};

void print_node(std::ostream& out, const AlgebraicFormula::Node& node) {
  using Kind = AlgebraicFormula::Node::Kind;
  switch (node.kind) {
    case Kind::Leaf:
      out << "(ATOM \"" << node.atom->poly.str() << "\" "
          << rel_str(node.atom->rel) << ")";
      return;
    case Kind::And: out << "(AND"; break;
    case Kind::Or: out << "(OR"; break;
    case Kind::Not: out << "(NOT"; break;
  }
  for (const auto& child : node.children) {
    out << " ";
    print_node(out, child);
  }
  out << ")";
}

}  // namespace

std::string formula_str(const AlgebraicFormula& f) {
  std::ostringstream out;
  out << "(FORMULA " << f.free_vars << " ";
  print_node(out, f.root);
  out << ")";
  return out.str();
}

AlgebraicFormula parse_formula(const std::string& text) {
  SexprParser parser(text);
  parser.expect_open("FORMULA");
  AlgebraicFormula f;
  f.free_vars = parser.parse_count("free_vars");
  f.root = parser.parse_tree(f.free_vars);
  parser.expect_close_and_eof();
  f.validate();
  return f;
}

std::string existential_str(const ExistentialFormula& e) {
  std::ostringstream out;
  out << "(EXISTS " << e.free_vars << " " << e.quantified_vars << " ";
  print_node(out, e.matrix.root);
  out << ")";
  return out.str();
}

ExistentialFormula parse_existential(const std::string& text) {
  SexprParser parser(text);
  parser.expect_open("EXISTS");
  ExistentialFormula e;
  e.free_vars = parser.parse_count("free_vars");
  e.quantified_vars = parser.parse_count("quantified_vars");
  e.matrix.free_vars = e.free_vars + 1 + e.quantified_vars;
  e.matrix.root = parser.parse_tree(e.matrix.free_vars);
  parser.expect_close_and_eof();
  e.matrix.validate();
  return e;
}

}  // namespace psc
