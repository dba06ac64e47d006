#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "polynomial.hpp"

namespace psc {

enum class Rel : std::uint8_t { Lt, Le, Eq, Ne, Ge, Gt };

const char* rel_str(Rel rel);
std::optional<Rel> parse_rel(const std::string& text);
bool rel_holds(Rel rel, int sign);  // sign of the polynomial's value

// Atomic predicate [p <rel> 0].
struct AtomicPredicate {
  Polynomial poly;
  Rel rel;
};

// Boolean combination of atomic predicates over a fixed variable space.
struct AlgebraicFormula {
  struct Node {
    enum class Kind : std::uint8_t { And, Or, Not, Leaf };
    Kind kind = Kind::Leaf;
    std::vector<Node> children;            // And/Or: >= 1, Not: exactly 1
    std::optional<AtomicPredicate> atom;   // Leaf only
  };

  Node root;
  int free_vars = 0;

  void validate() const;  // every leaf polynomial has n_vars == free_vars
};

AlgebraicFormula formula_leaf(Polynomial poly, Rel rel);
AlgebraicFormula formula_and(std::vector<AlgebraicFormula> parts);
AlgebraicFormula formula_or(std::vector<AlgebraicFormula> parts);
AlgebraicFormula formula_not(AlgebraicFormula part);

bool formula_eval(const AlgebraicFormula& f, std::span<const Rational> x);

// Rewrites every atom to use only {<, =, >}; logically equivalent and of
// identical description complexity.
AlgebraicFormula normalize(const AlgebraicFormula& f);

// Distinct polynomials by canonical term-map equality, in first-use order.
std::vector<Polynomial> distinct_polynomials(const AlgebraicFormula& f);

// t = max(#distinct polynomials, max degree among them, 1).
unsigned description_complexity(const AlgebraicFormula& f);

using SignPattern = std::vector<int>;  // entries in {-1, 0, +1}

SignPattern sign_pattern(std::span<const Polynomial> polys,
                         std::span<const Rational> x);
std::uint64_t count_sign_patterns(
    std::span<const Polynomial> polys,
    const std::vector<std::vector<Rational>>& points);

// Formula over arity+1 variables (operands first, output last) defining the
// gate's graph {(w, y) : y = op(w)}. const_value is the payload of a
// const_inject gate and is ignored for every other kind.
AlgebraicFormula gate_graph_formula(OpKind kind,
                                    const Rational& const_value = Rational(0));

// Graph of the sorting operation over 2n variables (x1..xn, y1..yn):
// the y block is the sorted permutation of the x block. Uses n^2 + n - 1
// distinct degree-1 polynomials.
AlgebraicFormula sorting_graph_formula(int n);

// Existential block in front of a quantifier-free matrix. Matrix variables
// are ordered: free x1..xn first, then the output variable y, then the
// quantified z1..zq.
struct ExistentialFormula {
  int free_vars = 0;        // n (x variables, output variable not included)
  int quantified_vars = 0;  // q
  AlgebraicFormula matrix;  // over free_vars + 1 + quantified_vars variables
};

// Compiles a deterministic circuit into an existential description of its
// graph: one conjunct per gate, the output gate constrained to y and every
// other gate to a fresh z variable, so quantified_vars == size - 1. Distinct
// polynomial count is at most b*s and degrees at most b.
ExistentialFormula circuit_to_existential(const Circuit& c);

bool eval_with_witness(const ExistentialFormula& e, std::span<const Rational> x,
                       const Rational& y, std::span<const Rational> z);

// S-expression round trip:
//   (FORMULA <free_vars> <tree>)   tree := (AND t...) | (OR t...) |
//   (NOT t) | (ATOM "<polynomial>" <rel>)
//   (EXISTS <free_vars> <quantified_vars> <tree>)
std::string formula_str(const AlgebraicFormula& f);
AlgebraicFormula parse_formula(const std::string& text);
std::string existential_str(const ExistentialFormula& e);
ExistentialFormula parse_existential(const std::string& text);

}  // namespace psc
