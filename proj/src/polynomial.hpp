#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "rational.hpp"

namespace psc {

// Sparse multivariate polynomial with exact rational coefficients. Terms are
// keyed by exponent vectors (length n_vars) in lexicographic order; zero
// coefficients are never stored, so equality of the term maps is the
// canonical polynomial equality.
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;
  using TermMap = std::map<Exponents, Rational>;

  Polynomial() = default;  // zero polynomial in 0 variables
  explicit Polynomial(int n_vars) : n_vars_(n_vars) {}

  static Polynomial constant(int n_vars, const Rational& c);
  static Polynomial variable(int n_vars, int index);  // 1-based

  int n_vars() const { return n_vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;  // 0 for the zero polynomial

  void add_term(const Exponents& exps, const Rational& coef);

  Rational eval(std::span<const Rational> x) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator*(const Rational& scalar) const;

  bool operator==(const Polynomial& rhs) const {
    return n_vars_ == rhs.n_vars_ && terms_ == rhs.terms_;
  }

  // Same polynomial viewed in a larger variable space.
  Polynomial padded(int new_n_vars) const;

  // Textual form: "+"-separated terms "coef * x1^e1 x2 ...". The coefficient
  // is always printed; the zero polynomial prints as "0".
  std::string str() const;
  // n_vars < 0 infers the variable count from the largest index used.
  static Polynomial parse(const std::string& text, int n_vars = -1);

 private:
  int n_vars_ = 0;
  TermMap terms_;
};

}  // namespace psc
