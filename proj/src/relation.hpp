#pragma once

#include <functional>
#include <string>

#include "formula.hpp"
#include "rational.hpp"

namespace psc {

// Binary closeness relation between reals. Four built-in kinds plus custom
// predicates; the built-ins carry their defining two-variable formulas.
class Relation {
 public:
  enum class Kind { Equality, Sign, Nullity, ApproxWithin, Custom };

  static Relation equality();
  static Relation sign();
  static Relation nullity();
  static Relation approx_within(const Rational& c);  // |x - y| <= c, c >= 0
  static Relation custom(std::string name,
                         std::function<bool(const Rational&, const Rational&)> fn,
                         bool contiguous, int descr_complexity);

  // Spec strings: "eq", "sign", "null", "approx:<c>".
  static Relation parse(const std::string& spec);

  bool holds(const Rational& x, const Rational& y) const;
  Kind kind() const { return kind_; }
  bool contiguous() const { return contiguous_; }
  int descr_complexity() const { return descr_complexity_; }  // t_rho
  const std::string& name() const { return name_; }
  const Rational& approx_c() const { return approx_c_; }

  // Defining formula over (x, y) as variables (x1, x2); Custom has none.
  AlgebraicFormula graph_formula() const;

 private:
  Relation() = default;

  Kind kind_ = Kind::Equality;
  std::string name_;
  Rational approx_c_;
  bool contiguous_ = true;
  int descr_complexity_ = 1;
  std::function<bool(const Rational&, const Rational&)> custom_fn_;
};

}  // namespace psc
