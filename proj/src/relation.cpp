#include "relation.hpp"

#include "error.hpp"

namespace psc {

Relation Relation::equality() {
  Relation r;
  r.kind_ = Kind::Equality;
  r.name_ = "eq";
  r.contiguous_ = true;
  r.descr_complexity_ = 1;  // [x - y = 0]
  return r;
}

Relation Relation::sign() {
  Relation r;
  r.kind_ = Kind::Sign;
  r.name_ = "sign";
  r.contiguous_ = true;
  r.descr_complexity_ = 2;  // polynomials {x, y}
  return r;
}

Relation Relation::nullity() {
  Relation r;
  r.kind_ = Kind::Nullity;
  r.name_ = "null";
  r.contiguous_ = false;
  r.descr_complexity_ = 2;  // polynomials {x, y}
  return r;
}

Relation Relation::approx_within(const Rational& c) {
  if (c < 0) fail(ErrorCode::Invalid, "approx_within: c must be nonnegative");
  Relation r;
  r.kind_ = Kind::ApproxWithin;
  r.name_ = "approx:" + rational_str(c);
  r.approx_c_ = c;
  r.contiguous_ = true;
  r.descr_complexity_ = 2;  // polynomials {x - y - c, x - y + c}
  return r;
}

Relation Relation::custom(
    std::string name, std::function<bool(const Rational&, const Rational&)> fn,
    bool contiguous, int descr_complexity) {
  Relation r;
  r.kind_ = Kind::Custom;
  r.name_ = std::move(name);
  r.custom_fn_ = std::move(fn);
  r.contiguous_ = contiguous;
  r.descr_complexity_ = descr_complexity;
  return r;
}

Relation Relation::parse(const std::string& spec) {
  if (spec == "eq") return equality();
  if (spec == "sign") return sign();
  if (spec == "null") return nullity();
  if (spec.rfind("approx:", 0) == 0)
    return approx_within(parse_rational(spec.substr(7)));
  fail(ErrorCode::Parse, "unknown relation '" + spec +
                             "' (expected eq, sign, null, approx:<c>)");
}

bool Relation::holds(const Rational& x, const Rational& y) const {
  switch (kind_) {
    case Kind::Equality: return x == y;
    case Kind::Sign: return (x == 0 && y == 0) || x * y > 0;
    case Kind::Nullity: return (x == 0 && y == 0) || x * y != 0;
    case Kind::ApproxWithin: return abs(x - y) <= approx_c_;
    case Kind::Custom: return custom_fn_(x, y);
  }
  return false;
}

AlgebraicFormula Relation::graph_formula() const {
  const int n_vars = 2;
  Polynomial x = Polynomial::variable(n_vars, 1);
  Polynomial y = Polynomial::variable(n_vars, 2);
  switch (kind_) {
    case Kind::Equality:
      return formula_leaf(x - y, Rel::Eq);
    case Kind::Sign:
      return formula_or(
          {formula_and({formula_leaf(x, Rel::Eq), formula_leaf(y, Rel::Eq)}),
           formula_and({formula_leaf(x, Rel::Gt), formula_leaf(y, Rel::Gt)}),
           formula_and({formula_leaf(x, Rel::Lt), formula_leaf(y, Rel::Lt)})});
    case Kind::Nullity:
      return formula_or(
          {formula_and({formula_leaf(x, Rel::Eq), formula_leaf(y, Rel::Eq)}),
           formula_and({formula_leaf(x, Rel::Ne), formula_leaf(y, Rel::Ne)})});
    case Kind::ApproxWithin: {
      Polynomial c = Polynomial::constant(n_vars, approx_c_);
      return formula_and({formula_leaf(x - y - c, Rel::Le),
                          formula_leaf(x - y + c, Rel::Ge)});
    }
    case Kind::Custom:
      fail(ErrorCode::Unsupported, "custom relation has no builtin formula");
  }
  fail(ErrorCode::Internal, "unhandled relation kind");
}

}  // namespace psc
