#include <doctest.h>

#include "error.hpp"
#include "helpers.hpp"
#include "polynomial.hpp"

using namespace psc;
using namespace psc::testing;

TEST_CASE("poly_eval hand-checked values") {
  // zero polynomial
  Polynomial zero(2);
  std::vector<Rational> x = {3, 4};
  CHECK(zero.eval(x) == 0);
  CHECK(zero.is_zero());
  CHECK(zero.degree() == 0);

  // x1^2 - x2 at (3,4) -> 5
  Polynomial p = Polynomial::parse("x1^2 + -1 * x2", 2);
  CHECK(p.eval(x) == 5);

  // x1*x2 + 2 at (1/2, 4) -> 4
  Polynomial q = Polynomial::parse("x1 x2 + 2", 2);
  std::vector<Rational> y = {Rational(1, 2), 4};
  CHECK(q.eval(y) == 4);
}

TEST_CASE("length mismatch is rejected") {
  Polynomial p = Polynomial::parse("x1 + x2", 2);
  std::vector<Rational> x = {1};
  CHECK_THROWS_AS(p.eval(x), Error);
}

TEST_CASE("canonical form drops zero coefficients") {
  Polynomial p(1);
  p.add_term({1}, Rational(2));
  p.add_term({1}, Rational(-2));
  CHECK(p.is_zero());
  CHECK(p == Polynomial(1));

  Polynomial a = Polynomial::parse("x1 + x1", 1);
  Polynomial b = Polynomial::parse("2 * x1", 1);
  CHECK(a == b);
}

TEST_CASE("degree is the max exponent sum") {
  CHECK(Polynomial::parse("x1^2 x2 + x2^2", 2).degree() == 3);
  CHECK(Polynomial::parse("7", 1).degree() == 0);
}

TEST_CASE("arithmetic matches pointwise evaluation") {
  Rng rng(5, 0);
  for (int trial = 0; trial < 50; ++trial) {
    Rng tr = rng.fork(trial);
    auto random_poly = [&](int n_vars) {
      Polynomial p(n_vars);
      int terms = 1 + static_cast<int>(tr.below(4));
      for (int t = 0; t < terms; ++t) {
        Polynomial::Exponents e(n_vars);
        for (auto& exp : e) exp = static_cast<unsigned>(tr.below(3));
        p.add_term(e, Rational(tr.int_in(-5, 5)));
      }
      return p;
    };
    Polynomial a = random_poly(2), b = random_poly(2);
    auto x = random_point(tr, 2, Rational(-4), Rational(4));
    CHECK((a + b).eval(x) == a.eval(x) + b.eval(x));
    CHECK((a - b).eval(x) == a.eval(x) - b.eval(x));
    CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
    CHECK((-a).eval(x) == -a.eval(x));
  }
}

TEST_CASE("parse/print round trip on random polynomials") {
  Rng rng(11, 0);
  for (int trial = 0; trial < 100; ++trial) {
    Rng tr = rng.fork(trial);
    Polynomial p(3);
    int terms = static_cast<int>(tr.below(5));
    for (int t = 0; t < terms; ++t) {
      Polynomial::Exponents e(3);
      for (auto& exp : e) exp = static_cast<unsigned>(tr.below(4));
      p.add_term(e, tr.rational_in(Rational(-6), Rational(6), 4));
    }
    Polynomial back = Polynomial::parse(p.str(), 3);
    CHECK(back == p);
  }
}

TEST_CASE("parse accepts implied coefficients and powers") {
  CHECK(Polynomial::parse("x2", 3) == Polynomial::variable(3, 2));
  CHECK(Polynomial::parse("1 * x1^1", 1) == Polynomial::variable(1, 1));
  CHECK(Polynomial::parse("0", 2).is_zero());
  CHECK(Polynomial::parse("-3/2 * x1 x1", 1) ==
        Polynomial::parse("-3/2 * x1^2", 1));
  CHECK_THROWS_AS(Polynomial::parse("x0", 1), Error);
  CHECK_THROWS_AS(Polynomial::parse("x1 +", 1), Error);
  CHECK_THROWS_AS(Polynomial::parse("x9", 2), Error);  // beyond n_vars
  CHECK(Polynomial::parse("x1 + 2 x2").n_vars() == 2);  // inferred
}

TEST_CASE("padding embeds into a larger variable space") {
  Polynomial p = Polynomial::parse("x1 x2 + 1", 2);
  Polynomial q = p.padded(4);
  CHECK(q.n_vars() == 4);
  std::vector<Rational> x = {2, 3, 9, 9};
  std::vector<Rational> x2 = {2, 3};
  CHECK(q.eval(x) == p.eval(x2));
}
