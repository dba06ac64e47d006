#include <doctest.h>

#include <cmath>

#include "bounds.hpp"
#include "error.hpp"

using namespace psc;

TEST_CASE("euler constant is a safe upper bound") {
  // e = 2.71828182845904523536...; the stored value is ceil(e * 10^16)/10^16,
  // strictly above e and within 10^-16 of it.
  Rational scaled = euler_upper() * Rational(Integer("10000000000000000"));
  CHECK(scaled == Rational(Integer("27182818284590453")));
  CHECK(euler_upper() > Rational(Integer("27182818284590452"),
                                 Integer("10000000000000000")));
}

TEST_CASE("warren_bound values and rounding") {
  // m = n = d = 1: 8e, ceiling 22 (a single polynomial really has <= 3 signs;
  // the bound is just required to sit above that)
  Rational b = warren_bound(1, 1, 1);
  CHECK(to_double(b) == doctest::Approx(21.74625).epsilon(1e-5));
  CHECK(ceil_rational(b) == 22);

  // m = 2, n = 1, d = 1: 16e
  Rational b2 = warren_bound(2, 1, 1);
  CHECK(to_double(b2) == doctest::Approx(43.4925).epsilon(1e-5));
  CHECK(ceil_rational(b2) == 44);

  // corollary form: (8 e m t^2 / n)^n
  Rational c = warren_corollary_bound(3, 2, 2);
  // 8e * (3*2) * 2 / 2, squared
  Rational direct = warren_bound(3 * 2, 2, 2);
  CHECK(c == direct);

  CHECK_THROWS_AS(warren_bound(1, 1, 2), Error);  // m < n inapplicable
  CHECK_THROWS_AS(warren_bound(3, 0, 1), Error);
}

TEST_CASE("bpr_bound reports the exponent shape") {
  CHECK(bpr_bound(1, 1, 1) == 0.0);
  CHECK(bpr_bound(2, 3, 8) == doctest::Approx(18.0));
  CHECK(bpr_bound(2, 3, 8, 2.5) == doctest::Approx(45.0));
  CHECK_THROWS_AS(bpr_bound(0, 1, 1), Error);
}

TEST_CASE("vc_bound value and sample-size condition") {
  CHECK(vc_bound(1, Rational(1), 8) == doctest::Approx(4.0 * std::exp(-1.0)));
  // bound may exceed 1 (vacuous) and that is legal
  CHECK(vc_bound(1000, Rational(1, 4), 32) > 1.0);
  CHECK_THROWS_AS(vc_bound(1, Rational(1, 2), 7), Error);  // m < 2/eps^2
}

TEST_CASE("growth condition at the configured constant") {
  // m must reach 2/c first; growth 1 always satisfies the rate condition
  CHECK(!vc_growth_condition(1, 1000));
  CHECK(vc_growth_condition(1, 2000));
  // ln(2^20) = 13.9 > (1/1000) * 4000
  CHECK(!vc_growth_condition(1u << 20, 4000));
  CHECK(vc_growth_condition(1u << 20, 20000));
}

TEST_CASE("theoretical m formulas") {
  CHECK(theoretical_m_exact(1, 1, 1, Rational(1)) == 1);  // ceil(log2 2)
  CHECK(theoretical_m_exact(4, 10, 3, Rational(1)) == 793);

  // monotone in each argument
  CHECK(theoretical_m_exact(5, 10, 3, Rational(1)) >=
        theoretical_m_exact(4, 10, 3, Rational(1)));
  CHECK(theoretical_m_exact(4, 11, 3, Rational(1)) >=
        theoretical_m_exact(4, 10, 3, Rational(1)));
  CHECK(theoretical_m_exact(4, 10, 4, Rational(1)) >=
        theoretical_m_exact(4, 10, 3, Rational(1)));
  CHECK(theoretical_m_exact(4, 10, 3, Rational(2)) >=
        theoretical_m_exact(4, 10, 3, Rational(1)));

  // the approximate variant approaches the exact shape for small t_f + t_rho
  auto exact = theoretical_m_exact(4, 10, 3, Rational(1));
  auto approx_small = theoretical_m_approx(4, 10, 3, 1, 1, Rational(1));
  CHECK(approx_small >= exact);
  CHECK(approx_small <= theoretical_m_approx(4, 10, 3, 100, 2, Rational(1)));

  CHECK(theoretical_m_infinite(2, 7, Rational(1)) == 6);  // ceil(2 log2 8)
}
