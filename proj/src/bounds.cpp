#include "bounds.hpp"

#include <cmath>

#include "error.hpp"

namespace psc {

const Rational& euler_upper() {
  // e = 2.71828182845904523536...; numerator is ceil(e * 10^16).
  static const Rational e_up(Integer("27182818284590453"),
                             Integer("10000000000000000"));
  return e_up;
}

namespace {

Rational pow_rational(const Rational& base, std::uint64_t exp) {
  Rational out;
  mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(base.get_mpq_t()), exp);
  mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(base.get_mpq_t()), exp);
  return out;
}

}  // namespace

Rational warren_bound(std::uint64_t m, std::uint64_t d, std::uint64_t n) {
  if (n < 1 || d < 1) fail(ErrorCode::Invalid, "warren_bound: need n >= 1, d >= 1");
  if (m < n)
    fail(ErrorCode::Precondition, "warren_bound: inapplicable for m < n");
  Rational base = Rational(8) * euler_upper() * Rational(m) * Rational(d) /
                  Rational(n);
  return pow_rational(base, n);
}

Rational warren_corollary_bound(std::uint64_t m, std::uint64_t t,
                                std::uint64_t n) {
  if (t < 1) fail(ErrorCode::Invalid, "warren_corollary_bound: need t >= 1");
  // m formulas of description complexity t use <= m*t polynomials of degree
  // <= t, so this is warren_bound(m*t, t, n).
  return warren_bound(m * t, t, n);
}

Integer warren_bound_ceiling(std::uint64_t m, std::uint64_t d, std::uint64_t n) {
  return ceil_rational(warren_bound(m, d, n));
}

Integer warren_corollary_bound_ceiling(std::uint64_t m, std::uint64_t t,
                                       std::uint64_t n) {
  return ceil_rational(warren_corollary_bound(m, t, n));
}

double bpr_bound(std::uint64_t n, std::uint64_t q, std::uint64_t kappa,
                 double C) {
  if (n < 1 || q < 1 || kappa < 1)
    fail(ErrorCode::Invalid, "bpr_bound: all arguments must be >= 1");
  return C * static_cast<double>(n) * static_cast<double>(q) *
         std::log2(static_cast<double>(kappa));
}

double vc_bound(std::uint64_t growth_at_2m, const Rational& eps,
                std::uint64_t m) {
  if (eps <= 0) fail(ErrorCode::Invalid, "vc_bound: eps must be positive");
  Rational threshold = Rational(2) / (eps * eps);
  if (Rational(static_cast<unsigned long>(m)) < threshold)
    fail(ErrorCode::Precondition, "vc_bound: m below 2/eps^2");
  double e = to_double(eps);
  double log_bound = std::log(4.0) + std::log(static_cast<double>(growth_at_2m)) -
                     e * e * static_cast<double>(m) / 8.0;
  return std::exp(log_bound);
}

namespace {

std::uint64_t ceil_scaled_log2(const Rational& C, std::uint64_t factor,
                               std::uint64_t log_arg) {
  long double value = to_double(C) * static_cast<long double>(factor) *
                      std::log2(static_cast<long double>(log_arg));
  auto up = static_cast<std::uint64_t>(std::ceil(value - 1e-12L));
  return up;
}

}  // namespace

bool vc_growth_condition(std::uint64_t growth_at_m, std::uint64_t m, double c) {
  if (c <= 0) fail(ErrorCode::Invalid, "vc_growth_condition: c must be positive");
  if (static_cast<double>(m) < 2.0 / c) return false;
  return std::log(static_cast<double>(growth_at_m)) <= c * static_cast<double>(m);
}

std::uint64_t theoretical_m_exact(std::uint64_t n, std::uint64_t s,
                                  std::uint64_t b, const Rational& C) {
  if (n < 1 || s < 1 || b < 1 || C <= 0)
    fail(ErrorCode::Invalid, "theoretical_m_exact: all arguments must be >= 1");
  return ceil_scaled_log2(C, n * n * s, b * s + 1);
}

std::uint64_t theoretical_m_approx(std::uint64_t n, std::uint64_t s,
                                   std::uint64_t b, std::uint64_t t_f,
                                   std::uint64_t t_rho, const Rational& C) {
  if (n < 1 || s < 1 || b < 1 || t_f < 1 || t_rho < 1 || C <= 0)
    fail(ErrorCode::Invalid, "theoretical_m_approx: all arguments must be >= 1");
  return ceil_scaled_log2(C, n * n * s, b * s + t_f + t_rho);
}

std::uint64_t theoretical_m_infinite(std::uint64_t n, std::uint64_t t,
                                     const Rational& C) {
  if (n < 1 || t < 1 || C <= 0)
    fail(ErrorCode::Invalid, "theoretical_m_infinite: all arguments must be >= 1");
  return ceil_scaled_log2(C, n, t + 1);
}

}  // namespace psc
