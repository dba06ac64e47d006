#pragma once

#include <cstdint>

#include "rational.hpp"

namespace psc {

// Euler's number rounded up at the 16th decimal digit, so every bound below
// is a safe (slightly enlarged) upper bound under exact rational arithmetic.
const Rational& euler_upper();

// (8 e m d / n)^n for m >= n >= 1, d >= 1. Sign-pattern count bound for m
// polynomials of degree <= d in n variables.
Rational warren_bound(std::uint64_t m, std::uint64_t d, std::uint64_t n);

// (8 e m t^2 / n)^n: value-vector bound for m algebraic formulas of
// description complexity <= t over n shared variables.
Rational warren_corollary_bound(std::uint64_t m, std::uint64_t t,
                                std::uint64_t n);

Integer warren_bound_ceiling(std::uint64_t m, std::uint64_t d, std::uint64_t n);
Integer warren_corollary_bound_ceiling(std::uint64_t m, std::uint64_t t,
                                       std::uint64_t n);

// Reported exponent shape C * n * q * log2(kappa) of the quantifier
// elimination bound; C is a reporting convention, default 1.
double bpr_bound(std::uint64_t n, std::uint64_t q, std::uint64_t kappa,
                 double C = 1.0);

// 4 * growth_at_2m * exp(-eps^2 m / 8); requires m >= ceil(2/eps^2).
double vc_bound(std::uint64_t growth_at_2m, const Rational& eps,
                std::uint64_t m);

// ceil(C * n^2 * s * log2(b*s + 1)): copies needed to replace a size-s
// circuit with gate complexity b on n inputs by a majority vote.
std::uint64_t theoretical_m_exact(std::uint64_t n, std::uint64_t s,
                                  std::uint64_t b, const Rational& C);

// ceil(C * n^2 * s * log2(b*s + t_f + t_rho)): approximating variant.
std::uint64_t theoretical_m_approx(std::uint64_t n, std::uint64_t s,
                                   std::uint64_t b, std::uint64_t t_f,
                                   std::uint64_t t_rho, const Rational& C);

// ceil(C * n * log2(t + 1)): majority-property size for infinite row sets,
// reporting only (no search is performed over infinite domains).
std::uint64_t theoretical_m_infinite(std::uint64_t n, std::uint64_t t,
                                     const Rational& C);

// Default constant for the growth condition growth(m) <= e^(c m); derived
// from the convergence bound at eps = 1/7 (any c < 1/784 works), with slack.
inline constexpr double kDefaultCvc = 1.0 / 1000.0;

// Whether a sample size m satisfies the majority-property condition
// m >= 2/c and growth_at_m <= e^(c m) at the configured constant.
bool vc_growth_condition(std::uint64_t growth_at_m, std::uint64_t m,
                         double c = kDefaultCvc);

}  // namespace psc
