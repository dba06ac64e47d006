#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

namespace psc {

// Exact arbitrary-precision rational. Serialized form is "num/den" with the
// "/1" suffix omitted for integers; parsing accepts both.
using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(const std::string& text);
std::string rational_str(const Rational& q);

// Comma-separated vectors, e.g. "1,2/3,-5".
std::vector<Rational> parse_rational_csv(const std::string& text);
std::string rational_csv(std::span<const Rational> values);

Integer ceil_rational(const Rational& q);
Integer floor_rational(const Rational& q);

inline int sign_of(const Rational& q) { return sgn(q); }

double to_double(const Rational& q);

}  // namespace psc
