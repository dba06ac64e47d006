#include "rational.hpp"

#include <cctype>
#include <sstream>

#include "error.hpp"

namespace psc {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool valid_integer_token(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = trim(text);
  std::string num = s, den = "1";
  if (auto pos = s.find('/'); pos != std::string::npos) {
    num = trim(s.substr(0, pos));
    den = trim(s.substr(pos + 1));
  }
  if (!valid_integer_token(num) || !valid_integer_token(den))
    fail(ErrorCode::Parse, "malformed rational '" + text + "'");
  Rational q{Integer(num), Integer(den)};
  if (q.get_den() == 0)
    fail(ErrorCode::Parse, "zero denominator in rational '" + text + "'");
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) {
  return q.get_str();  // canonical, omits "/1"
}

std::vector<Rational> parse_rational_csv(const std::string& text) {
  std::vector<Rational> out;
  std::string s = trim(text);
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

std::string rational_csv(std::span<const Rational> values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += rational_str(values[i]);
  }
  return out;
}

Integer ceil_rational(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

Integer floor_rational(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

double to_double(const Rational& q) { return q.get_d(); }

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Invalid: return "invalid";
    case ErrorCode::DivisionByZero: return "division-by-zero";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::Budget: return "budget";
    case ErrorCode::RetriesExhausted: return "retries-exhausted";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace psc
