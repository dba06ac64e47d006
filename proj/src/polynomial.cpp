#include "polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace psc {

Polynomial Polynomial::constant(int n_vars, const Rational& c) {
  Polynomial p(n_vars);
  p.add_term(Exponents(n_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int n_vars, int index) {
  if (index < 1 || index > n_vars)
    fail(ErrorCode::Invalid, "variable index out of range");
  Polynomial p(n_vars);
  Exponents e(n_vars, 0);
  e[index - 1] = 1;
  p.add_term(e, 1);
  return p;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [exps, _] : terms_)
    d = std::max(d, std::accumulate(exps.begin(), exps.end(), 0u));
  return d;
}

void Polynomial::add_term(const Exponents& exps, const Rational& coef) {
  if (static_cast<int>(exps.size()) != n_vars_)
    fail(ErrorCode::Invalid, "exponent vector length != n_vars");
  if (coef == 0) return;
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    terms_.emplace(exps, coef);
  } else {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::eval(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != n_vars_)
    fail(ErrorCode::Invalid, "poly_eval: |x| != n_vars");
  Rational total = 0;
  for (const auto& [exps, coef] : terms_) {
    Rational term = coef;
    for (int v = 0; v < n_vars_; ++v) {
      if (exps[v] == 0) continue;
      Rational pw;  // x canonical implies num^e/den^e canonical
      mpz_pow_ui(mpq_numref(pw.get_mpq_t()), mpq_numref(x[v].get_mpq_t()), exps[v]);
      mpz_pow_ui(mpq_denref(pw.get_mpq_t()), mpq_denref(x[v].get_mpq_t()), exps[v]);
      term *= pw;
    }
    total += term;
  }
  return total;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(n_vars_);
  for (const auto& [exps, coef] : terms_) out.terms_.emplace(exps, -coef);
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  if (n_vars_ != rhs.n_vars_) fail(ErrorCode::Invalid, "poly add: n_vars mismatch");
  Polynomial out = *this;
  for (const auto& [exps, coef] : rhs.terms_) out.add_term(exps, coef);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
  return *this + (-rhs);
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (n_vars_ != rhs.n_vars_) fail(ErrorCode::Invalid, "poly mul: n_vars mismatch");
  Polynomial out(n_vars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      Exponents e(n_vars_);
      for (int v = 0; v < n_vars_; ++v) e[v] = ea[v] + eb[v];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator*(const Rational& scalar) const {
  Polynomial out(n_vars_);
  if (scalar == 0) return out;
  for (const auto& [exps, coef] : terms_) out.terms_.emplace(exps, coef * scalar);
  return out;
}

Polynomial Polynomial::padded(int new_n_vars) const {
  if (new_n_vars < n_vars_) fail(ErrorCode::Invalid, "padded: shrinking n_vars");
  Polynomial out(new_n_vars);
  for (const auto& [exps, coef] : terms_) {
    Exponents e = exps;
    e.resize(new_n_vars, 0);
    out.terms_.emplace(std::move(e), coef);
  }
  return out;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [exps, coef] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << rational_str(coef);
    bool any = false;
    for (int v = 0; v < n_vars_; ++v) any = any || exps[v] > 0;
    if (any) {
      out << " *";
      for (int v = 0; v < n_vars_; ++v) {
        if (exps[v] == 0) continue;
        out << " x" << (v + 1);
        if (exps[v] > 1) out << "^" << exps[v];
      }
    }
  }
  return out.str();
}

namespace {

struct TermDraft {
  Rational coef = 1;
  bool saw_coef = false;
  std::map<int, unsigned> powers;  // 1-based var -> exponent
};

[[noreturn]] void poly_fail(const std::string& text, const std::string& what) {
  fail(ErrorCode::Parse, "polynomial '" + text + "': " + what);
}

}  // namespace

Polynomial Polynomial::parse(const std::string& text, int n_vars) {
  // Tokens: rational literals (optional sign, optional /den), xN, ^E, '*', '+'.
  std::vector<TermDraft> drafts(1);
  int max_var = 0;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i >= text.size()) poly_fail(text, "empty input");
  while (i < text.size()) {
    char ch = text[i];
    if (ch == '+') {
      drafts.emplace_back();
      ++i;
    } else if (ch == '*') {
      ++i;
    } else if (ch == 'x') {
      ++i;
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) poly_fail(text, "expected variable index after 'x'");
      int var = std::stoi(text.substr(start, i - start));
      if (var < 1) poly_fail(text, "variable indices are 1-based");
      unsigned exp = 1;
      skip_ws();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip_ws();
        std::size_t estart = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (estart == i) poly_fail(text, "expected exponent after '^'");
        exp = static_cast<unsigned>(std::stoul(text.substr(estart, i - estart)));
      }
      drafts.back().powers[var] += exp;
      max_var = std::max(max_var, var);
    } else if (ch == '-' || std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = i;
      if (ch == '-') ++i;
      while (i < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/'))
        ++i;
      Rational lit = parse_rational(text.substr(start, i - start));
      if (drafts.back().saw_coef) poly_fail(text, "two coefficients in one term");
      drafts.back().coef = lit;
      drafts.back().saw_coef = true;
    } else {
      poly_fail(text, std::string("unexpected character '") + ch + "'");
    }
    skip_ws();
  }
  if (n_vars < 0) n_vars = max_var;
  if (max_var > n_vars) poly_fail(text, "variable index exceeds n_vars");
  Polynomial p(n_vars);
  for (const auto& d : drafts) {
    if (!d.saw_coef && d.powers.empty())
      poly_fail(text, "empty term");
    Exponents exps(n_vars, 0);
    for (const auto& [var, exp] : d.powers) exps[var - 1] += exp;
    p.add_term(exps, d.coef);
  }
  return p;
}

}  // namespace psc
