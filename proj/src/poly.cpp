/// @file poly.cpp
/// @brief Sparse polynomial ring implementation: arithmetic, substitution,
///        extraction, linear division, parser and canonical printer.

#include "ccoh/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace ccoh {

// ===== Variables ============================================================

std::string var_name(VarId v) {
  if (is_lambda(v)) return "l" + std::to_string(lambda_index(v));
  switch (v) {
    case kAuxLambda:
      return "l";
    case kAuxMu:
      return "mu";
    case kPartial:
      return "d";
    default:
      throw std::invalid_argument("unknown variable id " + std::to_string(v));
  }
}

VarId var_from_name(const std::string& name) {
  if (name == "l") return kAuxLambda;
  if (name == "mu") return kAuxMu;
  if (name == "d") return kPartial;
  if (name.size() >= 2 && name[0] == 'l') {
    int idx = 0;
    for (size_t i = 1; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return -1;
      idx = idx * 10 + (name[i] - '0');
      if (idx > 999) return -1;
    }
    if (idx >= 1) return lambda_var(idx);
  }
  return -1;
}

std::set<VarId> lambda_set(int q) {
  std::set<VarId> s;
  for (int i = 1; i <= q; ++i) s.insert(lambda_var(i));
  return s;
}

// ===== Monomial =============================================================

Monomial::Monomial(std::vector<std::pair<VarId, int>> factors)
    : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
  std::vector<std::pair<VarId, int>> merged;
  for (const auto& [v, e] : factors_) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    if (e == 0) continue;
    if (!merged.empty() && merged.back().first == v)
      merged.back().second += e;
    else
      merged.emplace_back(v, e);
  }
  factors_ = std::move(merged);
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [v, e] : factors_) d += e;
  return d;
}

int Monomial::degree_in(const std::set<VarId>& vars) const {
  int d = 0;
  for (const auto& [v, e] : factors_)
    if (vars.count(v)) d += e;
  return d;
}

int Monomial::exponent_of(VarId v) const {
  for (const auto& [w, e] : factors_)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::times(const Monomial& other) const {
  std::vector<std::pair<VarId, int>> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return Monomial(std::move(all));
}

Monomial Monomial::without(VarId v) const {
  std::vector<std::pair<VarId, int>> kept;
  for (const auto& [w, e] : factors_)
    if (w != v) kept.emplace_back(w, e);
  return Monomial(std::move(kept));
}

bool Monomial::operator<(const Monomial& other) const {
  const int da = degree();
  const int db = other.degree();
  if (da != db) return da < db;
  // Same total degree: lexicographic on the exponent sequence over ascending
  // variable ids; a larger exponent on the smallest differing variable makes
  // the monomial larger.
  size_t ia = 0;
  size_t ib = 0;
  while (ia < factors_.size() && ib < other.factors_.size()) {
    const auto& [va, ea] = factors_[ia];
    const auto& [vb, eb] = other.factors_[ib];
    if (va != vb) return va > vb;  // the one holding the smaller var is larger
    if (ea != eb) return ea < eb;
    ++ia;
    ++ib;
  }
  return false;  // equal monomials (since degrees matched, both exhausted)
}

// ===== Poly =================================================================

Poly::Poly(const Rational& c) {
  if (c != 0) terms_[Monomial()] = c;
}

Poly Poly::variable(VarId v) {
  Poly p;
  p.terms_[Monomial({{v, 1}})] = 1;
  return p;
}

Poly Poly::term(const Monomial& m, const Rational& c) {
  Poly p;
  if (c != 0) p.terms_[m] = c;
  return p;
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.degree();
}

int Poly::degree_in(const std::set<VarId>& vars) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(vars));
  return d;
}

int Poly::degree_in_var(VarId v) const {
  int d = is_zero() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent_of(v));
  return d;
}

std::set<VarId> Poly::variables() const {
  std::set<VarId> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors()) vars.insert(v);
  return vars;
}

Poly& Poly::operator+=(const Poly& other) {
  for (const auto& [m, c] : other.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& other) { return *this += -other; }

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  Poly r;
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_[m] = c * k;
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  Poly r = Rational(1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

Poly operator+(Poly a, const Poly& b) {
  a += b;
  return a;
}

Poly operator-(Poly a, const Poly& b) {
  a -= b;
  return a;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) r += Poly::term(ma.times(mb), ca * cb);
  return r;
}

Poly operator*(const Rational& c, const Poly& p) { return p.scaled(c); }

Poly Poly::substitute(const std::map<VarId, Poly>& repl) const {
  Poly result;
  // Power cache keyed by (replaced variable, exponent).
  std::map<std::pair<VarId, int>, Poly> powers;
  for (const auto& [m, c] : terms_) {
    Poly contrib = Rational(1);
    std::vector<std::pair<VarId, int>> untouched;
    for (const auto& [v, e] : m.factors()) {
      auto it = repl.find(v);
      if (it == repl.end()) {
        untouched.emplace_back(v, e);
        continue;
      }
      auto key = std::make_pair(v, e);
      auto pit = powers.find(key);
      if (pit == powers.end())
        pit = powers.emplace(key, it->second.pow(e)).first;
      contrib = contrib * pit->second;
    }
    result += Poly::term(Monomial(std::move(untouched)), c) * contrib;
  }
  return result;
}

Poly Poly::substitute(VarId v, const Poly& repl) const {
  return substitute(std::map<VarId, Poly>{{v, repl}});
}

Poly Poly::coefficient_of(VarId v, int k) const {
  Poly r;
  for (const auto& [m, c] : terms_)
    if (m.exponent_of(v) == k) r += Poly::term(m.without(v), c);
  return r;
}

Poly Poly::homogeneous_component(int degree,
                                 const std::set<VarId>& vars) const {
  Poly r;
  for (const auto& [m, c] : terms_)
    if (m.degree_in(vars) == degree) r += Poly::term(m, c);
  return r;
}

std::pair<Poly, Poly> divmod_linear(const Poly& p, const Poly& linear,
                                    VarId main) {
  if (linear.degree() > 1)
    throw std::invalid_argument("divisor is not a linear form");
  const Rational lead = linear.coefficient(Monomial({{main, 1}}));
  if (lead == 0)
    throw std::invalid_argument("divisor has no main-variable term");
  Poly quotient;
  Poly rem = p;
  int k = rem.degree_in_var(main);
  while (k >= 1) {
    // Peel the top slice rem = main^k * A + lower; subtract (main^{k-1}A/lead)*linear.
    const Poly a = rem.coefficient_of(main, k);
    const Poly step =
        Poly::term(Monomial({{main, k - 1}}), Rational(1) / lead) * a;
    quotient += step;
    rem -= step * linear;
    k = rem.degree_in_var(main);
  }
  return {quotient, rem};
}

// ===== Printer ==============================================================

namespace {

std::string monomial_to_string(const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, e] : m.factors()) {
    if (!first) os << "*";
    first = false;
    os << var_name(v);
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

}  // namespace

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Largest monomial first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    if (m.empty()) {
      os << rat_to_string(mag);
    } else if (mag == 1) {
      os << monomial_to_string(m);
    } else {
      os << rat_to_string(mag) << "*" << monomial_to_string(m);
    }
  }
  return os.str();
}

// ===== Parser ===============================================================

namespace {

/// Recursive-descent parser over the CLI polynomial grammar.
class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Poly parse() {
    Poly p = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("polynomial parse error at position " +
                             std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Poly parse_expr() {
    Poly p = eat('-') ? -parse_term() : parse_term();
    while (true) {
      if (eat('+'))
        p += parse_term();
      else if (eat('-'))
        p -= parse_term();
      else
        return p;
    }
  }

  Poly parse_term() {
    Poly p = parse_factor();
    while (eat('*')) p = p * parse_factor();
    return p;
  }

  Poly parse_factor() {
    Poly base = parse_base();
    if (eat('^')) {
      const long e = parse_uint();
      return base.pow(static_cast<int>(e));
    }
    return base;
  }

  Poly parse_base() {
    const char c = peek();
    if (c == '(') {
      eat('(');
      Poly p = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      eat('-');
      return -parse_base();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_rational();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_variable();
    fail("expected rational, variable or '('");
  }

  Poly parse_rational() {
    const long num = parse_uint();
    if (eat('/')) {
      const long den = parse_uint();
      if (den == 0) fail("zero denominator");
      return Poly(rat(num, den));
    }
    return Poly(Rational(num));
  }

  long parse_uint() {
    skip_ws();
    if (pos_ >= text_.size() ||
        !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer");
    long v = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1000000000L) fail("integer literal too large");
      ++pos_;
    }
    return v;
  }

  Poly parse_variable() {
    skip_ws();
    std::string name;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])))) {
      name.push_back(text_[pos_]);
      ++pos_;
    }
    const VarId v = var_from_name(name);
    if (v < 0) fail("unknown variable '" + name + "'");
    return Poly::variable(v);
  }

  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text) { return Parser(text).parse(); }

}  // namespace ccoh
