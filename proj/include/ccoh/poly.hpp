#pragma once
/// @file poly.hpp
/// @brief Exact-rational sparse multivariate polynomials over the
///        indeterminates lambda_1..lambda_q, the auxiliary bracket variables
///        lambda ("l") and mu, and the formal derivative symbol d.
///
/// Every computation in the engine reduces to ring arithmetic, substitution
/// and coefficient extraction in this ring, with zero tolerance: two
/// polynomials are equal iff their canonical term maps coincide.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ccoh/rational.hpp"

namespace ccoh {

// ===== Variables ============================================================

/// Variable identifier. lambda_i has id i (1-based, i <= 999); the named
/// auxiliary variables sort after every lambda so that printed terms lead
/// with the lambda block.
using VarId = int;

inline constexpr VarId kAuxLambda = 1001;  ///< the bracket variable "l"
inline constexpr VarId kAuxMu = 1002;      ///< the nested bracket variable "mu"
inline constexpr VarId kPartial = 1003;    ///< the derivative symbol "d"

[[nodiscard]] constexpr VarId lambda_var(int i) { return i; }
[[nodiscard]] constexpr bool is_lambda(VarId v) { return v >= 1 && v <= 999; }
[[nodiscard]] constexpr int lambda_index(VarId v) { return v; }

/// Canonical variable spelling used by the parser and printer.
[[nodiscard]] std::string var_name(VarId v);

/// Inverse of var_name; returns -1 for unknown spellings.
[[nodiscard]] VarId var_from_name(const std::string& name);

/// The set {lambda_1, ..., lambda_q}.
[[nodiscard]] std::set<VarId> lambda_set(int q);

// ===== Monomials ============================================================

/// Product of variable powers, stored sparsely as sorted (var, exponent > 0)
/// pairs. Ordering is graded-lexicographic: total degree first, then larger
/// exponent on the smallest differing variable wins.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::pair<VarId, int>> factors);

  [[nodiscard]] const std::vector<std::pair<VarId, int>>& factors() const {
    return factors_;
  }
  [[nodiscard]] bool empty() const { return factors_.empty(); }
  [[nodiscard]] int degree() const;
  [[nodiscard]] int degree_in(const std::set<VarId>& vars) const;
  [[nodiscard]] int exponent_of(VarId v) const;
  [[nodiscard]] Monomial times(const Monomial& other) const;
  /// Monomial with every power of v removed.
  [[nodiscard]] Monomial without(VarId v) const;

  bool operator==(const Monomial& other) const {
    return factors_ == other.factors_;
  }
  bool operator<(const Monomial& other) const;

 private:
  std::vector<std::pair<VarId, int>> factors_;
};

// ===== Polynomials ==========================================================

/// Immutable-style sparse polynomial with exact rational coefficients.
/// Canonical invariant: no zero coefficients are stored.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT: implicit scalar embedding is intended
  Poly(long c) : Poly(Rational(c)) {}

  [[nodiscard]] static Poly variable(VarId v);
  [[nodiscard]] static Poly term(const Monomial& m, const Rational& c);

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const std::map<Monomial, Rational>& terms() const {
    return terms_;
  }
  [[nodiscard]] Rational coefficient(const Monomial& m) const;
  /// Total degree; -1 for the zero polynomial.
  [[nodiscard]] int degree() const;
  [[nodiscard]] int degree_in(const std::set<VarId>& vars) const;
  [[nodiscard]] int degree_in_var(VarId v) const;
  [[nodiscard]] std::set<VarId> variables() const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  [[nodiscard]] Poly operator-() const;
  [[nodiscard]] Poly scaled(const Rational& c) const;
  [[nodiscard]] Poly pow(int e) const;

  /// Simultaneous substitution var -> polynomial: replacements never cascade
  /// into each other, which the skew-symmetry rewrite (d -> l + d) and the
  /// lambda-permutations rely on.
  [[nodiscard]] Poly substitute(const std::map<VarId, Poly>& repl) const;
  [[nodiscard]] Poly substitute(VarId v, const Poly& repl) const;

  /// Polynomial coefficient of v^k, with v removed from the result.
  [[nodiscard]] Poly coefficient_of(VarId v, int k) const;
  /// Coefficient of v^1 — the derivative-at-zero extraction.
  [[nodiscard]] Poly d_dvar_at_zero(VarId v) const { return coefficient_of(v, 1); }
  /// Sum of the monomials whose total degree in `vars` equals `degree`.
  [[nodiscard]] Poly homogeneous_component(int degree,
                                           const std::set<VarId>& vars) const;

  bool operator==(const Poly& other) const { return terms_ == other.terms_; }

  /// Canonical text form; parse_poly round-trips it bit-exactly.
  [[nodiscard]] std::string to_string() const;

 private:
  std::map<Monomial, Rational> terms_;
};

[[nodiscard]] Poly operator+(Poly a, const Poly& b);
[[nodiscard]] Poly operator-(Poly a, const Poly& b);
[[nodiscard]] Poly operator*(const Poly& a, const Poly& b);
[[nodiscard]] Poly operator*(const Rational& c, const Poly& p);

/// Exact division with remainder by a polynomial of degree 1 in `main`
/// (linear form with a nonzero `main` coefficient): p = q*linear + r with
/// r free of `main`.
[[nodiscard]] std::pair<Poly, Poly> divmod_linear(const Poly& p,
                                                  const Poly& linear,
                                                  VarId main);

/// Parses the polynomial grammar: rationals `a/b` or `a`; variables
/// `l1, l2, ..., l, mu, d`; operators `+ - * ^`; parentheses.
/// Throws std::runtime_error with a character position on malformed input.
Poly parse_poly(const std::string& text);

}  // namespace ccoh
