#pragma once
/// @file algebra.hpp
/// @brief The conformal algebras: gc_N structure constants over the matrix
///        unit basis E_{jk}, the rank-one Virasoro algebra, the sesquilinear
///        extension of the bracket to polynomial coefficients, the optional
///        central extension, and residual checkers for the defining axioms.
///
/// Conventions: the bracket variable of a raw generator bracket is the
/// auxiliary variable "l"; the derivative symbol "d" in coefficients always
/// refers to the formal derivative applied to the *output* element. Callers
/// instantiate the bracket at arbitrary polynomial arguments via bracket_at.

#include <compare>
#include <map>
#include <string>

#include "ccoh/poly.hpp"

namespace ccoh {

// ===== Descriptors and generators ==========================================

/// Matrix unit label: E_{jk} with 1-based row j and column k.
struct MatrixLabel {
  int j = 1;
  int k = 1;
  auto operator<=>(const MatrixLabel&) const = default;
};

/// Free generator J^n_{E_{jk}} of gc_N (level n >= 0), or the Virasoro
/// generator L encoded as n = 0, label (1,1) under a Virasoro descriptor.
/// The comparison realizes the level-lexicographic generator order.
struct GeneratorIndex {
  int n = 0;
  MatrixLabel label;
  auto operator<=>(const GeneratorIndex&) const = default;
};

enum class AlgebraKind { GcN, Virasoro };

/// Which algebra we are working in. `corrupt_structure_constants` is a debug
/// hook that deliberately perturbs the gc_N bracket so the axiom checkers
/// demonstrably fail (negative control); it must stay off in real runs.
struct AlgebraDescriptor {
  AlgebraKind kind = AlgebraKind::GcN;
  int N = 1;
  bool extended = false;
  bool corrupt_structure_constants = false;

  [[nodiscard]] static AlgebraDescriptor gc(int N, bool extended = false) {
    return {AlgebraKind::GcN, N, extended, false};
  }
  [[nodiscard]] static AlgebraDescriptor virasoro() {
    return {AlgebraKind::Virasoro, 1, false, false};
  }
};

/// Throws std::invalid_argument when g is out of range for the algebra.
void validate_generator(const AlgebraDescriptor& alg, const GeneratorIndex& g);

// ===== Elements =============================================================

/// Finite sum of generators with polynomial coefficients, plus an optional
/// coefficient of the central element C (extended algebras only). The
/// central coefficient never contains "d": the central element is killed by
/// the formal derivative, so normalize() projects d -> 0 there.
struct AlgebraElement {
  std::map<GeneratorIndex, Poly> terms;
  Poly central;

  [[nodiscard]] bool is_zero() const { return terms.empty() && central.is_zero(); }
  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  [[nodiscard]] AlgebraElement operator-() const;
  [[nodiscard]] AlgebraElement scaled(const Poly& c) const;

  /// Drops zero coefficients and projects the central coefficient at d -> 0.
  void normalize();

  /// Diagnostic form, e.g. "(d + 2*l)*J[1,1,1] + (l^2)*C".
  [[nodiscard]] std::string to_string() const;
};

/// The single-generator element 1 * J^n_{E_{jk}} (or L).
[[nodiscard]] AlgebraElement gen_element(const GeneratorIndex& g);
[[nodiscard]] AlgebraElement gen_element(int n, int j = 1, int k = 1);

/// J^n_I = sum_j J^n_{E_{jj}}.
[[nodiscard]] AlgebraElement identity_element(const AlgebraDescriptor& alg,
                                              int n);

/// J^0_h with h = sum_j j * E_{jj} (the weight-grading element).
[[nodiscard]] AlgebraElement h_element(const AlgebraDescriptor& alg);

// ===== Brackets =============================================================

/// Raw generator bracket with bracket variable "l" and output derivative "d":
/// sum_{s=0}^{m} binom(m,s) (l+d)^s J^{m+n-s}_{AB}
///   - sum_{s=0}^{n} binom(n,s) (-l)^s J^{m+n-s}_{BA},
/// with E_{jk} E_{lm} = delta_{kl} E_{jm}. Extended descriptors add the
/// central coefficient (-1)^n m! n! / (m+n+1)! tr(AB) l^{m+n+1}.
[[nodiscard]] AlgebraElement bracket_generators(const AlgebraDescriptor& alg,
                                                const GeneratorIndex& a,
                                                const GeneratorIndex& b);

/// Bilinear bracket of coefficient combinations, instantiated at the bracket
/// argument nu (any polynomial, e.g. a lambda variable, l1 + l2, or -l - d):
/// left coefficients P(d) become P(-nu), right coefficients Q(d) become
/// Q(nu + d), and the raw bracket's "l" becomes nu. Central coefficients on
/// the inputs are dropped (C brackets to zero).
[[nodiscard]] AlgebraElement bracket_at(const AlgebraDescriptor& alg,
                                        const AlgebraElement& a,
                                        const AlgebraElement& b,
                                        const Poly& nu);

// ===== Axiom checkers (zero residual means pass) ============================

/// [a_l b] + [b_{-l-d} a].
[[nodiscard]] AlgebraElement check_skew_symmetry(const AlgebraDescriptor& alg,
                                                 const GeneratorIndex& a,
                                                 const GeneratorIndex& b);

/// [a_l [b_mu c]] - [[a_l b]_{l+mu} c] - [b_mu [a_l c]].
[[nodiscard]] AlgebraElement check_jacobi(const AlgebraDescriptor& alg,
                                          const GeneratorIndex& a,
                                          const GeneratorIndex& b,
                                          const GeneratorIndex& c);

/// ([J^0_I_0 a] - [a_0 J^0_I]) projected to the 0-bracket Lie algebra,
/// i.e. evaluated at l -> 0 and taken modulo d * gc_N (coefficients at
/// d -> 0): the identity holds only in that quotient.
[[nodiscard]] AlgebraElement check_zero_bracket_central(
    const AlgebraDescriptor& alg, const GeneratorIndex& a);

// ===== Text syntax ==========================================================

/// "J[n,j,k]" for gc_N generators, "L" for the Virasoro generator.
[[nodiscard]] std::string generator_to_string(const AlgebraDescriptor& alg,
                                              const GeneratorIndex& g);
[[nodiscard]] GeneratorIndex generator_from_string(const AlgebraDescriptor& alg,
                                                   const std::string& text);

}  // namespace ccoh
