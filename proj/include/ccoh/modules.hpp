#pragma once
/// @file modules.hpp
/// @brief Conformal modules over gc_N: the trivial one-dimensional module,
///        the twisted scalar module (derivative acts by a nonzero constant),
///        and the free rank-N module over the polynomial ring in the
///        derivative symbol. Includes the lambda-action of algebra elements
///        and residual checkers for the module axioms.

#include <map>
#include <string>
#include <vector>

#include "ccoh/algebra.hpp"
#include "ccoh/poly.hpp"
#include "ccoh/rational.hpp"

namespace ccoh {

enum class ModuleKind { Trivial, TwistedScalar, FreeRank };

/// Descriptor of a conformal module over gc_N.
///
/// - Trivial: one component, derivative acts by zero, algebra acts by zero.
/// - TwistedScalar: one component, derivative acts by the constant `a`,
///   algebra acts by zero. (a = 0 coincides with the trivial module.)
/// - FreeRank: N components with polynomial coefficients in d; derivative
///   acts by multiplication by d; generators act by
///   J^m_A : w(d) |-> (d + nu + alpha)^m * A * w(d + nu).
///
/// `synthetic_level_zero_scale` rescales the level-zero generator action of a
/// FreeRank module (leaving higher levels alone). Values other than 1 break
/// the module axioms on purpose; the fixture exists to show that the
/// level-zero homotopy identity detects the actual action constant.
struct ModuleDescriptor {
  ModuleKind kind = ModuleKind::Trivial;
  Rational a = 0;
  int N = 1;
  Rational alpha = 0;
  Rational synthetic_level_zero_scale = 1;

  [[nodiscard]] static ModuleDescriptor trivial() { return {}; }
  [[nodiscard]] static ModuleDescriptor twisted(const Rational& a) {
    ModuleDescriptor m;
    m.kind = ModuleKind::TwistedScalar;
    m.a = a;
    return m;
  }
  [[nodiscard]] static ModuleDescriptor free_rank(int N,
                                                  const Rational& alpha) {
    ModuleDescriptor m;
    m.kind = ModuleKind::FreeRank;
    m.N = N;
    m.alpha = alpha;
    return m;
  }

  /// Number of vector components carried by elements (1 for scalar kinds).
  [[nodiscard]] int dimension() const {
    return kind == ModuleKind::FreeRank ? N : 1;
  }
  [[nodiscard]] bool is_scalar() const { return kind != ModuleKind::FreeRank; }
  [[nodiscard]] std::string to_string() const;
};

/// Module element: a component vector of polynomials (in d, lambda
/// variables, and auxiliaries as the context requires).
struct ModuleElement {
  std::vector<Poly> comps;

  ModuleElement() = default;
  explicit ModuleElement(int dimension) : comps(dimension) {}

  [[nodiscard]] bool is_zero() const;
  ModuleElement& operator+=(const ModuleElement& other);
  ModuleElement& operator-=(const ModuleElement& other);
  [[nodiscard]] ModuleElement operator-() const;
  [[nodiscard]] ModuleElement scaled(const Poly& c) const;
  /// Applies a variable substitution to every component.
  [[nodiscard]] ModuleElement substituted(VarId v, const Poly& value) const;
  /// Simultaneous substitution applied to every component.
  [[nodiscard]] ModuleElement substituted(
      const std::map<VarId, Poly>& subs) const;
  [[nodiscard]] bool operator==(const ModuleElement& other) const;
  [[nodiscard]] std::string to_string() const;
};

[[nodiscard]] ModuleElement zero_element(const ModuleDescriptor& mod);
[[nodiscard]] ModuleElement basis_element(const ModuleDescriptor& mod, int i);

/// The action of the derivative symbol on a module element.
[[nodiscard]] ModuleElement apply_partial(const ModuleDescriptor& mod,
                                          const ModuleElement& v);

/// The lambda-action x_nu(v). Left coefficients obey P(d) -> P(-nu); on the
/// right the component polynomials shift d -> d + nu before the generator
/// matrix and the power of (d + nu + alpha) apply. Scalar modules have the
/// zero action. Central coefficients of x act by zero.
[[nodiscard]] ModuleElement module_action(const ModuleDescriptor& mod,
                                          const AlgebraElement& x,
                                          const Poly& nu,
                                          const ModuleElement& v);

// ===== Axiom checkers (zero residual means pass) ============================

/// a_l(b_mu v) - b_mu(a_l v) - [a_l b]_{l+mu} v.
[[nodiscard]] ModuleElement check_module_jacobi(const ModuleDescriptor& mod,
                                                const AlgebraDescriptor& alg,
                                                const GeneratorIndex& a,
                                                const GeneratorIndex& b,
                                                const ModuleElement& v);

/// (d a)_l v + l * (a_l v).
[[nodiscard]] ModuleElement check_module_left_derivative(
    const ModuleDescriptor& mod, const GeneratorIndex& a,
    const ModuleElement& v);

/// a_l(d v) - (d + l)(a_l v).
[[nodiscard]] ModuleElement check_module_right_derivative(
    const ModuleDescriptor& mod, const GeneratorIndex& a,
    const ModuleElement& v);

}  // namespace ccoh
