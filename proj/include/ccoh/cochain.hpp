#pragma once
/// @file cochain.hpp
/// @brief The cochain complex of gc_N with coefficients in a conformal
///        module: skew-symmetric polynomial q-cochains, the differential, the
///        derivative action, degree grading, the reduction substitution, and
///        the contraction operators used by the homotopy identities.
///
/// A q-cochain assigns to every q-tuple of generators a module-valued
/// polynomial in the slot variables l1..lq (plus d for free modules). Values
/// are stored on canonical (sorted) tuples only; evaluation on arbitrary
/// tuples applies the simultaneous-permutation sign and relabels slot
/// variables. Values on tuples with repeated generators are kept alternating
/// under the stabilizer by symmetrize().

#include <map>
#include <random>
#include <vector>

#include "ccoh/algebra.hpp"
#include "ccoh/modules.hpp"
#include "ccoh/poly.hpp"

namespace ccoh {

using TupleKey = std::vector<GeneratorIndex>;

/// Sum of generator levels.
[[nodiscard]] int tuple_level(const TupleKey& t);
/// Sum over slots of (column - row) of the matrix label.
[[nodiscard]] int tuple_weight(const TupleKey& t);
[[nodiscard]] bool tuple_is_canonical(const TupleKey& t);
[[nodiscard]] std::string tuple_to_string(const TupleKey& t);

/// All canonical q-tuples over gc_N generators with total level <= bound.
[[nodiscard]] std::vector<TupleKey> enumerate_canonical_tuples(
    int N, int q, int max_total_level);

struct Cochain {
  int q = 0;
  AlgebraDescriptor alg;
  ModuleDescriptor mod;
  std::map<TupleKey, ModuleElement> values;
  /// -1: `values` is the complete support. Otherwise values are only
  /// guaranteed on tuples of total level <= complete_to_level, and
  /// evaluation beyond that bound throws.
  int complete_to_level = -1;
  /// Ordered assignments skip canonicalization entirely: values live on
  /// tuples exactly as keyed, without permutation signs. Used for non-skew
  /// inputs to the left-ordered differential.
  bool ordered = false;

  Cochain() = default;
  Cochain(int q, AlgebraDescriptor alg, ModuleDescriptor mod)
      : q(q), alg(std::move(alg)), mod(std::move(mod)) {}

  [[nodiscard]] bool is_zero() const;
  /// Requires a canonical tuple; accumulates into the stored value.
  void add_value(const TupleKey& tuple, const ModuleElement& v);
  /// Alternating projection under each tuple's stabilizer; call after
  /// assembling raw values so that evaluation is consistent.
  void symmetrize();
  /// Drops zero values.
  void normalize();

  /// gamma with slot i carrying the polynomial argument lambda_args[i].
  /// Arbitrary tuple order; missing canonical tuples evaluate to zero.
  [[nodiscard]] ModuleElement evaluate(
      const TupleKey& tuple, const std::vector<Poly>& lambda_args) const;
  /// Shortcut with the identity arguments l1..lq.
  [[nodiscard]] ModuleElement evaluate(const TupleKey& tuple) const;

  Cochain& operator+=(const Cochain& other);
  Cochain& operator-=(const Cochain& other);
  [[nodiscard]] Cochain scaled(const Rational& c) const;
};

/// Identity slot arguments l1..lq as polynomials.
[[nodiscard]] std::vector<Poly> identity_args(int q);

/// Value of (d gamma) on one (q+1)-tuple, with slot variables l1..l(q+1):
/// the alternating sum of slot actions a_i at l_i on gamma with slot i
/// omitted, plus the alternating sum over pairs i<j of gamma evaluated with
/// the bracket [a_i at l_i, a_j] in a leading merged slot carrying l_i + l_j
/// (derivative coefficients of the bracket contract to -(l_i + l_j)).
[[nodiscard]] ModuleElement differential_value(const Cochain& c,
                                               const TupleKey& tuple);

/// Left-ordered variant: the merged bracket replaces slot j in place (slot i
/// is omitted), with sign (-1)^i counting slots from one. Coincides with
/// differential_value on skew cochains; meaningful on ordered (non-skew)
/// assignments, where it is evaluated without canonical reordering.
[[nodiscard]] ModuleElement leibniz_differential_value(const Cochain& c,
                                                       const TupleKey& tuple);

/// Materializes the differential on all canonical tuples with total level
/// <= level_bound (the result's complete_to_level is set accordingly, or
/// kept exact when the input support makes the result exact).
[[nodiscard]] Cochain differential(const Cochain& c, int level_bound);

/// The derivative action: module derivative plus multiplication by the sum
/// of the slot variables.
[[nodiscard]] Cochain partial_action(const Cochain& c);

/// The reduction substitution. Scalar modules: the last slot variable is
/// replaced by -(a + l1 + ... + l(q-1)) (a = 0 for the trivial module), and
/// a twisted 0-cochain reduces to zero. Free modules: d is replaced by
/// -(l1 + ... + lq) and all slot variables are kept.
[[nodiscard]] ModuleElement delta_reduce_value(const ModuleDescriptor& mod,
                                               int q, const ModuleElement& v);
[[nodiscard]] Cochain delta_reduce(const Cochain& c);

/// Differential on reduced free-module cochains (values free of d): the
/// plain differential followed by the reduction substitution.
[[nodiscard]] ModuleElement reduced_differential_value(const Cochain& c,
                                                       const TupleKey& tuple);

/// Homogeneous degree component: on each tuple keeps the part of total
/// degree (p + total level) in the slot variables (plus d for free
/// modules).
[[nodiscard]] Cochain degree_component(const Cochain& c, long p);

/// Contraction against a constant-coefficient element in an appended last
/// slot, with the prefactor (-1)^(q-1): either the coefficient of the first
/// power of the last slot variable, or evaluation of that variable at zero.
enum class ContractionKind { CoeffLambdaOne, AtLambdaZero };
[[nodiscard]] Cochain contract_last(const Cochain& c,
                                    const AlgebraElement& last,
                                    ContractionKind kind);

/// The four homotopy contractions: against the level-one identity taking
/// the linear coefficient; against the weight element at zero; against the
/// level-one identity at zero; against the level-zero identity at zero.
[[nodiscard]] Cochain tau_degree(const Cochain& c);
[[nodiscard]] Cochain tau_weight(const Cochain& c);
[[nodiscard]] Cochain tau_twisted(const Cochain& c);
[[nodiscard]] Cochain tau_reduced(const Cochain& c);

/// Seeded random cochain supported on canonical tuples of total level
/// <= max_level, with small integer coefficients and per-tuple value degree
/// <= total level + extra_degree; symmetrized.
[[nodiscard]] Cochain random_cochain(std::mt19937_64& rng,
                                     const AlgebraDescriptor& alg,
                                     const ModuleDescriptor& mod, int q,
                                     int max_level, int extra_degree);

}  // namespace ccoh
