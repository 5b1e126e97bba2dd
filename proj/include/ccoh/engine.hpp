#pragma once
/// @file engine.hpp
/// @brief Truncated cohomology pipeline: deterministic finite bases of
///        cochain windows, exact condition matrices, kernel/image dimensions
///        with stabilization reporting, the distinguished built-in cocycles,
///        residual verification, and exact primitive searches.
///
/// Truncation semantics: a window holds cochains supported on canonical
/// tuples of total level <= level whose per-tuple values satisfy the degree
/// filter. Closedness is imposed on all condition tuples of total level
/// <= level + margin. Coboundary dimensions are counted from below as the
/// intersection of the restricted coboundary span with the kernel span, so
/// dim_h = dim_kernel - dim_image is always >= 0 and every reported class
/// has an exact rational certificate.

#include <optional>
#include <string>
#include <vector>

#include "ccoh/algebra.hpp"
#include "ccoh/checks.hpp"
#include "ccoh/cochain.hpp"
#include "ccoh/linalg.hpp"
#include "ccoh/modules.hpp"

namespace ccoh {

struct TruncationSpec {
  AlgebraDescriptor alg;
  ModuleDescriptor mod;
  /// Reduced complex: scalar windows keep basic coordinates and apply the
  /// reduction substitution in the value/condition maps; free-module windows
  /// enumerate d-free values directly. Free modules support reduced runs
  /// only.
  bool reduced = false;
  int q = 0;
  int level = 3;
  int margin = 1;
  /// Graded window: per-tuple value degree == degree + level(T).
  std::optional<long> degree;
  /// Ungraded window: per-tuple value degree <= level(T) + degree_cap.
  int degree_cap = 2;
};

/// Deterministic independent basis of the window: symmetrized
/// single-monomial cochains, dependent candidates dropped in enumeration
/// order.
[[nodiscard]] std::vector<Cochain> enumerate_basis(const TruncationSpec& spec);

struct WindowReport {
  std::optional<long> degree;
  int dim_lift_basis = 0;  ///< independent enumerated coordinates
  int dim_basis = 0;       ///< rank of the value map on the window
  int dim_kernel = 0;
  int dim_image = 0;
  int dim_h = 0;
};

struct WindowResult {
  WindowReport report;
  /// dim_h closed combinations independent of the image span, in basic
  /// coordinates (lifts) for scalar reduced windows.
  std::vector<Cochain> representatives;
};

[[nodiscard]] WindowResult compute_window(const TruncationSpec& spec);

struct CohomologyReport {
  AlgebraDescriptor alg;
  ModuleDescriptor mod;
  bool reduced = false;
  int q = 0;
  int level = 0;
  int margin = 1;
  int dim_kernel = 0;
  int dim_image = 0;
  int dim_h = 0;
  /// Dimensions agree with the run one level lower.
  bool stabilized = false;
  std::vector<WindowReport> windows;
};

/// Degree-window policy: trivial basic runs use the single graded window
/// degree 0; trivial reduced runs scan degrees -level..degree_cap and sum;
/// twisted and free-module runs use one ungraded capped window. Dimensions
/// sum over windows.
[[nodiscard]] CohomologyReport compute_cohomology(const AlgebraDescriptor& alg,
                                                  const ModuleDescriptor& mod,
                                                  bool reduced, int q,
                                                  int level, int margin,
                                                  int degree_cap = 2);

// ===== Distinguished cocycles ==============================================

/// (-1)^n m! n! / (m+n+1)!.
[[nodiscard]] Rational second_cocycle_coefficient(int m, int n);

/// The reduced second cocycle spanning the reduced degree-one classes,
/// carried as a basic preimage: on the canonical tuple (J^m_A, J^n_B) the
/// stored value symmetrizes tr(AB) * second_cocycle_coefficient(m, n) *
/// l1^(m+n+1), and reduces back to exactly that polynomial. Values are
/// materialized on tuples of total level <= level_cap.
[[nodiscard]] Cochain builtin_psi_prime(int N, int level_cap);

/// The distinguished rank-one third cochain: the skew completion of the
/// ascending values (-1)^(n+1) (l2^n - l1^n) on (J^0, J^0, J^n) for
/// 1 <= n <= level_cap, zero on other ascending tuples. These are exactly
/// the values the left-ordered differential of builtin_leibniz_f takes on
/// ascending tuples; that differential is not itself skew, and no skew
/// cochain supported only on (J^0, J^0, J^n) tuples is closed (the
/// condition at (J^0, J^0, J^1, J^2) obstructs every value assignment), so
/// this cochain fails verify_cocycle from condition level 3 on.
/// check_third_cocycle_pipeline reports the exact first residual;
/// compute_window(q = 3) produces the genuine closed representative, whose
/// support necessarily leaves the (J^0, J^0, J^n) family.
[[nodiscard]] Cochain builtin_gamma_bar(int level_cap);

/// The ordered (non-skew) two-cochain supported on the level-zero pair with
/// value one; its left-ordered differential matches builtin_gamma_bar on
/// ascending tuples.
[[nodiscard]] Cochain builtin_leibniz_f();

/// d(c) = 0 (reduced differential when reduced = true) on every canonical
/// condition tuple of total level <= condition_level.
[[nodiscard]] CheckResult verify_cocycle(const Cochain& c, bool reduced,
                                         int condition_level,
                                         const std::string& id);

/// The boundary recursion m c(m-1,n) + n c(m,n-1) =
/// (binom(m, m+n) - (-1)^(m+n) binom(n, m+n)) determines the closed-form
/// coefficients uniquely, and the closed form satisfies every instance with
/// m + n <= max_total.
[[nodiscard]] CheckResult check_second_cocycle_recursion(int max_total);

/// Runs three checks in order and reports the first failure: the
/// left-ordered differential of the unit pair cochain matches the
/// distinguished third cochain on every ascending tuple of level <= level;
/// the square of the left-ordered differential vanishes on all ordered
/// tuples of level <= level; the distinguished third cochain passes
/// verify_cocycle at condition levels <= level. The first two hold; the
/// third genuinely fails from level 3 on (see builtin_gamma_bar), so for
/// level >= 3 the result is a deliberate red with the residual tuple in
/// the detail field.
[[nodiscard]] CheckResult check_third_cocycle_pipeline(int level);

// ===== Primitive search and normal forms ===================================

struct PrimitiveSearch {
  bool feasible = false;
  int sources = 0;
  int extras = 0;
  int conditions = 0;
  /// Exact certificate when feasible: coefficients over the source basis
  /// and over the adjoined cochains.
  std::vector<Rational> source_coefficients;
  std::vector<Rational> extra_coefficients;
  /// Exact certificate when infeasible: a left-null combination y of the
  /// condition rows (y^T A = 0) whose pairing with the target is nonzero,
  /// proving no solution exists. Verified internally before being returned.
  std::vector<Rational> infeasibility_certificate;
};

/// Exact solve of sum_i x_i d(s_i) + sum_k e_k extra_k = target on canonical
/// tuples of total level <= match_level, where s_i runs over the window
/// basis one slot below the target (source_spec.q = target.q - 1). Because a
/// differential value on a tuple only consults the cochain at tuples of no
/// higher level, infeasibility certifies that no cochain whatsoever matches
/// the target on those condition tuples within the window's degree filter.
/// On infeasibility the result carries infeasibility_certificate: an exact
/// rational left-null vector over the scalar conditions witnessing the
/// inconsistency, re-checked against the assembled system before return.
[[nodiscard]] PrimitiveSearch find_primitive(const TruncationSpec& source_spec,
                                             const Cochain& target,
                                             const std::vector<Cochain>& extras,
                                             int match_level);

/// Subtracts the differential of the exact scaling corrections so that only
/// the degree-zero part of the cocycle survives; throws
/// std::invalid_argument unless c is closed on condition tuples of level
/// <= condition_level. The result is materialized to that level.
[[nodiscard]] Cochain normalize_degree_zero(const Cochain& c,
                                            int condition_level);

/// Same for the weight grading (N >= 2): only weight-zero tuples survive.
[[nodiscard]] Cochain normalize_weight_zero(const Cochain& c,
                                            int condition_level);

/// Worker-thread cap from CCOH_THREADS (>= 1; default 1; invalid values
/// fall back to 1).
[[nodiscard]] int worker_thread_count();

}  // namespace ccoh
