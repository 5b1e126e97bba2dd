#pragma once
/// @file checks.hpp
/// @brief Named check suites shared by the command-line driver, the unit
///        tests, and the acceptance gate. Every check reduces a claimed
///        identity to an exact residual and passes only when the residual is
///        identically zero (or, where stated, divisible by the required
///        linear form).

#include <cstdint>
#include <string>
#include <vector>

#include "ccoh/cochain.hpp"

namespace ccoh {

struct CheckResult {
  std::string id;
  bool pass = false;
  long cases = 0;
  std::string detail;  // empty when passing; first counterexample otherwise
};

[[nodiscard]] bool all_pass(const std::vector<CheckResult>& results);

// ===== Algebra axioms =======================================================

/// Skew symmetry over generator pairs (total level <= level), the Jacobi
/// identity over triples (total level <= level), centrality of the
/// level-zero identity under the zero bracket, and annihilation of central
/// input coefficients. Extended descriptors exercise the central terms.
[[nodiscard]] std::vector<CheckResult> axiom_suite(
    const AlgebraDescriptor& alg, int level);

// ===== Module axioms ========================================================

/// Both derivative compatibilities and the action identity over generator
/// pairs of total level <= level, probed on every basis vector and on a
/// derivative multiple of the first.
[[nodiscard]] std::vector<CheckResult> module_suite(
    const ModuleDescriptor& mod, int level);

// ===== Differentials ========================================================

/// d(d gamma) = 0 on `count` seeded random q-cochains supported up to
/// `level`, checked on all canonical tuples up to level + 1; the
/// left-ordered differential route is checked the same way.
[[nodiscard]] std::vector<CheckResult> differential_suite(
    const AlgebraDescriptor& alg, const ModuleDescriptor& mod, int q,
    int level, std::uint64_t seed, int count);

// ===== Homotopy identities (per-tuple residuals) ============================

/// Degree contraction: (d tau + tau d) on the degree-p component equals p
/// times the component, on every canonical tuple of total level <= bound.
[[nodiscard]] CheckResult check_homotopy_degree(const Cochain& c, long p,
                                                int bound);

/// Weight contraction: (d tau + tau d) gamma equals the tuple weight times
/// gamma, tuple by tuple.
[[nodiscard]] CheckResult check_homotopy_weight(const Cochain& c, int bound);

/// Twisted contraction: (d tau + tau d) gamma + a gamma is divisible by
/// (a + l1 + ... + lq) on every tuple (twisted scalar modules).
[[nodiscard]] CheckResult check_homotopy_twisted(const Cochain& c, int bound);

/// Reduced level-zero contraction on reduced free-module cochains (values
/// free of the derivative symbol): (d' tau + tau d') gamma equals
/// `scale` times gamma, where scale is the level-zero action constant
/// (one for the honest module; the synthetic rescaled fixture detects its
/// own constant).
[[nodiscard]] CheckResult check_homotopy_reduced(const Cochain& c,
                                                 const Rational& scale,
                                                 int bound);

/// All four homotopy identities on seeded random cochains, dimensioned for
/// the given module kind.
[[nodiscard]] std::vector<CheckResult> homotopy_suite(
    const AlgebraDescriptor& alg, const ModuleDescriptor& mod, int level,
    std::uint64_t seed, int count);

}  // namespace ccoh
