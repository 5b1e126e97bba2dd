/// @file test_homotopy.cpp
/// @brief The four contraction identities, exact per tuple.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ccoh/checks.hpp"

using namespace ccoh;

TEST_CASE("degree contraction identity on the trivial module") {
  std::mt19937_64 rng(4242);
  const auto alg = AlgebraDescriptor::gc(1);
  const auto mod = ModuleDescriptor::trivial();
  for (int q = 0; q <= 2; ++q) {
    for (int trial = 0; trial < 2; ++trial) {
      const auto c = random_cochain(rng, alg, mod, q, 3, 1);
      for (long p = -2; p <= 2; ++p) {
        auto r = check_homotopy_degree(c, p, 3);
        CHECK_MESSAGE(r.pass, "q=", q, " trial=", trial, " ", r.detail);
      }
    }
  }
}

TEST_CASE("degree contraction also holds with a twisted coefficient space") {
  // The twist changes neither the differential nor the grading, so the same
  // identity applies verbatim.
  std::mt19937_64 rng(515151);
  const auto c = random_cochain(rng, AlgebraDescriptor::gc(1),
                                ModuleDescriptor::twisted(2), 2, 2, 1);
  for (long p = -1; p <= 1; ++p) {
    auto r = check_homotopy_degree(c, p, 2);
    CHECK_MESSAGE(r.pass, r.detail);
  }
}

TEST_CASE("degree contraction with the wrong eigenvalue fails") {
  const auto alg = AlgebraDescriptor::gc(1);
  Cochain c(1, alg, ModuleDescriptor::trivial());
  ModuleElement v(1);
  v.comps[0] = Poly::variable(lambda_var(1)).pow(2);  // degree-1 component
  c.add_value({{1, {1, 1}}}, v);
  CHECK(check_homotopy_degree(c, 1, 2).pass);
  // Residual of (d tau + tau d - 2) on the same component is nonzero.
  const auto cp = degree_component(c, 1);
  auto lhs = tau_degree(differential(cp, 3)).evaluate({{1, {1, 1}}});
  lhs += differential_value(tau_degree(cp), {{1, {1, 1}}});
  lhs -= cp.evaluate({{1, {1, 1}}}).scaled(Poly(2));
  CHECK_FALSE(lhs.is_zero());
}

TEST_CASE("weight contraction identity, rank two") {
  std::mt19937_64 rng(777777);
  const auto alg = AlgebraDescriptor::gc(2);
  const auto mod = ModuleDescriptor::trivial();
  for (int q = 0; q <= 2; ++q) {
    const auto c = random_cochain(rng, alg, mod, q, 2, 1);
    auto r = check_homotopy_weight(c, 2);
    CHECK_MESSAGE(r.pass, "q=", q, " ", r.detail);
  }
}

TEST_CASE("twisted contraction identity up to the divisor form") {
  std::mt19937_64 rng(606060);
  const auto alg = AlgebraDescriptor::gc(1);
  for (long a : {1L, 2L}) {
    const auto mod = ModuleDescriptor::twisted(a);
    for (int q = 0; q <= 2; ++q) {
      const auto c = random_cochain(rng, alg, mod, q, 3, 1);
      auto r = check_homotopy_twisted(c, 3);
      CHECK_MESSAGE(r.pass, "a=", a, " q=", q, " ", r.detail);
    }
  }
}

TEST_CASE("twisted contraction residual is genuinely nonzero before the "
          "divisibility quotient") {
  // On a twisted module the identity only holds modulo multiples of the
  // shifted variable sum, so the raw residual should not vanish for a
  // generic cochain; the check function divides it out.
  std::mt19937_64 rng(31337);
  const auto alg = AlgebraDescriptor::gc(1);
  const auto mod = ModuleDescriptor::twisted(1);
  const auto c = random_cochain(rng, alg, mod, 1, 2, 1);
  REQUIRE_FALSE(c.is_zero());
  const auto dc = differential(c, 3);
  const auto t = TupleKey{{1, {1, 1}}};
  ModuleElement raw = tau_twisted(dc).evaluate(t);
  raw += differential_value(tau_twisted(c), t);
  raw += c.evaluate(t).scaled(Poly(1));
  CHECK_FALSE(raw.is_zero());
}

TEST_CASE("reduced level-zero contraction identity on free modules") {
  std::mt19937_64 rng(121212);
  struct Config {
    int N;
    Rational alpha;
  };
  for (const auto& cfg :
       {Config{1, 0}, Config{1, rat(1, 2)}, Config{2, -1}}) {
    const auto alg = AlgebraDescriptor::gc(cfg.N);
    const auto mod = ModuleDescriptor::free_rank(cfg.N, cfg.alpha);
    const int level = cfg.N == 1 ? 3 : 1;
    for (int q = 0; q <= 2; ++q) {
      const auto reduced =
          delta_reduce(random_cochain(rng, alg, mod, q, level, 1));
      auto r = check_homotopy_reduced(reduced, 1, level);
      CHECK_MESSAGE(r.pass, "N=", cfg.N, " q=", q, " ", r.detail);
    }
  }
}

TEST_CASE("rescaled level-zero action is detected by the reduced identity") {
  std::mt19937_64 rng(888);
  auto mod = ModuleDescriptor::free_rank(1, 0);
  mod.synthetic_level_zero_scale = 2;
  const auto alg = AlgebraDescriptor::gc(1);
  const auto reduced = delta_reduce(random_cochain(rng, alg, mod, 1, 2, 1));
  REQUIRE_FALSE(reduced.is_zero());
  auto right = check_homotopy_reduced(reduced, 2, 2);
  CHECK_MESSAGE(right.pass, right.detail);
  auto wrong = check_homotopy_reduced(reduced, 1, 2);
  CHECK_FALSE(wrong.pass);
}

TEST_CASE("homotopy suite aggregates across degrees and kinds") {
  const auto alg = AlgebraDescriptor::gc(1);
  auto trivial_suite =
      homotopy_suite(alg, ModuleDescriptor::trivial(), 2, 2024, 2);
  CHECK(all_pass(trivial_suite));
  auto twisted_suite =
      homotopy_suite(alg, ModuleDescriptor::twisted(2), 2, 2024, 2);
  CHECK(all_pass(twisted_suite));
  auto free_suite =
      homotopy_suite(alg, ModuleDescriptor::free_rank(1, rat(1, 2)), 2, 2024,
                     2);
  CHECK(all_pass(free_suite));
  auto rank2 = homotopy_suite(AlgebraDescriptor::gc(2),
                              ModuleDescriptor::trivial(), 1, 2024, 1);
  CHECK(all_pass(rank2));
  bool saw_weight = false;
  for (const auto& r : rank2) saw_weight |= (r.id == "weight-homotopy");
  CHECK(saw_weight);
}
