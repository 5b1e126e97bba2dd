#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "ccoh/algebra.hpp"
#include "ccoh/cochain.hpp"
#include "ccoh/engine.hpp"
#include "ccoh/modules.hpp"
#include "ccoh/poly.hpp"

using namespace ccoh;

namespace {

Poly lam(int i, int e = 1) {
  return Poly::term(Monomial({{lambda_var(i), e}}), 1);
}

TupleKey rank_one(std::vector<int> levels) {
  TupleKey t;
  for (int n : levels) t.push_back({n, {1, 1}});
  return t;
}

bool cochains_equal(const Cochain& a, const Cochain& b) {
  Cochain diff = a;
  diff -= b;
  diff.normalize();
  return diff.is_zero();
}

}  // namespace

TEST_CASE("basis enumeration pinned counts") {
  const AlgebraDescriptor gc1 = AlgebraDescriptor::gc(1);
  const ModuleDescriptor triv = ModuleDescriptor::trivial();

  TruncationSpec spec{gc1, triv, false, 0, 3, 1, 0L, 2};
  CHECK(enumerate_basis(spec).size() == 1);

  spec.q = 2;
  spec.level = 0;
  CHECK(enumerate_basis(spec).empty());  // skew kills the constant on (0,0)

  spec.level = 3;
  CHECK(enumerate_basis(spec).size() == 14);

  spec.q = 3;
  spec.level = 2;
  const auto q3 = enumerate_basis(spec);
  CHECK(q3.size() == 5);
  for (const Cochain& c : q3) {
    CHECK(c.q == 3);
    CHECK_FALSE(c.is_zero());
  }

  // Ungraded scalar window: one atom per monomial of degree <= level + cap.
  TruncationSpec tw{gc1, ModuleDescriptor::twisted(1), false, 1, 1, 1,
                    std::nullopt, 2};
  CHECK(enumerate_basis(tw).size() == 7);

  // Negative slot count yields an empty basis.
  TruncationSpec neg{gc1, triv, false, -1, 3, 1, std::nullopt, 2};
  CHECK(enumerate_basis(neg).empty());
}

TEST_CASE("window guards reject unsupported configurations") {
  const ModuleDescriptor triv = ModuleDescriptor::trivial();
  TruncationSpec bad{AlgebraDescriptor::virasoro(), triv, false, 1, 2, 1,
                     std::nullopt, 2};
  CHECK_THROWS_AS(static_cast<void>(enumerate_basis(bad)),
                  std::invalid_argument);

  bad.alg = AlgebraDescriptor::gc(1, true);
  CHECK_THROWS_AS(static_cast<void>(enumerate_basis(bad)),
                  std::invalid_argument);

  TruncationSpec free_basic{AlgebraDescriptor::gc(1),
                            ModuleDescriptor::free_rank(1, rat(1, 2)),
                            false, 1, 2, 1, std::nullopt, 2};
  CHECK_THROWS_AS(static_cast<void>(enumerate_basis(free_basic)),
                  std::invalid_argument);
  free_basic.reduced = true;
  CHECK_NOTHROW(static_cast<void>(enumerate_basis(free_basic)));

  TruncationSpec mismatch{AlgebraDescriptor::gc(1),
                          ModuleDescriptor::free_rank(2, rat(0)),
                          true, 1, 2, 1, std::nullopt, 2};
  CHECK_THROWS_AS(static_cast<void>(enumerate_basis(mismatch)),
                  std::invalid_argument);

  TruncationSpec negative{AlgebraDescriptor::gc(1), triv, false, 1, -1, 1,
                          std::nullopt, 2};
  CHECK_THROWS_AS(static_cast<void>(enumerate_basis(negative)),
                  std::invalid_argument);
}

TEST_CASE("basic cohomology of gc_1 with trivial coefficients") {
  const AlgebraDescriptor gc1 = AlgebraDescriptor::gc(1);
  const ModuleDescriptor triv = ModuleDescriptor::trivial();

  const CohomologyReport h0 = compute_cohomology(gc1, triv, false, 0, 3, 1);
  CHECK(h0.dim_h == 1);
  CHECK(h0.stabilized);

  const CohomologyReport h1 = compute_cohomology(gc1, triv, false, 1, 3, 1);
  CHECK(h1.dim_h == 0);
  CHECK(h1.stabilized);

  const CohomologyReport h2 = compute_cohomology(gc1, triv, false, 2, 3, 1);
  CHECK(h2.dim_h == 0);
  CHECK(h2.stabilized);

  const CohomologyReport h3 = compute_cohomology(gc1, triv, false, 3, 3, 1);
  CHECK(h3.dim_h == 1);
  CHECK(h3.stabilized);
  CHECK(h3.dim_kernel - h3.dim_image == h3.dim_h);
}

TEST_CASE("reduced cohomology of gc_1 with trivial coefficients") {
  const AlgebraDescriptor gc1 = AlgebraDescriptor::gc(1);
  const ModuleDescriptor triv = ModuleDescriptor::trivial();

  const CohomologyReport h0 = compute_cohomology(gc1, triv, true, 0, 3, 1);
  CHECK(h0.dim_h == 1);

  const CohomologyReport h1 = compute_cohomology(gc1, triv, true, 1, 3, 1);
  CHECK(h1.dim_h == 0);

  const CohomologyReport h2 = compute_cohomology(gc1, triv, true, 2, 3, 1);
  CHECK(h2.dim_h == 1);
  CHECK(h2.stabilized);

  // The surviving class sits in the window of cochains whose polynomial
  // degree exceeds the tuple level by exactly one.
  int nonzero_windows = 0;
  for (const WindowReport& w : h2.windows) {
    if (w.dim_h != 0) {
      ++nonzero_windows;
      REQUIRE(w.degree.has_value());
      CHECK(*w.degree == 1);
      CHECK(w.dim_h == 1);
    }
  }
  CHECK(nonzero_windows == 1);

  const CohomologyReport h3 = compute_cohomology(gc1, triv, true, 3, 3, 1);
  CHECK(h3.dim_h == 1);
}

TEST_CASE("twisted scalar reduced cohomology vanishes") {
  const AlgebraDescriptor gc1 = AlgebraDescriptor::gc(1);
  const ModuleDescriptor tw = ModuleDescriptor::twisted(1);
  for (int q = 0; q <= 2; ++q) {
    const CohomologyReport red = compute_cohomology(gc1, tw, true, q, 2, 1);
    CHECK(red.dim_h == 0);
  }
  // The generators act by zero on the twisted scalars, so the basic complex
  // keeps the constants in slot count zero; only the reduction kills them.
  const CohomologyReport basic = compute_cohomology(gc1, tw, false, 0, 2, 1);
  CHECK(basic.dim_h == 1);
}

TEST_CASE("free module cohomology vanishes (reduced)") {
  const AlgebraDescriptor gc1 = AlgebraDescriptor::gc(1);
  const ModuleDescriptor nat = ModuleDescriptor::free_rank(1, rat(1, 2));
  for (int q = 0; q <= 2; ++q) {
    const CohomologyReport rep = compute_cohomology(gc1, nat, true, q, 2, 1);
    CHECK(rep.dim_h == 0);
  }
  CHECK_THROWS_AS(
      static_cast<void>(compute_cohomology(gc1, nat, false, 1, 2, 1)),
      std::invalid_argument);
}

TEST_CASE("rank-two sanity") {
  const AlgebraDescriptor gc2 = AlgebraDescriptor::gc(2);
  const ModuleDescriptor triv = ModuleDescriptor::trivial();
  const CohomologyReport h0 = compute_cohomology(gc2, triv, false, 0, 2, 1);
  CHECK(h0.dim_h == 1);
  const CohomologyReport h1 = compute_cohomology(gc2, triv, false, 1, 2, 1);
  CHECK(h1.dim_h == 0);
}

TEST_CASE("second cocycle coefficient recursion") {
  CHECK(second_cocycle_coefficient(0, 0) == rat(1));
  CHECK(second_cocycle_coefficient(1, 1) == rat(-1, 6));
  CHECK(second_cocycle_coefficient(2, 1) == rat(-1, 12));
  CHECK(second_cocycle_coefficient(2, 0) == rat(1, 3));
  CHECK(second_cocycle_coefficient(0, 1) == rat(-1, 2));
  CHECK_THROWS_AS(static_cast<void>(second_cocycle_coefficient(-1, 0)),
                  std::invalid_argument);

  const CheckResult r = check_second_cocycle_recursion(6);
  CHECK(r.pass);
  CHECK(r.cases > 40);
  CHECK(r.detail.empty());
}

TEST_CASE("second cocycle builtin is a reduced cocycle") {
  const Cochain psi = builtin_psi_prime(1, 4);
  CHECK(psi.q == 2);
  CHECK(psi.complete_to_level == 4);

  const ModuleElement v = psi.evaluate(rank_one({0, 0}));
  const ModuleElement red = delta_reduce_value(psi.mod, 2, v);
  CHECK(red.comps[0] == lam(1));

  const CheckResult closed = verify_cocycle(psi, true, 4, "psi-closed");
  CHECK(closed.pass);
  CHECK(closed.cases > 0);

  // Rank two: values pair mutually transposed labels only.
  const Cochain psi2 = builtin_psi_prime(2, 3);
  const TupleKey cross{{0, {1, 2}}, {0, {2, 1}}};
  const ModuleElement vc =
      delta_reduce_value(psi2.mod, 2, psi2.evaluate(cross));
  CHECK(vc.comps[0] == lam(1));
  const TupleKey zero_pair{{0, {1, 1}}, {0, {2, 2}}};
  CHECK(psi2.evaluate(zero_pair).is_zero());
  const CheckResult closed2 = verify_cocycle(psi2, true, 3, "psi2-closed");
  CHECK(closed2.pass);
}

TEST_CASE("third cocycle builtin and pipeline") {
  const Cochain g = builtin_gamma_bar(4);
  CHECK(g.q == 3);

  const ModuleElement v = g.evaluate(rank_one({0, 0, 2}));
  CHECK(v.comps[0] == lam(1, 2) - lam(2, 2));

  // Skew reordering: swapping the last two slots swaps lambda_2, lambda_3
  // and flips the sign.
  const ModuleElement w = g.evaluate(rank_one({0, 2, 0}));
  CHECK(w.comps[0] == -(lam(1, 2) - lam(3, 2)));

  // The left-ordered differential of the unit pair cochain reproduces the
  // ascending values of g but is not skew: at permuted slots it produces
  // sums where the skew reordering of g produces differences.
  const Cochain f = builtin_leibniz_f();
  const ModuleElement bottom = g.evaluate(rank_one({0, 0, 1}));
  CHECK(bottom.comps[0] == lam(2, 1) - lam(1, 1));
  const ModuleElement mid = leibniz_differential_value(f, rank_one({0, 1, 0}));
  CHECK(mid.comps[0] == -lam(1, 1) - lam(3, 1));
  CHECK(g.evaluate(rank_one({0, 1, 0})).comps[0] == lam(1, 1) - lam(3, 1));
  const ModuleElement top = leibniz_differential_value(f, rank_one({1, 0, 0}));
  CHECK(top.comps[0] == lam(2, 1) + lam(3, 1));

  // g is closed at condition levels <= 2 and obstructed exactly from level
  // 3 on; no value assignment on the (J^0, J^0, J^n) family clears the
  // pinned residual, so the red verdict is genuine.
  const CheckResult low = verify_cocycle(g, false, 2, "gamma-low");
  CHECK(low.pass);
  CHECK(low.cases == 4);
  const CheckResult closed = verify_cocycle(g, false, 4, "gamma-closed");
  CHECK_FALSE(closed.pass);
  CHECK(closed.detail ==
        "nonzero residual at (J[0,1,1], J[0,1,1], J[1,1,1], J[2,1,1])");
  const ModuleElement res = differential_value(g, rank_one({0, 0, 1, 2}));
  const Poly l1 = Poly::term(Monomial({{lambda_var(1), 1}}), 1);
  const Poly l2 = Poly::term(Monomial({{lambda_var(2), 1}}), 1);
  CHECK(res.comps[0] == Poly(2) * l1 * l2 * (l1 - l2));

  // The pipeline stages run in order and the detail records the first
  // failure, so a stage-three detail certifies that the ascending match
  // and the vanishing-square checks both passed.
  const CheckResult pipeline = check_third_cocycle_pipeline(4);
  CHECK_FALSE(pipeline.pass);
  CHECK(pipeline.cases > 50);
  CHECK(pipeline.detail ==
        "nonzero residual at (J[0,1,1], J[0,1,1], J[1,1,1], J[2,1,1])");
}

TEST_CASE("primitive search certifies the surviving classes") {
  const AlgebraDescriptor gc1 = AlgebraDescriptor::gc(1);
  const ModuleDescriptor triv = ModuleDescriptor::trivial();

  // No reduced primitive for the second cocycle, already at level zero.
  const Cochain psi = builtin_psi_prime(1, 4);
  TruncationSpec red1{gc1, triv, true, 1, 0, 1, 1L, 2};
  const PrimitiveSearch at_zero = find_primitive(red1, psi, {}, 0);
  CHECK_FALSE(at_zero.feasible);
  red1.level = 3;
  const PrimitiveSearch at_three = find_primitive(red1, psi, {}, 3);
  CHECK_FALSE(at_three.feasible);
  CHECK(at_three.conditions > 0);
  // Infeasible searches carry a left-null witness over the conditions; the
  // solver re-verifies y^T A = 0 and y.b != 0 before returning it, so here it
  // is enough to pin its presence and shape.
  REQUIRE(at_three.infeasibility_certificate.size() ==
          static_cast<std::size_t>(at_three.conditions));
  bool nonzero = false;
  for (const Rational& y : at_three.infeasibility_certificate) {
    if (y != 0) nonzero = true;
  }
  CHECK(nonzero);

  // The degree-one reduced window representative is a multiple of the
  // second cocycle modulo coboundaries: matching against sources plus the
  // cocycle itself succeeds with a nonzero cocycle coefficient.
  TruncationSpec red2{gc1, triv, true, 2, 3, 1, 1L, 2};
  const WindowResult window = compute_window(red2);
  REQUIRE(window.report.dim_h == 1);
  REQUIRE(window.representatives.size() == 1);
  const PrimitiveSearch span =
      find_primitive(red1, window.representatives[0], {psi}, 3);
  CHECK(span.feasible);
  REQUIRE(span.extra_coefficients.size() == 1);
  CHECK(span.extra_coefficients[0] != 0);

  // No basic primitive for the third cocycle.
  const Cochain g = builtin_gamma_bar(4);
  TruncationSpec basic2{gc1, triv, false, 2, 3, 1, 0L, 2};
  const PrimitiveSearch gprim = find_primitive(basic2, g, {}, 3);
  CHECK_FALSE(gprim.feasible);

  // Exact cochains do have primitives.
  std::mt19937_64 rng(20240811);
  const Cochain s = random_cochain(rng, gc1, triv, 1, 2, 2);
  const Cochain ds = differential(s, 3);
  TruncationSpec src{gc1, triv, false, 1, 2, 1, std::nullopt, 2};
  const PrimitiveSearch found = find_primitive(src, ds, {}, 3);
  CHECK(found.feasible);
  CHECK(found.sources > 0);
  CHECK(found.infeasibility_certificate.empty());

  TruncationSpec wrong{gc1, triv, false, 0, 2, 1, std::nullopt, 2};
  CHECK_THROWS_AS(static_cast<void>(find_primitive(wrong, ds, {}, 2)),
                  std::invalid_argument);
}

TEST_CASE("normal forms project onto the invariant component") {
  const AlgebraDescriptor gc1 = AlgebraDescriptor::gc(1);
  const ModuleDescriptor triv = ModuleDescriptor::trivial();
  std::mt19937_64 rng(777);

  const Cochain s = random_cochain(rng, gc1, triv, 1, 2, 2);
  const Cochain c = differential(s, 4);

  const Cochain deg0 = normalize_degree_zero(c, 4);
  CHECK(cochains_equal(deg0, degree_component(c, 0)));

  // Rank one carries no nonzero weights, so the weight normal form is c.
  const Cochain w0 = normalize_weight_zero(c, 4);
  CHECK(cochains_equal(w0, c));

  const Cochain open_cochain = random_cochain(rng, gc1, triv, 2, 2, 1);
  CHECK_THROWS_AS(static_cast<void>(normalize_degree_zero(open_cochain, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(normalize_weight_zero(open_cochain, 3)),
                  std::invalid_argument);

  const Cochain q0(0, gc1, triv);
  const Cochain back = normalize_degree_zero(q0, 3);
  CHECK(back.q == 0);
}

TEST_CASE("worker thread count env handling") {
  unsetenv("CCOH_THREADS");
  CHECK(worker_thread_count() == 1);
  setenv("CCOH_THREADS", "3", 1);
  CHECK(worker_thread_count() == 3);
  setenv("CCOH_THREADS", "abc", 1);
  CHECK(worker_thread_count() == 1);
  setenv("CCOH_THREADS", "0", 1);
  CHECK(worker_thread_count() == 1);
  unsetenv("CCOH_THREADS");
}

TEST_CASE("threaded evaluation matches serial evaluation") {
  const AlgebraDescriptor gc1 = AlgebraDescriptor::gc(1);
  const ModuleDescriptor triv = ModuleDescriptor::trivial();
  TruncationSpec spec{gc1, triv, true, 2, 3, 1, 1L, 2};

  unsetenv("CCOH_THREADS");
  const WindowResult serial = compute_window(spec);
  setenv("CCOH_THREADS", "4", 1);
  const WindowResult threaded = compute_window(spec);
  unsetenv("CCOH_THREADS");

  CHECK(serial.report.dim_lift_basis == threaded.report.dim_lift_basis);
  CHECK(serial.report.dim_basis == threaded.report.dim_basis);
  CHECK(serial.report.dim_kernel == threaded.report.dim_kernel);
  CHECK(serial.report.dim_image == threaded.report.dim_image);
  CHECK(serial.report.dim_h == threaded.report.dim_h);
  REQUIRE(serial.representatives.size() == threaded.representatives.size());
  for (std::size_t i = 0; i < serial.representatives.size(); ++i) {
    CHECK(cochains_equal(serial.representatives[i],
                         threaded.representatives[i]));
  }
}
