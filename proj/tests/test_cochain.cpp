/// @file test_cochain.cpp
/// @brief Cochain storage, evaluation, differentials, reduction, grading.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ccoh/cochain.hpp"

using namespace ccoh;

namespace {

Poly lv(int i) { return Poly::variable(lambda_var(i)); }

ModuleElement scalar(const Poly& p) {
  ModuleElement v(1);
  v.comps[0] = p;
  return v;
}

}  // namespace

TEST_CASE("canonical tuple enumeration") {
  auto t1 = enumerate_canonical_tuples(1, 2, 3);
  CHECK(t1.size() == 6);  // (0,0),(0,1),(0,2),(0,3),(1,1),(1,2)
  for (const auto& t : t1) {
    CHECK(tuple_is_canonical(t));
    CHECK(tuple_level(t) <= 3);
  }
  auto t2 = enumerate_canonical_tuples(2, 2, 1);
  CHECK(t2.size() == 26);  // 10 sorted label pairs at (0,0), 16 at (0,1)
  CHECK(enumerate_canonical_tuples(2, 0, 5).size() == 1);
  CHECK(tuple_weight({{0, {1, 2}}, {3, {2, 1}}, {1, {1, 1}}}) == 0);
  CHECK(tuple_weight({{0, {1, 2}}, {3, {1, 2}}}) == 2);
}

TEST_CASE("evaluation applies permutation signs and relabels slots") {
  Cochain c(2, AlgebraDescriptor::gc(1), ModuleDescriptor::trivial());
  c.add_value({{0, {1, 1}}, {1, {1, 1}}}, scalar(lv(1)));

  auto direct = c.evaluate({{0, {1, 1}}, {1, {1, 1}}});
  CHECK(direct.comps[0] == lv(1));
  auto swapped = c.evaluate({{1, {1, 1}}, {0, {1, 1}}});
  CHECK(swapped.comps[0] == -lv(2));
  auto poly_args = c.evaluate({{0, {1, 1}}, {1, {1, 1}}},
                              {lv(3), lv(1) + lv(2)});
  CHECK(poly_args.comps[0] == lv(3));
  auto missing = c.evaluate({{2, {1, 1}}, {2, {1, 1}}});
  CHECK(missing.is_zero());
}

TEST_CASE("symmetrization makes repeated-tuple values alternating") {
  Cochain c(2, AlgebraDescriptor::gc(1), ModuleDescriptor::trivial());
  c.add_value({{0, {1, 1}}, {0, {1, 1}}}, scalar(lv(1)));
  c.symmetrize();
  auto v = c.evaluate({{0, {1, 1}}, {0, {1, 1}}});
  CHECK(v.comps[0] == rat(1, 2) * lv(1) - rat(1, 2) * lv(2));
  auto swapped = c.evaluate({{0, {1, 1}}, {0, {1, 1}}}, {lv(2), lv(1)});
  CHECK(swapped.comps[0] == -v.comps[0]);
  // A symmetric assignment on a repeated tuple projects to zero.
  Cochain z(2, AlgebraDescriptor::gc(1), ModuleDescriptor::trivial());
  z.add_value({{1, {1, 1}}, {1, {1, 1}}}, scalar(lv(1) + lv(2)));
  z.symmetrize();
  CHECK(z.is_zero());
}

TEST_CASE("add_value rejects non-canonical tuples") {
  Cochain c(2, AlgebraDescriptor::gc(1), ModuleDescriptor::trivial());
  CHECK_THROWS_AS(c.add_value({{1, {1, 1}}, {0, {1, 1}}}, scalar(Poly(1))),
                  std::invalid_argument);
}

TEST_CASE("differential: pinned low-degree values") {
  SUBCASE("degree zero, free module: the slot action on the value") {
    const auto mod = ModuleDescriptor::free_rank(1, rat(1, 2));
    Cochain c(0, AlgebraDescriptor::gc(1), mod);
    c.add_value({}, basis_element(mod, 0));
    auto v = differential_value(c, {{2, {1, 1}}});
    const Poly w = Poly::variable(kPartial) + lv(1) + Poly(rat(1, 2));
    CHECK(v.comps[0] == w * w);
  }
  SUBCASE("degree zero, trivial module: differential vanishes") {
    Cochain c(0, AlgebraDescriptor::gc(1), ModuleDescriptor::trivial());
    c.add_value({}, scalar(Poly(1)));
    CHECK(differential_value(c, {{3, {1, 1}}}).is_zero());
  }
  SUBCASE("degree one, trivial module: single bracket contraction") {
    Cochain c(1, AlgebraDescriptor::gc(1), ModuleDescriptor::trivial());
    c.add_value({{0, {1, 1}}}, scalar(Poly(1)));
    // Bracket of the level-zero and level-one slots contributes the
    // level-zero generator with coefficient l1; the pair sign is negative.
    auto v = differential_value(c, {{0, {1, 1}}, {1, {1, 1}}});
    CHECK(v.comps[0] == -lv(1));
    // Skewness of the result under swapping the two slots.
    auto w = differential_value(c, {{1, {1, 1}}, {0, {1, 1}}});
    CHECK(w.comps[0] == lv(2));
  }
  SUBCASE("degree one, rank two: off-diagonal labels compose") {
    Cochain c(1, AlgebraDescriptor::gc(2), ModuleDescriptor::trivial());
    c.add_value({{0, {1, 1}}}, scalar(lv(1)));
    c.add_value({{0, {2, 2}}}, scalar(Poly(2) * lv(1)));
    // [J0_12 at l1, J0_21] = J0_11 - J0_22, slot argument l1 + l2.
    auto v = differential_value(c, {{0, {1, 2}}, {0, {2, 1}}});
    CHECK(v.comps[0] == -(lv(1) + lv(2)) + Poly(2) * (lv(1) + lv(2)));
  }
}

TEST_CASE("differential squares to zero on random cochains") {
  std::mt19937_64 rng(987654321);
  struct Config {
    ModuleDescriptor mod;
    int N;
    int q;
    int level;
  };
  const std::vector<Config> configs = {
      {ModuleDescriptor::trivial(), 1, 1, 2},
      {ModuleDescriptor::trivial(), 1, 2, 2},
      {ModuleDescriptor::twisted(2), 1, 1, 2},
      {ModuleDescriptor::free_rank(1, 0), 1, 0, 2},
      {ModuleDescriptor::free_rank(1, rat(1, 2)), 1, 1, 2},
      {ModuleDescriptor::free_rank(2, -1), 2, 1, 1},
      {ModuleDescriptor::trivial(), 2, 1, 1},
  };
  for (const auto& cfg : configs) {
    const auto alg = AlgebraDescriptor::gc(cfg.N);
    for (int trial = 0; trial < 3; ++trial) {
      auto c = random_cochain(rng, alg, cfg.mod, cfg.q, cfg.level, 1);
      const int bound = cfg.level + 1;
      auto dc = differential(c, bound);
      for (const auto& t :
           enumerate_canonical_tuples(cfg.N, cfg.q + 2, bound)) {
        auto dd = differential_value(dc, t);
        CHECK_MESSAGE(dd.is_zero(), cfg.mod.to_string(), " q=", cfg.q,
                      " tuple=", tuple_to_string(t),
                      " value=", dd.to_string());
      }
    }
  }
}

TEST_CASE("left-ordered differential agrees with the differential on skew "
          "cochains") {
  std::mt19937_64 rng(13579);
  const auto alg = AlgebraDescriptor::gc(1);
  for (int q : {1, 2}) {
    for (int trial = 0; trial < 3; ++trial) {
      auto c =
          random_cochain(rng, alg, ModuleDescriptor::trivial(), q, 2, 1);
      for (const auto& t : enumerate_canonical_tuples(1, q + 1, 3)) {
        auto a = differential_value(c, t);
        auto b = leibniz_differential_value(c, t);
        CHECK_MESSAGE(a == b, "q=", q, " tuple=", tuple_to_string(t));
      }
    }
  }
  // Also on a free module, where the slot actions participate.
  const auto mod = ModuleDescriptor::free_rank(1, rat(1, 2));
  auto c = random_cochain(rng, alg, mod, 1, 2, 1);
  for (const auto& t : enumerate_canonical_tuples(1, 2, 3)) {
    CHECK(differential_value(c, t) == leibniz_differential_value(c, t));
  }
}

TEST_CASE("ordered cochains evaluate without canonicalization") {
  Cochain f(2, AlgebraDescriptor::gc(1), ModuleDescriptor::trivial());
  f.ordered = true;
  f.add_value({{1, {1, 1}}, {0, {1, 1}}}, scalar(Poly(1)));
  CHECK(f.evaluate({{1, {1, 1}}, {0, {1, 1}}}).comps[0] == Poly(1));
  CHECK(f.evaluate({{0, {1, 1}}, {1, {1, 1}}}).is_zero());
}

TEST_CASE("derivative action and commutation with the differential") {
  std::mt19937_64 rng(24680);
  SUBCASE("pinned forms") {
    Cochain c(2, AlgebraDescriptor::gc(1), ModuleDescriptor::twisted(3));
    c.add_value({{0, {1, 1}}, {1, {1, 1}}}, scalar(Poly(1)));
    auto pc = partial_action(c);
    CHECK(pc.values.at({{0, {1, 1}}, {1, {1, 1}}}).comps[0] ==
          Poly(3) + lv(1) + lv(2));
  }
  SUBCASE("commutes with the differential") {
    const std::vector<ModuleDescriptor> mods = {
        ModuleDescriptor::trivial(), ModuleDescriptor::twisted(1),
        ModuleDescriptor::free_rank(1, rat(1, 2))};
    for (const auto& mod : mods) {
      auto c = random_cochain(rng, AlgebraDescriptor::gc(1), mod, 1, 2, 1);
      for (const auto& t : enumerate_canonical_tuples(1, 2, 3)) {
        auto a = differential_value(partial_action(c), t);
        Cochain dc = differential(c, tuple_level(t));
        auto b = partial_action(dc).values.count(t)
                     ? partial_action(dc).values.at(t)
                     : zero_element(mod);
        CHECK_MESSAGE(a == b, mod.to_string(), " tuple=", tuple_to_string(t));
      }
    }
  }
}

TEST_CASE("reduction substitution") {
  SUBCASE("trivial module eliminates the last slot variable") {
    auto v = delta_reduce_value(ModuleDescriptor::trivial(), 2,
                                scalar(lv(1) - lv(2)));
    CHECK(v.comps[0] == Poly(2) * lv(1));
  }
  SUBCASE("twisted module shifts by the twist") {
    auto v = delta_reduce_value(ModuleDescriptor::twisted(2), 1,
                                scalar(lv(1).pow(2)));
    CHECK(v.comps[0] == Poly(4));
    auto z = delta_reduce_value(ModuleDescriptor::twisted(2), 0,
                                scalar(Poly(5)));
    CHECK(z.is_zero());
  }
  SUBCASE("free module eliminates the derivative symbol") {
    ModuleElement w(1);
    w.comps[0] = Poly::variable(kPartial) + lv(1);
    auto v = delta_reduce_value(ModuleDescriptor::free_rank(1, 0), 2, w);
    CHECK(v.comps[0] == -lv(2));
  }
  SUBCASE("reduction annihilates derivative-action images") {
    std::mt19937_64 rng(112233);
    const std::vector<ModuleDescriptor> mods = {
        ModuleDescriptor::trivial(), ModuleDescriptor::twisted(2),
        ModuleDescriptor::free_rank(2, rat(1, 2))};
    for (const auto& mod : mods) {
      const int N = mod.kind == ModuleKind::FreeRank ? mod.N : 1;
      for (int q : {0, 1, 2}) {
        auto c = random_cochain(rng, AlgebraDescriptor::gc(N), mod, q, 1, 1);
        auto reduced = delta_reduce(partial_action(c));
        CHECK_MESSAGE(reduced.is_zero(), mod.to_string(), " q=", q);
      }
    }
  }
}

TEST_CASE("degree components") {
  const auto alg = AlgebraDescriptor::gc(1);
  SUBCASE("pinned split") {
    Cochain c(1, alg, ModuleDescriptor::trivial());
    c.add_value({{1, {1, 1}}}, scalar(lv(1).pow(2) + Poly(3) * lv(1)));
    auto p1 = degree_component(c, 1);
    CHECK(p1.values.at({{1, {1, 1}}}).comps[0] == lv(1).pow(2));
    auto p0 = degree_component(c, 0);
    CHECK(p0.values.at({{1, {1, 1}}}).comps[0] == Poly(3) * lv(1));
    CHECK(degree_component(c, 2).is_zero());
  }
  SUBCASE("components sum back and the differential preserves degree") {
    std::mt19937_64 rng(555);
    for (const auto& mod :
         {ModuleDescriptor::trivial(), ModuleDescriptor::twisted(1)}) {
      auto c = random_cochain(rng, alg, mod, 2, 2, 1);
      Cochain sum(2, alg, mod);
      for (long p = -4; p <= 4; ++p) {
        auto comp = degree_component(c, p);
        if (!comp.is_zero()) sum += comp;
        // d gamma^(p) equals (d gamma)^(p) tuple by tuple.
        for (const auto& t : enumerate_canonical_tuples(1, 3, 3)) {
          auto lhs = differential_value(comp, t);
          Cochain dc = differential(c, 3);
          auto rhs_full = degree_component(dc, p);
          auto it = rhs_full.values.find(t);
          auto rhs = it == rhs_full.values.end() ? zero_element(mod)
                                                 : it->second;
          CHECK_MESSAGE(lhs == rhs, mod.to_string(), " p=", p,
                        " tuple=", tuple_to_string(t));
        }
      }
      for (const auto& [t, v] : c.values) {
        CHECK(sum.evaluate(t) == v);
      }
    }
  }
}

TEST_CASE("contractions against the last slot") {
  const auto alg = AlgebraDescriptor::gc(1);
  SUBCASE("linear coefficient, degree one to zero") {
    Cochain c(1, alg, ModuleDescriptor::trivial());
    c.add_value({{1, {1, 1}}}, scalar(Poly(3) * lv(1) + lv(1).pow(2)));
    auto t1 = tau_degree(c);
    REQUIRE(t1.q == 0);
    CHECK(t1.values.at({}).comps[0] == Poly(3));
  }
  SUBCASE("degree two to one, with the contraction sign") {
    Cochain c(2, alg, ModuleDescriptor::trivial());
    c.add_value({{0, {1, 1}}, {1, {1, 1}}}, scalar(lv(2)));
    auto t1 = tau_degree(c);
    CHECK(t1.values.at({{0, {1, 1}}}).comps[0] == Poly(-1));
    auto tz = tau_twisted(c);  // evaluation at zero picks no constant term
    CHECK(tz.is_zero());
  }
  SUBCASE("weight contraction sums diagonal labels with their index") {
    const auto alg2 = AlgebraDescriptor::gc(2);
    Cochain c(1, alg2, ModuleDescriptor::trivial());
    c.add_value({{0, {1, 1}}}, scalar(Poly(5) + lv(1)));
    c.add_value({{0, {2, 2}}}, scalar(Poly(7)));
    auto tw = tau_weight(c);
    REQUIRE(tw.q == 0);
    CHECK(tw.values.at({}).comps[0] == Poly(5 + 2 * 7));
  }
  SUBCASE("level-zero contraction at zero") {
    Cochain c(1, alg, ModuleDescriptor::free_rank(1, 0));
    ModuleElement v(1);
    v.comps[0] = lv(1) + Poly(4);
    c.add_value({{0, {1, 1}}}, v);
    auto t0 = tau_reduced(c);
    CHECK(t0.values.at({}).comps[0] == Poly(4));
  }
  SUBCASE("degree-zero input is rejected") {
    Cochain c(0, alg, ModuleDescriptor::trivial());
    c.add_value({}, scalar(Poly(1)));
    CHECK_THROWS_AS(static_cast<void>(tau_degree(c)), std::invalid_argument);
  }
}

TEST_CASE("materialized differentials refuse evaluation beyond their bound") {
  std::mt19937_64 rng(777);
  auto c = random_cochain(rng, AlgebraDescriptor::gc(1),
                          ModuleDescriptor::trivial(), 1, 2, 1);
  auto dc = differential(c, 3);
  CHECK_THROWS_AS(static_cast<void>(dc.evaluate({{2, {1, 1}}, {2, {1, 1}}})),
                  std::logic_error);
}
