/// @file checks.cpp
/// @brief Shared residual-based check suites.

#include "ccoh/checks.hpp"

#include <sstream>
#include <stdexcept>

namespace ccoh {

namespace {

Poly lv(int i) { return Poly::variable(lambda_var(i)); }

std::vector<GeneratorIndex> generators_up_to(const AlgebraDescriptor& alg,
                                             int level) {
  std::vector<GeneratorIndex> out;
  if (alg.kind == AlgebraKind::Virasoro) {
    out.push_back({0, {1, 1}});
    return out;
  }
  for (int n = 0; n <= level; ++n) {
    for (int j = 1; j <= alg.N; ++j) {
      for (int k = 1; k <= alg.N; ++k) out.push_back({n, {j, k}});
    }
  }
  return out;
}

std::string describe(const AlgebraDescriptor& alg,
                     const std::vector<GeneratorIndex>& gens) {
  std::ostringstream out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i > 0) out << ", ";
    out << generator_to_string(alg, gens[i]);
  }
  return out.str();
}

}  // namespace

bool all_pass(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

// ===== Algebra axioms =======================================================

std::vector<CheckResult> axiom_suite(const AlgebraDescriptor& alg, int level) {
  std::vector<CheckResult> results;
  const auto gens = generators_up_to(alg, level);

  CheckResult skew{"skew-symmetry", true, 0, ""};
  for (const auto& a : gens) {
    for (const auto& b : gens) {
      if (a.n + b.n > level) continue;
      ++skew.cases;
      const auto r = check_skew_symmetry(alg, a, b);
      if (!r.is_zero() && skew.pass) {
        skew.pass = false;
        skew.detail = "pair (" + describe(alg, {a, b}) +
                      "): residual " + r.to_string();
      }
    }
  }
  results.push_back(skew);

  CheckResult jacobi{"jacobi", true, 0, ""};
  for (const auto& a : gens) {
    for (const auto& b : gens) {
      for (const auto& c : gens) {
        if (a.n + b.n + c.n > level) continue;
        ++jacobi.cases;
        const auto r = check_jacobi(alg, a, b, c);
        if (!r.is_zero() && jacobi.pass) {
          jacobi.pass = false;
          jacobi.detail = "triple (" + describe(alg, {a, b, c}) +
                          "): residual " + r.to_string();
        }
      }
    }
  }
  results.push_back(jacobi);

  if (alg.kind == AlgebraKind::GcN) {
    CheckResult central{"zero-bracket-centrality", true, 0, ""};
    for (const auto& a : gens) {
      ++central.cases;
      const auto r = check_zero_bracket_central(alg, a);
      if (!r.is_zero() && central.pass) {
        central.pass = false;
        central.detail = "generator " + generator_to_string(alg, a) +
                         ": residual " + r.to_string();
      }
    }
    results.push_back(central);
  }

  if (alg.extended) {
    CheckResult annih{"central-element-annihilates", true, 0, ""};
    AlgebraElement c_elem;
    c_elem.central = Poly(1);
    const Poly l = lv(1);
    for (const auto& a : gens) {
      ++annih.cases;
      auto r1 = bracket_at(alg, c_elem, gen_element(a), l);
      auto r2 = bracket_at(alg, gen_element(a), c_elem, l);
      if ((!r1.is_zero() || !r2.is_zero()) && annih.pass) {
        annih.pass = false;
        annih.detail = "generator " + generator_to_string(alg, a);
      }
    }
    results.push_back(annih);
  }
  return results;
}

// ===== Module axioms ========================================================

std::vector<CheckResult> module_suite(const ModuleDescriptor& mod, int level) {
  const int N = mod.kind == ModuleKind::FreeRank ? mod.N : 1;
  const auto alg = AlgebraDescriptor::gc(N);
  const auto gens = generators_up_to(alg, level);
  std::vector<ModuleElement> probes;
  for (int i = 0; i < mod.dimension(); ++i) {
    probes.push_back(basis_element(mod, i));
  }
  probes.push_back(basis_element(mod, 0).scaled(Poly::variable(kPartial)));

  CheckResult left{"module-left-derivative", true, 0, ""};
  CheckResult right{"module-right-derivative", true, 0, ""};
  CheckResult jacobi{"module-jacobi", true, 0, ""};
  for (const auto& a : gens) {
    for (const auto& probe : probes) {
      ++left.cases;
      auto rl = check_module_left_derivative(mod, a, probe);
      if (!rl.is_zero() && left.pass) {
        left.pass = false;
        left.detail = "generator " + generator_to_string(alg, a) +
                      " on " + probe.to_string();
      }
      ++right.cases;
      auto rr = check_module_right_derivative(mod, a, probe);
      if (!rr.is_zero() && right.pass) {
        right.pass = false;
        right.detail = "generator " + generator_to_string(alg, a) +
                       " on " + probe.to_string();
      }
      for (const auto& b : gens) {
        if (a.n + b.n > level) continue;
        ++jacobi.cases;
        auto rj = check_module_jacobi(mod, alg, a, b, probe);
        if (!rj.is_zero() && jacobi.pass) {
          jacobi.pass = false;
          jacobi.detail = "pair (" + describe(alg, {a, b}) + ") on " +
                          probe.to_string() + ": residual " + rj.to_string();
        }
      }
    }
  }
  return {left, right, jacobi};
}

// ===== Differentials ========================================================

std::vector<CheckResult> differential_suite(const AlgebraDescriptor& alg,
                                            const ModuleDescriptor& mod, int q,
                                            int level, std::uint64_t seed,
                                            int count) {
  std::mt19937_64 rng(seed);
  CheckResult square{"differential-squares-to-zero", true, 0, ""};
  CheckResult lsquare{"left-differential-squares-to-zero", true, 0, ""};
  const int bound = level + 1;
  const auto targets = enumerate_canonical_tuples(alg.N, q + 2, bound);
  const auto mid_tuples = enumerate_canonical_tuples(alg.N, q + 1, bound);
  for (int i = 0; i < count; ++i) {
    const auto c = random_cochain(rng, alg, mod, q, level, 1);
    const auto dc = differential(c, bound);
    Cochain dlc(q + 1, alg, mod);
    dlc.complete_to_level = bound;
    for (const auto& t : mid_tuples) {
      auto v = leibniz_differential_value(c, t);
      if (!v.is_zero()) dlc.values.emplace(t, std::move(v));
    }
    for (const auto& t : targets) {
      ++square.cases;
      auto dd = differential_value(dc, t);
      if (!dd.is_zero() && square.pass) {
        square.pass = false;
        square.detail = "cochain " + std::to_string(i) + " tuple " +
                        tuple_to_string(t) + ": " + dd.to_string();
      }
      ++lsquare.cases;
      auto ll = leibniz_differential_value(dlc, t);
      if (!ll.is_zero() && lsquare.pass) {
        lsquare.pass = false;
        lsquare.detail = "cochain " + std::to_string(i) + " tuple " +
                         tuple_to_string(t) + ": " + ll.to_string();
      }
    }
  }
  return {square, lsquare};
}

// ===== Homotopy identities ==================================================

CheckResult check_homotopy_degree(const Cochain& c, long p, int bound) {
  CheckResult out{"degree-homotopy", true, 0, ""};
  const auto cp = degree_component(c, p);
  const int q = c.q;
  const auto dcp = differential(cp, bound + 1);
  const auto tau_dcp = tau_degree(dcp);
  Cochain tau_cp;
  if (q >= 1) tau_cp = tau_degree(cp);
  for (const auto& t : enumerate_canonical_tuples(c.alg.N, q, bound)) {
    ++out.cases;
    ModuleElement r = tau_dcp.evaluate(t);
    if (q >= 1) r += differential_value(tau_cp, t);
    r -= cp.evaluate(t).scaled(Poly(Rational(p)));
    if (!r.is_zero() && out.pass) {
      out.pass = false;
      out.detail = "p=" + std::to_string(p) + " tuple " + tuple_to_string(t) +
                   ": residual " + r.to_string();
    }
  }
  return out;
}

CheckResult check_homotopy_weight(const Cochain& c, int bound) {
  CheckResult out{"weight-homotopy", true, 0, ""};
  const int q = c.q;
  const auto dc = differential(c, bound);
  const auto tau_dc = tau_weight(dc);
  Cochain tau_c;
  if (q >= 1) tau_c = tau_weight(c);
  for (const auto& t : enumerate_canonical_tuples(c.alg.N, q, bound)) {
    ++out.cases;
    ModuleElement r = tau_dc.evaluate(t);
    if (q >= 1) r += differential_value(tau_c, t);
    r -= c.evaluate(t).scaled(Poly(Rational(tuple_weight(t))));
    if (!r.is_zero() && out.pass) {
      out.pass = false;
      out.detail = "tuple " + tuple_to_string(t) + ": residual " +
                   r.to_string();
    }
  }
  return out;
}

CheckResult check_homotopy_twisted(const Cochain& c, int bound) {
  CheckResult out{"twisted-homotopy", true, 0, ""};
  if (c.mod.kind != ModuleKind::TwistedScalar || c.mod.a == 0) {
    throw std::invalid_argument(
        "the twisted contraction identity needs a nonzero twist");
  }
  const int q = c.q;
  const Rational a = c.mod.a;
  const auto dc = differential(c, bound + 1);
  const auto tau_dc = tau_twisted(dc);
  Cochain tau_c;
  if (q >= 1) tau_c = tau_twisted(c);
  Poly linear(a);
  for (int i = 1; i <= q; ++i) linear += lv(i);
  for (const auto& t : enumerate_canonical_tuples(c.alg.N, q, bound)) {
    ++out.cases;
    ModuleElement r = tau_dc.evaluate(t);
    if (q >= 1) r += differential_value(tau_c, t);
    r += c.evaluate(t).scaled(Poly(a));
    if (q == 0) continue;  // everything is divisible by the nonzero constant
    for (const auto& comp : r.comps) {
      if (comp.is_zero()) continue;
      auto [quot, rem] = divmod_linear(comp, linear, lambda_var(1));
      (void)quot;
      if (!rem.is_zero() && out.pass) {
        out.pass = false;
        out.detail = "tuple " + tuple_to_string(t) +
                     ": residual not divisible, remainder " + rem.to_string();
      }
    }
  }
  return out;
}

CheckResult check_homotopy_reduced(const Cochain& c, const Rational& scale,
                                   int bound) {
  CheckResult out{"reduced-homotopy", true, 0, ""};
  if (c.mod.kind != ModuleKind::FreeRank) {
    throw std::invalid_argument(
        "the reduced contraction identity applies to free modules");
  }
  const int q = c.q;
  Cochain rd(q + 1, c.alg, c.mod);
  rd.complete_to_level = bound;
  for (const auto& t : enumerate_canonical_tuples(c.alg.N, q + 1, bound)) {
    auto v = reduced_differential_value(c, t);
    if (!v.is_zero()) rd.values.emplace(t, std::move(v));
  }
  const auto tau_rd = tau_reduced(rd);
  Cochain tau_c;
  if (q >= 1) tau_c = tau_reduced(c);
  for (const auto& t : enumerate_canonical_tuples(c.alg.N, q, bound)) {
    ++out.cases;
    ModuleElement r = tau_rd.evaluate(t);
    if (q >= 1) r += reduced_differential_value(tau_c, t);
    r -= c.evaluate(t).scaled(Poly(scale));
    if (!r.is_zero() && out.pass) {
      out.pass = false;
      out.detail = "tuple " + tuple_to_string(t) + ": residual " +
                   r.to_string();
    }
  }
  return out;
}

std::vector<CheckResult> homotopy_suite(const AlgebraDescriptor& alg,
                                        const ModuleDescriptor& mod, int level,
                                        std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> acc;
  auto merge = [&acc](const CheckResult& r) {
    for (auto& existing : acc) {
      if (existing.id == r.id) {
        existing.cases += r.cases;
        if (!r.pass && existing.pass) {
          existing.pass = false;
          existing.detail = r.detail;
        }
        return;
      }
    }
    acc.push_back(r);
  };
  for (int q = 0; q <= 2; ++q) {
    for (int i = 0; i < count; ++i) {
      switch (mod.kind) {
        case ModuleKind::Trivial: {
          const auto c = random_cochain(rng, alg, mod, q, level, 1);
          for (long p = -2; p <= 2; ++p) {
            merge(check_homotopy_degree(c, p, level));
          }
          if (alg.N >= 2) merge(check_homotopy_weight(c, level));
          break;
        }
        case ModuleKind::TwistedScalar: {
          const auto c = random_cochain(rng, alg, mod, q, level, 1);
          merge(check_homotopy_twisted(c, level));
          break;
        }
        case ModuleKind::FreeRank: {
          const auto basic = random_cochain(rng, alg, mod, q, level, 1);
          const auto reduced = delta_reduce(basic);
          merge(check_homotopy_reduced(
              reduced, mod.synthetic_level_zero_scale, level));
          break;
        }
      }
    }
  }
  return acc;
}

}  // namespace ccoh
