/// @file cochain.cpp
/// @brief Skew cochains, the differential, reduction, and contractions.

#include "ccoh/cochain.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ccoh {

namespace {

Poly lv(int i) { return Poly::variable(lambda_var(i)); }

int merge_bounds(int a, int b) {
  if (a < 0) return b;
  if (b < 0) return a;
  return std::min(a, b);
}

/// Parity sign of a permutation given as position values.
int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t a = 0; a < perm.size(); ++a) {
    for (std::size_t b = a + 1; b < perm.size(); ++b) {
      if (perm[a] > perm[b]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

/// All permutations fixing the tuple (products of permutations of equal
/// blocks), as full position maps.
std::vector<std::vector<int>> stabilizer_permutations(const TupleKey& t) {
  const int q = static_cast<int>(t.size());
  std::vector<std::pair<int, int>> blocks;
  int start = 0;
  for (int i = 1; i <= q; ++i) {
    if (i == q || !(t[i] == t[start])) {
      blocks.emplace_back(start, i);
      start = i;
    }
  }
  std::vector<std::vector<int>> result;
  std::vector<std::vector<int>> segs;
  for (auto [b, e] : blocks) {
    std::vector<int> seg(e - b);
    std::iota(seg.begin(), seg.end(), b);
    segs.push_back(seg);
  }
  auto emit = [&]() {
    std::vector<int> p(q);
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const int b = blocks[bi].first;
      for (std::size_t t2 = 0; t2 < segs[bi].size(); ++t2) {
        p[b + static_cast<int>(t2)] = segs[bi][t2];
      }
    }
    result.push_back(std::move(p));
  };
  // Recursive product of block permutations.
  std::function<void(std::size_t)> rec = [&](std::size_t bi) {
    if (bi == segs.size()) {
      emit();
      return;
    }
    std::vector<int> seg = segs[bi];
    std::sort(seg.begin(), seg.end());
    do {
      segs[bi] = seg;
      rec(bi + 1);
    } while (std::next_permutation(seg.begin(), seg.end()));
  };
  rec(0);
  return result;
}

}  // namespace

// ===== Tuples ===============================================================

int tuple_level(const TupleKey& t) {
  int sum = 0;
  for (const auto& g : t) sum += g.n;
  return sum;
}

int tuple_weight(const TupleKey& t) {
  int sum = 0;
  for (const auto& g : t) sum += g.label.k - g.label.j;
  return sum;
}

bool tuple_is_canonical(const TupleKey& t) {
  return std::is_sorted(t.begin(), t.end());
}

std::string tuple_to_string(const TupleKey& t) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out << ", ";
    out << "J[" << t[i].n << "," << t[i].label.j << "," << t[i].label.k << "]";
  }
  out << ")";
  return out.str();
}

std::vector<TupleKey> enumerate_canonical_tuples(int N, int q,
                                                 int max_total_level) {
  std::vector<TupleKey> out;
  TupleKey current;
  std::function<void(int)> rec = [&](int budget) {
    if (static_cast<int>(current.size()) == q) {
      out.push_back(current);
      return;
    }
    const GeneratorIndex floor_gen =
        current.empty() ? GeneratorIndex{0, {1, 1}} : current.back();
    for (int n = 0; n <= budget; ++n) {
      for (int j = 1; j <= N; ++j) {
        for (int k = 1; k <= N; ++k) {
          const GeneratorIndex g{n, {j, k}};
          if (g < floor_gen) continue;
          current.push_back(g);
          rec(budget - n);
          current.pop_back();
        }
      }
    }
  };
  rec(max_total_level);
  return out;
}

// ===== Cochain basics =======================================================

bool Cochain::is_zero() const {
  for (const auto& [t, v] : values) {
    if (!v.is_zero()) return false;
  }
  return true;
}

void Cochain::add_value(const TupleKey& tuple, const ModuleElement& v) {
  if (static_cast<int>(tuple.size()) != q) {
    throw std::invalid_argument("tuple arity does not match cochain degree");
  }
  if (!ordered && !tuple_is_canonical(tuple)) {
    throw std::invalid_argument("values must be assigned on canonical tuples");
  }
  auto it = values.find(tuple);
  if (it == values.end()) {
    values.emplace(tuple, v);
  } else {
    it->second += v;
  }
}

void Cochain::symmetrize() {
  if (ordered) return;
  for (auto& [t, v] : values) {
    const auto stab = stabilizer_permutations(t);
    if (stab.size() <= 1) continue;
    ModuleElement acc(static_cast<int>(v.comps.size()));
    for (const auto& perm : stab) {
      std::map<VarId, Poly> subs;
      for (int k = 0; k < q; ++k) {
        if (perm[k] != k) subs[lambda_var(k + 1)] = lv(perm[k] + 1);
      }
      ModuleElement image = subs.empty() ? v : v.substituted(subs);
      if (permutation_sign(perm) > 0) {
        acc += image;
      } else {
        acc -= image;
      }
    }
    v = acc.scaled(rat(1, static_cast<long>(stab.size())));
  }
  normalize();
}

void Cochain::normalize() {
  for (auto it = values.begin(); it != values.end();) {
    if (it->second.is_zero()) {
      it = values.erase(it);
    } else {
      ++it;
    }
  }
}

ModuleElement Cochain::evaluate(const TupleKey& tuple,
                                const std::vector<Poly>& lambda_args) const {
  if (static_cast<int>(tuple.size()) != q ||
      static_cast<int>(lambda_args.size()) != q) {
    throw std::invalid_argument("evaluation arity mismatch");
  }
  if (ordered) {
    auto it = values.find(tuple);
    if (it == values.end()) return zero_element(mod);
    std::map<VarId, Poly> subs;
    for (int k = 0; k < q; ++k) subs[lambda_var(k + 1)] = lambda_args[k];
    return subs.empty() ? it->second : it->second.substituted(subs);
  }
  if (complete_to_level >= 0 && tuple_level(tuple) > complete_to_level) {
    throw std::logic_error(
        "cochain evaluated beyond its materialized level bound");
  }
  std::vector<int> idx(q);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return tuple[a] < tuple[b]; });
  TupleKey key;
  key.reserve(q);
  for (int k = 0; k < q; ++k) key.push_back(tuple[idx[k]]);
  auto it = values.find(key);
  if (it == values.end()) return zero_element(mod);
  std::map<VarId, Poly> subs;
  for (int k = 0; k < q; ++k) subs[lambda_var(k + 1)] = lambda_args[idx[k]];
  ModuleElement value = subs.empty() ? it->second : it->second.substituted(subs);
  return permutation_sign(idx) > 0 ? value : -value;
}

ModuleElement Cochain::evaluate(const TupleKey& tuple) const {
  return evaluate(tuple, identity_args(q));
}

Cochain& Cochain::operator+=(const Cochain& other) {
  if (q != other.q || ordered != other.ordered) {
    throw std::invalid_argument("cochain shape mismatch");
  }
  for (const auto& [t, v] : other.values) add_value(t, v);
  complete_to_level = merge_bounds(complete_to_level, other.complete_to_level);
  normalize();
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& other) {
  if (q != other.q || ordered != other.ordered) {
    throw std::invalid_argument("cochain shape mismatch");
  }
  for (const auto& [t, v] : other.values) add_value(t, -v);
  complete_to_level = merge_bounds(complete_to_level, other.complete_to_level);
  normalize();
  return *this;
}

Cochain Cochain::scaled(const Rational& c) const {
  Cochain out(q, alg, mod);
  out.complete_to_level = complete_to_level;
  out.ordered = ordered;
  const Poly cp(c);
  for (const auto& [t, v] : values) out.values[t] = v.scaled(cp);
  out.normalize();
  return out;
}

std::vector<Poly> identity_args(int q) {
  std::vector<Poly> args;
  args.reserve(q);
  for (int i = 1; i <= q; ++i) args.push_back(lv(i));
  return args;
}

// ===== Differentials ========================================================

ModuleElement differential_value(const Cochain& c, const TupleKey& tuple) {
  const int q1 = static_cast<int>(tuple.size());
  if (q1 != c.q + 1) {
    throw std::invalid_argument("differential tuple arity mismatch");
  }
  ModuleElement out = zero_element(c.mod);
  // Slot actions: vanish identically on scalar modules.
  if (!c.mod.is_scalar()) {
    for (int i = 0; i < q1; ++i) {
      TupleKey rest;
      std::vector<Poly> args;
      for (int k = 0; k < q1; ++k) {
        if (k == i) continue;
        rest.push_back(tuple[k]);
        args.push_back(lv(k + 1));
      }
      const ModuleElement val = c.evaluate(rest, args);
      if (val.is_zero()) continue;
      const ModuleElement acted =
          module_action(c.mod, gen_element(tuple[i]), lv(i + 1), val);
      if (i % 2 == 0) {
        out += acted;
      } else {
        out -= acted;
      }
    }
  }
  // Bracket contractions: the merged slot leads and carries l_i + l_j;
  // derivative coefficients of the bracket contract to -(l_i + l_j).
  for (int i = 0; i < q1; ++i) {
    for (int j = i + 1; j < q1; ++j) {
      const AlgebraElement br = bracket_generators(c.alg, tuple[i], tuple[j]);
      if (br.terms.empty()) continue;
      const Poly nu = lv(i + 1) + lv(j + 1);
      TupleKey rest;
      std::vector<Poly> args;
      rest.push_back(GeneratorIndex{});  // placeholder for the merged slot
      args.push_back(nu);
      for (int k = 0; k < q1; ++k) {
        if (k == i || k == j) continue;
        rest.push_back(tuple[k]);
        args.push_back(lv(k + 1));
      }
      // The bracket's own variable is the slot variable l_i; the merged
      // slot argument (and the derivative contraction) is l_i + l_j.
      const std::map<VarId, Poly> contract{{kAuxLambda, lv(i + 1)},
                                           {kPartial, -nu}};
      for (const auto& [g, coeff] : br.terms) {
        const Poly scale = coeff.substitute(contract);
        if (scale.is_zero()) continue;
        rest[0] = g;
        const ModuleElement val = c.evaluate(rest, args);
        if (val.is_zero()) continue;
        if ((i + j) % 2 == 0) {
          out += val.scaled(scale);
        } else {
          out -= val.scaled(scale);
        }
      }
    }
  }
  return out;
}

ModuleElement leibniz_differential_value(const Cochain& c,
                                         const TupleKey& tuple) {
  const int q1 = static_cast<int>(tuple.size());
  if (q1 != c.q + 1) {
    throw std::invalid_argument("differential tuple arity mismatch");
  }
  ModuleElement out = zero_element(c.mod);
  if (!c.mod.is_scalar()) {
    for (int i = 0; i < q1; ++i) {
      TupleKey rest;
      std::vector<Poly> args;
      for (int k = 0; k < q1; ++k) {
        if (k == i) continue;
        rest.push_back(tuple[k]);
        args.push_back(lv(k + 1));
      }
      const ModuleElement val = c.evaluate(rest, args);
      if (val.is_zero()) continue;
      const ModuleElement acted =
          module_action(c.mod, gen_element(tuple[i]), lv(i + 1), val);
      if (i % 2 == 0) {
        out += acted;
      } else {
        out -= acted;
      }
    }
  }
  // The merged bracket replaces slot j in place; slot i is omitted.
  for (int i = 0; i < q1; ++i) {
    for (int j = i + 1; j < q1; ++j) {
      const AlgebraElement br = bracket_generators(c.alg, tuple[i], tuple[j]);
      if (br.terms.empty()) continue;
      const Poly nu = lv(i + 1) + lv(j + 1);
      const std::map<VarId, Poly> contract{{kAuxLambda, lv(i + 1)},
                                           {kPartial, -nu}};
      for (const auto& [g, coeff] : br.terms) {
        const Poly scale = coeff.substitute(contract);
        if (scale.is_zero()) continue;
        TupleKey rest;
        std::vector<Poly> args;
        for (int k = 0; k < q1; ++k) {
          if (k == i) continue;
          if (k == j) {
            rest.push_back(g);
            args.push_back(nu);
          } else {
            rest.push_back(tuple[k]);
            args.push_back(lv(k + 1));
          }
        }
        const ModuleElement val = c.evaluate(rest, args);
        if (val.is_zero()) continue;
        // Sign (-1)^i with slots counted from one.
        if (i % 2 == 0) {
          out -= val.scaled(scale);
        } else {
          out += val.scaled(scale);
        }
      }
    }
  }
  return out;
}

Cochain differential(const Cochain& c, int level_bound) {
  Cochain out(c.q + 1, c.alg, c.mod);
  out.complete_to_level = level_bound;
  for (const auto& t :
       enumerate_canonical_tuples(c.alg.N, c.q + 1, level_bound)) {
    ModuleElement v = differential_value(c, t);
    if (!v.is_zero()) out.values.emplace(t, std::move(v));
  }
  return out;
}

// ===== Derivative action, reduction, grading ================================

Cochain partial_action(const Cochain& c) {
  Cochain out(c.q, c.alg, c.mod);
  out.complete_to_level = c.complete_to_level;
  out.ordered = c.ordered;
  Poly lam_sum;
  for (int i = 1; i <= c.q; ++i) lam_sum += lv(i);
  for (const auto& [t, v] : c.values) {
    ModuleElement w = apply_partial(c.mod, v);
    w += v.scaled(lam_sum);
    if (!w.is_zero()) out.values.emplace(t, std::move(w));
  }
  return out;
}

ModuleElement delta_reduce_value(const ModuleDescriptor& mod, int q,
                                 const ModuleElement& v) {
  if (mod.kind == ModuleKind::FreeRank) {
    Poly target;
    for (int i = 1; i <= q; ++i) target -= lv(i);
    return v.substituted(kPartial, target);
  }
  const Rational a = mod.kind == ModuleKind::TwistedScalar ? mod.a : 0;
  if (q == 0) {
    // A twisted 0-cochain is a derivative multiple; it reduces to zero.
    return a != 0 ? ModuleElement(static_cast<int>(v.comps.size())) : v;
  }
  Poly target(-a);
  for (int i = 1; i < q; ++i) target -= lv(i);
  return v.substituted(lambda_var(q), target);
}

Cochain delta_reduce(const Cochain& c) {
  Cochain out(c.q, c.alg, c.mod);
  out.complete_to_level = c.complete_to_level;
  out.ordered = c.ordered;
  for (const auto& [t, v] : c.values) {
    ModuleElement w = delta_reduce_value(c.mod, c.q, v);
    if (!w.is_zero()) out.values.emplace(t, std::move(w));
  }
  return out;
}

ModuleElement reduced_differential_value(const Cochain& c,
                                         const TupleKey& tuple) {
  return delta_reduce_value(c.mod, c.q + 1, differential_value(c, tuple));
}

Cochain degree_component(const Cochain& c, long p) {
  std::set<VarId> vars = lambda_set(c.q);
  if (c.mod.kind == ModuleKind::FreeRank) vars.insert(kPartial);
  Cochain out(c.q, c.alg, c.mod);
  out.complete_to_level = c.complete_to_level;
  out.ordered = c.ordered;
  for (const auto& [t, v] : c.values) {
    const long target = p + tuple_level(t);
    if (target < 0) continue;
    ModuleElement w(static_cast<int>(v.comps.size()));
    bool nonzero = false;
    for (std::size_t i = 0; i < v.comps.size(); ++i) {
      w.comps[i] = v.comps[i].homogeneous_component(target, vars);
      nonzero = nonzero || !w.comps[i].is_zero();
    }
    if (nonzero) out.values.emplace(t, std::move(w));
  }
  return out;
}

// ===== Contractions =========================================================

Cochain contract_last(const Cochain& c, const AlgebraElement& last,
                      ContractionKind kind) {
  if (c.q < 1) {
    throw std::invalid_argument("contraction requires degree >= 1");
  }
  if (c.ordered) {
    throw std::invalid_argument("contraction requires a skew cochain");
  }
  int max_last_level = 0;
  for (const auto& [g, coeff] : last.terms) {
    if (coeff.degree() > 0) {
      throw std::invalid_argument(
          "contraction element must have constant coefficients");
    }
    max_last_level = std::max(max_last_level, g.n);
  }
  const int q = c.q;
  Cochain out(q - 1, c.alg, c.mod);
  out.complete_to_level = c.complete_to_level < 0
                              ? -1
                              : c.complete_to_level - max_last_level;
  std::set<TupleKey> candidates;
  for (const auto& [t, v] : c.values) {
    for (const auto& [g, coeff] : last.terms) {
      auto it = std::find(t.begin(), t.end(), g);
      if (it == t.end()) continue;
      TupleKey s;
      s.reserve(q - 1);
      for (auto jt = t.begin(); jt != t.end(); ++jt) {
        if (jt != it) s.push_back(*jt);
      }
      candidates.insert(std::move(s));
    }
  }
  const auto args = identity_args(q);
  for (const auto& s : candidates) {
    ModuleElement acc = zero_element(c.mod);
    for (const auto& [g, coeff] : last.terms) {
      TupleKey ext = s;
      ext.push_back(g);
      ModuleElement val = c.evaluate(ext, args);
      if (val.is_zero()) continue;
      ModuleElement extracted(static_cast<int>(val.comps.size()));
      for (std::size_t i = 0; i < val.comps.size(); ++i) {
        extracted.comps[i] =
            kind == ContractionKind::CoeffLambdaOne
                ? val.comps[i].coefficient_of(lambda_var(q), 1)
                : val.comps[i].substitute(lambda_var(q), Poly{});
      }
      acc += extracted.scaled(coeff);
    }
    if ((q - 1) % 2 != 0) acc = -acc;
    if (!acc.is_zero()) out.values.emplace(s, std::move(acc));
  }
  return out;
}

Cochain tau_degree(const Cochain& c) {
  return contract_last(c, identity_element(c.alg, 1),
                       ContractionKind::CoeffLambdaOne);
}

Cochain tau_weight(const Cochain& c) {
  return contract_last(c, h_element(c.alg), ContractionKind::AtLambdaZero);
}

Cochain tau_twisted(const Cochain& c) {
  return contract_last(c, identity_element(c.alg, 1),
                       ContractionKind::AtLambdaZero);
}

Cochain tau_reduced(const Cochain& c) {
  return contract_last(c, identity_element(c.alg, 0),
                       ContractionKind::AtLambdaZero);
}

// ===== Random cochains ======================================================

Cochain random_cochain(std::mt19937_64& rng, const AlgebraDescriptor& alg,
                       const ModuleDescriptor& mod, int q, int max_level,
                       int extra_degree) {
  Cochain out(q, alg, mod);
  std::vector<VarId> vars;
  for (int i = 1; i <= q; ++i) vars.push_back(lambda_var(i));
  if (mod.kind == ModuleKind::FreeRank) vars.push_back(kPartial);
  for (const auto& t : enumerate_canonical_tuples(alg.N, q, max_level)) {
    const int cap = tuple_level(t) + extra_degree;
    ModuleElement v(mod.dimension());
    for (auto& comp : v.comps) {
      for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<std::pair<VarId, int>> factors;
        int total = 0;
        for (VarId var : vars) {
          const int e = cap > 0 ? static_cast<int>(rng() % (cap + 1)) : 0;
          if (e > 0) factors.emplace_back(var, e);
          total += e;
        }
        if (total > cap) continue;
        const long a = static_cast<long>(rng() % 7) - 3;
        if (a == 0) continue;
        comp += Poly::term(Monomial(factors), Rational(a));
      }
    }
    if (!v.is_zero()) out.values.emplace(t, std::move(v));
  }
  out.symmetrize();
  return out;
}

}  // namespace ccoh
