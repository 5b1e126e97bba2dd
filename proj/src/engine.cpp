#include "ccoh/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

namespace ccoh {

namespace {

using Row = std::map<int, Rational>;

// ===== raw coordinates ======================================================

/// One coordinate of a module-valued assignment: (window tuple, component,
/// monomial of the value polynomial).
struct RawKey {
  int tuple = 0;
  int component = 0;
  Monomial mono;

  bool operator<(const RawKey& o) const {
    if (tuple != o.tuple) return tuple < o.tuple;
    if (component != o.component) return component < o.component;
    return mono < o.mono;
  }
};

class RawIndexer {
 public:
  int intern(const RawKey& k) {
    auto [it, inserted] = index_.emplace(k, static_cast<int>(index_.size()));
    return it->second;
  }
  [[nodiscard]] int size() const { return static_cast<int>(index_.size()); }

 private:
  std::map<RawKey, int> index_;
};

void add_value_coords(RawIndexer& idx, int tuple, const ModuleElement& v,
                      Row* out) {
  for (std::size_t comp = 0; comp < v.comps.size(); ++comp) {
    for (const auto& [mono, coeff] : v.comps[comp].terms()) {
      const int id = idx.intern({tuple, static_cast<int>(comp), mono});
      auto [it, inserted] = out->emplace(id, coeff);
      if (!inserted) {
        it->second += coeff;
        if (it->second == 0) out->erase(it);
      }
    }
  }
}

// ===== deterministic monomial enumeration ===================================

void collect_monomials_rec(int var, int q, int remaining,
                           std::vector<std::pair<VarId, int>>& current,
                           int used, int min_deg,
                           std::vector<Monomial>& out) {
  if (var > q) {
    if (used >= min_deg) out.emplace_back(current);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    if (e > 0) current.emplace_back(lambda_var(var), e);
    collect_monomials_rec(var + 1, q, remaining - e, current, used + e,
                          min_deg, out);
    if (e > 0) current.pop_back();
  }
}

/// All monomials in lambda_1..lambda_q with total degree in [min_deg,
/// max_deg], in a fixed deterministic order.
std::vector<Monomial> collect_monomials(int q, int min_deg, int max_deg) {
  std::vector<Monomial> out;
  if (max_deg < 0 || max_deg < min_deg) return out;
  std::vector<std::pair<VarId, int>> current;
  collect_monomials_rec(1, q, max_deg, current, 0, min_deg, out);
  return out;
}

// ===== window plumbing ======================================================

void check_window_spec(const TruncationSpec& spec) {
  if (spec.alg.kind != AlgebraKind::GcN) {
    throw std::invalid_argument("cohomology windows require a gc_N algebra");
  }
  if (spec.alg.extended) {
    throw std::invalid_argument(
        "cohomology windows are defined over the non-extended algebra");
  }
  if (spec.mod.kind == ModuleKind::FreeRank && !spec.reduced) {
    throw std::invalid_argument("free-module windows are reduced only");
  }
  if (spec.mod.kind == ModuleKind::FreeRank && spec.mod.N != spec.alg.N) {
    throw std::invalid_argument("free-module rank must match the algebra");
  }
  if (spec.level < 0 || spec.margin < 0 || spec.degree_cap < 0) {
    throw std::invalid_argument("window bounds must be non-negative");
  }
}

/// Map stored values into the window's coordinate space: the reduction
/// substitution for scalar reduced windows, identity otherwise (free reduced
/// values are stored reduced already).
ModuleElement window_value(const TruncationSpec& spec, int q,
                           const ModuleElement& v) {
  if (spec.reduced && spec.mod.is_scalar()) {
    return delta_reduce_value(spec.mod, q, v);
  }
  return v;
}

ModuleElement condition_value(const TruncationSpec& spec, const Cochain& c,
                              const TupleKey& t) {
  return spec.reduced ? reduced_differential_value(c, t)
                      : differential_value(c, t);
}

template <typename Fn>
void parallel_for(std::size_t n, const Fn& fn) {
  const int threads = worker_thread_count();
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const std::size_t count =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

/// Evaluates `compute(j, t)` for every basis index and condition tuple and
/// interns the resulting coordinates column by column, batching so that
/// worker threads never touch the indexer.
template <typename Compute>
std::vector<Row> evaluate_columns(std::size_t columns,
                                  const std::vector<TupleKey>& tuples,
                                  RawIndexer& idx, const Compute& compute) {
  std::vector<Row> cols(columns);
  const std::size_t batch = std::max<std::size_t>(
      32, static_cast<std::size_t>(worker_thread_count()) * 8);
  std::vector<std::vector<ModuleElement>> scratch(
      std::min(batch, columns ? columns : 1));
  for (std::size_t start = 0; start < columns; start += batch) {
    const std::size_t end = std::min(columns, start + batch);
    parallel_for(end - start, [&](std::size_t k) {
      std::vector<ModuleElement> vals;
      vals.reserve(tuples.size());
      for (const auto& t : tuples) vals.push_back(compute(start + k, t));
      scratch[k] = std::move(vals);
    });
    for (std::size_t k = 0; start + k < end; ++k) {
      Row& row = cols[start + k];
      for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
        const ModuleElement& v = scratch[k][ti];
        if (!v.is_zero()) {
          add_value_coords(idx, static_cast<int>(ti), v, &row);
        }
      }
      scratch[k].clear();
    }
  }
  return cols;
}

std::vector<std::optional<long>> window_degrees(const ModuleDescriptor& mod,
                                                bool reduced, int level,
                                                int degree_cap) {
  std::vector<std::optional<long>> out;
  if (mod.kind == ModuleKind::Trivial) {
    if (!reduced) {
      out.emplace_back(0L);
    } else {
      for (long p = -level; p <= degree_cap; ++p) out.emplace_back(p);
    }
    return out;
  }
  out.emplace_back(std::nullopt);
  return out;
}

CohomologyReport compute_once(const AlgebraDescriptor& alg,
                              const ModuleDescriptor& mod, bool reduced,
                              int q, int level, int margin, int degree_cap) {
  CohomologyReport rep;
  rep.alg = alg;
  rep.mod = mod;
  rep.reduced = reduced;
  rep.q = q;
  rep.level = level;
  rep.margin = margin;
  for (const auto& deg : window_degrees(mod, reduced, level, degree_cap)) {
    TruncationSpec spec{alg, mod, reduced, q, level, margin, deg, degree_cap};
    WindowResult w = compute_window(spec);
    rep.dim_kernel += w.report.dim_kernel;
    rep.dim_image += w.report.dim_image;
    rep.dim_h += w.report.dim_h;
    rep.windows.push_back(w.report);
  }
  return rep;
}

Cochain weight_component(const Cochain& c, int w) {
  Cochain out(c.q, c.alg, c.mod);
  out.complete_to_level = c.complete_to_level;
  out.ordered = c.ordered;
  for (const auto& [t, v] : c.values) {
    if (tuple_weight(t) == w) out.values.emplace(t, v);
  }
  return out;
}

}  // namespace

// ===== basis enumeration ====================================================

std::vector<Cochain> enumerate_basis(const TruncationSpec& spec) {
  std::vector<Cochain> out;
  if (spec.q < 0) return out;
  check_window_spec(spec);
  const int dim = spec.mod.dimension();
  RawIndexer idx;
  IncrementalSpan span;
  const auto tuples =
      enumerate_canonical_tuples(spec.alg.N, spec.q, spec.level);
  for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
    const TupleKey& t = tuples[ti];
    const int lvl = tuple_level(t);
    int lo = 0;
    int hi = lvl + spec.degree_cap;
    if (spec.degree.has_value()) {
      const long target = *spec.degree + lvl;
      if (target < 0) continue;
      lo = hi = static_cast<int>(target);
    }
    for (const Monomial& mono : collect_monomials(spec.q, lo, hi)) {
      for (int comp = 0; comp < dim; ++comp) {
        Cochain c(spec.q, spec.alg, spec.mod);
        ModuleElement v(dim);
        v.comps[comp] = Poly::term(mono, 1);
        c.add_value(t, v);
        c.symmetrize();
        c.normalize();
        if (c.is_zero()) continue;
        Row r;
        for (const auto& [tt, vv] : c.values) {
          add_value_coords(idx, static_cast<int>(ti), vv, &r);
        }
        if (span.insert(std::move(r))) out.push_back(std::move(c));
      }
    }
  }
  return out;
}

// ===== window computation ===================================================

WindowResult compute_window(const TruncationSpec& spec) {
  check_window_spec(spec);
  WindowResult res;
  res.report.degree = spec.degree;

  const std::vector<Cochain> basis = enumerate_basis(spec);
  res.report.dim_lift_basis = static_cast<int>(basis.size());

  // Closedness conditions on all tuples one slot up, margin levels beyond.
  const auto cond_tuples = enumerate_canonical_tuples(
      spec.alg.N, spec.q + 1, spec.level + spec.margin);
  RawIndexer cond_idx;
  const std::vector<Row> cond_cols = evaluate_columns(
      basis.size(), cond_tuples, cond_idx,
      [&](std::size_t j, const TupleKey& t) {
        return condition_value(spec, basis[j], t);
      });
  SparseRationalMatrix conditions(cond_idx.size(),
                                  static_cast<int>(basis.size()));
  for (std::size_t j = 0; j < cond_cols.size(); ++j) {
    for (const auto& [coord, val] : cond_cols[j]) {
      conditions.row_data[coord].emplace(static_cast<int>(j), val);
    }
  }
  const KernelResult ker = kernel_and_rank(conditions);

  // Raw coordinates of the window's value space.
  const auto window_tuples =
      enumerate_canonical_tuples(spec.alg.N, spec.q, spec.level);
  std::map<TupleKey, int> tuple_id;
  for (std::size_t i = 0; i < window_tuples.size(); ++i) {
    tuple_id.emplace(window_tuples[i], static_cast<int>(i));
  }
  RawIndexer qidx;
  auto value_row = [&](const Cochain& c) {
    Row r;
    for (const auto& [t, v] : c.values) {
      const ModuleElement w = window_value(spec, spec.q, v);
      if (!w.is_zero()) add_value_coords(qidx, tuple_id.at(t), w, &r);
    }
    return r;
  };

  {
    IncrementalSpan value_span;
    for (const Cochain& b : basis) value_span.insert(value_row(b));
    res.report.dim_basis = value_span.dimension();
  }

  std::vector<Cochain> kernel_cochains;
  std::vector<Row> kernel_rows;
  IncrementalSpan kernel_span;
  kernel_cochains.reserve(ker.kernel.size());
  for (const auto& coeffs : ker.kernel) {
    Cochain combo(spec.q, spec.alg, spec.mod);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] != 0) combo += basis[j].scaled(coeffs[j]);
    }
    combo.normalize();
    Row r = value_row(combo);
    kernel_span.insert(r);
    kernel_rows.push_back(std::move(r));
    kernel_cochains.push_back(std::move(combo));
  }
  res.report.dim_kernel = kernel_span.dimension();

  // Coboundaries: differentials of the window one slot below, restricted to
  // the window coordinates. Scalar ungraded sources are enumerated one
  // degree-cap unit wider so that homotopy corrections stay in range.
  IncrementalSpan image_span;
  if (spec.q >= 1) {
    TruncationSpec src = spec;
    src.q = spec.q - 1;
    if (!spec.degree.has_value() && spec.mod.is_scalar()) {
      src.degree_cap = spec.degree_cap + 1;
    }
    const std::vector<Cochain> sources = enumerate_basis(src);
    const std::vector<Row> image_cols = evaluate_columns(
        sources.size(), window_tuples, qidx,
        [&](std::size_t j, const TupleKey& t) {
          return condition_value(spec, sources[j], t);
        });
    for (const Row& r : image_cols) image_span.insert(r);
    IncrementalSpan joint = image_span;
    for (const Row& r : kernel_rows) joint.insert(r);
    res.report.dim_image = image_span.dimension() +
                           res.report.dim_kernel - joint.dimension();
  }
  res.report.dim_h = res.report.dim_kernel - res.report.dim_image;

  // Representatives: kernel combinations growing the image span, in the
  // deterministic kernel order.
  IncrementalSpan rep_span = image_span;
  for (std::size_t i = 0; i < kernel_rows.size(); ++i) {
    if (rep_span.insert(kernel_rows[i])) {
      res.representatives.push_back(kernel_cochains[i]);
    }
  }
  if (static_cast<int>(res.representatives.size()) != res.report.dim_h) {
    throw std::logic_error("window representative count mismatch");
  }
  return res;
}

CohomologyReport compute_cohomology(const AlgebraDescriptor& alg,
                                    const ModuleDescriptor& mod, bool reduced,
                                    int q, int level, int margin,
                                    int degree_cap) {
  CohomologyReport rep =
      compute_once(alg, mod, reduced, q, level, margin, degree_cap);
  if (level >= 1) {
    const CohomologyReport prev =
        compute_once(alg, mod, reduced, q, level - 1, margin, degree_cap);
    rep.stabilized = rep.dim_h == prev.dim_h;
  }
  return rep;
}

// ===== distinguished cocycles ===============================================

Rational second_cocycle_coefficient(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("negative level");
  Rational c = factorial(m) * factorial(n) / factorial(m + n + 1);
  return n % 2 == 0 ? c : -c;
}

Cochain builtin_psi_prime(int N, int level_cap) {
  Cochain c(2, AlgebraDescriptor::gc(N), ModuleDescriptor::trivial());
  c.complete_to_level = level_cap;
  for (const TupleKey& t : enumerate_canonical_tuples(N, 2, level_cap)) {
    const GeneratorIndex& a = t[0];
    const GeneratorIndex& b = t[1];
    if (a.label.k != b.label.j || a.label.j != b.label.k) continue;
    const Rational coeff = second_cocycle_coefficient(a.n, b.n);
    ModuleElement v(1);
    v.comps[0] =
        Poly::term(Monomial({{lambda_var(1), a.n + b.n + 1}}), coeff);
    c.add_value(t, v);
  }
  c.symmetrize();
  c.normalize();
  // The stored basic preimage must reduce back to the defining values.
  for (const auto& [t, v] : c.values) {
    const Rational coeff = second_cocycle_coefficient(t[0].n, t[1].n);
    Poly expected =
        Poly::term(Monomial({{lambda_var(1), t[0].n + t[1].n + 1}}), coeff);
    const ModuleElement red = delta_reduce_value(c.mod, 2, v);
    if (!(red.comps[0] == expected)) {
      throw std::logic_error("second-cocycle preimage failed to reduce");
    }
  }
  return c;
}

Cochain builtin_gamma_bar(int level_cap) {
  Cochain c(3, AlgebraDescriptor::gc(1), ModuleDescriptor::trivial());
  c.complete_to_level = level_cap;
  const MatrixLabel unit{1, 1};
  for (int n = 1; n <= level_cap; ++n) {
    const TupleKey t{{0, unit}, {0, unit}, {n, unit}};
    Poly v = Poly::term(Monomial({{lambda_var(2), n}}), 1) -
             Poly::term(Monomial({{lambda_var(1), n}}), 1);
    if (n % 2 == 0) v = -v;
    ModuleElement val(1);
    val.comps[0] = v;
    c.add_value(t, val);
  }
  c.symmetrize();
  c.normalize();
  return c;
}

Cochain builtin_leibniz_f() {
  Cochain c(2, AlgebraDescriptor::gc(1), ModuleDescriptor::trivial());
  c.ordered = true;
  const MatrixLabel unit{1, 1};
  ModuleElement one(1);
  one.comps[0] = Poly(1);
  c.add_value({{0, unit}, {0, unit}}, one);
  return c;
}

CheckResult verify_cocycle(const Cochain& c, bool reduced,
                           int condition_level, const std::string& id) {
  CheckResult r{id, true, 0, ""};
  for (const TupleKey& t :
       enumerate_canonical_tuples(c.alg.N, c.q + 1, condition_level)) {
    const ModuleElement v =
        reduced ? reduced_differential_value(c, t) : differential_value(c, t);
    ++r.cases;
    if (!v.is_zero() && r.pass) {
      r.pass = false;
      r.detail = "nonzero residual at " + tuple_to_string(t);
    }
  }
  return r;
}

CheckResult check_second_cocycle_recursion(int max_total) {
  CheckResult r{"second-cocycle-recursion", true, 0, ""};
  // Explicit return type: the product must be materialized before the
  // binomial temporaries go out of scope.
  auto rhs = [](int m, int n) -> Rational {
    const Rational sign = (m + n) % 2 == 0 ? 1 : -1;
    return binomial(m, m + n) - sign * binomial(n, m + n);
  };
  auto fail = [&r](int m, int n, const char* what) {
    if (r.pass) {
      r.pass = false;
      r.detail = std::string(what) + " at (" + std::to_string(m) + "," +
                 std::to_string(n) + ")";
    }
  };

  // The closed form satisfies every recursion instance.
  for (int m = 0; m <= max_total; ++m) {
    for (int n = 0; m + n <= max_total; ++n) {
      Rational lhs = 0;
      if (m > 0) lhs += Rational(m) * second_cocycle_coefficient(m - 1, n);
      if (n > 0) lhs += Rational(n) * second_cocycle_coefficient(m, n - 1);
      ++r.cases;
      if (lhs != rhs(m, n)) fail(m, n, "recursion residual");
    }
  }

  // The recursion determines the coefficients: solve forward along total
  // level, seeded only by the (0,0) normalization, and compare.
  std::map<std::pair<int, int>, Rational> solved;
  solved[{0, 0}] = 1;
  for (int total = 1; total <= max_total; ++total) {
    solved[{total, 0}] = rhs(total + 1, 0) / (total + 1);
    for (int n = 1; n <= total; ++n) {
      const int m = total - n;
      solved[{m, n}] =
          (rhs(m + 1, n) - Rational(n) * solved[{m + 1, n - 1}]) /
          Rational(m + 1);
    }
  }
  for (const auto& [mn, value] : solved) {
    ++r.cases;
    if (value != second_cocycle_coefficient(mn.first, mn.second)) {
      fail(mn.first, mn.second, "forward solve mismatch");
    }
  }
  return r;
}

namespace {

/// All ordered tuples (every slot order, not only canonical) of rank-one
/// generators with total level <= bound.
void ordered_tuples_rec(int slots, int remaining, TupleKey& current,
                        std::vector<TupleKey>& out) {
  if (slots == 0) {
    out.push_back(current);
    return;
  }
  for (int n = 0; n <= remaining; ++n) {
    current.push_back({n, {1, 1}});
    ordered_tuples_rec(slots - 1, remaining - n, current, out);
    current.pop_back();
  }
}

std::vector<TupleKey> ordered_rank_one_tuples(int slots, int bound) {
  std::vector<TupleKey> out;
  TupleKey current;
  ordered_tuples_rec(slots, bound, current, out);
  return out;
}

}  // namespace

CheckResult check_third_cocycle_pipeline(int level) {
  CheckResult r{"third-cocycle-pipeline", true, 0, ""};
  const Cochain f = builtin_leibniz_f();
  const Cochain g = builtin_gamma_bar(level);
  auto fail = [&r](const std::string& what) {
    if (r.pass) {
      r.pass = false;
      r.detail = what;
    }
  };

  // Left-ordered differential of f reproduces g on canonical tuples.
  for (const TupleKey& t : enumerate_canonical_tuples(1, 3, level)) {
    ++r.cases;
    ModuleElement lhs = leibniz_differential_value(f, t);
    lhs -= g.evaluate(t);
    if (!lhs.is_zero()) fail("left-ordered mismatch at " + tuple_to_string(t));
  }

  // The square of the left-ordered differential vanishes on ordered tuples.
  Cochain df(3, f.alg, f.mod);
  df.ordered = true;
  df.complete_to_level = level;
  for (const TupleKey& t : ordered_rank_one_tuples(3, level)) {
    const ModuleElement v = leibniz_differential_value(f, t);
    if (!v.is_zero()) df.values.emplace(t, v);
  }
  for (const TupleKey& t : ordered_rank_one_tuples(4, level)) {
    ++r.cases;
    if (!leibniz_differential_value(df, t).is_zero()) {
      fail("left-ordered square nonzero at " + tuple_to_string(t));
    }
  }

  // g itself is closed.
  const CheckResult closed = verify_cocycle(g, false, level, "closed");
  r.cases += closed.cases;
  if (!closed.pass) fail(closed.detail);
  return r;
}

// ===== primitive search and normal forms ====================================

PrimitiveSearch find_primitive(const TruncationSpec& source_spec,
                               const Cochain& target,
                               const std::vector<Cochain>& extras,
                               int match_level) {
  if (source_spec.q != target.q - 1) {
    throw std::invalid_argument("source window must sit one slot below");
  }
  PrimitiveSearch res;
  const std::vector<Cochain> sources = enumerate_basis(source_spec);
  res.sources = static_cast<int>(sources.size());
  res.extras = static_cast<int>(extras.size());

  const auto tuples =
      enumerate_canonical_tuples(source_spec.alg.N, target.q, match_level);
  RawIndexer idx;
  std::vector<Row> cols;
  cols.reserve(sources.size() + extras.size());
  auto value_col = [&](const Cochain& c) {
    Row r;
    for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
      const ModuleElement v =
          window_value(source_spec, target.q, c.evaluate(tuples[ti]));
      if (!v.is_zero()) add_value_coords(idx, static_cast<int>(ti), v, &r);
    }
    return r;
  };
  for (const Cochain& s : sources) {
    Row r;
    for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
      const ModuleElement v = condition_value(source_spec, s, tuples[ti]);
      if (!v.is_zero()) add_value_coords(idx, static_cast<int>(ti), v, &r);
    }
    cols.push_back(std::move(r));
  }
  for (const Cochain& e : extras) cols.push_back(value_col(e));
  const Row target_row = value_col(target);

  res.conditions = idx.size();
  SparseRationalMatrix a(idx.size(),
                         static_cast<int>(sources.size() + extras.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [coord, val] : cols[j]) {
      a.row_data[coord].emplace(static_cast<int>(j), val);
    }
  }
  std::vector<Rational> b(idx.size(), Rational(0));
  for (const auto& [coord, val] : target_row) b[coord] = val;

  const auto x = solve_linear_system(a, b);
  res.feasible = x.has_value();
  if (x.has_value()) {
    res.source_coefficients.assign(x->begin(), x->begin() + res.sources);
    res.extra_coefficients.assign(x->begin() + res.sources, x->end());
    return res;
  }

  // Inconsistent system: materialize a left-null witness y with y^T A = 0 and
  // y.b != 0 from the kernel of the transpose, and re-check both properties
  // exactly before handing it out.
  SparseRationalMatrix t(static_cast<int>(cols.size()), idx.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [coord, val] : cols[j]) t.row_data[j].emplace(coord, val);
  }
  for (const auto& y : kernel_and_rank(t).kernel) {
    Rational pairing(0);
    for (int i = 0; i < static_cast<int>(b.size()); ++i) pairing += y[i] * b[i];
    if (pairing == 0) continue;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      Rational dot(0);
      for (const auto& [coord, val] : cols[j]) dot += y[coord] * val;
      if (dot != 0) {
        throw std::logic_error(
            "find_primitive: left-null witness failed re-verification");
      }
    }
    res.infeasibility_certificate = y;
    return res;
  }
  throw std::logic_error(
      "find_primitive: inconsistent system without a left-null witness");
}

namespace {

Cochain subtract_correction(const Cochain& c, const Cochain& correction,
                            int condition_level) {
  int bound = condition_level;
  if (c.complete_to_level >= 0) bound = std::min(bound, c.complete_to_level);
  Cochain out = c;
  out -= differential(correction, bound);
  out.complete_to_level = bound;
  out.normalize();
  return out;
}

}  // namespace

Cochain normalize_degree_zero(const Cochain& c, int condition_level) {
  const CheckResult closed =
      verify_cocycle(c, false, condition_level, "closed-precondition");
  if (!closed.pass) {
    throw std::invalid_argument("normalize_degree_zero requires a cocycle: " +
                                closed.detail);
  }
  if (c.q == 0) return c;

  std::set<VarId> vars = lambda_set(c.q);
  if (c.mod.kind == ModuleKind::FreeRank) vars.insert(kPartial);
  std::set<long> degrees;
  for (const auto& [t, v] : c.values) {
    const long lvl = tuple_level(t);
    for (const Poly& comp : v.comps) {
      for (const auto& [mono, coeff] : comp.terms()) {
        degrees.insert(mono.degree_in(vars) - lvl);
      }
    }
  }
  Cochain correction(c.q - 1, c.alg, c.mod);
  for (const long p : degrees) {
    if (p == 0) continue;
    const Cochain cp = degree_component(c, p);
    if (cp.is_zero()) continue;
    correction += tau_degree(cp).scaled(Rational(1) / Rational(p));
  }
  correction.normalize();
  return subtract_correction(c, correction, condition_level);
}

Cochain normalize_weight_zero(const Cochain& c, int condition_level) {
  const CheckResult closed =
      verify_cocycle(c, false, condition_level, "closed-precondition");
  if (!closed.pass) {
    throw std::invalid_argument("normalize_weight_zero requires a cocycle: " +
                                closed.detail);
  }
  if (c.q == 0) return c;

  std::set<int> weights;
  for (const auto& [t, v] : c.values) weights.insert(tuple_weight(t));
  Cochain correction(c.q - 1, c.alg, c.mod);
  for (const int w : weights) {
    if (w == 0) continue;
    const Cochain cw = weight_component(c, w);
    if (cw.is_zero()) continue;
    correction += tau_weight(cw).scaled(Rational(1) / Rational(w));
  }
  correction.normalize();
  return subtract_correction(c, correction, condition_level);
}

int worker_thread_count() {
  const char* env = std::getenv("CCOH_THREADS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 1;
  return static_cast<int>(std::min<long>(v, 64));
}

}  // namespace ccoh
