/// @file algebra.cpp
/// @brief Structure constants, bracket extension, and axiom checkers.

#include "ccoh/algebra.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace ccoh {

namespace {

Poly var(VarId v) { return Poly::variable(v); }

}  // namespace

// ===== Validation ===========================================================

void validate_generator(const AlgebraDescriptor& alg, const GeneratorIndex& g) {
  if (alg.kind == AlgebraKind::Virasoro) {
    if (g.n != 0 || g.label.j != 1 || g.label.k != 1) {
      throw std::invalid_argument(
          "the Virasoro algebra has the single generator L = J[0,1,1]");
    }
    return;
  }
  if (g.n < 0) throw std::invalid_argument("generator level must be >= 0");
  if (g.label.j < 1 || g.label.j > alg.N || g.label.k < 1 ||
      g.label.k > alg.N) {
    throw std::invalid_argument("matrix label out of range for N = " +
                                std::to_string(alg.N));
  }
}

// ===== Elements =============================================================

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  for (const auto& [g, c] : other.terms) terms[g] += c;
  central += other.central;
  normalize();
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  for (const auto& [g, c] : other.terms) terms[g] -= c;
  central -= other.central;
  normalize();
  return *this;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement out;
  for (const auto& [g, c] : terms) out.terms[g] = -c;
  out.central = -central;
  return out;
}

AlgebraElement AlgebraElement::scaled(const Poly& c) const {
  AlgebraElement out;
  for (const auto& [g, p] : terms) out.terms[g] = c * p;
  out.central = c * central;
  out.normalize();
  return out;
}

void AlgebraElement::normalize() {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->second.is_zero()) {
      it = terms.erase(it);
    } else {
      ++it;
    }
  }
  if (!central.is_zero()) central = central.substitute(kPartial, Poly{});
}

std::string AlgebraElement::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [g, c] : terms) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.to_string() << ")*J[" << g.n << "," << g.label.j << ","
        << g.label.k << "]";
  }
  if (!central.is_zero()) {
    if (!first) out << " + ";
    out << "(" << central.to_string() << ")*C";
  }
  return out.str();
}

AlgebraElement gen_element(const GeneratorIndex& g) {
  AlgebraElement out;
  out.terms[g] = Poly(1);
  return out;
}

AlgebraElement gen_element(int n, int j, int k) {
  return gen_element(GeneratorIndex{n, {j, k}});
}

AlgebraElement identity_element(const AlgebraDescriptor& alg, int n) {
  if (alg.kind != AlgebraKind::GcN) {
    throw std::invalid_argument("identity_element requires a gc_N descriptor");
  }
  AlgebraElement out;
  for (int j = 1; j <= alg.N; ++j) out.terms[GeneratorIndex{n, {j, j}}] = Poly(1);
  return out;
}

AlgebraElement h_element(const AlgebraDescriptor& alg) {
  if (alg.kind != AlgebraKind::GcN) {
    throw std::invalid_argument("h_element requires a gc_N descriptor");
  }
  AlgebraElement out;
  for (int j = 1; j <= alg.N; ++j) {
    out.terms[GeneratorIndex{0, {j, j}}] = Poly(j);
  }
  return out;
}

// ===== Brackets =============================================================

AlgebraElement bracket_generators(const AlgebraDescriptor& alg,
                                  const GeneratorIndex& a,
                                  const GeneratorIndex& b) {
  validate_generator(alg, a);
  validate_generator(alg, b);
  AlgebraElement out;
  const Poly l = var(kAuxLambda);
  const Poly d = var(kPartial);

  if (alg.kind == AlgebraKind::Virasoro) {
    // [L_l L] = (d + 2l) L.
    out.terms[a] = d + Rational(2) * l;
    return out;
  }

  const int m = a.n;
  const int n = b.n;
  // First sum: products E_{jk} E_{j'k'} = delta_{kj'} E_{jk'}.
  if (a.label.k == b.label.j) {
    const GeneratorIndex base{0, {a.label.j, b.label.k}};
    const Poly shifted = l + d;
    for (int s = 0; s <= m; ++s) {
      GeneratorIndex g{m + n - s, base.label};
      out.terms[g] += binomial(m, s) * shifted.pow(s);
    }
  }
  // Second sum: products E_{j'k'} E_{jk} = delta_{k'j} E_{j'k}.
  if (b.label.k == a.label.j) {
    const GeneratorIndex base{0, {b.label.j, a.label.k}};
    const Poly neg = -l;
    for (int s = 0; s <= n; ++s) {
      GeneratorIndex g{m + n - s, base.label};
      out.terms[g] -= binomial(n, s) * neg.pow(s);
    }
  }
  if (alg.extended) {
    // tr(E_{jk} E_{j'k'}) = delta_{kj'} delta_{jk'}.
    if (a.label.k == b.label.j && a.label.j == b.label.k) {
      Rational c = factorial(m) * factorial(n) / factorial(m + n + 1);
      if (n % 2 != 0) c = -c;
      out.central += c * l.pow(m + n + 1);
    }
  }
  if (alg.corrupt_structure_constants) {
    // Negative control: inject a spurious top-level term so that skew
    // symmetry and the Jacobi identity demonstrably fail.
    out.terms[GeneratorIndex{m + n, {a.label.j, a.label.k}}] += l;
  }
  out.normalize();
  return out;
}

AlgebraElement bracket_at(const AlgebraDescriptor& alg, const AlgebraElement& a,
                          const AlgebraElement& b, const Poly& nu) {
  AlgebraElement out;
  const Poly d = var(kPartial);
  for (const auto& [ga, pa] : a.terms) {
    const Poly left = pa.substitute(kPartial, -nu);
    if (left.is_zero()) continue;
    for (const auto& [gb, pb] : b.terms) {
      const Poly right = pb.substitute(kPartial, nu + d);
      if (right.is_zero()) continue;
      const Poly scale = left * right;
      AlgebraElement base = bracket_generators(alg, ga, gb);
      for (const auto& [g, c] : base.terms) {
        out.terms[g] += scale * c.substitute(kAuxLambda, nu);
      }
      if (!base.central.is_zero()) {
        out.central += scale * base.central.substitute(kAuxLambda, nu);
      }
    }
  }
  // Central coefficients on the inputs bracket to zero and are dropped;
  // normalize() also projects the output central coefficient at d -> 0.
  out.normalize();
  return out;
}

// ===== Axiom checkers =======================================================

AlgebraElement check_skew_symmetry(const AlgebraDescriptor& alg,
                                   const GeneratorIndex& a,
                                   const GeneratorIndex& b) {
  const Poly l = var(kAuxLambda);
  const Poly d = var(kPartial);
  AlgebraElement residual = bracket_at(alg, gen_element(a), gen_element(b), l);
  residual += bracket_at(alg, gen_element(b), gen_element(a), -l - d);
  return residual;
}

AlgebraElement check_jacobi(const AlgebraDescriptor& alg,
                            const GeneratorIndex& a, const GeneratorIndex& b,
                            const GeneratorIndex& c) {
  const Poly l = var(kAuxLambda);
  const Poly mu = var(kAuxMu);
  const AlgebraElement ea = gen_element(a);
  const AlgebraElement eb = gen_element(b);
  const AlgebraElement ec = gen_element(c);
  AlgebraElement residual =
      bracket_at(alg, ea, bracket_at(alg, eb, ec, mu), l);
  residual -= bracket_at(alg, bracket_at(alg, ea, eb, l), ec, l + mu);
  residual -= bracket_at(alg, eb, bracket_at(alg, ea, ec, l), mu);
  return residual;
}

AlgebraElement check_zero_bracket_central(const AlgebraDescriptor& alg,
                                          const GeneratorIndex& a) {
  if (alg.kind != AlgebraKind::GcN) {
    throw std::invalid_argument(
        "check_zero_bracket_central requires a gc_N descriptor");
  }
  const Poly l = var(kAuxLambda);
  const AlgebraElement i0 = identity_element(alg, 0);
  const AlgebraElement ea = gen_element(a);
  AlgebraElement residual = bracket_at(alg, i0, ea, l);
  residual -= bracket_at(alg, ea, i0, l);
  // Evaluate the 0-bracket (l -> 0) and project modulo d-multiples: the
  // centrality of J^0_I under the 0-bracket holds in that quotient.
  AlgebraElement projected;
  for (const auto& [g, c] : residual.terms) {
    projected.terms[g] =
        c.substitute(kAuxLambda, Poly{}).substitute(kPartial, Poly{});
  }
  projected.central = residual.central.substitute(kAuxLambda, Poly{});
  projected.normalize();
  return projected;
}

// ===== Text syntax ==========================================================

std::string generator_to_string(const AlgebraDescriptor& alg,
                                const GeneratorIndex& g) {
  if (alg.kind == AlgebraKind::Virasoro) return "L";
  std::ostringstream out;
  out << "J[" << g.n << "," << g.label.j << "," << g.label.k << "]";
  return out.str();
}

GeneratorIndex generator_from_string(const AlgebraDescriptor& alg,
                                     const std::string& text) {
  auto fail = [&text]() {
    throw std::invalid_argument("bad generator syntax: '" + text +
                                "' (expected J[n,j,k] or L)");
  };
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s == "L") {
    GeneratorIndex g{0, {1, 1}};
    validate_generator(alg, g);
    return g;
  }
  if (s.size() < 4 || s[0] != 'J' || s[1] != '[' || s.back() != ']') fail();
  std::string body = s.substr(2, s.size() - 3);
  std::istringstream in(body);
  long n = 0, j = 0, k = 0;
  char c1 = 0, c2 = 0;
  if (!(in >> n >> c1 >> j >> c2 >> k) || c1 != ',' || c2 != ',' ||
      !in.eof()) {
    fail();
  }
  GeneratorIndex g{static_cast<int>(n),
                   {static_cast<int>(j), static_cast<int>(k)}};
  validate_generator(alg, g);
  return g;
}

}  // namespace ccoh
