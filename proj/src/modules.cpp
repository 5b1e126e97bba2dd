/// @file modules.cpp
/// @brief Conformal module actions and axiom checkers.

#include "ccoh/modules.hpp"

#include <sstream>
#include <stdexcept>

namespace ccoh {

std::string ModuleDescriptor::to_string() const {
  switch (kind) {
    case ModuleKind::Trivial:
      return "trivial";
    case ModuleKind::TwistedScalar:
      return "twisted:" + rat_to_string(a);
    case ModuleKind::FreeRank:
      return "natural:" + std::to_string(N) + ":" + rat_to_string(alpha);
  }
  return "?";
}

// ===== Elements =============================================================

bool ModuleElement::is_zero() const {
  for (const auto& c : comps) {
    if (!c.is_zero()) return false;
  }
  return true;
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& other) {
  if (comps.size() != other.comps.size()) {
    throw std::invalid_argument("module element dimension mismatch");
  }
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] += other.comps[i];
  return *this;
}

ModuleElement& ModuleElement::operator-=(const ModuleElement& other) {
  if (comps.size() != other.comps.size()) {
    throw std::invalid_argument("module element dimension mismatch");
  }
  for (std::size_t i = 0; i < comps.size(); ++i) comps[i] -= other.comps[i];
  return *this;
}

ModuleElement ModuleElement::operator-() const {
  ModuleElement out(static_cast<int>(comps.size()));
  for (std::size_t i = 0; i < comps.size(); ++i) out.comps[i] = -comps[i];
  return out;
}

ModuleElement ModuleElement::scaled(const Poly& c) const {
  ModuleElement out(static_cast<int>(comps.size()));
  for (std::size_t i = 0; i < comps.size(); ++i) out.comps[i] = c * comps[i];
  return out;
}

ModuleElement ModuleElement::substituted(VarId v, const Poly& value) const {
  ModuleElement out(static_cast<int>(comps.size()));
  for (std::size_t i = 0; i < comps.size(); ++i) {
    out.comps[i] = comps[i].substitute(v, value);
  }
  return out;
}

ModuleElement ModuleElement::substituted(
    const std::map<VarId, Poly>& subs) const {
  ModuleElement out(static_cast<int>(comps.size()));
  for (std::size_t i = 0; i < comps.size(); ++i) {
    out.comps[i] = comps[i].substitute(subs);
  }
  return out;
}

bool ModuleElement::operator==(const ModuleElement& other) const {
  return comps == other.comps;
}

std::string ModuleElement::to_string() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i > 0) out << ", ";
    out << comps[i].to_string();
  }
  out << ")";
  return out.str();
}

ModuleElement zero_element(const ModuleDescriptor& mod) {
  return ModuleElement(mod.dimension());
}

ModuleElement basis_element(const ModuleDescriptor& mod, int i) {
  if (i < 0 || i >= mod.dimension()) {
    throw std::invalid_argument("module basis index out of range");
  }
  ModuleElement out(mod.dimension());
  out.comps[i] = Poly(1);
  return out;
}

// ===== Actions ==============================================================

ModuleElement apply_partial(const ModuleDescriptor& mod,
                            const ModuleElement& v) {
  switch (mod.kind) {
    case ModuleKind::Trivial:
      return zero_element(mod);
    case ModuleKind::TwistedScalar:
      return v.scaled(Poly(mod.a));
    case ModuleKind::FreeRank:
      return v.scaled(Poly::variable(kPartial));
  }
  return zero_element(mod);
}

ModuleElement module_action(const ModuleDescriptor& mod,
                            const AlgebraElement& x, const Poly& nu,
                            const ModuleElement& v) {
  if (static_cast<int>(v.comps.size()) != mod.dimension()) {
    throw std::invalid_argument("module element dimension mismatch");
  }
  ModuleElement out = zero_element(mod);
  if (mod.is_scalar()) return out;

  const Poly d = Poly::variable(kPartial);
  const ModuleElement shifted = v.substituted(kPartial, d + nu);
  const Poly weight = d + nu + Poly(mod.alpha);
  for (const auto& [g, coeff] : x.terms) {
    if (g.label.j < 1 || g.label.j > mod.N || g.label.k < 1 ||
        g.label.k > mod.N) {
      throw std::invalid_argument("generator label out of range for module");
    }
    Poly scale = coeff.substitute(kPartial, -nu) * weight.pow(g.n);
    if (g.n == 0 && mod.synthetic_level_zero_scale != 1) {
      scale = mod.synthetic_level_zero_scale * scale;
    }
    if (scale.is_zero()) continue;
    // Matrix unit: E_{jk} maps component k to component j.
    out.comps[g.label.j - 1] += scale * shifted.comps[g.label.k - 1];
  }
  return out;
}

// ===== Axiom checkers =======================================================

ModuleElement check_module_jacobi(const ModuleDescriptor& mod,
                                  const AlgebraDescriptor& alg,
                                  const GeneratorIndex& a,
                                  const GeneratorIndex& b,
                                  const ModuleElement& v) {
  const Poly l = Poly::variable(kAuxLambda);
  const Poly mu = Poly::variable(kAuxMu);
  const AlgebraElement ea = gen_element(a);
  const AlgebraElement eb = gen_element(b);
  ModuleElement residual =
      module_action(mod, ea, l, module_action(mod, eb, mu, v));
  residual -= module_action(mod, eb, mu, module_action(mod, ea, l, v));
  residual -= module_action(mod, bracket_at(alg, ea, eb, l), l + mu, v);
  return residual;
}

ModuleElement check_module_left_derivative(const ModuleDescriptor& mod,
                                           const GeneratorIndex& a,
                                           const ModuleElement& v) {
  const Poly l = Poly::variable(kAuxLambda);
  AlgebraElement da;
  da.terms[a] = Poly::variable(kPartial);
  ModuleElement residual = module_action(mod, da, l, v);
  residual += module_action(mod, gen_element(a), l, v).scaled(l);
  return residual;
}

ModuleElement check_module_right_derivative(const ModuleDescriptor& mod,
                                            const GeneratorIndex& a,
                                            const ModuleElement& v) {
  const Poly l = Poly::variable(kAuxLambda);
  const AlgebraElement ea = gen_element(a);
  ModuleElement residual = module_action(mod, ea, l, apply_partial(mod, v));
  const ModuleElement base = module_action(mod, ea, l, v);
  residual -= apply_partial(mod, base);
  residual -= base.scaled(l);
  return residual;
}

}  // namespace ccoh
