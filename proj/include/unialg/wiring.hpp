#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "unialg/coeff.hpp"
#include "unialg/flow.hpp"
#include "unialg/term.hpp"

namespace unialg {

/// Closed terms with exact complex-rational weights; zero weights are
/// never stored.
using TermVector = std::map<Term, Coeff, TermLess>;

/// Finite weighted sum of flows with exact complex-rational coefficients.
/// Zero coefficients are never stored, so the zero wiring is the empty sum.
class Wiring {
 public:
  Wiring() = default;

  static Wiring zero() { return Wiring(); }

  static Wiring single(const Flow& f, const Coeff& c = Coeff::one()) {
    Wiring w;
    w.add(f, c);
    return w;
  }

  /// The identity flow with coefficient one.
  static Wiring identity() { return single(Flow::identity()); }

  void add(const Flow& f, const Coeff& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(f, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  const Coeff* coefficient(const Flow& f) const {
    auto it = terms_.find(f);
    return it == terms_.end() ? nullptr : &it->second;
  }

  friend bool operator==(const Wiring& a, const Wiring& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const Wiring& a, const Wiring& b) { return !(a == b); }

 private:
  std::map<Flow, Coeff> terms_;
};

inline Wiring wiring_add(const Wiring& a, const Wiring& b) {
  Wiring out = a;
  for (const auto& [f, c] : b) out.add(f, c);
  return out;
}

inline Wiring wiring_scale(const Coeff& k, const Wiring& w) {
  Wiring out;
  for (const auto& [f, c] : w) out.add(f, k * c);
  return out;
}

/// Bilinear extension of the flow product; annihilating pairs contribute
/// nothing, and coefficients of colliding product flows accumulate.
inline Wiring wiring_mul(const Wiring& a, const Wiring& b) {
  Wiring out;
  for (const auto& [f, cf] : a)
    for (const auto& [g, cg] : b)
      if (std::optional<Flow> p = flow_product(f, g)) out.add(*p, cf * cg);
  return out;
}

/// Antilinear adjoint: flips every flow and conjugates coefficients.
inline Wiring wiring_dagger(const Wiring& w) {
  Wiring out;
  for (const auto& [f, c] : w) out.add(flow_dagger(f), c.conj());
  return out;
}

inline Wiring wiring_tensor(const Wiring& a, const Wiring& b) {
  Wiring out;
  for (const auto& [f, cf] : a)
    for (const auto& [g, cg] : b) out.add(flow_tensor(f, g), cf * cg);
  return out;
}

/// Linear action on weighted closed terms.
inline TermVector wiring_action(const Wiring& w, const TermVector& v) {
  TermVector out;
  for (const auto& [f, cf] : w)
    for (const auto& [t, ct] : v)
      if (std::optional<Term> r = flow_action(f, t)) {
        Coeff& acc = out[*r];
        acc += cf * ct;
        if (acc.is_zero()) out.erase(*r);
      }
  return out;
}

inline TermVector wiring_action(const Wiring& w, const Term& t) {
  TermVector v;
  v.emplace(t, Coeff::one());
  return wiring_action(w, v);
}

/// Every coefficient is exactly one.
inline bool is_concrete(const Wiring& w) {
  for (const auto& [f, c] : w)
    if (!c.is_one()) return false;
  return true;
}

/// Concrete, with pairwise non-matchable heads and pairwise non-matchable
/// tails; such a wiring acts as a partial injection on closed terms.
inline bool is_isometric(const Wiring& w) {
  if (!is_concrete(w)) return false;
  std::vector<const Flow*> flows;
  for (const auto& [f, c] : w) flows.push_back(&f);
  for (std::size_t i = 0; i < flows.size(); ++i)
    for (std::size_t j = i + 1; j < flows.size(); ++j) {
      if (matchable(flows[i]->head(), flows[j]->head())) return false;
      if (matchable(flows[i]->tail(), flows[j]->tail())) return false;
    }
  return true;
}

/// Least k <= bound with F^k = 0, or absent.  Powers are computed exactly;
/// if some power recurs the sequence is periodic and never reaches zero,
/// so the search stops early.
inline std::optional<unsigned> nilpotent_within(const Wiring& w, unsigned bound) {
  std::vector<Wiring> history;
  Wiring p = w;
  for (unsigned k = 1; k <= bound; ++k) {
    if (p.is_zero()) return k;
    for (const Wiring& prev : history)
      if (prev == p) return std::nullopt;
    history.push_back(p);
    if (k < bound) p = wiring_mul(p, w);
  }
  return std::nullopt;
}

}  // namespace unialg
