#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "unialg/error.hpp"
#include "unialg/subst.hpp"
#include "unialg/term.hpp"

namespace unialg {

namespace detail {

// Chase top-level variable bindings.
inline Term walk(Term t, const std::map<VarId, Term>& bind) {
  while (t.is_var()) {
    auto it = bind.find(t.var_id());
    if (it == bind.end()) break;
    t = it->second;
  }
  return t;
}

// Occurs check through the triangular binding map.
inline bool occurs_bound(VarId v, const Term& t,
                         const std::map<VarId, Term>& bind) {
  if (t.is_var()) {
    Term r = walk(t, bind);
    if (r.is_var()) return r.var_id() == v;
    return occurs_bound(v, r, bind);
  }
  for (const Term& a : t.args())
    if (occurs_bound(v, a, bind)) return true;
  return false;
}

// Fully resolve a term through the binding map.
inline Term resolve(const Term& t, const std::map<VarId, Term>& bind) {
  Term r = walk(t, bind);
  if (r.is_var() || r.closed()) return r;
  std::vector<Term> args;
  args.reserve(r.args().size());
  bool changed = false;
  for (const Term& a : r.args()) {
    Term x = resolve(a, bind);
    changed = changed || !x.same_node(a);
    args.push_back(std::move(x));
  }
  if (!changed) return r;
  return Term::app(r.symbol(), std::move(args));
}

inline void renumber(const Term& t, std::map<VarId, VarId>& ren,
                     VarId& next) {
  if (t.is_var()) {
    if (ren.find(t.var_id()) == ren.end()) ren.emplace(t.var_id(), next++);
    return;
  }
  for (const Term& a : t.args()) renumber(a, ren, next);
}

inline Term apply_renaming(const Term& t, const std::map<VarId, VarId>& ren) {
  if (t.closed()) return t;
  if (t.is_var()) return Term::var(ren.at(t.var_id()));
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(apply_renaming(a, ren));
  return Term::app(t.symbol(), std::move(args));
}

}  // namespace detail

/// Most general unifier of `t` and `u`, or absent when none exists.
/// The result is idempotent, binds only variables of the inputs, and
/// contains no identity bindings.
inline std::optional<Substitution> mgu(const Term& t, const Term& u) {
  std::map<VarId, Term> bind;
  std::vector<std::pair<Term, Term>> todo{{t, u}};
  while (!todo.empty()) {
    auto [a, b] = todo.back();
    todo.pop_back();
    a = detail::walk(a, bind);
    b = detail::walk(b, bind);
    if (a.is_var() && b.is_var() && a.var_id() == b.var_id()) continue;
    if (a.is_var()) {
      if (detail::occurs_bound(a.var_id(), b, bind)) return std::nullopt;
      bind.emplace(a.var_id(), b);
      continue;
    }
    if (b.is_var()) {
      if (detail::occurs_bound(b.var_id(), a, bind)) return std::nullopt;
      bind.emplace(b.var_id(), a);
      continue;
    }
    if (a.symbol() != b.symbol() || a.args().size() != b.args().size())
      return std::nullopt;
    for (std::size_t i = 0; i < a.args().size(); ++i)
      todo.emplace_back(a.args()[i], b.args()[i]);
  }
  Substitution out;
  for (const auto& [v, img] : bind) out.set(v, detail::resolve(img, bind));
  return out;
}

/// Deterministically renames both terms so their variable sets are disjoint:
/// `t`'s variables become V1.. in order of first occurrence, `u`'s continue
/// the numbering.  Shapes are preserved.
inline std::pair<Term, Term> rename_apart(const Term& t, const Term& u) {
  std::map<VarId, VarId> r1, r2;
  VarId next = 0;
  detail::renumber(t, r1, next);
  detail::renumber(u, r2, next);
  return {detail::apply_renaming(t, r1), detail::apply_renaming(u, r2)};
}

/// Canonical variable numbering for the pair: variables are renamed to
/// V1, V2, ... in order of first occurrence, traversing `u` depth-first
/// left-to-right first, then `t`.  Shared variables stay shared, so two
/// pairs equal up to renaming canonicalize identically.
inline std::pair<Term, Term> canonical_variables(const Term& t, const Term& u) {
  std::map<VarId, VarId> ren;
  VarId next = 0;
  detail::renumber(u, ren, next);
  detail::renumber(t, ren, next);
  return {detail::apply_renaming(t, ren), detail::apply_renaming(u, ren)};
}

/// True when some common instance of `t` and `u` exists, i.e. the two
/// unify after being renamed apart.
inline bool matchable(const Term& t, const Term& u) {
  auto [a, b] = rename_apart(t, u);
  return mgu(a, b).has_value();
}

/// One-sided matching of `pattern` against a closed term: the returned
/// substitution sends `pattern` to `t` exactly.  No occurs check is needed.
/// Passing a non-closed `t` is a usage fault.
inline std::optional<Substitution> match_closed(const Term& pattern,
                                                const Term& t) {
  if (!t.closed()) throw Error("match_closed: target term is not closed");
  Substitution out;
  std::vector<std::pair<Term, Term>> todo{{pattern, t}};
  while (!todo.empty()) {
    auto [p, v] = todo.back();
    todo.pop_back();
    if (p.is_var()) {
      if (const Term* old = out.lookup(p.var_id())) {
        if (*old != v) return std::nullopt;
      } else {
        out.set(p.var_id(), v);
      }
      continue;
    }
    if (v.is_var() || p.symbol() != v.symbol() ||
        p.args().size() != v.args().size())
      return std::nullopt;
    for (std::size_t i = 0; i < p.args().size(); ++i)
      todo.emplace_back(p.args()[i], v.args()[i]);
  }
  return out;
}

}  // namespace unialg
