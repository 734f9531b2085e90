#pragma once

#include <map>
#include <utility>
#include <vector>

#include "unialg/term.hpp"

namespace unialg {

/// Finite map from variables to terms, applied simultaneously: images are
/// not re-substituted, so {X -> Y, Y -> X} swaps the two variables.
/// Identity bindings are never stored.
class Substitution {
 public:
  Substitution() = default;

  void set(VarId v, Term t) {
    if (t.is_var() && t.var_id() == v) {
      bind_.erase(v);
      return;
    }
    bind_.insert_or_assign(v, std::move(t));
  }

  const Term* lookup(VarId v) const {
    auto it = bind_.find(v);
    return it == bind_.end() ? nullptr : &it->second;
  }

  bool empty() const { return bind_.empty(); }
  std::size_t size() const { return bind_.size(); }
  auto begin() const { return bind_.begin(); }
  auto end() const { return bind_.end(); }

  Term apply(const Term& t) const {
    if (bind_.empty() || t.closed()) return t;
    if (t.is_var()) {
      const Term* img = lookup(t.var_id());
      return img ? *img : t;
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const Term& a : t.args()) {
      Term r = apply(a);
      changed = changed || !r.same_node(a);
      args.push_back(std::move(r));
    }
    if (!changed) return t;
    return Term::app(t.symbol(), std::move(args));
  }

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.bind_ == b.bind_;
  }

 private:
  std::map<VarId, Term> bind_;
};

inline Term apply_substitution(const Substitution& s, const Term& t) {
  return s.apply(t);
}

}  // namespace unialg
