#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "unialg/symbols.hpp"

namespace unialg {

class Term;

namespace detail {
struct TermNode {
  bool is_var;
  bool closed;
  VarId var = 0;
  SymbolId sym = 0;
  std::vector<Term> args;
};
}  // namespace detail

/// Immutable first-order term: a variable or a symbol application.
/// Values share subtrees freely; all operations are pure.
class Term {
 public:
  Term() : Term(var(0)) {}

  static Term var(VarId v) {
    auto n = std::make_shared<detail::TermNode>();
    n->is_var = true;
    n->closed = false;
    n->var = v;
    return Term(std::move(n));
  }

  static Term app(SymbolId sym, std::vector<Term> args = {}) {
    auto n = std::make_shared<detail::TermNode>();
    n->is_var = false;
    n->closed = std::all_of(args.begin(), args.end(),
                            [](const Term& t) { return t.closed(); });
    n->sym = sym;
    n->args = std::move(args);
    return Term(std::move(n));
  }

  /// The distinguished constant "*".
  static Term star() { return app(kStarSym); }

  /// The distinguished binary product, "l . r".
  static Term pair(Term l, Term r) {
    return app(kProductSym, {std::move(l), std::move(r)});
  }

  bool is_var() const { return node_->is_var; }
  bool is_app() const { return !node_->is_var; }
  bool closed() const { return node_->closed; }
  VarId var_id() const { return node_->var; }
  SymbolId symbol() const { return node_->sym; }
  const std::vector<Term>& args() const { return node_->args; }
  bool same_node(const Term& o) const { return node_ == o.node_; }

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> n)
      : node_(std::move(n)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

/// Total structural order: variables before applications; variables by id,
/// applications by symbol then arity then arguments.
inline int compare(const Term& a, const Term& b) {
  if (a.same_node(b)) return 0;
  if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
  if (a.is_var()) return a.var_id() < b.var_id() ? -1 : (a.var_id() == b.var_id() ? 0 : 1);
  if (a.symbol() != b.symbol()) return a.symbol() < b.symbol() ? -1 : 1;
  if (a.args().size() != b.args().size())
    return a.args().size() < b.args().size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (int c = compare(a.args()[i], b.args()[i])) return c;
  return 0;
}

inline bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
inline bool operator!=(const Term& a, const Term& b) { return compare(a, b) != 0; }

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};

/// Variables of `t` in depth-first left-to-right order of first occurrence.
inline void collect_vars(const Term& t, std::vector<VarId>& out,
                         std::set<VarId>& seen) {
  if (t.is_var()) {
    if (seen.insert(t.var_id()).second) out.push_back(t.var_id());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out, seen);
}

inline std::vector<VarId> term_vars(const Term& t) {
  std::vector<VarId> out;
  std::set<VarId> seen;
  collect_vars(t, out, seen);
  return out;
}

inline std::set<VarId> term_var_set(const Term& t) {
  std::vector<VarId> out;
  std::set<VarId> seen;
  collect_vars(t, out, seen);
  return seen;
}

inline bool occurs(VarId v, const Term& t) {
  if (t.is_var()) return t.var_id() == v;
  if (t.closed()) return false;
  for (const Term& a : t.args())
    if (occurs(v, a)) return true;
  return false;
}

}  // namespace unialg
