#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "unialg/error.hpp"
#include "unialg/term.hpp"
#include "unialg/unify.hpp"

namespace unialg {

/// Bijection on {1..n} given by its image sequence: image[i-1] = sigma(i).
struct Permutation {
  std::vector<int> image;

  Permutation() = default;
  explicit Permutation(std::vector<int> img) : image(std::move(img)) {
    std::vector<bool> seen(image.size(), false);
    for (int v : image) {
      if (v < 1 || v > static_cast<int>(image.size()) || seen[v - 1])
        throw Error("permutation image is not a bijection");
      seen[v - 1] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    return Permutation(std::move(img));
  }

  int size() const { return static_cast<int>(image.size()); }
  int operator()(int i) const { return image[i - 1]; }

  Permutation inverse() const {
    std::vector<int> img(image.size());
    for (int i = 1; i <= size(); ++i) img[image[i - 1] - 1] = i;
    return Permutation(std::move(img));
  }

  /// (a*b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw Error("permutation sizes differ");
    std::vector<int> img(a.image.size());
    for (int i = 1; i <= a.size(); ++i) img[i - 1] = a(b(i));
    return Permutation(std::move(img));
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.image == b.image;
  }
};

/// Oriented pair of terms `head <- tail` over the same variables,
/// considered up to renaming.  Construction canonicalizes the variables
/// (numbered by first occurrence, tail first), so structural equality on
/// the stored pair is equality up to renaming.
class Flow {
 public:
  /// Requires vars(head) = vars(tail); that keeps products, dagger and
  /// tensor inside the algebra.
  Flow(const Term& head, const Term& tail) {
    if (term_var_set(head) != term_var_set(tail))
      throw Error("flow head and tail must use the same variables");
    auto [h, t] = canonical_variables(head, tail);
    head_ = std::move(h);
    tail_ = std::move(t);
  }

  /// The identity flow V1 <- V1.
  static Flow identity() { return Flow(Term::var(0), Term::var(0)); }

  const Term& head() const { return head_; }
  const Term& tail() const { return tail_; }

  /// Number of distinct variables (canonical ids are 0..count-1).
  VarId var_count() const {
    std::vector<VarId> vs = term_vars(tail_);
    return static_cast<VarId>(vs.size());
  }

  friend int compare(const Flow& a, const Flow& b) {
    if (int c = compare(a.head_, b.head_)) return c;
    return compare(a.tail_, b.tail_);
  }
  friend bool operator==(const Flow& a, const Flow& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Flow& a, const Flow& b) { return compare(a, b) != 0; }
  friend bool operator<(const Flow& a, const Flow& b) { return compare(a, b) < 0; }

 private:
  Term head_, tail_;
};

namespace detail {
inline Term shift_vars(const Term& t, VarId by) {
  if (t.closed()) return t;
  if (t.is_var()) return Term::var(t.var_id() + by);
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(shift_vars(a, by));
  return Term::app(t.symbol(), std::move(args));
}
}  // namespace detail

/// Composition (f g): unify f's tail with g's head after renaming apart;
/// absent when they do not unify (the product annihilates).
inline std::optional<Flow> flow_product(const Flow& f, const Flow& g) {
  VarId shift = f.var_count();
  Term ghead = detail::shift_vars(g.head(), shift);
  Term gtail = detail::shift_vars(g.tail(), shift);
  std::optional<Substitution> theta = mgu(f.tail(), ghead);
  if (!theta) return std::nullopt;
  return Flow(theta->apply(f.head()), theta->apply(gtail));
}

/// Adjoint: swaps head and tail.
inline Flow flow_dagger(const Flow& f) { return Flow(f.tail(), f.head()); }

/// (u <- v) tensor (t <- w) = u.t <- v.w, after renaming apart.
inline Flow flow_tensor(const Flow& f, const Flow& g) {
  VarId shift = f.var_count();
  Term ghead = detail::shift_vars(g.head(), shift);
  Term gtail = detail::shift_vars(g.tail(), shift);
  return Flow(Term::pair(f.head(), ghead), Term::pair(f.tail(), gtail));
}

/// Applies the flow to a closed term: match the tail, emit the
/// instantiated head.  Absent when the tail does not match.
inline std::optional<Term> flow_action(const Flow& f, const Term& t) {
  std::optional<Substitution> theta = match_closed(f.tail(), t);
  if (!theta) return std::nullopt;
  return theta->apply(f.head());
}

/// Representation of a permutation as a flow with one slack variable:
/// x1.x2...xn.y <- x_{sigma(1)}...x_{sigma(n)}.y.
inline Flow perm_repr(const Permutation& sigma) {
  int n = sigma.size();
  if (n < 1) throw Error("perm_repr needs at least one point");
  Term slack = Term::var(static_cast<VarId>(n));
  Term head = slack, tail = slack;
  for (int i = n; i >= 1; --i) {
    head = Term::pair(Term::var(static_cast<VarId>(i - 1)), head);
    tail = Term::pair(Term::var(static_cast<VarId>(sigma(i) - 1)), tail);
  }
  return Flow(head, tail);
}

}  // namespace unialg
