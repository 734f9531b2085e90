#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "unialg/machine.hpp"
#include "unialg/wiring_io.hpp"

namespace unialg {

/// An observation paired with a word: the validated shape data, the
/// position constants, the product wiring (observation times word
/// representation) and the computation space it acts on.
struct ProductSystem {
  ObservationParams params;
  PositionSet positions;
  Wiring product;
  ComputationSpace space;
};

inline ProductSystem make_product_system(const Session& session,
                                         const Wiring& phi, const Word& w,
                                         PositionSet positions) {
  std::string why;
  std::optional<ObservationParams> params =
      validate_observation(session, phi, &why);
  if (!params) throw Error("not an observation: " + why);
  Wiring product = wiring_mul(phi, word_repr(w, positions));
  ComputationSpace space = computation_space(*params, positions);
  return ProductSystem{std::move(*params), std::move(positions),
                       std::move(product), std::move(space)};
}

/// The action of the product wiring restricted to the computation space:
/// one node per basis term, edges to the support of the action.  The
/// space is closed under the action; a successor outside it is an error.
struct ActionGraph {
  ProductSystem sys;
  std::vector<std::vector<int>> succ;
  bool concrete = true;

  int dimension() const { return sys.space.dimension(); }
};

inline ActionGraph build_action_graph(ProductSystem sys,
                                      const Session& session) {
  ActionGraph g{std::move(sys), {}, true};
  g.concrete = is_concrete(g.sys.product);
  g.succ.resize(static_cast<std::size_t>(g.sys.space.dimension()));
  for (int i = 0; i < g.sys.space.dimension(); ++i) {
    TermVector reached = wiring_action(g.sys.product, g.sys.space.basis[i]);
    for (const auto& [t, c] : reached) {
      int j = g.sys.space.index_of(t);
      if (j < 0)
        throw Error("computation space is not closed: reached " +
                    format_term(session, t));
      g.succ[static_cast<std::size_t>(i)].push_back(j);
    }
  }
  return g;
}

inline ActionGraph build_action_graph(const Session& session,
                                      const Wiring& phi, const Word& w,
                                      PositionSet positions) {
  return build_action_graph(
      make_product_system(session, phi, w, std::move(positions)), session);
}

/// Graph-based nilpotency: for a concrete product wiring the coefficients
/// are nonnegative, nothing cancels, and the supports of the powers are
/// exactly the path sets — so the product is nilpotent on the space iff
/// the graph is acyclic.  Non-concrete wirings are rejected; decide those
/// with the power oracle instead.
inline bool decide_nilpotent_graph(const ActionGraph& g) {
  if (!g.concrete)
    throw Error(
        "action graph was built from a non-concrete wiring; "
        "use nilpotent_within instead");
  return detail::is_acyclic(g.succ);
}

/// Word membership for an observation: nilpotency of observation times
/// word representation, decided on the action graph over the default
/// positions p0..pn.  The verdict does not depend on the position names.
inline bool decide_membership(Session& session, const Wiring& phi,
                              const Word& w) {
  PositionSet positions = default_positions(session, w.size());
  return decide_nilpotent_graph(
      build_action_graph(session, phi, w, std::move(positions)));
}

/// Membership via the power oracle: the computation space separates, so
/// the product is nilpotent iff some power up to the space dimension
/// vanishes.
inline bool decide_membership_power(Session& session, const Wiring& phi,
                                    const Word& w) {
  PositionSet positions = default_positions(session, w.size());
  ProductSystem sys =
      make_product_system(session, phi, w, std::move(positions));
  // Dimension zero means the observation has no states, so the product is
  // the zero wiring; it still takes one power to see that.
  unsigned bound = std::max(1, sys.space.dimension());
  return nilpotent_within(sys.product, bound).has_value();
}

/// Run of a deterministic (isometric) observation against a word.
struct Trace {
  std::vector<Term> nodes;  // visited, in order, all distinct
  bool cycled = false;
  std::size_t cycle_entry = 0;  // index of the revisited node when cycled

  /// Steps taken: successor applications until halt or revisit.
  std::size_t length() const { return cycled ? nodes.size() : nodes.size() - 1; }
};

inline Trace deterministic_trace(const ProductSystem& sys,
                                 const Session& session, const Term& start) {
  if (sys.space.index_of(start) < 0)
    throw Error("trace start is not in the computation space");
  Trace tr;
  std::map<Term, std::size_t, TermLess> seen;
  Term cur = start;
  while (true) {
    seen.emplace(cur, tr.nodes.size());
    tr.nodes.push_back(cur);
    TermVector next = wiring_action(sys.product, cur);
    if (next.empty()) return tr;
    if (next.size() != 1 || !next.begin()->second.is_one())
      throw Error("action is not deterministic at " +
                  format_term(session, cur));
    cur = next.begin()->first;
    auto it = seen.find(cur);
    if (it != seen.end()) {
      tr.cycled = true;
      tr.cycle_entry = it->second;
      return tr;
    }
  }
}

/// Follows the single-successor chain of an isometric observation from an
/// encoded start configuration until it halts or revisits a node.  The
/// chain never runs longer than the space dimension.
inline Trace deterministic_trace(Session& session, const Wiring& phi,
                                 const Word& w, const Term& start) {
  if (!is_isometric(phi))
    throw Error("deterministic_trace needs an isometric observation");
  PositionSet positions = default_positions(session, w.size());
  ProductSystem sys =
      make_product_system(session, phi, w, std::move(positions));
  return deterministic_trace(sys, session, start);
}

/// Graphviz export of the action graph.
inline std::string to_dot(const Session& session, const ActionGraph& g) {
  std::string out = "digraph comp {\n";
  for (int i = 0; i < g.dimension(); ++i)
    out += "  \"" + format_term(session, g.sys.space.basis[i]) + "\";\n";
  for (int i = 0; i < g.dimension(); ++i)
    for (int j : g.succ[static_cast<std::size_t>(i)])
      out += "  \"" + format_term(session, g.sys.space.basis[i]) + "\" -> \"" +
             format_term(session, g.sys.space.basis[j]) + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace unialg
