#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "unialg/decider.hpp"

namespace testsupport {

using namespace unialg;

/// Deterministic test randomness; every generator threads one of these.
struct Rng {
  std::mt19937 g;
  explicit Rng(unsigned seed) : g(seed) {}

  int range(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(g() % static_cast<unsigned>(hi - lo + 1));
  }
  bool coin() { return (g() & 1u) != 0; }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(range(0, static_cast<int>(v.size()) - 1))];
  }
};

/// Small fixed signature for random terms: constants c and d, unary f,
/// binary g, plus the star and the product.
struct TermGen {
  Session& session;
  SymbolId c, d, f2, g2;

  explicit TermGen(Session& s)
      : session(s),
        c(s.intern_symbol("c", 0)),
        d(s.intern_symbol("d", 0)),
        f2(s.intern_symbol("f", 1)),
        g2(s.intern_symbol("g", 2)) {}

  Term constant(Rng& rng) {
    switch (rng.range(0, 2)) {
      case 0: return Term::app(c);
      case 1: return Term::app(d);
      default: return Term::star();
    }
  }

  /// Random term of depth <= depth over the given variable pool (empty
  /// pool means closed).
  Term term(Rng& rng, int depth, const std::vector<VarId>& pool) {
    bool leaf = depth <= 0 || rng.range(0, 3) == 0;
    if (leaf) {
      if (!pool.empty() && rng.coin()) return Term::var(rng.pick(pool));
      return constant(rng);
    }
    switch (rng.range(0, 2)) {
      case 0:
        return Term::pair(term(rng, depth - 1, pool), term(rng, depth - 1, pool));
      case 1:
        return Term::app(f2, {term(rng, depth - 1, pool)});
      default:
        return Term::app(g2, {term(rng, depth - 1, pool),
                              term(rng, depth - 1, pool)});
    }
  }

  Term closed_term(Rng& rng, int depth) { return term(rng, depth, {}); }

  /// Random flow of depth <= depth: the tail draws from a small variable
  /// pool; missing variables are product-appended to the head so both
  /// sides use the same set.
  Flow flow(Rng& rng, int depth) {
    std::vector<VarId> pool;
    int nvars = rng.range(0, 2);
    for (int i = 0; i < nvars; ++i) pool.push_back(static_cast<VarId>(i));
    Term tail = term(rng, depth, pool);
    std::vector<VarId> tvars = term_vars(tail);
    Term head = term(rng, depth, tvars);
    std::set<VarId> hvars = term_var_set(head);
    for (VarId v : tvars)
      if (!hvars.count(v)) head = Term::pair(head, Term::var(v));
    return Flow(head, tail);
  }

  Wiring wiring(Rng& rng, int nflows, int depth, bool unit_coeffs) {
    static const std::vector<Coeff> coeffs = {
        Coeff(1),
        Coeff(-1),
        Coeff(2),
        Coeff(Rational(1, 2)),
        Coeff(Rational(0), Rational(1)),
        Coeff(Rational(1), Rational(1)),
        Coeff(Rational(-3, 2), Rational(1, 3)),
    };
    Wiring out;
    for (int i = 0; i < nflows; ++i)
      out.add(flow(rng, depth), unit_coeffs ? Coeff::one() : rng.pick(coeffs));
    return out;
  }

  /// Random isometric wiring: flows whose heads clash pairwise and whose
  /// tails clash pairwise, found by rejection.
  Wiring isometric(Rng& rng, int nflows, int depth) {
    Wiring out;
    std::vector<Flow> kept;
    int attempts = 0;
    while (static_cast<int>(kept.size()) < nflows && attempts < 400) {
      ++attempts;
      Flow cand = flow(rng, depth);
      bool ok = true;
      for (const Flow& k : kept) {
        if (matchable(cand.head(), k.head()) ||
            matchable(cand.tail(), k.tail())) {
          ok = false;
          break;
        }
      }
      if (ok && !out.coefficient(cand)) {
        kept.push_back(cand);
        out.add(cand, Coeff::one());
      }
    }
    return out;
  }

  /// Closed instance of a term: every variable grounded randomly.
  Term ground(Rng& rng, const Term& t) {
    Substitution s;
    for (VarId v : term_vars(t)) s.set(v, closed_term(rng, 2));
    return s.apply(t);
  }
};

/// Carves a closed term into an open one plus the closed bindings that
/// restore it; used to build guaranteed unifiers independently of mgu.
struct Carving {
  Term open;
  Substitution binding;
};

inline Carving carve(Rng& rng, const Term& closed, VarId& next_var,
                     Substitution& binding, int depth = 0) {
  if (depth > 0 && rng.range(0, 2) == 0) {
    VarId v = next_var++;
    binding.set(v, closed);
    return {Term::var(v), binding};
  }
  if (closed.is_app() && !closed.args().empty() && rng.coin()) {
    std::vector<Term> args;
    for (const Term& a : closed.args())
      args.push_back(carve(rng, a, next_var, binding, depth + 1).open);
    return {Term::app(closed.symbol(), args), binding};
  }
  return {closed, binding};
}

// ---------------------------------------------------------------------------
// Machine suite shared by the decider tests and the acceptance gate.

inline const char* kMachineEmpty =
    "pointers 1\n"
    "alphabet a b\n"
    "states s0\n";

inline const char* kMachineAlwaysLoop =
    "pointers 1\n"
    "alphabet a b\n"
    "states s0\n"
    "trans * l s0 -> * l s0 perm 1\n"
    "trans * r s0 -> * r s0 perm 1\n"
    "trans a l s0 -> a l s0 perm 1\n"
    "trans a r s0 -> a r s0 perm 1\n"
    "trans b l s0 -> b l s0 perm 1\n"
    "trans b r s0 -> b r s0 perm 1\n";

/// Loops exactly when the word contains a b: a two-cycle bounces between a
/// b cell and its left neighbour; without a b every run halts in two steps.
inline const char* kMachineLoopB =
    "pointers 1\n"
    "alphabet a b\n"
    "states s0\n"
    "trans b l s0 -> b l s0 perm 1\n"
    "trans * r s0 -> * r s0 perm 1\n"
    "trans a r s0 -> a r s0 perm 1\n"
    "trans b r s0 -> b r s0 perm 1\n";

/// Always moves right around the cyclic tape; rejects every word.
/// Reversible, so its observation is isometric.
inline const char* kMachineRunner =
    "pointers 1\n"
    "alphabet a b\n"
    "states s0\n"
    "trans * l s0 -> * r s0 perm 1\n"
    "trans a l s0 -> a r s0 perm 1\n"
    "trans b l s0 -> b r s0 perm 1\n";

inline const char* kMachineTwoPointer =
    "pointers 2\n"
    "alphabet a b\n"
    "states s0 s1\n"
    "trans a r s0 -> a l s1 perm 2 1\n"
    "trans * l s1 -> * r s0 perm 1 2\n";

inline const char* kMachineBranchy =
    "pointers 1\n"
    "alphabet a b\n"
    "states s0 s1\n"
    "trans a l s0 -> a r s0 perm 1\n"
    "trans a l s0 -> a l s1 perm 1\n"
    "trans b r s1 -> a r s0 perm 1\n"
    "trans * r s0 -> * l s1 perm 1\n";

inline std::vector<std::pair<std::string, const char*>> machine_suite() {
  return {
      {"empty", kMachineEmpty},           {"alwaysloop", kMachineAlwaysLoop},
      {"loopb", kMachineLoopB},           {"runner", kMachineRunner},
      {"twopointer", kMachineTwoPointer}, {"branchy", kMachineBranchy},
  };
}

/// All words over the alphabet with length <= max_len, shortest first.
inline std::vector<std::vector<SymbolId>> all_words(const Alphabet& alphabet,
                                                    int max_len) {
  std::vector<std::vector<SymbolId>> out{{}};
  std::size_t level_start = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_start; i < level_end; ++i)
      for (SymbolId l : alphabet.letters) {
        std::vector<SymbolId> w = out[i];
        w.push_back(l);
        out.push_back(std::move(w));
      }
    level_start = level_end;
  }
  return out;
}

/// Random machine over {a,b} with the shared states s0..s{nstates-1}.
/// kind: 0 = reversible (distinct sources, distinct targets),
///       1 = deterministic but with a repeated target triple,
///       2 = unrestricted (may be nondeterministic).
inline PointerMachine random_machine(Session& session, Rng& rng, int pointers,
                                     int nstates, int nrules, int kind) {
  PointerMachine m;
  m.pointers = pointers;
  m.alphabet = session_alphabet(session);
  if (m.alphabet.letters.empty())
    m.alphabet = declare_alphabet(session, {"a", "b"});
  for (int i = 0; i < nstates; ++i)
    m.states.push_back(session.intern_symbol("s" + std::to_string(i), 0,
                                             SymbolKind::state));
  std::vector<SymbolId> syms{kStarSym};
  syms.insert(syms.end(), m.alphabet.letters.begin(), m.alphabet.letters.end());
  std::vector<std::tuple<SymbolId, Dir, SymbolId>> triples;
  for (SymbolId c : syms)
    for (Dir dir : {Dir::left, Dir::right})
      for (SymbolId s : m.states) triples.emplace_back(c, dir, s);
  auto shuffled = [&] {
    std::vector<std::tuple<SymbolId, Dir, SymbolId>> v = triples;
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[static_cast<std::size_t>(rng.range(0, static_cast<int>(i) - 1))]);
    return v;
  };
  nrules = std::min<int>(nrules, static_cast<int>(triples.size()));
  std::vector<std::tuple<SymbolId, Dir, SymbolId>> sources = shuffled();
  std::vector<std::tuple<SymbolId, Dir, SymbolId>> targets = shuffled();
  auto random_perm = [&] {
    std::vector<int> img(static_cast<std::size_t>(pointers));
    for (int i = 0; i < pointers; ++i) img[static_cast<std::size_t>(i)] = i + 1;
    for (std::size_t i = img.size(); i > 1; --i)
      std::swap(img[i - 1], img[static_cast<std::size_t>(rng.range(0, static_cast<int>(i) - 1))]);
    return Permutation(img);
  };
  for (int i = 0; i < nrules; ++i) {
    TransitionRule r;
    std::tie(r.read_sym, r.read_dir, r.read_state) =
        kind == 2 ? sources[static_cast<std::size_t>(rng.range(0, nrules - 1))]
                  : sources[static_cast<std::size_t>(i)];
    std::tie(r.write_sym, r.write_dir, r.write_state) =
        targets[static_cast<std::size_t>(i)];
    if (kind == 1 && i == 1)  // repeat the first rule's target triple
      std::tie(r.write_sym, r.write_dir, r.write_state) = targets[0];
    r.perm = random_perm();
    bool dup = false;
    for (const TransitionRule& prev : m.delta) dup = dup || prev == r;
    if (dup) {
      --i;
      continue;
    }
    m.delta.push_back(r);
  }
  return m;
}

}  // namespace testsupport
