#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "unialg/wiring_io.hpp"

namespace unialg {

/// Ordered set of alphabet symbols; the star constant is not a letter.
struct Alphabet {
  std::vector<SymbolId> letters;

  bool contains(SymbolId s) const {
    for (SymbolId l : letters)
      if (l == s) return true;
    return false;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.letters == b.letters;
  }
};

/// Registers the named letters as alphabet symbols and returns them in
/// the given order.
inline Alphabet declare_alphabet(Session& session,
                                 const std::vector<std::string>& names) {
  if (names.empty()) throw Error("alphabet must not be empty");
  Alphabet out;
  std::set<std::string> seen;
  for (const std::string& name : names) {
    if (name == "*") throw Error("the star constant is not a letter");
    if (!seen.insert(name).second)
      throw Error("duplicate letter '" + name + "' in alphabet");
    out.letters.push_back(session.intern_symbol(name, 0, SymbolKind::alphabet));
  }
  return out;
}

/// All alphabet symbols registered so far, in registration order.
inline Alphabet session_alphabet(const Session& session) {
  return Alphabet{session.symbols_of_kind(SymbolKind::alphabet)};
}

/// Input word: a sequence of letters from its alphabet.  The cyclic tape
/// it denotes has the star at position 0 and letter i at position i.
struct Word {
  Alphabet alphabet;
  std::vector<SymbolId> letters;

  Word(Alphabet a, std::vector<SymbolId> ls)
      : alphabet(std::move(a)), letters(std::move(ls)) {
    if (alphabet.letters.empty()) throw Error("word needs a nonempty alphabet");
    for (SymbolId l : letters)
      if (!alphabet.contains(l)) throw Error("word letter outside its alphabet");
  }

  int size() const { return static_cast<int>(letters.size()); }

  /// Symbol on the cyclic tape at position k in 0..size().
  SymbolId at(int k) const { return k == 0 ? kStarSym : letters[k - 1]; }
};

/// Builds a word from `a,b,b` or `abb` notation (single-character letters
/// only for the compact form).  The empty string is the empty word.
inline Word make_word(Session& session, const Alphabet& alphabet,
                      const std::string& text) {
  std::vector<SymbolId> letters;
  auto lookup = [&](const std::string& name) {
    std::optional<SymbolId> id = session.find_symbol(name);
    if (!id || !alphabet.contains(*id))
      throw Error("letter '" + name + "' is not in the alphabet");
    return *id;
  };
  if (!text.empty()) {
    if (text.find(',') != std::string::npos) {
      std::size_t start = 0;
      while (true) {
        std::size_t comma = text.find(',', start);
        std::string piece = text.substr(start, comma - start);
        if (piece.empty()) throw Error("empty letter in word");
        letters.push_back(lookup(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    } else {
      for (char c : text) letters.push_back(lookup(std::string(1, c)));
    }
  }
  return Word(alphabet, std::move(letters));
}

/// Distinct position constants; index i names tape position i.
struct PositionSet {
  std::vector<SymbolId> syms;

  explicit PositionSet(std::vector<SymbolId> s) : syms(std::move(s)) {
    std::set<SymbolId> seen(syms.begin(), syms.end());
    if (seen.size() != syms.size())
      throw Error("position constants must be distinct");
  }

  int size() const { return static_cast<int>(syms.size()); }

  int index_of(SymbolId s) const {
    for (int i = 0; i < size(); ++i)
      if (syms[i] == s) return i;
    return -1;
  }
};

/// The default position constants p0..pn.
inline PositionSet default_positions(Session& session, int n) {
  std::vector<SymbolId> syms;
  for (int i = 0; i <= n; ++i)
    syms.push_back(session.intern_symbol("p" + std::to_string(i), 0,
                                         SymbolKind::position));
  return PositionSet(std::move(syms));
}

inline PositionSet declare_positions(Session& session,
                                     const std::vector<std::string>& names) {
  std::vector<SymbolId> syms;
  for (const std::string& name : names)
    syms.push_back(session.intern_symbol(name, 0, SymbolKind::position));
  return PositionSet(std::move(syms));
}

/// Representation of a word as a wiring: for each tape position i, the
/// two flows (c_i.r.X).(p_i.Y) <-> (c_{i+1}.l.X).(p_{i+1}.Y), cyclically,
/// with the star at position 0.  Concrete, isometric and self-adjoint,
/// with exactly 2(n+1) flows.
inline Wiring word_repr(const Word& w, const PositionSet& positions) {
  int n = w.size();
  if (positions.size() != n + 1)
    throw Error("word of length " + std::to_string(n) + " needs " +
                std::to_string(n + 1) + " position constants");
  Term x = Term::var(0), y = Term::var(1);
  auto side = [&](int i, SymbolId dir) {
    return Term::pair(
        Term::pair(Term::app(w.at(i)), Term::pair(Term::app(dir), x)),
        Term::pair(Term::app(positions.syms[i]), y));
  };
  Wiring out;
  for (int i = 0; i <= n; ++i) {
    int j = (i + 1) % (n + 1);
    Term u = side(i, kDirR);
    Term v = side(j, kDirL);
    out.add(Flow(u, v), Coeff::one());
    out.add(Flow(v, u), Coeff::one());
  }
  return out;
}

/// Shape data of a validated observation: the common tensor width, the
/// state symbols occurring, and the ambient alphabet.
struct ObservationParams {
  int width = 1;
  std::vector<SymbolId> states;
  Alphabet alphabet;
};

namespace detail {

// Splits a right-associated product chain t1.t2...tk.rest, returning the
// chain elements and the final non-product rest.
inline std::pair<std::vector<Term>, Term> split_chain(const Term& t) {
  std::vector<Term> chain;
  Term cur = t;
  while (cur.is_app() && cur.symbol() == kProductSym) {
    chain.push_back(cur.args()[0]);
    cur = cur.args()[1];
  }
  return {chain, cur};
}

}  // namespace detail

/// Checks that every flow of `w` has the observation shape
/// (c'.d'.q').(x1...xN.y) <- (c.d.q).(x_{s(1)}...x_{s(N)}.y) with letters
/// or star in the c slots, directions in the d slots, a common width N,
/// and reports width, states and alphabet.  The zero wiring is valid with
/// no states and width 1.  On failure returns absent and, if requested,
/// a message naming the first offending flow.
inline std::optional<ObservationParams> validate_observation(
    const Session& session, const Wiring& w, std::string* why = nullptr) {
  ObservationParams params;
  params.alphabet = session_alphabet(session);
  std::set<SymbolId> states;
  int width = -1;
  for (const auto& [f, coeff] : w) {
    auto reject = [&](const std::string& msg) {
      if (why)
        *why = "flow '" + format_flow(session, f) + "': " + msg;
    };
    if (!coeff.is_one()) {
      reject("coefficient is not one");
      return std::nullopt;
    }
    struct Side {
      SymbolId c, d, q;
      std::vector<VarId> chain;
      VarId slack;
    };
    auto parse_side = [&](const Term& t, Side& out) -> const char* {
      if (!(t.is_app() && t.symbol() == kProductSym))
        return "expected (letter.direction.state).(positions) shape";
      const Term& triple = t.args()[0];
      auto [chain, rest] = detail::split_chain(triple);
      if (chain.size() != 2)
        return "left part must be letter.direction.state";
      const Term& c = chain[0];
      const Term& d = chain[1];
      if (!c.is_app() || !c.args().empty() || !d.is_app() || !d.args().empty() ||
          !rest.is_app() || !rest.args().empty())
        return "letter, direction and state must be constants";
      SymbolKind ck = session.symbol(c.symbol()).kind;
      if (ck != SymbolKind::star && ck != SymbolKind::alphabet)
        return "first slot must be a letter or the star";
      if (session.symbol(d.symbol()).kind != SymbolKind::direction)
        return "second slot must be l or r";
      SymbolKind qk = session.symbol(rest.symbol()).kind;
      if (qk != SymbolKind::plain && qk != SymbolKind::state)
        return "third slot must be a state symbol";
      out.c = c.symbol();
      out.d = d.symbol();
      out.q = rest.symbol();
      auto [vars, slack] = detail::split_chain(t.args()[1]);
      if (vars.empty()) return "permutation part must have width at least one";
      if (!slack.is_var()) return "position chain must end in a slack variable";
      std::set<VarId> seen;
      for (const Term& v : vars) {
        if (!v.is_var()) return "position chain entries must be variables";
        if (!seen.insert(v.var_id()).second)
          return "position chain variables must be distinct";
        out.chain.push_back(v.var_id());
      }
      if (seen.count(slack.var_id()))
        return "slack variable must not recur in the chain";
      out.slack = slack.var_id();
      return nullptr;
    };
    Side head, tail;
    if (const char* msg = parse_side(f.head(), head)) {
      reject(msg);
      return std::nullopt;
    }
    if (const char* msg = parse_side(f.tail(), tail)) {
      reject(msg);
      return std::nullopt;
    }
    if (head.chain.size() != tail.chain.size() || head.slack != tail.slack ||
        std::set<VarId>(head.chain.begin(), head.chain.end()) !=
            std::set<VarId>(tail.chain.begin(), tail.chain.end())) {
      reject("head and tail permutation parts do not match");
      return std::nullopt;
    }
    int n = static_cast<int>(head.chain.size());
    if (width == -1) width = n;
    if (width != n) {
      reject("tensor width differs from the other flows");
      return std::nullopt;
    }
    states.insert(head.q);
    states.insert(tail.q);
  }
  params.width = width == -1 ? 1 : width;
  params.states.assign(states.begin(), states.end());
  return params;
}

/// The closed term (c.d.q).(a1...aN.*) of one machine configuration.
inline Term computation_term(SymbolId c, SymbolId d, SymbolId q,
                             const std::vector<SymbolId>& positions) {
  Term rest = Term::star();
  for (auto it = positions.rbegin(); it != positions.rend(); ++it)
    rest = Term::pair(Term::app(*it), rest);
  return Term::pair(
      Term::pair(Term::app(c), Term::pair(Term::app(d), Term::app(q))), rest);
}

/// All closed terms (c.d.q).(a1...aN.*) with c a letter or star, d a
/// direction, q a state and each a_i a position constant, enumerated in
/// lexicographic order of (c, d, q, positions).  Its dimension is
/// (|alphabet|+1) * 2 * |states| * (n+1)^width.
struct ComputationSpace {
  std::vector<Term> basis;
  std::map<Term, int, TermLess> index;

  int dimension() const { return static_cast<int>(basis.size()); }

  int index_of(const Term& t) const {
    auto it = index.find(t);
    return it == index.end() ? -1 : it->second;
  }
};

inline ComputationSpace computation_space(const ObservationParams& params,
                                          const PositionSet& positions) {
  ComputationSpace out;
  std::vector<SymbolId> cs{kStarSym};
  cs.insert(cs.end(), params.alphabet.letters.begin(),
            params.alphabet.letters.end());
  int m = positions.size();
  std::vector<SymbolId> tuple(params.width, positions.syms.empty() ? 0 : positions.syms[0]);
  for (SymbolId c : cs)
    for (SymbolId d : {kDirL, kDirR})
      for (SymbolId q : params.states) {
        std::vector<int> digits(params.width, 0);
        while (true) {
          for (int i = 0; i < params.width; ++i) tuple[i] = positions.syms[digits[i]];
          Term t = computation_term(c, d, q, tuple);
          out.index.emplace(t, static_cast<int>(out.basis.size()));
          out.basis.push_back(std::move(t));
          int i = params.width - 1;
          for (; i >= 0; --i) {
            if (++digits[i] < m) break;
            digits[i] = 0;
          }
          if (i < 0) break;
        }
      }
  return out;
}

/// Replaces position constants throughout a wiring via the bijection
/// `map`; every position symbol occurring must be mapped, and images must
/// be position symbols.  Membership verdicts are invariant under this.
inline Wiring position_automorphism(const Session& session, const Wiring& w,
                                    const std::map<SymbolId, SymbolId>& map) {
  for (const auto& [from, to] : map) {
    if (session.symbol(from).kind != SymbolKind::position ||
        session.symbol(to).kind != SymbolKind::position)
      throw Error("position automorphism must map position constants");
  }
  std::set<SymbolId> images;
  for (const auto& [from, to] : map)
    if (!images.insert(to).second)
      throw Error("position automorphism must be a bijection");
  struct Rewriter {
    const Session& session;
    const std::map<SymbolId, SymbolId>& map;
    Term operator()(const Term& t) const {
      if (t.is_var()) return t;
      if (t.args().empty() &&
          session.symbol(t.symbol()).kind == SymbolKind::position) {
        auto it = map.find(t.symbol());
        if (it == map.end())
          throw Error("position constant '" + session.symbol(t.symbol()).name +
                      "' is not mapped");
        return Term::app(it->second);
      }
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back((*this)(a));
      return Term::app(t.symbol(), std::move(args));
    }
  } rewrite{session, map};
  Wiring out;
  for (const auto& [f, c] : w)
    out.add(Flow(rewrite(f.head()), rewrite(f.tail())), c);
  return out;
}

}  // namespace unialg
