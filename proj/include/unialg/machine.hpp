#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "unialg/encoding.hpp"

namespace unialg {

enum class Dir : std::uint8_t { left, right };

inline Dir flip(Dir d) { return d == Dir::left ? Dir::right : Dir::left; }
inline SymbolId dir_symbol(Dir d) { return d == Dir::left ? kDirL : kDirR; }
inline const char* dir_name(Dir d) { return d == Dir::left ? "l" : "r"; }

/// One transition (c,d,s) -> (c',d',s') x sigma: fires on observed symbol
/// `c` with direction `d` in state `s`; after the swap, slot k holds the
/// pointer formerly in slot sigma(k).
struct TransitionRule {
  SymbolId read_sym;
  Dir read_dir;
  SymbolId read_state;
  SymbolId write_sym;
  Dir write_dir;
  SymbolId write_state;
  Permutation perm;

  std::tuple<SymbolId, Dir, SymbolId> source() const {
    return {read_sym, read_dir, read_state};
  }
  std::tuple<SymbolId, Dir, SymbolId> target() const {
    return {write_sym, write_dir, write_state};
  }

  friend bool operator==(const TransitionRule& a, const TransitionRule& b) {
    return a.source() == b.source() && a.target() == b.target() &&
           a.perm == b.perm;
  }
};

/// Pointer machine over a cyclic input tape: a pointer count, an alphabet,
/// a state set and a finite set of transition rules.
struct PointerMachine {
  int pointers = 1;
  Alphabet alphabet;
  std::vector<SymbolId> states;
  std::vector<TransitionRule> delta;

  bool has_state(SymbolId s) const {
    return std::find(states.begin(), states.end(), s) != states.end();
  }
};

/// Source triples pairwise distinct: at most one rule fires per observation.
inline bool is_deterministic(const PointerMachine& m) {
  std::set<std::tuple<SymbolId, Dir, SymbolId>> seen;
  for (const TransitionRule& r : m.delta)
    if (!seen.insert(r.source()).second) return false;
  return true;
}

/// Deterministic with pairwise distinct target triples: the transition
/// relation is a partial injection.
inline bool is_reversible(const PointerMachine& m) {
  if (!is_deterministic(m)) return false;
  std::set<std::tuple<SymbolId, Dir, SymbolId>> seen;
  for (const TransitionRule& r : m.delta)
    if (!seen.insert(r.target()).second) return false;
  return true;
}

/// Machine configuration: observed symbol, move direction, state, and one
/// tape position per pointer (slot 0 is the main pointer).
struct Configuration {
  SymbolId sym;
  Dir dir;
  SymbolId state;
  std::vector<int> positions;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.sym == b.sym && a.dir == b.dir && a.state == b.state &&
           a.positions == b.positions;
  }
  friend bool operator<(const Configuration& a, const Configuration& b) {
    return std::tie(a.sym, a.dir, a.state, a.positions) <
           std::tie(b.sym, b.dir, b.state, b.positions);
  }
};

/// One move-then-swap step.  The move phase fires only if the observed
/// symbol matches the tape under the main pointer; the main pointer then
/// moves one cell in the current direction (cyclically), the direction
/// flips and the newly observed symbol is read.  The swap phase branches
/// over rules matching (new symbol, flipped direction, state); each rule
/// rewrites the triple and permutes the pointers.
inline std::vector<Configuration> step(const PointerMachine& m, const Word& w,
                                       const Configuration& c) {
  int cells = w.size() + 1;
  if (c.sym != w.at(c.positions[0])) return {};
  int moved = c.dir == Dir::left ? (c.positions[0] + cells - 1) % cells
                                 : (c.positions[0] + 1) % cells;
  SymbolId observed = w.at(moved);
  Dir flipped = flip(c.dir);
  std::vector<int> base = c.positions;
  base[0] = moved;
  std::vector<Configuration> out;
  for (const TransitionRule& r : m.delta) {
    if (r.read_sym != observed || r.read_dir != flipped ||
        r.read_state != c.state)
      continue;
    std::vector<int> pos(base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
      pos[i] = base[r.perm(static_cast<int>(i) + 1) - 1];
    out.push_back(Configuration{r.write_sym, r.write_dir, r.write_state,
                                std::move(pos)});
  }
  return out;
}

namespace detail {

struct ConfigIndexer {
  const PointerMachine& m;
  int cells;
  int nsyms, nstates;

  ConfigIndexer(const PointerMachine& mach, int word_len)
      : m(mach),
        cells(word_len + 1),
        nsyms(static_cast<int>(mach.alphabet.letters.size()) + 1),
        nstates(static_cast<int>(mach.states.size())) {}

  long long count() const {
    long long c = static_cast<long long>(nsyms) * 2 * nstates;
    for (int i = 0; i < m.pointers; ++i) c *= cells;
    return c;
  }

  int sym_index(SymbolId s) const {
    if (s == kStarSym) return 0;
    for (std::size_t i = 0; i < m.alphabet.letters.size(); ++i)
      if (m.alphabet.letters[i] == s) return static_cast<int>(i) + 1;
    return -1;
  }

  int state_index(SymbolId s) const {
    for (std::size_t i = 0; i < m.states.size(); ++i)
      if (m.states[i] == s) return static_cast<int>(i);
    return -1;
  }

  long long index(const Configuration& c) const {
    long long idx = sym_index(c.sym);
    idx = idx * 2 + (c.dir == Dir::left ? 0 : 1);
    idx = idx * nstates + state_index(c.state);
    for (int p : c.positions) idx = idx * cells + p;
    return idx;
  }

  Configuration config(long long idx) const {
    Configuration c;
    c.positions.assign(m.pointers, 0);
    for (int i = m.pointers - 1; i >= 0; --i) {
      c.positions[i] = static_cast<int>(idx % cells);
      idx /= cells;
    }
    c.state = m.states[static_cast<std::size_t>(idx % nstates)];
    idx /= nstates;
    c.dir = idx % 2 == 0 ? Dir::left : Dir::right;
    idx /= 2;
    c.sym = idx == 0 ? kStarSym
                     : m.alphabet.letters[static_cast<std::size_t>(idx - 1)];
    return c;
  }
};

/// Kahn's algorithm on an adjacency list.
inline bool is_acyclic(const std::vector<std::vector<int>>& succ) {
  std::vector<int> indegree(succ.size(), 0);
  for (const auto& outs : succ)
    for (int v : outs) ++indegree[v];
  std::vector<int> queue;
  for (std::size_t v = 0; v < succ.size(); ++v)
    if (indegree[v] == 0) queue.push_back(static_cast<int>(v));
  std::size_t removed = 0;
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    ++removed;
    for (int u : succ[v])
      if (--indegree[u] == 0) queue.push_back(u);
  }
  return removed == succ.size();
}

}  // namespace detail

/// Acceptance: the full configuration graph over all
/// (|alphabet|+1) * 2 * |states| * (n+1)^pointers configurations is
/// acyclic, i.e. no run can repeat.
inline bool accepts(const PointerMachine& m, const Word& w) {
  if (m.states.empty()) return true;
  detail::ConfigIndexer ix(m, w.size());
  long long total = ix.count();
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(total));
  for (long long i = 0; i < total; ++i) {
    for (const Configuration& next : step(m, w, ix.config(i)))
      succ[static_cast<std::size_t>(i)].push_back(
          static_cast<int>(ix.index(next)));
  }
  return detail::is_acyclic(succ);
}

/// Compiles the machine to an observation wiring: one flow per rule,
/// (c'.d'.s' <- c.d.s) tensored with the representation of the inverse
/// pointer permutation.  The machine is reversible exactly when the
/// result is isometric.
inline Wiring compile(const PointerMachine& m) {
  Wiring out;
  for (const TransitionRule& r : m.delta) {
    auto triple = [](SymbolId c, Dir d, SymbolId s) {
      return Term::pair(Term::app(c),
                        Term::pair(Term::app(dir_symbol(d)), Term::app(s)));
    };
    Flow base(triple(r.write_sym, r.write_dir, r.write_state),
              triple(r.read_sym, r.read_dir, r.read_state));
    out.add(flow_tensor(base, perm_repr(r.perm.inverse())), Coeff::one());
  }
  return out;
}

/// The closed term encoding a configuration over the given positions.
inline Term encode_configuration(const Configuration& c,
                                 const PositionSet& positions) {
  std::vector<SymbolId> ps;
  ps.reserve(c.positions.size());
  for (int p : c.positions) ps.push_back(positions.syms[p]);
  return computation_term(c.sym, dir_symbol(c.dir), c.state, ps);
}

/// Inverse of encode_configuration; absent when the term does not have the
/// configuration shape over these positions.
inline std::optional<Configuration> decode_configuration(
    const Term& t, const PositionSet& positions) {
  if (!t.is_app() || t.symbol() != kProductSym) return std::nullopt;
  const Term& triple = t.args()[0];
  auto [tc, q] = detail::split_chain(triple);
  if (tc.size() != 2) return std::nullopt;
  if (!tc[0].is_app() || !tc[1].is_app() || !q.is_app()) return std::nullopt;
  Configuration c;
  c.sym = tc[0].symbol();
  if (tc[1].symbol() == kDirL)
    c.dir = Dir::left;
  else if (tc[1].symbol() == kDirR)
    c.dir = Dir::right;
  else
    return std::nullopt;
  c.state = q.symbol();
  auto [chain, last] = detail::split_chain(t.args()[1]);
  if (!(last.is_app() && last.symbol() == kStarSym)) return std::nullopt;
  for (const Term& e : chain) {
    if (!e.is_app() || !e.args().empty()) return std::nullopt;
    int idx = positions.index_of(e.symbol());
    if (idx < 0) return std::nullopt;
    c.positions.push_back(idx);
  }
  if (c.positions.empty()) return std::nullopt;
  return c;
}

/// Parses the machine description language:
///
///   pointers 2
///   alphabet a b
///   states s0 s1
///   trans a r s0 -> a l s1 perm 2 1
///
/// Reads and writes range over the alphabet plus `*`; `perm` lists where
/// each slot's pointer comes from.  `#` starts a comment.
inline PointerMachine parse_machine(Session& session, const std::string& text) {
  PointerMachine m;
  bool have_pointers = false, have_alphabet = false, have_states = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& msg) -> void {
      throw Error("machine line " + std::to_string(lineno) + ": " + msg);
    };
    const std::string& kw = tok[0];
    if (kw == "pointers") {
      if (have_pointers) fail("duplicate pointers line");
      if (tok.size() != 2) fail("usage: pointers N");
      try {
        m.pointers = std::stoi(tok[1]);
      } catch (...) {
        fail("bad pointer count '" + tok[1] + "'");
      }
      if (m.pointers < 1) fail("need at least one pointer");
      have_pointers = true;
    } else if (kw == "alphabet") {
      if (have_alphabet) fail("duplicate alphabet line");
      if (tok.size() < 2) fail("alphabet needs at least one letter");
      try {
        m.alphabet = declare_alphabet(
            session, std::vector<std::string>(tok.begin() + 1, tok.end()));
      } catch (const Error& e) {
        fail(e.what());
      }
      have_alphabet = true;
    } else if (kw == "states") {
      if (have_states) fail("duplicate states line");
      if (tok.size() < 2) fail("states needs at least one state");
      std::set<std::string> seen;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!seen.insert(tok[i]).second) fail("duplicate state '" + tok[i] + "'");
        m.states.push_back(
            session.intern_symbol(tok[i], 0, SymbolKind::state));
      }
      have_states = true;
    } else if (kw == "trans") {
      if (!have_pointers || !have_alphabet || !have_states)
        fail("trans before pointers/alphabet/states");
      // trans c d s -> c' d' s' perm i1 ... iN
      std::size_t expect = 8 + static_cast<std::size_t>(m.pointers) + 1;
      if (tok.size() != expect || tok[4] != "->" || tok[8] != "perm")
        fail("usage: trans c d s -> c' d' s' perm i1 ... i" +
             std::to_string(m.pointers));
      auto letter = [&](const std::string& s) -> SymbolId {
        if (s == "*") return kStarSym;
        std::optional<SymbolId> id = session.find_symbol(s);
        if (!id || !m.alphabet.contains(*id))
          fail("'" + s + "' is not a letter of the alphabet");
        return id ? *id : 0;
      };
      auto dir = [&](const std::string& s) -> Dir {
        if (s == "l") return Dir::left;
        if (s == "r") return Dir::right;
        fail("direction must be l or r, got '" + s + "'");
        return Dir::left;
      };
      auto state = [&](const std::string& s) -> SymbolId {
        std::optional<SymbolId> id = session.find_symbol(s);
        if (!id || !m.has_state(*id)) fail("'" + s + "' is not a declared state");
        return id ? *id : 0;
      };
      TransitionRule r;
      r.read_sym = letter(tok[1]);
      r.read_dir = dir(tok[2]);
      r.read_state = state(tok[3]);
      r.write_sym = letter(tok[5]);
      r.write_dir = dir(tok[6]);
      r.write_state = state(tok[7]);
      std::vector<int> img;
      for (int i = 0; i < m.pointers; ++i) {
        try {
          img.push_back(std::stoi(tok[9 + static_cast<std::size_t>(i)]));
        } catch (...) {
          fail("bad permutation entry");
        }
      }
      try {
        r.perm = Permutation(std::move(img));
      } catch (const Error& e) {
        fail(e.what());
      }
      for (const TransitionRule& prev : m.delta)
        if (prev == r) fail("duplicate transition");
      m.delta.push_back(std::move(r));
    } else {
      fail("unknown keyword '" + kw + "'");
    }
  }
  if (!have_pointers || !have_alphabet || !have_states)
    throw Error("machine needs pointers, alphabet and states lines");
  return m;
}

/// Canonical machine text; parse(format(m)) reproduces m.
inline std::string format_machine(const Session& session,
                                  const PointerMachine& m) {
  std::string out = "pointers " + std::to_string(m.pointers) + "\n";
  out += "alphabet";
  for (SymbolId l : m.alphabet.letters) out += " " + session.symbol(l).name;
  out += "\nstates";
  for (SymbolId s : m.states) out += " " + session.symbol(s).name;
  out += "\n";
  auto letter = [&](SymbolId s) {
    return s == kStarSym ? std::string("*") : session.symbol(s).name;
  };
  for (const TransitionRule& r : m.delta) {
    out += "trans " + letter(r.read_sym) + " " + dir_name(r.read_dir) + " " +
           session.symbol(r.read_state).name + " -> " + letter(r.write_sym) +
           " " + dir_name(r.write_dir) + " " +
           session.symbol(r.write_state).name + " perm";
    for (int i : r.perm.image) out += " " + std::to_string(i);
    out += "\n";
  }
  return out;
}

}  // namespace unialg
