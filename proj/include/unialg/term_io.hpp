#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "unialg/error.hpp"
#include "unialg/term.hpp"
#include "unialg/unify.hpp"

namespace unialg {

namespace detail {

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("parse error at " + std::to_string(line) + ":" +
                std::to_string(col) + ": " + msg);
  }

  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_space() {
    while (pos < src.size()) {
      if (std::isspace(static_cast<unsigned char>(src[pos]))) {
        advance();
      } else if (src[pos] == '#') {
        while (pos < src.size() && src[pos] != '\n') advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos >= src.size();
  }

  char peek() {
    skip_space();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool eat(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::string ident() {
    skip_space();
    if (pos >= src.size() || !ident_start(src[pos])) fail("expected identifier");
    std::string out;
    while (pos < src.size() && ident_char(src[pos])) {
      out.push_back(src[pos]);
      advance();
    }
    return out;
  }
};

// Names of the form V<n> denote the canonical variable with index n-1, so
// canonical output parses back to identical ids.
inline VarId variable_id(Session& session, const std::string& name) {
  if (name.size() >= 2 && name[0] == 'V' && name[1] != '0' &&
      std::all_of(name.begin() + 1, name.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    unsigned long long n = std::stoull(name.substr(1));
    if (n <= 0x40000000ull) return static_cast<VarId>(n - 1);
  }
  return session.intern_variable(name);
}

inline Term parse_term_rec(Session& session, Lexer& lx);

inline Term parse_atom(Session& session, Lexer& lx) {
  char c = lx.peek();
  if (c == '*') {
    lx.advance();
    return Term::star();
  }
  if (c == '(') {
    lx.advance();
    Term t = parse_term_rec(session, lx);
    lx.expect(')');
    return t;
  }
  std::string name = lx.ident();
  if (std::isupper(static_cast<unsigned char>(name[0])))
    return Term::var(variable_id(session, name));
  if (lx.peek() == '(') {
    lx.advance();
    std::vector<Term> args;
    args.push_back(parse_term_rec(session, lx));
    while (lx.eat(',')) args.push_back(parse_term_rec(session, lx));
    lx.expect(')');
    SymbolId sym = session.intern_symbol(name, static_cast<int>(args.size()));
    return Term::app(sym, std::move(args));
  }
  return Term::app(session.intern_symbol(name, 0));
}

inline Term parse_term_rec(Session& session, Lexer& lx) {
  Term left = parse_atom(session, lx);
  if (lx.eat('.')) {
    Term right = parse_term_rec(session, lx);  // right-associative
    return Term::pair(std::move(left), std::move(right));
  }
  return left;
}

}  // namespace detail

/// Parses the textual term grammar: `.` is the right-associative infix
/// product, `*` the star constant, uppercase-initial identifiers are
/// variables, lowercase-initial ones symbols.  Symbols are registered on
/// first use; a later use with a different arity fails.
inline Term parse_term(Session& session, const std::string& text) {
  detail::Lexer lx(text);
  Term t = detail::parse_term_rec(session, lx);
  if (!lx.at_end()) lx.fail("trailing input after term");
  return t;
}

/// Prints a term in the same grammar, compactly: `f(X,Y).g(*)`.
/// A product on the left of a product is parenthesized; the right side
/// never is, matching right-associativity.
inline std::string format_term(const Session& session, const Term& t) {
  if (t.is_var()) return session.variable_name(t.var_id());
  const SymbolInfo& info = session.symbol(t.symbol());
  if (info.kind == SymbolKind::product) {
    const Term& l = t.args()[0];
    const Term& r = t.args()[1];
    bool paren = l.is_app() && session.symbol(l.symbol()).kind == SymbolKind::product;
    std::string out = paren ? "(" + format_term(session, l) + ")"
                            : format_term(session, l);
    out += ".";
    out += format_term(session, r);
    return out;
  }
  if (t.args().empty()) return info.name;
  std::string out = info.name + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ",";
    out += format_term(session, t.args()[i]);
  }
  out += ")";
  return out;
}

/// `{X -> c.c; Z -> g(*)}`, bindings sorted by variable name.
inline std::string format_substitution(const Session& session,
                                       const Substitution& s) {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& [v, img] : s)
    rows.emplace_back(session.variable_name(v), format_term(session, img));
  std::sort(rows.begin(), rows.end());
  std::string out = "{";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += "; ";
    out += rows[i].first + " -> " + rows[i].second;
  }
  out += "}";
  return out;
}

}  // namespace unialg
