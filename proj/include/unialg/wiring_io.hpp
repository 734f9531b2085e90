#pragma once

#include <sstream>
#include <string>

#include "unialg/error.hpp"
#include "unialg/term_io.hpp"
#include "unialg/wiring.hpp"

namespace unialg {

inline std::string format_flow(const Session& session, const Flow& f) {
  return format_term(session, f.head()) + " <- " + format_term(session, f.tail());
}

/// One flow per line, sorted canonically; a non-unit coefficient is
/// printed as a `[re,im] :` prefix.  The zero wiring prints as `0`.
inline std::string format_wiring(const Session& session, const Wiring& w) {
  if (w.is_zero()) return "0\n";
  std::string out;
  for (const auto& [f, c] : w) {
    if (!c.is_one()) out += format_coeff(c) + " : ";
    out += format_flow(session, f);
    out += "\n";
  }
  return out;
}

/// Weighted closed terms, one per line, same coefficient convention.
inline std::string format_term_vector(const Session& session,
                                      const TermVector& v) {
  if (v.empty()) return "0\n";
  std::string out;
  for (const auto& [t, c] : v) {
    if (!c.is_one()) out += format_coeff(c) + " : ";
    out += format_term(session, t);
    out += "\n";
  }
  return out;
}

namespace detail {
inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}
}  // namespace detail

/// Parses the wiring text format and sums the lines.  Each line is
/// `head <- tail`, optionally prefixed by `[re,im] :`; `#` starts a
/// comment; blank lines are skipped.
inline Wiring parse_wiring(Session& session, const std::string& text) {
  Wiring out;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) -> void {
      throw Error("wiring line " + std::to_string(lineno) + ": " + msg);
    };
    Coeff coeff = Coeff::one();
    if (line[0] == '[') {
      std::size_t close = line.find(']');
      if (close == std::string::npos) fail("unterminated coefficient");
      std::string inside = line.substr(1, close - 1);
      std::size_t comma = inside.find(',');
      if (comma == std::string::npos) fail("coefficient needs two parts");
      coeff = Coeff(parse_rational(detail::trim(inside.substr(0, comma))),
                    parse_rational(detail::trim(inside.substr(comma + 1))));
      line = detail::trim(line.substr(close + 1));
      if (line.empty() || line[0] != ':') fail("expected ':' after coefficient");
      line = detail::trim(line.substr(1));
    }
    std::size_t arrow = line.find("<-");
    if (arrow == std::string::npos) fail("expected '<-'");
    if (line.find("<-", arrow + 2) != std::string::npos) fail("more than one '<-'");
    std::string head_text = detail::trim(line.substr(0, arrow));
    std::string tail_text = detail::trim(line.substr(arrow + 2));
    if (head_text.empty() || tail_text.empty()) fail("missing head or tail");
    try {
      Term head = parse_term(session, head_text);
      Term tail = parse_term(session, tail_text);
      out.add(Flow(head, tail), coeff);
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  return out;
}

}  // namespace unialg
