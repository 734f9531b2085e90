#pragma once

#include <array>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unialg/decider.hpp"

namespace unialg::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    out.push_back(s.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline bool is_machine_file(const std::string& path) {
  return path.size() >= 3 && path.compare(path.size() - 3, 3, ".pm") == 0;
}

inline void write_output(const std::string& path, const std::string& text,
                         std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
}

/// Loads either a machine (.pm, compiled to its observation) or a wiring
/// file, returning the observation and the word parsed over the right
/// alphabet.  For wirings the alphabet must come from --alphabet.
struct Instance {
  Wiring phi;
  Word word;
};

inline Instance load_instance(Session& session, const std::string& path,
                              const std::string& alphabet_text,
                              const std::string& word_text) {
  if (!alphabet_text.empty())
    declare_alphabet(session, split_commas(alphabet_text));
  if (is_machine_file(path)) {
    PointerMachine m = parse_machine(session, read_file(path));
    return Instance{compile(m), make_word(session, m.alphabet, word_text)};
  }
  if (alphabet_text.empty())
    throw Error("a wiring instance needs --alphabet");
  Alphabet alphabet = session_alphabet(session);
  Wiring phi = parse_wiring(session, read_file(path));
  return Instance{std::move(phi), make_word(session, alphabet, word_text)};
}

inline std::string word_display(const Session& session, const Word& w) {
  if (w.letters.empty()) return "(empty)";
  bool single = true;
  std::vector<std::string> names;
  for (SymbolId l : w.letters) {
    names.push_back(session.symbol(l).name);
    single = single && names.back().size() == 1;
  }
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i && !single) out += ",";
    out += names[i];
  }
  return out;
}

inline void enumerate_words(const Alphabet& alphabet, int max_len,
                            const std::function<void(const std::vector<SymbolId>&)>& fn) {
  std::vector<SymbolId> word;
  std::function<void(int)> go = [&](int remaining) {
    fn(word);
    if (remaining == 0) return;
    for (SymbolId l : alphabet.letters) {
      word.push_back(l);
      go(remaining - 1);
      word.pop_back();
    }
  };
  go(max_len);
}

}  // namespace detail

/// Entry point shared by the binary and the tests.  Returns the process
/// exit code: 0 for success/ACCEPT, 1 for REJECT or disagreement, 2 for
/// usage and input errors.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"workbench for unification flows, wirings and pointer machines",
               "unialg"};
  app.require_subcommand(1);

  std::string term_a, term_b;
  CLI::App* c_mgu = app.add_subcommand("mgu", "most general unifier of two terms");
  c_mgu->add_option("t", term_a, "first term")->required();
  c_mgu->add_option("u", term_b, "second term")->required();

  std::string file_a, file_b;
  CLI::App* c_compose = app.add_subcommand("compose", "product of two wirings");
  c_compose->add_option("f", file_a, "left wiring file")->required();
  c_compose->add_option("g", file_b, "right wiring file")->required();

  std::string act_file, act_term;
  CLI::App* c_act = app.add_subcommand("act", "apply a wiring to a closed term");
  c_act->add_option("f", act_file, "wiring file")->required();
  c_act->add_option("t", act_term, "closed term")->required();

  std::string we_alphabet, we_word, we_positions;
  CLI::App* c_word = app.add_subcommand("word-encode", "wiring of a word");
  c_word->add_option("--alphabet", we_alphabet, "letters, comma separated")->required();
  c_word->add_option("--word", we_word, "the word")->required();
  c_word->add_option("--positions", we_positions, "position constants, comma separated");

  std::string compile_file;
  CLI::App* c_compile = app.add_subcommand("compile", "observation of a machine");
  c_compile->add_option("m", compile_file, "machine file (.pm)")->required();

  std::string sim_file, sim_word;
  CLI::App* c_sim = app.add_subcommand("simulate", "run a machine on a word");
  c_sim->add_option("m", sim_file, "machine file (.pm)")->required();
  c_sim->add_option("--word", sim_word, "input word")->required();

  std::string dec_file, dec_word, dec_alphabet, dec_method = "graph", dec_dot;
  CLI::App* c_dec = app.add_subcommand("decide", "membership by nilpotency");
  c_dec->add_option("input", dec_file, "machine (.pm) or wiring file")->required();
  c_dec->add_option("--word", dec_word, "input word")->required();
  c_dec->add_option("--alphabet", dec_alphabet, "letters (wiring input)");
  c_dec->add_option("--method", dec_method, "graph or power")
      ->check(CLI::IsMember({"graph", "power"}));
  c_dec->add_option("--dot", dec_dot, "write the action graph here");

  std::string chk_file;
  int chk_max_len = 0;
  CLI::App* c_chk = app.add_subcommand(
      "check", "cross-validate simulator, graph decider and power oracle");
  c_chk->add_option("m", chk_file, "machine file (.pm)")->required();
  c_chk->add_option("--max-len", chk_max_len, "maximum word length")->required();

  std::string gr_file, gr_word, gr_alphabet, gr_positions, gr_dot;
  CLI::App* c_graph = app.add_subcommand("graph", "action graph of an instance");
  c_graph->add_option("input", gr_file, "machine (.pm) or wiring file")->required();
  c_graph->add_option("--word", gr_word, "input word")->required();
  c_graph->add_option("--alphabet", gr_alphabet, "letters (wiring input)");
  c_graph->add_option("--positions", gr_positions, "position constants");
  c_graph->add_option("--dot", gr_dot, "output file (default stdout)");

  std::vector<std::string> argv_store{"unialg"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    Session session;
    if (c_mgu->parsed()) {
      Term t = parse_term(session, term_a);
      Term u = parse_term(session, term_b);
      std::optional<Substitution> theta = mgu(t, u);
      out << (theta ? format_substitution(session, *theta) : "NONE") << "\n";
      return 0;
    }
    if (c_compose->parsed()) {
      Wiring f = parse_wiring(session, detail::read_file(file_a));
      Wiring g = parse_wiring(session, detail::read_file(file_b));
      out << format_wiring(session, wiring_mul(f, g));
      return 0;
    }
    if (c_act->parsed()) {
      Wiring f = parse_wiring(session, detail::read_file(act_file));
      Term t = parse_term(session, act_term);
      if (!t.closed()) throw Error("act needs a closed term");
      out << format_term_vector(session, wiring_action(f, t));
      return 0;
    }
    if (c_word->parsed()) {
      Alphabet alphabet =
          declare_alphabet(session, detail::split_commas(we_alphabet));
      Word w = make_word(session, alphabet, we_word);
      PositionSet positions =
          we_positions.empty()
              ? default_positions(session, w.size())
              : declare_positions(session, detail::split_commas(we_positions));
      out << format_wiring(session, word_repr(w, positions));
      return 0;
    }
    if (c_compile->parsed()) {
      PointerMachine m = parse_machine(session, detail::read_file(compile_file));
      out << format_wiring(session, compile(m));
      return 0;
    }
    if (c_sim->parsed()) {
      PointerMachine m = parse_machine(session, detail::read_file(sim_file));
      Word w = make_word(session, m.alphabet, sim_word);
      bool ok = accepts(m, w);
      out << (ok ? "ACCEPT" : "REJECT") << "\n";
      return ok ? 0 : 1;
    }
    if (c_dec->parsed()) {
      detail::Instance inst =
          detail::load_instance(session, dec_file, dec_alphabet, dec_word);
      PositionSet positions = default_positions(session, inst.word.size());
      ProductSystem sys = make_product_system(session, inst.phi, inst.word,
                                              std::move(positions));
      bool verdict;
      if (dec_method == "power") {
        unsigned bound =
            static_cast<unsigned>(std::max(1, sys.space.dimension()));
        verdict = nilpotent_within(sys.product, bound).has_value();
        if (!dec_dot.empty()) {
          ActionGraph g = build_action_graph(std::move(sys), session);
          detail::write_output(dec_dot, to_dot(session, g), out);
        }
      } else {
        ActionGraph g = build_action_graph(std::move(sys), session);
        verdict = decide_nilpotent_graph(g);
        if (!dec_dot.empty())
          detail::write_output(dec_dot, to_dot(session, g), out);
      }
      out << (verdict ? "ACCEPT" : "REJECT") << "\n";
      return verdict ? 0 : 1;
    }
    if (c_chk->parsed()) {
      if (chk_max_len < 0) throw Error("--max-len must be nonnegative");
      PointerMachine m = parse_machine(session, detail::read_file(chk_file));
      Wiring phi = compile(m);
      int agree = 0, total = 0;
      std::size_t word_col = 7;
      std::vector<std::array<std::string, 4>> rows;
      detail::enumerate_words(
          m.alphabet, chk_max_len, [&](const std::vector<SymbolId>& letters) {
            Word w(m.alphabet, letters);
            bool sim = accepts(m, w);
            PositionSet positions = default_positions(session, w.size());
            ProductSystem sys =
                make_product_system(session, phi, w, std::move(positions));
            ActionGraph g = build_action_graph(std::move(sys), session);
            bool graph_v = decide_nilpotent_graph(g);
            unsigned bound = static_cast<unsigned>(std::max(1, g.dimension()));
            bool power_v =
                nilpotent_within(g.sys.product, bound).has_value();
            bool ok = sim == graph_v && graph_v == power_v;
            ++total;
            if (ok) ++agree;
            auto text = [](bool b) { return b ? "ACCEPT" : "REJECT"; };
            std::string wd = detail::word_display(session, w);
            word_col = std::max(word_col, wd.size());
            rows.push_back({wd, text(sim), text(graph_v),
                            ok ? std::string(text(power_v))
                               : std::string(text(power_v)) + "  <- disagree"});
          });
      out << std::left << std::setw(static_cast<int>(word_col) + 2) << "word"
          << std::setw(10) << "simulate" << std::setw(10) << "graph"
          << "power\n";
      for (const auto& r : rows)
        out << std::left << std::setw(static_cast<int>(word_col) + 2) << r[0]
            << std::setw(10) << r[1] << std::setw(10) << r[2] << r[3] << "\n";
      out << "agree " << agree << "/" << total << "\n";
      return agree == total ? 0 : 1;
    }
    if (c_graph->parsed()) {
      detail::Instance inst =
          detail::load_instance(session, gr_file, gr_alphabet, gr_word);
      PositionSet positions =
          gr_positions.empty()
              ? default_positions(session, inst.word.size())
              : declare_positions(session, detail::split_commas(gr_positions));
      ActionGraph g = build_action_graph(session, inst.phi, inst.word,
                                         std::move(positions));
      detail::write_output(gr_dot, to_dot(session, g), out);
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace unialg::cli
