#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "support/gen.hpp"
#include "unialg/cli.hpp"

using namespace unialg;

namespace {

struct TmpDir {
  std::filesystem::path dir;

  TmpDir() {
    dir = std::filesystem::temp_directory_path() /
          ("unialg-cli-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
  }

  std::string write(const std::string& name, const std::string& text) {
    std::filesystem::path p = dir / name;
    std::ofstream f(p);
    f << text;
    return p.string();
  }

  std::string path(const std::string& name) { return (dir / name).string(); }
};

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("mgu prints the unifier or NONE", "[cli]") {
  RunResult r = run_cli({"mgu", "f(X,c)", "f(d,Y)"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "{X -> d; Y -> c}\n");

  r = run_cli({"mgu", "c", "d"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "NONE\n");

  r = run_cli({"mgu", "X", "c.X"});  // occurs check
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "NONE\n");
}

TEST_CASE("help lists the subcommands", "[cli]") {
  RunResult r = run_cli({"--help"});
  REQUIRE(r.code == 0);
  for (const char* name :
       {"mgu", "compose", "act", "word-encode", "compile", "simulate",
        "decide", "check", "graph"})
    REQUIRE_THAT(r.out, Catch::Matchers::ContainsSubstring(name));
}

TEST_CASE("usage errors exit with code two", "[cli]") {
  REQUIRE(run_cli({}).code == 2);
  REQUIRE(run_cli({"mgu", "c"}).code == 2);          // missing argument
  REQUIRE(run_cli({"bogus"}).code == 2);             // unknown subcommand
  REQUIRE_FALSE(run_cli({"bogus"}).err.empty());
}

TEST_CASE("compose multiplies wiring files", "[cli]") {
  TmpDir tmp;
  std::string f = tmp.write("f.txt", "X.c <- (c.c).X\n");
  std::string g = tmp.write("g.txt", "Y.Z <- Z.Y\n");
  RunResult r = run_cli({"compose", f, g});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "V1.c <- V1.c.c\n");
}

TEST_CASE("act applies a wiring to a closed term", "[cli]") {
  TmpDir tmp;
  std::string f = tmp.write("w.txt", "d.X <- X.c\n");

  RunResult r = run_cli({"act", f, "c.c"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "d.c\n");

  r = run_cli({"act", f, "d.d"});  // clash: nothing survives
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "0\n");

  r = run_cli({"act", f, "X"});
  REQUIRE(r.code == 2);
  REQUIRE_THAT(r.err, Catch::Matchers::ContainsSubstring("closed"));
}

TEST_CASE("word-encode emits the word wiring", "[cli]") {
  std::string expect;
  {
    Session s;
    Alphabet ab = declare_alphabet(s, {"a"});
    Word w = make_word(s, ab, "a");
    expect = format_wiring(s, word_repr(w, default_positions(s, 1)));
  }
  RunResult r = run_cli({"word-encode", "--alphabet", "a", "--word", "a"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == expect);

  std::string renamed;
  {
    Session s;
    Alphabet ab = declare_alphabet(s, {"a"});
    Word w = make_word(s, ab, "a");
    renamed = format_wiring(s, word_repr(w, declare_positions(s, {"q0", "q1"})));
  }
  r = run_cli({"word-encode", "--alphabet", "a", "--word", "a", "--positions",
               "q0,q1"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == renamed);
  REQUIRE(r.out != expect);  // different constants, different text
}

TEST_CASE("compile prints the observation of a machine file", "[cli]") {
  TmpDir tmp;
  std::string pm = tmp.write("loopb.pm", testsupport::kMachineLoopB);
  std::string expect;
  {
    Session s;
    expect = format_wiring(s, compile(parse_machine(s, testsupport::kMachineLoopB)));
  }
  RunResult r = run_cli({"compile", pm});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == expect);

  std::string junk = tmp.write("junk.pm", "nonsense\n");
  r = run_cli({"compile", junk});
  REQUIRE(r.code == 2);
  REQUIRE_THAT(r.err, Catch::Matchers::StartsWith("error: "));
}

TEST_CASE("simulate reports acceptance with the exit code", "[cli]") {
  TmpDir tmp;
  std::string pm = tmp.write("loopb.pm", testsupport::kMachineLoopB);

  RunResult r = run_cli({"simulate", pm, "--word", "aa"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "ACCEPT\n");

  r = run_cli({"simulate", pm, "--word", "ab"});
  REQUIRE(r.code == 1);
  REQUIRE(r.out == "REJECT\n");
}

TEST_CASE("decide matches the simulator on machine input", "[cli]") {
  TmpDir tmp;
  std::string pm = tmp.write("loopb.pm", testsupport::kMachineLoopB);

  REQUIRE(run_cli({"decide", pm, "--word", "aa"}).out == "ACCEPT\n");
  REQUIRE(run_cli({"decide", pm, "--word", "aa"}).code == 0);
  REQUIRE(run_cli({"decide", pm, "--word", "ab"}).out == "REJECT\n");
  REQUIRE(run_cli({"decide", pm, "--word", "ab"}).code == 1);

  REQUIRE(run_cli({"decide", pm, "--word", "aa", "--method", "power"}).code == 0);
  REQUIRE(run_cli({"decide", pm, "--word", "ab", "--method", "power"}).code == 1);
  REQUIRE(run_cli({"decide", pm, "--word", "a", "--method", "bogus"}).code == 2);
}

TEST_CASE("decide takes wiring instances with an explicit alphabet", "[cli]") {
  TmpDir tmp;
  std::string obs_text;
  {
    Session s;
    obs_text = format_wiring(s, compile(parse_machine(s, testsupport::kMachineLoopB)));
  }
  std::string obs = tmp.write("loopb_obs.txt", obs_text);

  RunResult r = run_cli({"decide", obs, "--word", "aa", "--alphabet", "a,b"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "ACCEPT\n");

  r = run_cli({"decide", obs, "--word", "ab", "--alphabet", "a,b"});
  REQUIRE(r.code == 1);

  r = run_cli({"decide", obs, "--word", "aa"});
  REQUIRE(r.code == 2);
  REQUIRE_THAT(r.err, Catch::Matchers::ContainsSubstring("needs --alphabet"));
}

TEST_CASE("decide writes the action graph when asked", "[cli]") {
  TmpDir tmp;
  std::string pm = tmp.write("loopb.pm", testsupport::kMachineLoopB);
  std::string dot = tmp.path("graph.dot");

  RunResult r = run_cli({"decide", pm, "--word", "ab", "--dot", dot});
  REQUIRE(r.code == 1);
  std::string text = slurp(dot);
  REQUIRE_THAT(text, Catch::Matchers::StartsWith("digraph comp {"));
  REQUIRE_THAT(text, Catch::Matchers::ContainsSubstring("->"));
}

TEST_CASE("check cross-validates the three deciders", "[cli]") {
  TmpDir tmp;
  std::string pm = tmp.write("loopb.pm", testsupport::kMachineLoopB);

  RunResult r = run_cli({"check", pm, "--max-len", "2"});
  REQUIRE(r.code == 0);
  REQUIRE_THAT(r.out, Catch::Matchers::ContainsSubstring("agree 7/7"));
  REQUIRE_THAT(r.out, Catch::Matchers::StartsWith("word"));
  REQUIRE_THAT(r.out, Catch::Matchers::ContainsSubstring("(empty)"));
  REQUIRE_THAT(r.out, !Catch::Matchers::ContainsSubstring("disagree"));

  REQUIRE(run_cli({"check", pm, "--max-len=-1"}).code == 2);
}

TEST_CASE("graph prints dot on stdout or to a file", "[cli]") {
  TmpDir tmp;
  std::string pm = tmp.write("loopb.pm", testsupport::kMachineLoopB);

  RunResult r = run_cli({"graph", pm, "--word", "a"});
  REQUIRE(r.code == 0);
  REQUIRE_THAT(r.out, Catch::Matchers::StartsWith("digraph comp {"));
  REQUIRE_THAT(r.out, Catch::Matchers::ContainsSubstring("->"));

  std::string dot = tmp.path("out.dot");
  r = run_cli({"graph", pm, "--word", "a", "--dot", dot});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.empty());
  REQUIRE_THAT(slurp(dot), Catch::Matchers::StartsWith("digraph comp {"));

  // Custom position constants change node names, not the graph shape.
  r = run_cli({"graph", pm, "--word", "a", "--positions", "q0,q1"});
  REQUIRE(r.code == 0);
  REQUIRE_THAT(r.out, Catch::Matchers::ContainsSubstring("q0"));
}

TEST_CASE("missing input files exit with code two", "[cli]") {
  RunResult r = run_cli({"decide", "/nonexistent/m.pm", "--word", "a"});
  REQUIRE(r.code == 2);
  REQUIRE_THAT(r.err, Catch::Matchers::ContainsSubstring("cannot read"));

  r = run_cli({"mgu", "f(", "c"});
  REQUIRE(r.code == 2);
  REQUIRE_THAT(r.err, Catch::Matchers::StartsWith("error: "));
}
