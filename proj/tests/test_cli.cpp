#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "spk/cli.hpp"

using namespace spk;

namespace {

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return CliRun{code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("prove: exit 0 for provable, 1 for unprovable, 2 for errors") {
  CliRun ok = cli({"prove", "--logic", "classical", "--method", "all", "~A, B->A => ~B"});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("agreement: yes") != std::string::npos);

  CliRun no = cli({"prove", "--logic", "mill", "--method", "all", "X => (Y-oX)*Y"});
  CHECK(no.exit_code == 1);

  CliRun bad = cli({"prove", "--logic", "classical", "--method", "all", "~A, B->A =>"});
  CHECK(bad.exit_code == 1);  // well-formed, just unprovable

  CliRun err = cli({"prove", "--logic", "classical", "--method", "all", "~A &"});
  CHECK(err.exit_code == 2);

  CliRun wrong = cli({"prove", "--logic", "nl", "--method", "matrix", "(A , B) => A"});
  CHECK(wrong.exit_code == 2);  // no matrix method for NL
}

TEST_CASE("prove: NL example 2 reports the boundary failure") {
  CliRun r = cli({"prove", "--logic", "nl", "--method", "net", "((A , (A\\B)/C) , C) => B"});
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("failure=boundary") != std::string::npos);
}

TEST_CASE("prove: mll matrix method alone") {
  CliRun r = cli({"prove", "--logic", "mll", "--method", "matrix", "A => A"});
  CHECK(r.exit_code == 0);
}

TEST_CASE("prove: structured output parses as a report") {
  CliRun r = cli({"prove", "--logic", "mll", "--format", "structured", "A@B, (B*C)^ => C-oA"});
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  RunReport rep = run_report_from_json(j);
  CHECK(rep.agreement);
  CHECK(rep.sequent == "A@B, (B*C)^ => C-oA");
}

TEST_CASE("export: matrix renderings are the canonical ones") {
  CliRun r1 = cli({"export", "--logic", "classical", "--kind", "matrix", "--out", "-",
                   "~A, B->A => ~B"});
  CHECK(r1.exit_code == 0);
  CHECK(r1.out == "[[A+] [B+ ; A-]] [B-]\n");

  CliRun r2 =
      cli({"export", "--logic", "mll", "--kind", "matrix", "--out", "-", "A@B, (B*C)^ => C-oA"});
  CHECK(r2.exit_code == 0);
  CHECK(r2.out == "[A- ; B-] [B+ ; C+] [C- A+]\n");
}

TEST_CASE("export: net structure file has one axiom matching") {
  CliRun r =
      cli({"export", "--logic", "mll", "--kind", "net", "--out", "-", "A@B, (B*C)^ => C-oA"});
  CHECK(r.exit_code == 0);
  size_t axlinks = 0, at = 0;
  while ((at = r.out.find("axlink", at)) != std::string::npos) {
    ++axlinks;
    at += 6;
  }
  CHECK(axlinks == 3);
  // and it reloads as a checkable structure
  std::istringstream is(r.out);
  ProofStructure ps = read_structure(is);
  CHECK(dr_check(ps).is_net);
}

TEST_CASE("export: derivation of an axiom is a single line") {
  CliRun r = cli({"export", "--logic", "nl", "--kind", "derivation", "--out", "-", "A => A"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "Axiom: A => A\n");
}

TEST_CASE("export: unprovable sequents cannot be exported as nets or derivations") {
  CliRun r1 = cli({"export", "--logic", "mill", "--kind", "net", "--out", "-", "X => (Y-oX)*Y"});
  CHECK(r1.exit_code == 2);
  CliRun r2 =
      cli({"export", "--logic", "mill", "--kind", "derivation", "--out", "-", "X => (Y-oX)*Y"});
  CHECK(r2.exit_code == 2);
  CliRun r3 = cli({"export", "--logic", "mll", "--kind", "dot", "--out", "-", "A => A"});
  CHECK(r3.exit_code == 0);
  CHECK(r3.out.find("graph proof_structure") != std::string::npos);
}

TEST_CASE("crosscheck: tiny exhaustive runs exit 0") {
  CliRun r = cli({"crosscheck", "--logic", "mll", "--atoms", "2", "--depth", "1", "--width",
                  "1", "--succ", "1"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("disagreements: 0") != std::string::npos);

  CliRun nl = cli({"crosscheck", "--logic", "nl", "--atoms", "2", "--depth", "1", "--width", "2"});
  CHECK(nl.exit_code == 0);

  CliRun sampled = cli({"crosscheck", "--logic", "l", "--atoms", "2", "--depth", "2", "--width",
                        "2", "--samples", "50", "--seed", "7"});
  CHECK(sampled.exit_code == 0);
}

TEST_CASE("check-structure validates files from disk") {
  std::string path = "spk_test_structure.tmp";
  {
    std::ofstream f(path);
    f << "logic classical\n"
         "position 0 - A\n"
         "position 1 + A\n"
         "axlink 0 1\n";
  }
  CliRun ok = cli({"check-structure", path});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("proof net") == 0);
  std::remove(path.c_str());
}
