#include <doctest.h>

#include <sstream>
#include <string>

#include "spk/netsearch.hpp"
#include "spk/prover.hpp"
#include "spk/structure_io.hpp"
#include "spk/syntax.hpp"

using namespace spk;

namespace {

// The two-weakening classical net for  C, ~A, B->A => ~B, D.
// Roots: C- [~A]- [B->A]- [~B]+ D+; the weakenings absorb C- and D+ with
// hosts A+ and B-, whose continuations carry the axiom links.
const char* kWeakeningNet =
    "logic classical\n"
    "position 0 - C\n"
    "position 1 - ~A\n"
    "position 2 + A\n"
    "position 3 - B->A\n"
    "position 4 + B\n"
    "position 5 - A\n"
    "position 6 + ~B\n"
    "position 7 - B\n"
    "position 8 + D\n"
    "position 9 + A\n"
    "position 10 - B\n"
    "dlink unary 1 2\n"
    "dlink times 3 4 5\n"
    "dlink unary 6 7\n"
    "wlink 2 0 9\n"
    "wlink 7 8 10\n"
    "axlink 9 5\n"
    "axlink 4 10\n";

ProofStructure load(const std::string& text) {
  std::istringstream is(text);
  return read_structure(is);
}

}  // namespace

TEST_CASE("the weakening-bearing classical net checks as a net") {
  ProofStructure ps = load(kWeakeningNet);
  REQUIRE(ps.nodes.size() == 11);
  NetVerdict v = check_classical_structure(ps);
  CHECK(v.is_net);
  // no conjunctive links: exactly one switching to examine
  CHECK(v.switchings == 1);
  CHECK(contraction_check(ps).is_net);
}

TEST_CASE("deleting any single axiom link disconnects the weakening net") {
  ProofStructure base = load(kWeakeningNet);
  int axioms = 0;
  for (size_t k = 0; k < base.links.size(); ++k) {
    if (base.links[k].kind != LinkKind::Axiom) continue;
    ++axioms;
    ProofStructure damaged = base;
    damaged.links.erase(damaged.links.begin() + static_cast<long>(k));
    NetVerdict v = check_classical_structure(damaged);
    CHECK(!v.is_net);
    CHECK(v.failure == FailureKind::Disconnected);
  }
  CHECK(axioms == 2);
}

TEST_CASE("a weakening link detached from the rest is caught as disconnected") {
  // weakened formula hosted on a node with no path to the other component
  std::string text =
      "logic classical\n"
      "position 0 - A\n"
      "position 1 + A\n"
      "position 2 - C\n"
      "position 3 - B\n"
      "position 4 - B\n"
      "wlink 3 2 4\n"
      "axlink 0 1\n";
  ProofStructure ps = load(text);
  NetVerdict v = check_classical_structure(ps);
  CHECK(!v.is_net);
  CHECK(v.failure == FailureKind::Disconnected);
}

TEST_CASE("malformed structural links are rejected") {
  std::string text =
      "logic classical\n"
      "position 0 - A\n"
      "position 1 + A\n"
      "clink 0 1\n";
  CHECK_THROWS_AS(load(text), MalformedStructuralLink);

  ProofStructure ps;
  ps.logic = LogicId::Classical;
  ps.nodes.push_back(StructNode{0, Sign::Neg, Formula::atom("A"), true});
  Link bad;
  bad.kind = LinkKind::Weakening;
  bad.conclusions = {0};
  bad.premises = {0};
  ps.links.push_back(bad);
  CHECK_THROWS_AS(check_classical_structure(ps), MalformedStructuralLink);
}

TEST_CASE("structure files round-trip") {
  ProofStructure ps = load(kWeakeningNet);
  std::string text = structure_text(ps);
  ProofStructure back = load(text);
  CHECK(back.nodes.size() == ps.nodes.size());
  CHECK(back.links.size() == ps.links.size());
  CHECK(structure_text(back) == text);
}

TEST_CASE("bounded synthesis finds nets for classical goldens") {
  // sequent (1): no structural links needed
  NetSearchResult r1 = find_proof_net(parse_sequent("~A, B->A => ~B", LogicId::Classical));
  CHECK(r1.found());
  CHECK(check_classical_structure(*r1.net).is_net);

  // the paper's weakening example needs two weakening links
  NetSearchResult r2 =
      find_proof_net(parse_sequent("C, ~A, B->A => ~B, D", LogicId::Classical));
  CHECK(r2.found());
  int weak = 0;
  for (const auto& l : r2.net->links)
    if (l.kind == LinkKind::Weakening) ++weak;
  CHECK(weak == 2);

  // contraction: proving A => A&A duplicates the antecedent atom
  NetSearchResult r3 = find_proof_net(parse_sequent("A => A&A", LogicId::Classical));
  CHECK(r3.found());
  int contr = 0;
  for (const auto& l : r3.net->links)
    if (l.kind == LinkKind::Contraction) ++contr;
  CHECK(contr >= 1);

  // A|A => A&A shares both the antecedent and the succedent: the net
  // contracts the succedent root and both antecedent copies, which is one
  // link past the default bound
  NetSearchOptions wide;
  wide.max_contractions = 3;
  NetSearchResult r4 = find_proof_net(parse_sequent("A|A => A&A", LogicId::Classical), wide);
  CHECK(r4.found());
  NetSearchResult r4_default = find_proof_net(parse_sequent("A|A => A&A", LogicId::Classical));
  CHECK(!r4_default.found());
  CHECK(!r4_default.conclusive);  // the bounded search cannot refute
}

TEST_CASE("bounded synthesis misses are inconclusive, not refutations") {
  NetSearchResult res = find_proof_net(parse_sequent("A => B", LogicId::Classical));
  CHECK(!res.found());
  CHECK(!res.conclusive);
}

TEST_CASE("DOT export carries the styling conventions") {
  NetSearchResult res = find_proof_net(parse_sequent("A@B, (B*C)^ => C-oA", LogicId::MLL));
  REQUIRE(res.found());
  std::string dot = to_dot(*res.net);
  CHECK(dot.find("graph proof_structure {") != std::string::npos);
  CHECK(dot.find("style=dotted") != std::string::npos);   // the par link
  CHECK(dot.find("style=solid") != std::string::npos);    // times links
  CHECK(dot.find("constraint=false") != std::string::npos);  // axiom curves
  CHECK(dot.find("[A@B]-") != std::string::npos);
}
