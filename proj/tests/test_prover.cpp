#include <doctest.h>

#include <string>
#include <vector>

#include "spk/family.hpp"
#include "spk/prover.hpp"

using namespace spk;

namespace {

bool provable(const char* text, LogicId logic) {
  Verdict v = prove(parse_sequent(text, logic));
  REQUIRE(v.status != ProveStatus::BudgetExhausted);
  return v.provable();
}

}  // namespace

TEST_CASE("golden provability, classical") {
  CHECK(provable("~A, B->A => ~B", LogicId::Classical));
  CHECK(provable("A => A", LogicId::Classical));
  CHECK(provable("=> A|~A", LogicId::Classical));
  CHECK(provable("A&B => B&A", LogicId::Classical));
  CHECK(provable("A|A => A&A", LogicId::Classical));
  CHECK(!provable("A => B", LogicId::Classical));
  CHECK(!provable("A|B => A&B", LogicId::Classical));
  CHECK(!provable("=> A", LogicId::Classical));
}

TEST_CASE("golden provability, MLL") {
  CHECK(provable("A@B, (B*C)^ => C-oA", LogicId::MLL));
  CHECK(provable("A => A", LogicId::MLL));
  CHECK(provable("A*B => B*A", LogicId::MLL));
  CHECK(provable("=> A-oA", LogicId::MLL));
  CHECK(!provable("A => A*A", LogicId::MLL));
  CHECK(!provable("A, A => A", LogicId::MLL));
  CHECK(!provable("A => B", LogicId::MLL));
}

TEST_CASE("golden provability, MILL") {
  CHECK(provable("X => Y-o(X*Y)", LogicId::MILL));
  CHECK(!provable("X => (Y-oX)*Y", LogicId::MILL));
  CHECK(provable("A => A", LogicId::MILL));
  CHECK(provable("A, A-oB => B", LogicId::MILL));
}

TEST_CASE("golden provability, L and L_eps") {
  CHECK(provable("C.(C\\A)/B, B => A", LogicId::LambekL));
  CHECK(provable("A/B, B => A", LogicId::LambekL));
  CHECK(provable("B, B\\A => A", LogicId::LambekL));
  CHECK(!provable("A.B => B.A", LogicId::LambekL));
  CHECK(provable("A*B => B*A", LogicId::MLL));  // the commutative image is fine
  CHECK(!provable("B/(A/A) => B", LogicId::LambekL));
  CHECK(provable("B/(A/A) => B", LogicId::LambekLEps));
  CHECK(provable("=> A/A", LogicId::LambekLEps));
  CHECK(!provable("B, A/A => B", LogicId::LambekL));
  CHECK(!provable("B, A/A => B", LogicId::LambekLEps));  // no Weakening here either
}

TEST_CASE("golden provability, NL examples 1-4") {
  CHECK(provable("(A , ((A\\B)/C , C)) => B", LogicId::NL));        // Example 1
  CHECK(!provable("((A , (A\\B)/C) , C) => B", LogicId::NL));       // Example 2
  CHECK(provable("((D , D\\A) , ((A\\B)/C , C)) => B", LogicId::NL));  // Example 3
  CHECK(provable("(A , ((A\\B)/(C/D) , C/D)) => B", LogicId::NL));  // Example 4
  CHECK(!provable("B/(A/A) => B", LogicId::NL));
  CHECK(provable("(A/B , B) => A", LogicId::NL));
  CHECK(!provable("(B , A/B) => A", LogicId::NL));
}

TEST_CASE("witness derivations check and satisfy the subformula property") {
  struct Case {
    const char* text;
    LogicId logic;
  } cases[] = {
      {"~A, B->A => ~B", LogicId::Classical},
      {"A@B, (B*C)^ => C-oA", LogicId::MLL},
      {"X => Y-o(X*Y)", LogicId::MILL},
      {"C.(C\\A)/B, B => A", LogicId::LambekL},
      {"(A , ((A\\B)/(C/D) , C/D)) => B", LogicId::NL},
      {"A => A", LogicId::NL},
  };
  for (const auto& c : cases) {
    Verdict v = prove(parse_sequent(c.text, c.logic));
    REQUIRE(v.provable());
    CheckResult r = check_derivation(*v.witness);
    INFO(r.path, ": ", r.why);
    CHECK(r.ok);
    CHECK(subformula_property(*v.witness));
  }
}

TEST_CASE("check_derivation accepts the MLL derivation from the literature") {
  // @L closes A@B => A, B from the two axioms; then *R, -oR and ^L.
  LogicId mll = LogicId::MLL;
  auto seq = [&](const char* t) { return parse_sequent(t, mll); };
  auto ax_a = make_deriv(seq("A => A"), "Axiom");
  auto ax_b = make_deriv(seq("B => B"), "Axiom");
  auto ax_c = make_deriv(seq("C => C"), "Axiom");
  auto parl = make_deriv(seq("A@B => A, B"), "@L", {ax_a, ax_b});
  auto tensr = make_deriv(seq("A@B, C => A, B*C"), "*R", {parl, ax_c});
  auto lolr = make_deriv(seq("A@B => C-oA, B*C"), "-oR", {tensr});
  auto root = make_deriv(seq("A@B, (B*C)^ => C-oA"), "^L", {lolr});
  CheckResult r = check_derivation(*root);
  INFO(r.path, ": ", r.why);
  CHECK(r.ok);

  // the same tree with the *R contexts swapped fails at the damaged premise
  auto bad_tensr = make_deriv(seq("C => A, B"), "@L", {ax_a, ax_b});
  auto tensr2 = make_deriv(seq("A@B, C => A, B*C"), "*R", {bad_tensr, ax_c});
  auto lolr2 = make_deriv(seq("A@B => C-oA, B*C"), "-oR", {tensr2});
  auto root2 = make_deriv(seq("A@B, (B*C)^ => C-oA"), "^L", {lolr2});
  CheckResult r2 = check_derivation(*root2);
  CHECK(!r2.ok);
  CHECK(!r2.path.empty());

  // a single axiom node
  CheckResult r3 = check_derivation(*make_deriv(seq("A => A"), "Axiom"));
  CHECK(r3.ok);

  // wrong rule names are rejected
  CheckResult r4 = check_derivation(*make_deriv(seq("A@B => A, B"), "*L", {ax_a, ax_b}));
  CHECK(!r4.ok);
}

TEST_CASE("derivation text is one rule per line") {
  Verdict v = prove(parse_sequent("A => A", LogicId::Classical));
  REQUIRE(v.provable());
  CHECK(derivation_text(*v.witness) == "Axiom: A => A\n");
}

TEST_CASE("exchange sensitivity: L forbids what MLL allows") {
  CHECK(!provable("A.B => B.A", LogicId::LambekL));
  CHECK(!provable("A.B => B.A", LogicId::LambekLEps));
  CHECK(provable("A*B => B*A", LogicId::MLL));
}

TEST_CASE("monotonicity along the hierarchy on an enumerated family") {
  FamilyBounds b;
  b.atoms = 2;
  b.depth = 1;
  b.max_ant = 2;
  b.max_succ = 1;
  // L-provable implies L_eps-provable
  enumerate_sequents(LogicId::LambekL, b, [&](const Sequent& s) {
    Verdict v = prove(s);
    if (v.provable()) {
      Sequent se = Sequent::lists(LogicId::LambekLEps, s.ant, s.succ);
      CHECK(prove(se).provable());
    }
    return false;
  });
  // MILL-provable implies MLL-provable under the identity translation
  enumerate_sequents(LogicId::MILL, b, [&](const Sequent& s) {
    Verdict v = prove(s);
    if (v.provable()) {
      Sequent se = Sequent::lists(LogicId::MLL, s.ant, s.succ);
      CHECK(prove(se).provable());
    }
    return false;
  });
}

TEST_CASE("budget exhaustion is reported distinctly") {
  ProveOptions tiny;
  tiny.budget = 2;
  Verdict v = prove(parse_sequent("~(A&B), A|B, B->A => ~B, A&(B|A)", LogicId::Classical), tiny);
  CHECK(v.status == ProveStatus::BudgetExhausted);
  CHECK(!v.witness);
}
