#include <doctest.h>

#include <string>
#include <vector>

#include "spk/decompose.hpp"
#include "spk/syntax.hpp"

using namespace spk;

namespace {

std::string atoms_string(const DecompositionForest& f) {
  std::string out;
  for (int a : leaf_order(f)) {
    if (!out.empty()) out += ' ';
    out += f.at(a).label.name();
    out += sign_char(f.at(a).sign);
  }
  return out;
}

// Independent sign recomputation: walk from the root down to the atom,
// flipping once per negation and per under-the-arrow/slash operand step.
// Only the connective, the child slot and the sign computed so far are
// consulted, never the stored child signs.
Sign recomputed_sign(const DecompositionForest& f, int id) {
  std::vector<int> path{id};
  while (f.at(path.back()).parent >= 0) path.push_back(f.at(path.back()).parent);
  Sign sign = f.at(path.back()).sign;  // root sign: - antecedent, + succedent
  for (size_t k = path.size() - 1; k > 0; --k) {
    const Position& parent = f.at(path[k]);
    int slot = parent.child[0] == path[k - 1] ? 0 : 1;
    bool flips = false;
    switch (parent.label.conn()) {
      case Conn::Neg:
      case Conn::LinNeg: flips = true; break;
      case Conn::Impl:
      case Conn::Lolli: flips = slot == 0; break;
      case Conn::Over: flips = sign == Sign::Neg ? slot == 1 : slot == 0; break;
      case Conn::Under: flips = sign == Sign::Neg ? slot == 0 : slot == 1; break;
      default: break;
    }
    if (flips) sign = flip(sign);
  }
  return sign;
}

}  // namespace

TEST_CASE("decompose: the classical example sequent") {
  Sequent s = parse_sequent("~A, B->A => ~B", LogicId::Classical);
  DecompositionForest f = decompose(s);
  REQUIRE(f.roots.size() == 3);
  CHECK(f.ant_root_count == 2);
  CHECK(f.at(f.roots[0]).sign == Sign::Neg);
  CHECK(f.at(f.roots[1]).sign == Sign::Neg);
  CHECK(f.at(f.roots[2]).sign == Sign::Pos);
  // atoms: A+ (under ~A-), B+ A- (under (B->A)-), B- (under ~B+)
  CHECK(atoms_string(f) == "A+ B+ A- B-");
}

TEST_CASE("decompose: axiom sequent has two atomic roots") {
  for (LogicId logic : {LogicId::Classical, LogicId::MLL, LogicId::MILL, LogicId::LambekL,
                        LogicId::LambekLEps, LogicId::NL}) {
    Sequent s = parse_sequent("A => A", logic);
    DecompositionForest f = decompose(s);
    CHECK(f.roots.size() == 2);
    CHECK(atoms_string(f) == "A- A+");
  }
}

TEST_CASE("decompose: L formula with the positive-link operand swap") {
  // (C.((C\A)/B))- decomposes with leaves C- C+ A- B+ left to right
  Sequent s = parse_sequent("C.(C\\A)/B, B => A", LogicId::LambekL);
  DecompositionForest f = decompose(s);
  CHECK(atoms_string(f) == "C- C+ A- B+ B- A+");

  const Position& root = f.at(f.roots[0]);
  CHECK(root.label.conn() == Conn::Prod);
  CHECK(root.cls == NodeClass::Alpha);  // (.)- is par-like
}

TEST_CASE("decompose: positive product swaps its operands") {
  Sequent s = parse_sequent("A.B => B.A", LogicId::LambekL);
  DecompositionForest f = decompose(s);
  // (A.B)- keeps written order; (B.A)+ swaps to A+ B+
  CHECK(atoms_string(f) == "A- B- A+ B+");
}

TEST_CASE("decompose: NL Example 1 leaf order") {
  Sequent s = parse_sequent("(A , ((A\\B)/C , C)) => B", LogicId::NL);
  DecompositionForest f = decompose(s);
  CHECK(atoms_string(f) == "A- A+ B- C+ C- B+");
}

TEST_CASE("decompose: MLL example signs") {
  Sequent s = parse_sequent("A@B, (B*C)^ => C-oA", LogicId::MLL);
  DecompositionForest f = decompose(s);
  CHECK(atoms_string(f) == "A- B- B+ C+ C- A+");
}

TEST_CASE("classify follows the alpha/beta tables") {
  auto cls = [](const char* text, LogicId logic, Sign sign) {
    Formula f = parse_formula(text, logic);
    return classify(f.conn(), sign);
  };
  // classical
  CHECK(cls("A->B", LogicId::Classical, Sign::Neg) == NodeClass::Beta);
  CHECK(cls("A->B", LogicId::Classical, Sign::Pos) == NodeClass::Alpha);
  CHECK(cls("A&B", LogicId::Classical, Sign::Neg) == NodeClass::Alpha);
  CHECK(cls("A&B", LogicId::Classical, Sign::Pos) == NodeClass::Beta);
  CHECK(cls("A|B", LogicId::Classical, Sign::Neg) == NodeClass::Beta);
  CHECK(cls("A|B", LogicId::Classical, Sign::Pos) == NodeClass::Alpha);
  CHECK(cls("~A", LogicId::Classical, Sign::Pos) == NodeClass::Unary);
  // linear / Lambek
  CHECK(cls("A@B", LogicId::MLL, Sign::Pos) == NodeClass::Alpha);
  CHECK(cls("A@B", LogicId::MLL, Sign::Neg) == NodeClass::Beta);
  CHECK(cls("A*B", LogicId::MLL, Sign::Neg) == NodeClass::Alpha);
  CHECK(cls("A*B", LogicId::MLL, Sign::Pos) == NodeClass::Beta);
  CHECK(cls("A-oB", LogicId::MLL, Sign::Pos) == NodeClass::Alpha);
  CHECK(cls("A-oB", LogicId::MLL, Sign::Neg) == NodeClass::Beta);
  CHECK(cls("A^", LogicId::MLL, Sign::Neg) == NodeClass::Unary);
  CHECK(cls("A/B", LogicId::NL, Sign::Pos) == NodeClass::Alpha);
  CHECK(cls("A/B", LogicId::NL, Sign::Neg) == NodeClass::Beta);
  CHECK(cls("A\\B", LogicId::NL, Sign::Pos) == NodeClass::Alpha);
  CHECK(cls("A\\B", LogicId::NL, Sign::Neg) == NodeClass::Beta);
  CHECK(cls("A.B", LogicId::LambekL, Sign::Neg) == NodeClass::Alpha);
  CHECK(cls("A.B", LogicId::LambekL, Sign::Pos) == NodeClass::Beta);
  // atoms
  Sequent ax = parse_sequent("A => A", LogicId::Classical);
  DecompositionForest f = decompose(ax);
  CHECK(classify(f.at(f.roots[0])) == NodeClass::AtomLeaf);
}

TEST_CASE("sign of every atom agrees with an independent recomputation") {
  struct Case {
    const char* text;
    LogicId logic;
  } cases[] = {
      {"~A, B->A => ~B", LogicId::Classical},
      {"~(A&~B), A|B => A->B, ~~A", LogicId::Classical},
      {"A@B, (B*C)^ => C-oA", LogicId::MLL},
      {"C.(C\\A)/B, B => A", LogicId::LambekL},
      {"(A , ((A\\B)/(C/D) , C/D)) => B", LogicId::NL},
  };
  for (const auto& c : cases) {
    DecompositionForest f = decompose(parse_sequent(c.text, c.logic));
    for (int a : f.atoms) CHECK(f.at(a).sign == recomputed_sign(f, a));
  }
}

TEST_CASE("decompose is deterministic") {
  Sequent s1 = parse_sequent("(A , ((A\\B)/C , C)) => B", LogicId::NL);
  Sequent s2 = parse_sequent("(A , ((A\\B)/C , C)) => B", LogicId::NL);
  DecompositionForest f1 = decompose(s1), f2 = decompose(s2);
  REQUIRE(f1.positions.size() == f2.positions.size());
  for (size_t i = 0; i < f1.positions.size(); ++i) {
    CHECK(f1.positions[i].label == f2.positions[i].label);
    CHECK(f1.positions[i].sign == f2.positions[i].sign);
    CHECK(f1.positions[i].parent == f2.positions[i].parent);
  }
}

TEST_CASE("atom polarity balance is a fast provability filter") {
  CHECK(atom_polarity_balanced(decompose(parse_sequent("A => A", LogicId::MLL))));
  CHECK(!atom_polarity_balanced(decompose(parse_sequent("A => A*A", LogicId::MLL))));
  CHECK(!atom_polarity_balanced(decompose(parse_sequent("A => B", LogicId::MILL))));
  CHECK(atom_polarity_balanced(decompose(parse_sequent("A@B, (B*C)^ => C-oA", LogicId::MLL))));
}

TEST_CASE("illegal connectives are rejected per logic") {
  CHECK_THROWS_AS(parse_sequent("A&B => A", LogicId::MLL), IllegalConnective);
  CHECK_THROWS_AS(parse_sequent("A@B => A", LogicId::MILL), IllegalConnective);
  CHECK_THROWS_AS(parse_sequent("A^ => A", LogicId::MILL), IllegalConnective);
  CHECK_THROWS_AS(parse_sequent("A.B => A", LogicId::NL), IllegalConnective);
  CHECK_THROWS_AS(parse_sequent("~A => A", LogicId::LambekL), IllegalConnective);
}
