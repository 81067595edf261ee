#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spk/logic.hpp"

namespace spk {

enum class Sign { Pos, Neg };

inline Sign flip(Sign s) { return s == Sign::Pos ? Sign::Neg : Sign::Pos; }
inline char sign_char(Sign s) { return s == Sign::Pos ? '+' : '-'; }

// alpha = conjunctive (one-premise rule, row matrix, par link)
// beta  = disjunctive (branching rule, column matrix, times link)
enum class NodeClass { Alpha, Beta, Unary, AtomLeaf };

inline NodeClass classify(Conn c, Sign s) {
  bool pos = s == Sign::Pos;
  switch (c) {
    case Conn::Atom: return NodeClass::AtomLeaf;
    case Conn::Neg:
    case Conn::LinNeg: return NodeClass::Unary;
    case Conn::And: return pos ? NodeClass::Beta : NodeClass::Alpha;
    case Conn::Or: return pos ? NodeClass::Alpha : NodeClass::Beta;
    case Conn::Impl: return pos ? NodeClass::Alpha : NodeClass::Beta;
    case Conn::Tensor: return pos ? NodeClass::Beta : NodeClass::Alpha;
    case Conn::Par: return pos ? NodeClass::Alpha : NodeClass::Beta;
    case Conn::Lolli: return pos ? NodeClass::Alpha : NodeClass::Beta;
    case Conn::Prod: return pos ? NodeClass::Beta : NodeClass::Alpha;
    case Conn::Over: return pos ? NodeClass::Alpha : NodeClass::Beta;
    case Conn::Under: return pos ? NodeClass::Alpha : NodeClass::Beta;
  }
  return NodeClass::AtomLeaf;
}

// A signed formula occurrence within the decomposition forest of a sequent.
struct Position {
  int id = -1;
  Formula label;
  Sign sign = Sign::Neg;
  NodeClass cls = NodeClass::AtomLeaf;
  int parent = -1;
  int child[2] = {-1, -1};
  int nchildren = 0;
  int root_index = -1;       // index into forest.roots
  bool from_antecedent = false;
};

inline NodeClass classify(const Position& p) { return p.cls; }

struct DecompositionForest {
  LogicId logic = LogicId::Classical;
  std::vector<Position> positions;  // indexed by id; ids are DFS pre-order
  std::vector<int> roots;           // antecedent roots left-to-right, then succedent
  int ant_root_count = 0;
  std::vector<int> atoms;           // atomic positions, ascending id == geometric order

  const Position& at(int id) const { return positions[static_cast<size_t>(id)]; }

  // Positions of the subtree rooted at `id` (preorder).
  std::vector<int> subtree(int id) const {
    std::vector<int> out, stack{id};
    while (!stack.empty()) {
      int p = stack.back();
      stack.pop_back();
      out.push_back(p);
      const Position& pos = at(p);
      for (int i = pos.nchildren - 1; i >= 0; --i) stack.push_back(pos.child[i]);
    }
    return out;
  }
};

namespace detail {

// Children of a signed compound, in the geometric (stored) order.  The
// operand order is swapped relative to the written formula in the positive
// Lambek links only; all other logics keep the written order.
inline std::vector<std::pair<Formula, Sign>> signed_children(const Formula& f, Sign s) {
  switch (f.conn()) {
    case Conn::Atom: return {};
    case Conn::Neg:
    case Conn::LinNeg: return {{f.left(), flip(s)}};
    case Conn::And:
    case Conn::Or:
    case Conn::Tensor:
    case Conn::Par: return {{f.left(), s}, {f.right(), s}};
    case Conn::Impl:
    case Conn::Lolli: return {{f.left(), flip(s)}, {f.right(), s}};
    case Conn::Prod:
      if (s == Sign::Pos) return {{f.right(), s}, {f.left(), s}};
      return {{f.left(), s}, {f.right(), s}};
    case Conn::Over:  // X/Y: X keeps the sign, Y flips
      if (s == Sign::Pos) return {{f.right(), flip(s)}, {f.left(), s}};
      return {{f.left(), s}, {f.right(), flip(s)}};
    case Conn::Under:  // X\Y: X flips, Y keeps
      if (s == Sign::Pos) return {{f.right(), s}, {f.left(), flip(s)}};
      return {{f.left(), flip(s)}, {f.right(), s}};
  }
  return {};
}

inline int decompose_rec(DecompositionForest& forest, const Formula& f, Sign s, int parent,
                         int root_index, bool from_ant) {
  int id = static_cast<int>(forest.positions.size());
  forest.positions.push_back(Position{});
  {
    Position& p = forest.positions.back();
    p.id = id;
    p.label = f;
    p.sign = s;
    p.cls = classify(f.conn(), s);
    p.parent = parent;
    p.root_index = root_index;
    p.from_antecedent = from_ant;
  }
  if (f.is_atom()) {
    forest.atoms.push_back(id);
    return id;
  }
  auto kids = signed_children(f, s);
  for (size_t i = 0; i < kids.size(); ++i) {
    int cid = decompose_rec(forest, kids[i].first, kids[i].second, id, root_index, from_ant);
    forest.positions[static_cast<size_t>(id)].child[i] = cid;
    forest.positions[static_cast<size_t>(id)].nchildren = static_cast<int>(i + 1);
  }
  return id;
}

}  // namespace detail

// Signed decomposition of a sequent: antecedent roots signed -, succedent
// roots signed +.  Ids are assigned in preorder with children stored in
// geometric order, so ascending atom ids are the planarity leaf order.
inline DecompositionForest decompose(const Sequent& s) {
  s.validate();
  DecompositionForest forest;
  forest.logic = s.logic;
  std::vector<Formula> ant_formulas =
      s.logic == LogicId::NL ? s.ant_tree.leaves() : s.ant;
  for (const auto& f : ant_formulas) {
    int ri = static_cast<int>(forest.roots.size());
    forest.roots.push_back(detail::decompose_rec(forest, f, Sign::Neg, -1, ri, true));
  }
  forest.ant_root_count = static_cast<int>(forest.roots.size());
  for (const auto& f : s.succ) {
    int ri = static_cast<int>(forest.roots.size());
    forest.roots.push_back(detail::decompose_rec(forest, f, Sign::Pos, -1, ri, false));
  }
  return forest;
}

// Atoms by in-order traversal of each root, antecedent left-to-right then
// succedent; the order planarity is judged against.
inline std::vector<int> leaf_order(const DecompositionForest& forest) {
  return forest.atoms;  // preorder ids coincide with the in-order leaf walk
}

// Necessary condition for provability in the resource logics: every atom
// name occurs equally often with each sign.
inline bool atom_polarity_balanced(const DecompositionForest& forest) {
  std::map<std::string, int> balance;
  for (int a : forest.atoms)
    balance[forest.at(a).label.name()] += forest.at(a).sign == Sign::Pos ? 1 : -1;
  for (const auto& [name, n] : balance)
    if (n != 0) return false;
  return true;
}

}  // namespace spk
