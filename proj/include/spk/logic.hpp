#pragma once

#include <cassert>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spk/errors.hpp"

namespace spk {

enum class LogicId { Classical, MLL, MILL, LambekL, LambekLEps, NL };

inline const char* logic_name(LogicId id) {
  switch (id) {
    case LogicId::Classical: return "classical";
    case LogicId::MLL: return "mll";
    case LogicId::MILL: return "mill";
    case LogicId::LambekL: return "l";
    case LogicId::LambekLEps: return "leps";
    case LogicId::NL: return "nl";
  }
  return "?";
}

inline std::optional<LogicId> logic_from_name(const std::string& s) {
  if (s == "classical") return LogicId::Classical;
  if (s == "mll") return LogicId::MLL;
  if (s == "mill") return LogicId::MILL;
  if (s == "l") return LogicId::LambekL;
  if (s == "leps" || s == "l_eps") return LogicId::LambekLEps;
  if (s == "nl") return LogicId::NL;
  return std::nullopt;
}

inline bool single_conclusion(LogicId id) {
  return id == LogicId::MILL || id == LogicId::LambekL || id == LogicId::LambekLEps ||
         id == LogicId::NL;
}

enum class Conn {
  Atom,
  Neg,     // classical ~, prefix
  And,     // &
  Or,      // |
  Impl,    // ->
  LinNeg,  // ^, postfix linear negation
  Tensor,  // *
  Par,     // @
  Lolli,   // -o
  Over,    // /  (X/Y: X over Y)
  Under,   // \  (X\Y: X under Y)
  Prod     // .  (associative Lambek product)
};

inline int conn_arity(Conn c) {
  switch (c) {
    case Conn::Atom: return 0;
    case Conn::Neg:
    case Conn::LinNeg: return 1;
    default: return 2;
  }
}

inline const char* conn_token(Conn c) {
  switch (c) {
    case Conn::Atom: return "";
    case Conn::Neg: return "~";
    case Conn::And: return "&";
    case Conn::Or: return "|";
    case Conn::Impl: return "->";
    case Conn::LinNeg: return "^";
    case Conn::Tensor: return "*";
    case Conn::Par: return "@";
    case Conn::Lolli: return "-o";
    case Conn::Over: return "/";
    case Conn::Under: return "\\";
    case Conn::Prod: return ".";
  }
  return "?";
}

inline bool connective_allowed(LogicId logic, Conn c) {
  if (c == Conn::Atom) return true;
  switch (logic) {
    case LogicId::Classical:
      return c == Conn::Neg || c == Conn::And || c == Conn::Or || c == Conn::Impl;
    case LogicId::MLL:
      return c == Conn::LinNeg || c == Conn::Tensor || c == Conn::Par || c == Conn::Lolli;
    case LogicId::MILL:
      return c == Conn::Tensor || c == Conn::Lolli;
    case LogicId::LambekL:
    case LogicId::LambekLEps:
      return c == Conn::Over || c == Conn::Under || c == Conn::Prod;
    case LogicId::NL:
      return c == Conn::Over || c == Conn::Under;
  }
  return false;
}

// Immutable formula tree with shared subterms. Atom names are arbitrary
// identifiers compared by exact string equality.
class Formula {
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  struct Node {
    Conn conn;
    std::string name;  // atoms only
    NodePtr left, right;
  };
  NodePtr node_;
  explicit Formula(NodePtr n) : node_(std::move(n)) {}

 public:
  Formula() = default;

  static Formula atom(std::string name) {
    return Formula(std::make_shared<Node>(Node{Conn::Atom, std::move(name), nullptr, nullptr}));
  }
  static Formula unary(Conn c, Formula operand) {
    assert(conn_arity(c) == 1 && operand.valid());
    return Formula(std::make_shared<Node>(Node{c, {}, std::move(operand.node_), nullptr}));
  }
  static Formula binary(Conn c, Formula l, Formula r) {
    assert(conn_arity(c) == 2 && l.valid() && r.valid());
    return Formula(std::make_shared<Node>(Node{c, {}, std::move(l.node_), std::move(r.node_)}));
  }

  bool valid() const { return node_ != nullptr; }
  Conn conn() const { return node_->conn; }
  bool is_atom() const { return node_->conn == Conn::Atom; }
  const std::string& name() const { return node_->name; }
  Formula left() const { return Formula(node_->left); }
  Formula right() const { return Formula(node_->right); }
  int arity() const { return conn_arity(node_->conn); }

  int compare(const Formula& o) const {
    if (node_ == o.node_) return 0;
    if (!node_) return o.node_ ? -1 : 0;
    if (!o.node_) return 1;
    if (node_->conn != o.node_->conn)
      return static_cast<int>(node_->conn) < static_cast<int>(o.node_->conn) ? -1 : 1;
    if (node_->conn == Conn::Atom) return node_->name.compare(o.node_->name);
    int a = arity();
    if (a >= 1) {
      int c = left().compare(o.left());
      if (c != 0) return c;
    }
    if (a == 2) return right().compare(o.right());
    return 0;
  }
  bool operator==(const Formula& o) const { return compare(o) == 0; }
  bool operator!=(const Formula& o) const { return compare(o) != 0; }
  bool operator<(const Formula& o) const { return compare(o) < 0; }

  int connective_count() const {
    if (!valid() || is_atom()) return 0;
    int n = 1;
    if (arity() >= 1) n += left().connective_count();
    if (arity() == 2) n += right().connective_count();
    return n;
  }

  void check_logic(LogicId logic) const {
    if (!connective_allowed(logic, conn()))
      throw IllegalConnective(std::string("connective '") + conn_token(conn()) +
                              "' is not available in logic " + logic_name(logic));
    if (arity() >= 1) left().check_logic(logic);
    if (arity() == 2) right().check_logic(logic);
  }

  // true iff o occurs as a subformula of this (reflexive)
  bool has_subformula(const Formula& o) const {
    if (*this == o) return true;
    if (is_atom()) return false;
    if (arity() >= 1 && left().has_subformula(o)) return true;
    return arity() == 2 && right().has_subformula(o);
  }
};

// Binary antecedent structure for NL sequents; leaves hold formulae.
class StructTree {
  struct Node {
    Formula leaf;  // valid iff this is a leaf
    std::shared_ptr<const Node> l, r;
  };
  std::shared_ptr<const Node> node_;

 public:
  StructTree() = default;

  static StructTree leaf(Formula f) {
    StructTree t;
    t.node_ = std::make_shared<Node>(Node{std::move(f), nullptr, nullptr});
    return t;
  }
  static StructTree pair(StructTree l, StructTree r) {
    assert(l.valid() && r.valid());
    StructTree t;
    auto n = std::make_shared<Node>();
    n->l = l.node_;
    n->r = r.node_;
    t.node_ = n;
    return t;
  }

  bool valid() const { return node_ != nullptr; }
  bool is_leaf() const { return node_->leaf.valid(); }
  const Formula& formula() const { return node_->leaf; }
  StructTree left() const {
    StructTree t;
    t.node_ = node_->l;
    return t;
  }
  StructTree right() const {
    StructTree t;
    t.node_ = node_->r;
    return t;
  }

  void collect_leaves(std::vector<Formula>& out) const {
    if (is_leaf()) {
      out.push_back(node_->leaf);
    } else {
      left().collect_leaves(out);
      right().collect_leaves(out);
    }
  }
  std::vector<Formula> leaves() const {
    std::vector<Formula> out;
    collect_leaves(out);
    return out;
  }
  int leaf_count() const {
    if (is_leaf()) return 1;
    return left().leaf_count() + right().leaf_count();
  }

  int compare(const StructTree& o) const {
    if (node_ == o.node_) return 0;
    if (is_leaf() != o.is_leaf()) return is_leaf() ? -1 : 1;
    if (is_leaf()) return formula().compare(o.formula());
    int c = left().compare(o.left());
    if (c != 0) return c;
    return right().compare(o.right());
  }
  bool operator==(const StructTree& o) const { return compare(o) == 0; }
  bool operator!=(const StructTree& o) const { return compare(o) != 0; }

  // Rebuild with the subtree at `path` (0 = left, 1 = right) replaced.
  StructTree replace(const std::vector<int>& path, const StructTree& sub, size_t i = 0) const {
    if (i == path.size()) return sub;
    if (path[i] == 0) return pair(left().replace(path, sub, i + 1), right());
    return pair(left(), right().replace(path, sub, i + 1));
  }
};

// A sequent of one of the six logics.  List-shaped logics use `ant`; NL uses
// `ant_tree`.  Multiset/set readings of the lists are applied by the engines,
// the stored order is the written order.
struct Sequent {
  LogicId logic = LogicId::Classical;
  std::vector<Formula> ant;
  StructTree ant_tree;  // NL only
  std::vector<Formula> succ;

  static Sequent lists(LogicId logic, std::vector<Formula> ant, std::vector<Formula> succ) {
    Sequent s;
    s.logic = logic;
    s.ant = std::move(ant);
    s.succ = std::move(succ);
    s.validate();
    return s;
  }
  static Sequent nl(StructTree ant, Formula succ) {
    Sequent s;
    s.logic = LogicId::NL;
    s.ant_tree = std::move(ant);
    s.succ = {std::move(succ)};
    s.validate();
    return s;
  }

  void validate() const {
    if (logic == LogicId::NL) {
      if (!ant_tree.valid())
        throw EmptyAntecedent("NL sequents require a nonempty antecedent tree");
      if (!ant.empty()) throw Error("NL sequents carry a tree antecedent, not a list");
      for (const auto& f : ant_tree.leaves()) f.check_logic(logic);
    } else {
      if (ant_tree.valid()) throw Error("only NL sequents carry a tree antecedent");
      if (logic == LogicId::LambekL && ant.empty())
        throw EmptyAntecedent("L (without empty antecedents) requires a nonempty antecedent");
      for (const auto& f : ant) f.check_logic(logic);
    }
    if (single_conclusion(logic) && succ.size() != 1)
      throw MultipleSuccedents(std::string(logic_name(logic)) +
                               " sequents have exactly one succedent formula");
    for (const auto& f : succ) f.check_logic(logic);
  }

  int compare(const Sequent& o) const {
    if (logic != o.logic) return logic < o.logic ? -1 : 1;
    if (logic == LogicId::NL) {
      int c = ant_tree.compare(o.ant_tree);
      if (c != 0) return c;
    } else {
      if (ant.size() != o.ant.size()) return ant.size() < o.ant.size() ? -1 : 1;
      for (size_t i = 0; i < ant.size(); ++i) {
        int c = ant[i].compare(o.ant[i]);
        if (c != 0) return c;
      }
    }
    if (succ.size() != o.succ.size()) return succ.size() < o.succ.size() ? -1 : 1;
    for (size_t i = 0; i < succ.size(); ++i) {
      int c = succ[i].compare(o.succ[i]);
      if (c != 0) return c;
    }
    return 0;
  }
  bool operator==(const Sequent& o) const { return compare(o) == 0; }
  bool operator!=(const Sequent& o) const { return compare(o) != 0; }
};

}  // namespace spk
