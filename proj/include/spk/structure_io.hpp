#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "spk/proofnet.hpp"
#include "spk/syntax.hpp"

namespace spk {

// Line-oriented structure files:
//   logic <name>
//   position <id> <+|-> <formula>
//   dlink <times|par|unary> <conclusion> <premise> [premise]
//   axlink <a> <b>
//   clink <conclusion> <premise> <premise>
//   wlink <host> <weakened> <continuation>
// '#' starts a comment line.

inline void write_structure(std::ostream& os, const ProofStructure& ps) {
  os << "logic " << logic_name(ps.logic) << "\n";
  for (const auto& n : ps.nodes)
    os << "position " << n.id << ' ' << sign_char(n.sign) << ' ' << print_formula(n.label)
       << "\n";
  for (const auto& l : ps.links) {
    switch (l.kind) {
      case LinkKind::Times:
      case LinkKind::Par:
      case LinkKind::Unary:
        os << "dlink " << link_kind_name(l.kind) << ' ' << l.conclusions[0];
        for (int p : l.premises) os << ' ' << p;
        os << "\n";
        break;
      case LinkKind::Axiom:
        os << "axlink " << l.conclusions[0] << ' ' << l.conclusions[1] << "\n";
        break;
      case LinkKind::Contraction:
        os << "clink " << l.conclusions[0] << ' ' << l.premises[0] << ' ' << l.premises[1]
           << "\n";
        break;
      case LinkKind::Weakening:
        os << "wlink " << l.conclusions[0] << ' ' << l.conclusions[1] << ' ' << l.premises[0]
           << "\n";
        break;
    }
  }
}

inline std::string structure_text(const ProofStructure& ps) {
  std::ostringstream os;
  write_structure(os, ps);
  return os.str();
}

inline ProofStructure read_structure(std::istream& is) {
  ProofStructure ps;
  bool have_logic = false;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw Error("structure file line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "logic") {
      std::string name;
      ls >> name;
      auto id = logic_from_name(name);
      if (!id) fail("unknown logic '" + name + "'");
      ps.logic = *id;
      have_logic = true;
    } else if (word == "position") {
      if (!have_logic) fail("'logic' must come first");
      int id;
      std::string sign, formula;
      if (!(ls >> id >> sign) || !std::getline(ls, formula)) fail("malformed position line");
      if (sign != "+" && sign != "-") fail("sign must be + or -");
      size_t at = formula.find_first_not_of(' ');
      if (at == std::string::npos) fail("missing formula");
      Formula f = parse_formula(formula.substr(at), ps.logic);
      if (id != static_cast<int>(ps.nodes.size()))
        fail("position ids must be consecutive from 0");
      ps.nodes.push_back(StructNode{id, sign == "+" ? Sign::Pos : Sign::Neg, f, f.is_atom()});
    } else if (word == "dlink") {
      std::string kind;
      int concl, p1;
      if (!(ls >> kind >> concl >> p1)) fail("malformed dlink line");
      Link l;
      if (kind == "times")
        l.kind = LinkKind::Times;
      else if (kind == "par")
        l.kind = LinkKind::Par;
      else if (kind == "unary")
        l.kind = LinkKind::Unary;
      else
        fail("dlink kind must be times, par or unary");
      l.conclusions = {concl};
      l.premises = {p1};
      int p2;
      if (ls >> p2) l.premises.push_back(p2);
      if (l.kind == LinkKind::Unary && l.premises.size() != 1)
        throw MalformedStructuralLink("unary links take exactly one premise");
      if (l.kind != LinkKind::Unary && l.premises.size() != 2)
        throw MalformedStructuralLink("binary decomposition links take two premises");
      ps.links.push_back(l);
    } else if (word == "axlink") {
      int a, b;
      if (!(ls >> a >> b)) fail("malformed axlink line");
      Link l;
      l.kind = LinkKind::Axiom;
      l.conclusions = {a, b};
      ps.links.push_back(l);
    } else if (word == "clink") {
      int c, p1, p2;
      if (!(ls >> c >> p1 >> p2)) throw MalformedStructuralLink("clink takes 3 node ids");
      Link l;
      l.kind = LinkKind::Contraction;
      l.conclusions = {c};
      l.premises = {p1, p2};
      ps.links.push_back(l);
    } else if (word == "wlink") {
      int host, weakened, cont;
      if (!(ls >> host >> weakened >> cont))
        throw MalformedStructuralLink("wlink takes 3 node ids");
      Link l;
      l.kind = LinkKind::Weakening;
      l.conclusions = {host, weakened};
      l.premises = {cont};
      ps.links.push_back(l);
    } else {
      fail("unknown directive '" + word + "'");
    }
  }
  if (!have_logic) throw Error("structure file has no 'logic' line");
  for (const auto& l : ps.links)
    for (int id : l.conclusions)
      if (id < 0 || id >= static_cast<int>(ps.nodes.size()))
        throw Error("link references unknown position " + std::to_string(id));
  for (const auto& l : ps.links)
    for (int id : l.premises)
      if (id < 0 || id >= static_cast<int>(ps.nodes.size()))
        throw Error("link references unknown position " + std::to_string(id));
  // file-loaded structures recover a leaf order from the atom ids
  for (const auto& n : ps.nodes)
    if (n.is_atom) ps.leaf_order.push_back(n.id);
  return ps;
}

// DOT export: solid edges for times/unary/weakening, dotted for par and
// contraction; axiom links are unconstrained so they render as curves.
inline std::string to_dot(const ProofStructure& ps) {
  std::ostringstream os;
  os << "graph proof_structure {\n";
  os << "  graph [splines=curved];\n";
  os << "  node [shape=plain];\n";
  for (const auto& n : ps.nodes) {
    std::string label = n.label.is_atom() ? n.label.name() : "[" + print_formula(n.label) + "]";
    label += sign_char(n.sign);
    os << "  n" << n.id << " [label=\"" << label << "\"];\n";
  }
  for (const auto& l : ps.links) {
    switch (l.kind) {
      case LinkKind::Times:
      case LinkKind::Unary:
        for (int p : l.premises)
          os << "  n" << l.conclusions[0] << " -- n" << p << " [style=solid];\n";
        break;
      case LinkKind::Par:
      case LinkKind::Contraction:
        for (int p : l.premises)
          os << "  n" << l.conclusions[0] << " -- n" << p << " [style=dotted];\n";
        break;
      case LinkKind::Axiom:
        os << "  n" << l.conclusions[0] << " -- n" << l.conclusions[1]
           << " [style=solid, constraint=false];  // axiom\n";
        break;
      case LinkKind::Weakening:
        os << "  n" << l.conclusions[0] << " -- n" << l.conclusions[1] << " [style=solid];\n";
        os << "  n" << l.conclusions[0] << " -- n" << l.premises[0] << " [style=solid];\n";
        break;
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace spk
