#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spk/decompose.hpp"
#include "spk/logic.hpp"
#include "spk/syntax.hpp"

namespace spk {

// Proof structures: the decomposition link graph of a sequent plus an
// axiom-link matching.  times links are the disjunctive (beta) ones, par
// links the conjunctive (alpha) ones; contraction links act as par,
// weakening links as times.

enum class LinkKind { Times, Par, Unary, Axiom, Contraction, Weakening };

inline const char* link_kind_name(LinkKind k) {
  switch (k) {
    case LinkKind::Times: return "times";
    case LinkKind::Par: return "par";
    case LinkKind::Unary: return "unary";
    case LinkKind::Axiom: return "axiom";
    case LinkKind::Contraction: return "contraction";
    case LinkKind::Weakening: return "weakening";
  }
  return "?";
}

struct Link {
  LinkKind kind = LinkKind::Times;
  // decomposition: 1 conclusion, 1-2 premises; axiom: 2 conclusions;
  // contraction: 1 conclusion, 2 premises; weakening: 2 conclusions
  // (host first, weakened second), 1 premise (the host's continuation).
  std::vector<int> conclusions;
  std::vector<int> premises;
};

struct StructNode {
  int id = -1;
  Sign sign = Sign::Neg;
  Formula label;
  bool is_atom = false;
};

struct ProofStructure {
  LogicId logic = LogicId::Classical;
  std::shared_ptr<const DecompositionForest> forest;  // absent for file-loaded structures
  std::vector<StructNode> nodes;                      // indexed by id
  std::vector<Link> links;
  std::vector<int> leaf_order;  // geometric atom order (forest-derived)

  int partner_of(int id) const {
    for (const auto& l : links)
      if (l.kind == LinkKind::Axiom) {
        if (l.conclusions[0] == id) return l.conclusions[1];
        if (l.conclusions[1] == id) return l.conclusions[0];
      }
    return -1;
  }
  std::vector<Link> axiom_links() const {
    std::vector<Link> out;
    for (const auto& l : links)
      if (l.kind == LinkKind::Axiom) out.push_back(l);
    return out;
  }
};

enum class FailureKind { None, Cycle, Disconnected, Nonplanar, Subnet, Boundary };

inline const char* failure_name(FailureKind f) {
  switch (f) {
    case FailureKind::None: return "none";
    case FailureKind::Cycle: return "cycle";
    case FailureKind::Disconnected: return "disconnected";
    case FailureKind::Nonplanar: return "nonplanar";
    case FailureKind::Subnet: return "subnet";
    case FailureKind::Boundary: return "boundary";
  }
  return "?";
}

struct NetVerdict {
  bool is_net = false;
  FailureKind failure = FailureKind::None;
  std::string detail;
  long switchings = 0;         // dr_check: switchings examined
  long contraction_steps = 0;  // contraction_check: rule applications
};

// ------------------------------------------------------------ construction

inline ProofStructure build_skeleton(const DecompositionForest& forest) {
  ProofStructure ps;
  ps.logic = forest.logic;
  ps.forest = std::make_shared<DecompositionForest>(forest);
  ps.leaf_order = forest.atoms;
  for (const auto& p : forest.positions) {
    ps.nodes.push_back(StructNode{p.id, p.sign, p.label, p.cls == NodeClass::AtomLeaf});
    if (p.cls == NodeClass::AtomLeaf) continue;
    Link l;
    l.kind = p.cls == NodeClass::Alpha ? LinkKind::Par
             : p.cls == NodeClass::Beta ? LinkKind::Times
                                        : LinkKind::Unary;
    l.conclusions = {p.id};
    for (int i = 0; i < p.nchildren; ++i) l.premises.push_back(p.child[i]);
    ps.links.push_back(l);
  }
  return ps;
}

inline ProofStructure build_skeleton(const Sequent& s) { return build_skeleton(decompose(s)); }

namespace detail {

inline bool pairs_cross(int a, int b, int c, int d) {
  if (a > b) std::swap(a, b);
  if (c > d) std::swap(c, d);
  if (a > c) {
    std::swap(a, c);
    std::swap(b, d);
  }
  return c < b && b < d;  // a < c < b < d
}

}  // namespace detail

// All perfect matchings pairing dual atoms label by label, lexicographic
// over position ids.  With planar_only, only non-crossing matchings w.r.t.
// the leaf order are produced.  fn returns true to stop the stream.
inline long enumerate_linkings(const ProofStructure& skeleton, bool planar_only,
                               const std::function<bool(const ProofStructure&)>& fn) {
  std::vector<int> atom_ids;
  for (const auto& n : skeleton.nodes)
    if (n.is_atom) atom_ids.push_back(n.id);
  std::sort(atom_ids.begin(), atom_ids.end());

  std::map<int, int> order_index;  // node id -> leaf order rank
  for (size_t i = 0; i < skeleton.leaf_order.size(); ++i)
    order_index[skeleton.leaf_order[i]] = static_cast<int>(i);

  std::map<std::string, int> balance;
  for (int a : atom_ids) {
    const auto& n = skeleton.nodes[static_cast<size_t>(a)];
    balance[n.label.name()] += n.sign == Sign::Pos ? 1 : -1;
  }
  for (auto& [name, v] : balance)
    if (v != 0) return 0;  // no perfect matching exists

  long emitted = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<bool> used(skeleton.nodes.size(), false);
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    while (i < atom_ids.size() && used[static_cast<size_t>(atom_ids[i])]) ++i;
    if (i == atom_ids.size()) {
      ProofStructure ps = skeleton;
      for (auto [a, b] : pairs) {
        Link ax;
        ax.kind = LinkKind::Axiom;
        ax.conclusions = {a, b};
        ps.links.push_back(ax);
      }
      ++emitted;
      return fn(ps);
    }
    int a = atom_ids[i];
    const auto& na = skeleton.nodes[static_cast<size_t>(a)];
    used[static_cast<size_t>(a)] = true;
    for (size_t j = i + 1; j < atom_ids.size(); ++j) {
      int b = atom_ids[j];
      if (used[static_cast<size_t>(b)]) continue;
      const auto& nb = skeleton.nodes[static_cast<size_t>(b)];
      if (nb.label != na.label || nb.sign == na.sign) continue;
      if (planar_only) {
        bool crossing = false;
        for (auto [x, y] : pairs)
          if (detail::pairs_cross(order_index[x], order_index[y], order_index[a],
                                  order_index[b])) {
            crossing = true;
            break;
          }
        if (crossing) continue;
      }
      used[static_cast<size_t>(b)] = true;
      pairs.emplace_back(a, b);
      if (rec(i + 1)) {
        used[static_cast<size_t>(b)] = false;
        used[static_cast<size_t>(a)] = false;
        pairs.pop_back();
        return true;
      }
      pairs.pop_back();
      used[static_cast<size_t>(b)] = false;
    }
    used[static_cast<size_t>(a)] = false;
    return false;
  };
  rec(0);
  return emitted;
}

// --------------------------------------------------------------- the graph

namespace detail {

struct Edge {
  int u, v;
  bool par;  // switchable premise edge of a par-kind link
  int group = -1;  // par links: index of the switch group
};

struct NetGraph {
  std::vector<int> vertices;
  std::vector<Edge> edges;
  int groups = 0;  // number of par-kind links (= switch choices)
};

inline NetGraph to_graph(const ProofStructure& ps) {
  NetGraph g;
  for (const auto& n : ps.nodes) g.vertices.push_back(n.id);
  for (const auto& l : ps.links) {
    switch (l.kind) {
      case LinkKind::Times:
      case LinkKind::Unary:
        for (int p : l.premises) g.edges.push_back(Edge{l.conclusions[0], p, false, -1});
        break;
      case LinkKind::Par:
      case LinkKind::Contraction: {
        int grp = g.groups++;
        for (int p : l.premises) g.edges.push_back(Edge{l.conclusions[0], p, true, grp});
        break;
      }
      case LinkKind::Axiom:
        g.edges.push_back(Edge{l.conclusions[0], l.conclusions[1], false, -1});
        break;
      case LinkKind::Weakening:
        // host connects to the weakened formula and to its continuation
        g.edges.push_back(Edge{l.conclusions[0], l.conclusions[1], false, -1});
        g.edges.push_back(Edge{l.conclusions[0], l.premises[0], false, -1});
        break;
    }
  }
  return g;
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(size_t n) : p(n) {
    for (size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
  }
  int find(int x) { return p[static_cast<size_t>(x)] == x ? x : p[static_cast<size_t>(x)] = find(p[static_cast<size_t>(x)]); }
  bool join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[static_cast<size_t>(a)] = b;
    return true;
  }
};

}  // namespace detail

inline void require_matching_complete(const ProofStructure& ps) {
  std::set<int> matched;
  std::set<int> absorbed;  // weakened conclusions need no axiom link
  for (const auto& l : ps.links) {
    if (l.kind == LinkKind::Axiom) {
      matched.insert(l.conclusions[0]);
      matched.insert(l.conclusions[1]);
    }
    if (l.kind == LinkKind::Weakening) absorbed.insert(l.conclusions[1]);
    if (l.kind == LinkKind::Contraction) absorbed.insert(l.conclusions[0]);
  }
  std::set<int> premise_of;
  for (const auto& l : ps.links)
    for (int p : l.premises) premise_of.insert(p);
  for (const auto& n : ps.nodes) {
    if (!n.is_atom) continue;
    bool needs_axiom = !absorbed.count(n.id);
    // atoms that are premises of unary/decomposition links still end in an
    // axiom unless a structural link re-homes them
    if (needs_axiom && !matched.count(n.id)) {
      bool is_weak_host = false;
      for (const auto& l : ps.links)
        if (l.kind == LinkKind::Weakening && l.conclusions[0] == n.id) is_weak_host = true;
      if (!is_weak_host)
        throw Error("proof structure is missing an axiom link for atom node " +
                    std::to_string(n.id));
    }
  }
}

// Danos-Regnier: every switching (one premise edge kept per par-kind link)
// must be a connected acyclic graph.
inline NetVerdict dr_check(const ProofStructure& ps) {
  detail::NetGraph g = detail::to_graph(ps);
  NetVerdict v;
  if (g.groups > 24) throw ResourceLimit("too many par links for switching enumeration");
  long total = 1L << g.groups;
  std::map<int, size_t> vid;
  for (size_t i = 0; i < g.vertices.size(); ++i) vid[g.vertices[i]] = i;
  for (long mask = 0; mask < total; ++mask) {
    ++v.switchings;
    detail::Dsu dsu(g.vertices.size());
    size_t kept = 0;
    bool cyclic = false;
    std::vector<int> group_seen(static_cast<size_t>(g.groups), 0);
    for (const auto& e : g.edges) {
      bool keep = true;
      if (e.par) {
        int pick = (mask >> e.group) & 1;
        keep = group_seen[static_cast<size_t>(e.group)]++ == pick;
      }
      if (!keep) continue;
      ++kept;
      if (!dsu.join(static_cast<int>(vid[e.u]), static_cast<int>(vid[e.v]))) cyclic = true;
    }
    if (cyclic) {
      v.is_net = false;
      v.failure = FailureKind::Cycle;
      v.detail = "switching " + std::to_string(mask) + " contains a cycle";
      return v;
    }
    if (kept + 1 != g.vertices.size()) {
      v.is_net = false;
      v.failure = FailureKind::Disconnected;
      v.detail = "switching " + std::to_string(mask) + " is disconnected";
      return v;
    }
  }
  v.is_net = true;
  return v;
}

// Danos contraction: times edges merge their endpoints, and the two par
// edges of one link become a single times edge once they connect the same
// two vertices (which can only result from previous contractions).  A net
// contracts to a single vertex with no edges left; each step removes an
// edge, so steps <= initial edge count.
inline NetVerdict contraction_check(const ProofStructure& ps) {
  detail::NetGraph g = detail::to_graph(ps);
  NetVerdict v;
  struct E {
    int u, v;
    bool par;
    int group;
    bool alive = true;
  };
  std::vector<E> edges;
  for (const auto& e : g.edges) edges.push_back(E{e.u, e.v, e.par, e.group, true});
  std::map<int, int> repr;
  for (int x : g.vertices) repr[x] = x;
  std::function<int(int)> find = [&](int x) {
    return repr[x] == x ? x : repr[x] = find(repr[x]);
  };

  bool progress = true;
  while (progress) {
    progress = false;
    // rule 1: contract a times edge between distinct vertices
    for (auto& e : edges) {
      if (!e.alive || e.par) continue;
      int a = find(e.u), b = find(e.v);
      if (a == b) continue;  // a times loop can never contract
      repr[a] = b;
      e.alive = false;
      ++v.contraction_steps;
      progress = true;
    }
    if (progress) continue;
    // rule 2: a par link whose two edges now join the same pair of vertices
    // turns into one times edge
    for (size_t i = 0; i < edges.size() && !progress; ++i) {
      if (!edges[i].alive || !edges[i].par) continue;
      for (size_t j = i + 1; j < edges.size(); ++j) {
        if (!edges[j].alive || !edges[j].par || edges[j].group != edges[i].group) continue;
        int a1 = find(edges[i].u), b1 = find(edges[i].v);
        int a2 = find(edges[j].u), b2 = find(edges[j].v);
        if ((a1 == a2 && b1 == b2) || (a1 == b2 && b1 == a2)) {
          edges[j].alive = false;
          edges[i].par = false;
          ++v.contraction_steps;
          progress = true;
        }
        break;  // a group has exactly two edges
      }
    }
  }
  std::set<int> remaining;
  for (int x : g.vertices) remaining.insert(find(x));
  long live_edges = 0;
  for (const auto& e : edges)
    if (e.alive) ++live_edges;
  v.is_net = remaining.size() == 1 && live_edges == 0;
  if (!v.is_net) {
    v.failure = live_edges > 0 && remaining.size() == 1 ? FailureKind::Cycle
                                                        : FailureKind::Disconnected;
    v.detail = "fixed point: " + std::to_string(remaining.size()) + " vertices, " +
               std::to_string(live_edges) + " edges";
  }
  return v;
}

// Roorda: in the Lambek systems the axiom matching must additionally be
// non-crossing over the decomposition leaf order.
inline NetVerdict planarity_check(const ProofStructure& ps) {
  if (ps.logic != LogicId::LambekL && ps.logic != LogicId::LambekLEps &&
      ps.logic != LogicId::NL)
    throw UnsupportedLogic("planarity is only meaningful for L, L_eps and NL");
  std::map<int, int> order_index;
  for (size_t i = 0; i < ps.leaf_order.size(); ++i)
    order_index[ps.leaf_order[i]] = static_cast<int>(i);
  auto axioms = ps.axiom_links();
  NetVerdict v;
  for (size_t i = 0; i < axioms.size(); ++i)
    for (size_t j = i + 1; j < axioms.size(); ++j) {
      int a = order_index[axioms[i].conclusions[0]], b = order_index[axioms[i].conclusions[1]];
      int c = order_index[axioms[j].conclusions[0]], d = order_index[axioms[j].conclusions[1]];
      if (detail::pairs_cross(a, b, c, d)) {
        v.is_net = false;
        v.failure = FailureKind::Nonplanar;
        v.detail = "axiom links (" + std::to_string(a) + "," + std::to_string(b) + ") and (" +
                   std::to_string(c) + "," + std::to_string(d) + ") cross";
        return v;
      }
    }
  v.is_net = true;
  return v;
}

// Every subnet (down-closed along decomposition links, axiom links internal)
// must have at least two conclusions; this bars hidden empty-antecedent
// subderivations.  A subnet with exactly one conclusion is necessarily the
// full decomposition subtree of its root, so checking subtrees is exhaustive.
inline NetVerdict subnet_check(const ProofStructure& ps) {
  if (ps.logic != LogicId::LambekL && ps.logic != LogicId::NL)
    throw UnsupportedLogic("the subnet condition applies to L (without empty antecedents) and NL");
  const auto& forest = *ps.forest;
  NetVerdict v;
  for (const auto& p : forest.positions) {
    auto sub = forest.subtree(p.id);
    std::set<int> inside(sub.begin(), sub.end());
    bool closed = true;
    for (int id : sub) {
      if (forest.at(id).cls != NodeClass::AtomLeaf) continue;
      int partner = ps.partner_of(id);
      if (partner < 0 || !inside.count(partner)) {
        closed = false;
        break;
      }
    }
    if (closed) {
      v.is_net = false;
      v.failure = FailureKind::Subnet;
      v.detail = "subtree of " + print_formula(p.label) + sign_char(p.sign) +
                 " is a subnet with a single conclusion";
      return v;
    }
  }
  v.is_net = true;
  return v;
}

// ------------------------------------------------------------ NL boundaries

struct Boundary {
  std::string owner;         // printed antecedent subtree the parens belong to
  std::set<int> members;     // compound and atomic positions inside
};

namespace detail {

// Grouping tree over decomposition positions: the written antecedent
// parentheses plus the implicit pair each succedent slash introduces (the
// right rules are invertible, so Gamma => X\Y regroups as (X . Gamma) => Y
// and Gamma => Y/X as (Gamma . X) => Y; the rotated leaf order leaves
// planarity untouched).
struct GroupNode {
  int pos = -1;  // leaf: a decomposition position
  std::shared_ptr<GroupNode> left, right;
  bool is_leaf() const { return pos >= 0; }
};
using GroupPtr = std::shared_ptr<GroupNode>;

inline GroupPtr group_leaf(int pos) {
  auto n = std::make_shared<GroupNode>();
  n->pos = pos;
  return n;
}
inline GroupPtr group_pair(GroupPtr l, GroupPtr r) {
  auto n = std::make_shared<GroupNode>();
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

inline GroupPtr group_of_tree(const StructTree& t, int& next_root,
                              const DecompositionForest& forest) {
  if (t.is_leaf()) return group_leaf(forest.roots[static_cast<size_t>(next_root++)]);
  GroupPtr l = group_of_tree(t.left(), next_root, forest);
  GroupPtr r = group_of_tree(t.right(), next_root, forest);
  return group_pair(std::move(l), std::move(r));
}

inline std::string group_text(const GroupNode& n, const DecompositionForest& forest) {
  if (n.is_leaf()) return print_formula(forest.at(n.pos).label);
  return "(" + group_text(*n.left, forest) + " , " + group_text(*n.right, forest) + ")";
}

// Nested membership: a pair's region encloses the regions of the pairs
// inside it, so inner members carry over into the outer boundary.
inline std::set<int> collect_group_boundaries(const GroupNode& node,
                                              const DecompositionForest& forest,
                                              const ProofStructure& ps,
                                              std::vector<Boundary>& out) {
  if (node.is_leaf()) return {};
  std::set<int> members = collect_group_boundaries(*node.left, forest, ps, out);
  std::set<int> from_right = collect_group_boundaries(*node.right, forest, ps, out);
  members.insert(from_right.begin(), from_right.end());

  Boundary b;
  b.owner = group_text(node, forest);
  b.members = std::move(members);
  // Core: the position of every formula leaf under this pair of parens.
  std::function<void(const GroupNode&)> add_core = [&](const GroupNode& n) {
    if (n.is_leaf())
      b.members.insert(n.pos);
    else {
      add_core(*n.left);
      add_core(*n.right);
    }
  };
  add_core(node);
  // Extension: the first decomposition link of each compound formula that is
  // a direct child of this pair.
  for (const GroupPtr& child : {node.left, node.right}) {
    if (!child->is_leaf()) continue;
    const Position& root = forest.at(child->pos);
    for (int k = 0; k < root.nchildren; ++k) b.members.insert(root.child[k]);
  }
  // Closure: when a compound member's decomposition is axiom linked onto a
  // dual twin occurrence (useless types), the boundary runs all the way
  // around those links, pulling in both full decompositions.  The twin may
  // sit anywhere in the forest (e.g. deeper than the first links).
  auto linked_across = [&](const Position& x, const Position& y) {
    std::set<int> yside;
    for (int id : forest.subtree(y.id)) yside.insert(id);
    bool any = false;
    for (int id : forest.subtree(x.id)) {
      if (forest.at(id).cls != NodeClass::AtomLeaf) continue;
      int partner = ps.partner_of(id);
      if (partner < 0 || !yside.count(partner)) return false;
      any = true;
    }
    return any;
  };
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> mem(b.members.begin(), b.members.end());
    for (size_t i = 0; i < mem.size() && !grew; ++i) {
      const Position& x = forest.at(mem[i]);
      if (x.cls == NodeClass::AtomLeaf) continue;
      for (const Position& y : forest.positions) {
        if (y.cls == NodeClass::AtomLeaf || y.id == x.id) continue;
        if (x.label != y.label || x.sign == y.sign) continue;
        if (!linked_across(x, y)) continue;
        for (int id : forest.subtree(x.id))
          grew |= b.members.insert(id).second;
        for (int id : forest.subtree(y.id))
          grew |= b.members.insert(id).second;
        if (grew) break;
      }
    }
  }
  std::set<int> result = b.members;
  out.push_back(std::move(b));
  return result;
}

// The leaves a tree side can reduce to by consuming its own nodes: a leaf
// stays itself; an internal node is consumed by a left rule on an
// under-slash reachable on its right or an over-slash reachable on its
// left, leaving that slash's result subformula.
inline void group_reducts(const GroupNode& node, const DecompositionForest& forest,
                          std::vector<int>& out) {
  if (node.is_leaf()) {
    out.push_back(node.pos);
    return;
  }
  std::vector<int> left, right;
  group_reducts(*node.left, forest, left);
  group_reducts(*node.right, forest, right);
  for (int s : right)
    if (forest.at(s).label.conn() == Conn::Under)
      out.push_back(forest.at(s).child[1]);  // result part
  for (int s : left)
    if (forest.at(s).label.conn() == Conn::Over)
      out.push_back(forest.at(s).child[0]);  // result part
}

inline void group_atoms(const GroupNode& node, const DecompositionForest& forest,
                        std::set<int>& out) {
  if (node.is_leaf()) {
    for (int id : forest.subtree(node.pos))
      if (forest.at(id).cls == NodeClass::AtomLeaf) out.insert(id);
    return;
  }
  group_atoms(*node.left, forest, out);
  group_atoms(*node.right, forest, out);
}

// Wrap a group with the implicit pairs of a positive formula's slashes, the
// way the invertible right rules regroup a succedent:
//   Gamma => X\Y  ~>  (X . Gamma) => Y,   Gamma => Y/X  ~>  (Gamma . X) => Y
inline GroupPtr unfold_positive(int pos, GroupPtr group, const DecompositionForest& forest) {
  while (forest.at(pos).cls != NodeClass::AtomLeaf) {
    const Position& p = forest.at(pos);
    if (p.label.conn() == Conn::Under) {
      group = group_pair(group_leaf(p.child[1]), std::move(group));  // under part left
      pos = p.child[0];
    } else {
      group = group_pair(std::move(group), group_leaf(p.child[0]));  // under part right
      pos = p.child[1];
    }
  }
  return group;
}

// Every parenthesis pair is eventually consumed by a left rule on a slash
// one of its sides reduces to; the rule's premise is the other side plus
// the slash's under subformula.  That premise is a self-contained subproof:
// its atoms must be axiom linked among themselves, and its own grouping
// (the other side under the unfolded under-formula) must be consumable in
// turn.
struct ConsumeCtx {
  const DecompositionForest& forest;
  const ProofStructure& ps;
  long fuel = 1000000;
  std::map<const GroupNode*, bool> node_memo;
  std::map<std::pair<const GroupNode*, int>, bool> premise_memo;
  std::string why;
};

inline bool group_consumable(const GroupNode& node, ConsumeCtx& ctx);

inline bool premise_consumable(const GroupPtr& delta_side, int under_pos, ConsumeCtx& ctx) {
  auto key = std::make_pair(delta_side.get(), under_pos);
  auto hit = ctx.premise_memo.find(key);
  if (hit != ctx.premise_memo.end()) return hit->second;
  GroupPtr premise = unfold_positive(under_pos, delta_side, ctx.forest);
  bool ok = group_consumable(*premise, ctx);
  ctx.premise_memo[key] = ok;
  return ok;
}

inline bool group_consumable(const GroupNode& node, ConsumeCtx& ctx) {
  if (node.is_leaf()) return true;
  auto hit = ctx.node_memo.find(&node);
  if (hit != ctx.node_memo.end()) return hit->second;
  if (--ctx.fuel < 0) throw ResourceLimit("grouping check exceeded its step budget");

  bool ok = group_consumable(*node.left, ctx) && group_consumable(*node.right, ctx);
  const DecompositionForest& forest = ctx.forest;
  auto closed = [&](std::set<int>& atoms) {
    for (int a : atoms) {
      int partner = ctx.ps.partner_of(a);
      if (partner < 0 || !atoms.count(partner)) return false;
    }
    return true;
  };
  auto try_consume = [&](const GroupPtr& slash_side, const GroupPtr& delta_side,
                         Conn wanted, int under_slot) {
    std::vector<int> cands;
    group_reducts(*slash_side, forest, cands);
    for (int s : cands) {
      if (forest.at(s).label.conn() != wanted) continue;
      int under = forest.at(s).child[under_slot];
      std::set<int> atoms;
      group_atoms(*delta_side, forest, atoms);
      for (int id : forest.subtree(under))
        if (forest.at(id).cls == NodeClass::AtomLeaf) atoms.insert(id);
      if (!closed(atoms)) continue;
      if (premise_consumable(delta_side, under, ctx)) return true;
    }
    return false;
  };
  if (ok) {
    // (Delta . B\A): under part is child[0] of the negative Under position;
    // (A/B . Delta): under part is child[1] of the negative Over position
    ok = try_consume(node.right, node.left, Conn::Under, 0) ||
         try_consume(node.left, node.right, Conn::Over, 1);
    if (!ok)
      ctx.why = "the pair " + group_text(node, forest) +
                " admits no left rule with a self-contained premise";
  }
  ctx.node_memo[&node] = ok;
  return ok;
}

}  // namespace detail

// Parenthetical boundaries: one per pair of written parentheses in the NL
// antecedent tree, the root included.
inline std::vector<Boundary> nl_boundaries(const Sequent& s, const ProofStructure& ps) {
  if (s.logic != LogicId::NL) throw UnsupportedLogic("boundaries are an NL notion");
  const auto& forest = *ps.forest;
  int next_root = 0;
  detail::GroupPtr tree = detail::group_of_tree(s.ant_tree, next_root, forest);
  std::vector<Boundary> out;
  detail::collect_group_boundaries(*tree, forest, ps, out);
  return out;
}

// The pair-consumption side of the geometric condition: every parenthesis
// pair, the implicit pairs of the succedent slashes included, must admit a
// left rule whose premise links among itself and regroups consumably.
inline NetVerdict nl_consumption_check(const Sequent& s, const ProofStructure& ps) {
  if (s.logic != LogicId::NL) throw UnsupportedLogic("boundaries are an NL notion");
  const auto& forest = *ps.forest;
  int next_root = 0;
  detail::GroupPtr tree = detail::group_of_tree(s.ant_tree, next_root, forest);
  tree = detail::unfold_positive(forest.roots.back(), std::move(tree), forest);
  detail::ConsumeCtx ctx{forest, ps};
  NetVerdict v;
  if (!detail::group_consumable(*tree, ctx)) {
    v.is_net = false;
    v.failure = FailureKind::Boundary;
    v.detail = ctx.why;
    return v;
  }
  v.is_net = true;
  return v;
}

// No axiom link from a positive atom may cross the boundary containing it.
inline NetVerdict nl_boundary_check(const ProofStructure& ps,
                                    const std::vector<Boundary>& boundaries) {
  NetVerdict v;
  const auto& forest = *ps.forest;
  for (const auto& b : boundaries) {
    for (int id : b.members) {
      const Position& p = forest.at(id);
      if (p.cls != NodeClass::AtomLeaf || p.sign != Sign::Pos) continue;
      int partner = ps.partner_of(id);
      if (partner >= 0 && !b.members.count(partner)) {
        v.is_net = false;
        v.failure = FailureKind::Boundary;
        v.detail = "axiom link from " + p.label.name() + "+ crosses the boundary of " + b.owner;
        return v;
      }
    }
  }
  v.is_net = true;
  return v;
}

}  // namespace spk
