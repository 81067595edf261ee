#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spk/proofnet.hpp"

namespace spk {

// Proof-net search: stream the axiom linkings of a sequent (planar-only for
// the Lambek systems) and return the first structure passing the logic's
// full condition stack.
//
//   MLL / MILL : DR switching
//   L_eps      : DR + planarity
//   L          : DR + planarity + subnets
//   NL         : DR + planarity + subnets + parenthetical boundaries
//   classical  : DR over structures extended with bounded contraction and
//                weakening links (checking supplied structures is the
//                primary classical mode; synthesis is bounded, not complete)

struct NetSearchOptions {
  bool planar_only = false;    // forced on for L/L_eps/NL
  int max_weakenings = 2;      // classical synthesis bound
  int max_contractions = 2;    // classical synthesis bound
  long max_candidates = 200000;
};

struct NetSearchResult {
  std::optional<ProofStructure> net;
  NetVerdict verdict;       // of the net, or the deepest failure seen
  long linkings = 0;        // complete matchings examined
  long candidates = 0;      // classical: structural variants examined
  bool conclusive = true;   // false when the bounded classical search ran dry
  bool found() const { return net.has_value(); }
};

namespace detail {

inline int failure_depth(FailureKind f) {
  switch (f) {
    case FailureKind::Disconnected: return 1;
    case FailureKind::Cycle: return 1;
    case FailureKind::Nonplanar: return 2;
    case FailureKind::Subnet: return 3;
    case FailureKind::Boundary: return 4;
    case FailureKind::None: return 5;
  }
  return 0;
}

inline void keep_deepest(NetVerdict& best, const NetVerdict& candidate) {
  if (failure_depth(candidate.failure) > failure_depth(best.failure) ||
      best.failure == FailureKind::None)
    best = candidate;
}

// Verdict stack for a complete (matched) structure of a non-classical logic.
inline NetVerdict net_stack(const Sequent& s, const ProofStructure& ps) {
  NetVerdict v = dr_check(ps);
  if (!v.is_net) return v;
  if (ps.logic == LogicId::LambekL || ps.logic == LogicId::LambekLEps ||
      ps.logic == LogicId::NL) {
    NetVerdict p = planarity_check(ps);
    if (!p.is_net) return p;
    if (ps.logic == LogicId::LambekL || ps.logic == LogicId::NL) {
      NetVerdict sn = subnet_check(ps);
      if (!sn.is_net) return sn;
    }
    if (ps.logic == LogicId::NL) {
      // boundaries depend on the axiom matching (the closure follows the
      // links of useless-type pairs), so they are computed per structure
      NetVerdict nb = nl_boundary_check(ps, nl_boundaries(s, ps));
      if (!nb.is_net) return nb;
      NetVerdict nc = nl_consumption_check(s, ps);
      if (!nc.is_net) return nc;
    }
  }
  return v;
}

// ------------------------------------------------------- classical synthesis

struct ClassicalCandidate {
  ProofStructure ps;            // nodes + decomposition/structural links, no axioms yet
  std::vector<int> pool;        // atom node ids still needing axiom links
};

// Copy the decomposition subtree below `src` with fresh node ids; returns the
// fresh root id and appends the copied atoms to `atoms`.
inline int copy_subtree(const DecompositionForest& forest, int src, ProofStructure& ps,
                        std::vector<int>& atoms) {
  const Position& p = forest.at(src);
  int id = static_cast<int>(ps.nodes.size());
  ps.nodes.push_back(StructNode{id, p.sign, p.label, p.cls == NodeClass::AtomLeaf});
  if (p.cls == NodeClass::AtomLeaf) {
    atoms.push_back(id);
    return id;
  }
  Link l;
  l.kind = p.cls == NodeClass::Alpha ? LinkKind::Par
           : p.cls == NodeClass::Beta ? LinkKind::Times
                                      : LinkKind::Unary;
  l.conclusions = {id};
  for (int i = 0; i < p.nchildren; ++i)
    l.premises.push_back(copy_subtree(forest, p.child[i], ps, atoms));
  ps.links.push_back(l);
  return id;
}

// Choose up to k positions, none an ancestor of another already chosen one.
inline void choose_positions(const DecompositionForest& forest, int k, int from,
                             std::vector<int>& acc,
                             const std::function<void(const std::vector<int>&)>& fn) {
  fn(acc);
  if (k == 0) return;
  for (int id = from; id < static_cast<int>(forest.positions.size()); ++id) {
    bool related = false;
    for (int c : acc) {
      auto sub = forest.subtree(std::min(c, id));
      if (std::find(sub.begin(), sub.end(), std::max(c, id)) != sub.end()) related = true;
    }
    if (related) continue;
    acc.push_back(id);
    choose_positions(forest, k - 1, id + 1, acc, fn);
    acc.pop_back();
  }
}

inline bool pool_balanced(const ProofStructure& ps, const std::vector<int>& pool) {
  std::map<std::string, int> balance;
  for (int a : pool)
    balance[ps.nodes[static_cast<size_t>(a)].label.name()] +=
        ps.nodes[static_cast<size_t>(a)].sign == Sign::Pos ? 1 : -1;
  for (auto& [n, v] : balance)
    if (v != 0) return false;
  return true;
}

inline bool match_pool(const ProofStructure& base, const std::vector<int>& pool,
                       const std::function<bool(const ProofStructure&)>& fn) {
  std::vector<std::pair<int, int>> pairs;
  std::vector<bool> used(base.nodes.size(), false);
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    while (i < pool.size() && used[static_cast<size_t>(pool[i])]) ++i;
    if (i == pool.size()) {
      ProofStructure ps = base;
      for (auto [a, b] : pairs) {
        Link ax;
        ax.kind = LinkKind::Axiom;
        ax.conclusions = {a, b};
        ps.links.push_back(ax);
      }
      return fn(ps);
    }
    int a = pool[i];
    const auto& na = base.nodes[static_cast<size_t>(a)];
    used[static_cast<size_t>(a)] = true;
    for (size_t j = i + 1; j < pool.size(); ++j) {
      int b = pool[j];
      if (used[static_cast<size_t>(b)]) continue;
      const auto& nb = base.nodes[static_cast<size_t>(b)];
      if (nb.label != na.label || nb.sign == na.sign) continue;
      used[static_cast<size_t>(b)] = true;
      pairs.emplace_back(a, b);
      if (rec(i + 1)) return true;
      pairs.pop_back();
      used[static_cast<size_t>(b)] = false;
    }
    used[static_cast<size_t>(a)] = false;
    return false;
  };
  return rec(0);
}

inline NetSearchResult classical_net_search(const DecompositionForest& forest,
                                            const NetSearchOptions& opts) {
  NetSearchResult res;
  res.verdict.is_net = false;
  bool done = false;

  // Candidates ordered by total number of structural links.
  for (int total = 0; total <= opts.max_contractions + opts.max_weakenings && !done; ++total) {
    for (int nc = 0; nc <= std::min(total, opts.max_contractions) && !done; ++nc) {
      int nw = total - nc;
      if (nw > opts.max_weakenings) continue;
      std::vector<int> cacc;
      choose_positions(forest, nc, 0, cacc, [&](const std::vector<int>& contracts) {
        if (static_cast<int>(contracts.size()) != nc || done) return;
        std::vector<int> wacc;
        choose_positions(forest, nw, 0, wacc, [&](const std::vector<int>& weakens) {
          if (static_cast<int>(weakens.size()) != nw || done) return;
          for (int w : weakens)
            for (int c : contracts) {
              if (w == c) return;
              auto sub = forest.subtree(std::min(w, c));
              if (std::find(sub.begin(), sub.end(), std::max(w, c)) != sub.end()) return;
            }
          if (++res.candidates > opts.max_candidates) {
            done = true;
            res.conclusive = false;
            return;
          }

          // Assemble the candidate skeleton.  Suppressed decomposition
          // subtrees are left out entirely, so the surviving positions get
          // fresh contiguous ids.
          ProofStructure ps;
          ps.logic = LogicId::Classical;
          std::set<int> dropped;  // positions whose decomposition is suppressed
          for (int c : contracts)
            for (int id : forest.subtree(c))
              if (id != c) dropped.insert(id);
          for (int w : weakens)
            for (int id : forest.subtree(w))
              if (id != w) dropped.insert(id);
          std::map<int, int> remap;
          for (const auto& p : forest.positions) {
            if (dropped.count(p.id)) continue;
            int nid = static_cast<int>(ps.nodes.size());
            remap[p.id] = nid;
            ps.nodes.push_back(StructNode{nid, p.sign, p.label,
                                          p.cls == NodeClass::AtomLeaf});
          }
          std::vector<int> pool;
          for (const auto& p : forest.positions) {
            if (dropped.count(p.id)) continue;
            bool structural = std::find(contracts.begin(), contracts.end(), p.id) !=
                                  contracts.end() ||
                              std::find(weakens.begin(), weakens.end(), p.id) != weakens.end();
            if (p.cls == NodeClass::AtomLeaf) {
              if (!structural) pool.push_back(remap[p.id]);
              continue;
            }
            if (structural) continue;  // no decomposition link for re-homed positions
            Link l;
            l.kind = p.cls == NodeClass::Alpha ? LinkKind::Par
                     : p.cls == NodeClass::Beta ? LinkKind::Times
                                                : LinkKind::Unary;
            l.conclusions = {remap[p.id]};
            for (int i = 0; i < p.nchildren; ++i) l.premises.push_back(remap[p.child[i]]);
            ps.links.push_back(l);
          }
          // Contraction links: the occurrence splits into two fresh copies.
          for (int c : contracts) {
            std::vector<int> copy_atoms;
            int c1 = copy_subtree(forest, c, ps, copy_atoms);
            int c2 = copy_subtree(forest, c, ps, copy_atoms);
            Link l;
            l.kind = LinkKind::Contraction;
            l.conclusions = {remap[c]};
            l.premises = {c1, c2};
            ps.links.push_back(l);
            pool.insert(pool.end(), copy_atoms.begin(), copy_atoms.end());
          }
          // Weakening links need a host atom each; enumerate host choices.
          std::function<void(size_t, ProofStructure, std::vector<int>)> place_hosts =
              [&](size_t wi, ProofStructure cur, std::vector<int> cur_pool) {
                if (done) return;
                if (wi == weakens.size()) {
                  if (!pool_balanced(cur, cur_pool)) return;
                  std::sort(cur_pool.begin(), cur_pool.end());
                  match_pool(cur, cur_pool, [&](const ProofStructure& complete) {
                    ++res.linkings;
                    NetVerdict v = dr_check(complete);
                    keep_deepest(res.verdict, v);
                    if (v.is_net) {
                      res.net = complete;
                      res.verdict = v;
                      done = true;
                      return true;
                    }
                    return false;
                  });
                  return;
                }
                int w = remap[weakens[wi]];
                for (size_t hi = 0; hi < cur_pool.size(); ++hi) {
                  int h = cur_pool[hi];
                  if (h == w) continue;
                  ProofStructure next = cur;
                  std::vector<int> next_pool = cur_pool;
                  next_pool.erase(next_pool.begin() + static_cast<long>(hi));
                  const auto& hn = next.nodes[static_cast<size_t>(h)];
                  int cont = static_cast<int>(next.nodes.size());
                  next.nodes.push_back(StructNode{cont, hn.sign, hn.label, true});
                  Link l;
                  l.kind = LinkKind::Weakening;
                  l.conclusions = {h, w};
                  l.premises = {cont};
                  next.links.push_back(l);
                  next_pool.push_back(cont);
                  place_hosts(wi + 1, std::move(next), std::move(next_pool));
                  if (done) return;
                }
              };
          place_hosts(0, std::move(ps), std::move(pool));
        });
      });
    }
  }
  if (!res.net) res.conclusive = false;  // bounded synthesis cannot certify absence
  return res;
}

}  // namespace detail

inline NetSearchResult find_proof_net(const Sequent& s, const NetSearchOptions& opts = {}) {
  s.validate();
  DecompositionForest forest = decompose(s);
  if (s.logic == LogicId::Classical) return detail::classical_net_search(forest, opts);

  ProofStructure skeleton = build_skeleton(forest);
  bool lambek = s.logic == LogicId::LambekL || s.logic == LogicId::LambekLEps ||
                s.logic == LogicId::NL;
  bool planar_only = lambek || opts.planar_only;

  NetSearchResult res;
  res.verdict.is_net = false;
  bool over_budget = false;
  res.linkings = enumerate_linkings(skeleton, planar_only, [&](const ProofStructure& ps) {
    if (++res.candidates > opts.max_candidates) {
      over_budget = true;
      return true;
    }
    NetVerdict v = detail::net_stack(s, ps);
    detail::keep_deepest(res.verdict, v);
    if (v.is_net) {
      res.net = ps;
      res.verdict = v;
      return true;
    }
    return false;
  });
  if (over_budget) throw ResourceLimit("axiom linking enumeration exceeded the candidate budget");
  return res;
}

// Classical structures supplied from outside (or synthesized) are checked by
// the MLL conditions with contraction links read as par and weakening links
// as times.
inline NetVerdict check_classical_structure(const ProofStructure& ps) {
  if (ps.logic != LogicId::Classical)
    throw UnsupportedLogic("check_classical_structure expects a classical structure");
  for (const auto& l : ps.links) {
    switch (l.kind) {
      case LinkKind::Contraction:
        if (l.conclusions.size() != 1 || l.premises.size() != 2)
          throw MalformedStructuralLink("contraction links have one conclusion and two premises");
        break;
      case LinkKind::Weakening:
        if (l.conclusions.size() != 2 || l.premises.size() != 1)
          throw MalformedStructuralLink("weakening links have two conclusions and one premise");
        break;
      case LinkKind::Axiom:
        if (l.conclusions.size() != 2 || !l.premises.empty())
          throw MalformedStructuralLink("axiom links have two conclusions and no premises");
        break;
      default:
        if (l.conclusions.size() != 1 || l.premises.empty() || l.premises.size() > 2)
          throw MalformedStructuralLink("decomposition links have one conclusion and 1-2 premises");
        break;
    }
    for (int id : l.conclusions)
      if (id < 0 || id >= static_cast<int>(ps.nodes.size()))
        throw MalformedStructuralLink("link references an unknown node");
    for (int id : l.premises)
      if (id < 0 || id >= static_cast<int>(ps.nodes.size()))
        throw MalformedStructuralLink("link references an unknown node");
  }
  return dr_check(ps);
}

}  // namespace spk
