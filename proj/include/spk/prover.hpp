#pragma once

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spk/decompose.hpp"
#include "spk/logic.hpp"
#include "spk/syntax.hpp"

namespace spk {

// Backward, Cut-free proof search.  Classical sequents are read as sets
// (Weakening/Contraction/Exchange absorbed), MLL/MILL as multisets, L as
// sequences, NL as binary trees.  Every premise drops one connective
// occurrence, so the search always terminates; the node budget only guards
// against blow-up of the split enumeration.

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  Sequent conclusion;
  std::string rule;  // "Axiom", "&L", "*R", "/L", ...
  std::vector<DerivationPtr> premises;
};

inline DerivationPtr make_deriv(Sequent concl, std::string rule,
                                std::vector<DerivationPtr> prem = {}) {
  auto d = std::make_shared<Derivation>();
  d->conclusion = std::move(concl);
  d->rule = std::move(rule);
  d->premises = std::move(prem);
  return d;
}

enum class ProveStatus { Provable, NotProvable, BudgetExhausted };

struct ProveStats {
  long nodes = 0;
  int max_depth = 0;
};

struct Verdict {
  ProveStatus status = ProveStatus::NotProvable;
  DerivationPtr witness;  // present iff provable
  ProveStats stats;
  bool provable() const { return status == ProveStatus::Provable; }
};

inline long default_budget() {
  if (const char* env = std::getenv("SPK_BUDGET")) {
    long v = std::atol(env);
    if (v > 0) return v;
  }
  return 1000000;
}

struct ProveOptions {
  long budget = default_budget();
};

namespace detail {

struct BudgetInterrupt {};

struct SearchCtx {
  long budget;
  ProveStats stats;
  void tick(int depth) {
    if (++stats.nodes > budget) throw BudgetInterrupt{};
    stats.max_depth = std::max(stats.max_depth, depth);
  }
};

inline std::vector<Formula> sorted_formulas(std::vector<Formula> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline std::vector<Formula> as_set(std::vector<Formula> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::vector<Formula> erase_at(const std::vector<Formula>& v, size_t i) {
  std::vector<Formula> out;
  out.reserve(v.size() - 1);
  for (size_t k = 0; k < v.size(); ++k)
    if (k != i) out.push_back(v[k]);
  return out;
}

inline std::vector<Formula> with(std::vector<Formula> v, const Formula& f) {
  v.push_back(f);
  return v;
}
inline std::vector<Formula> with(std::vector<Formula> v, const Formula& f, const Formula& g) {
  v.push_back(f);
  v.push_back(g);
  return v;
}

// ---------------------------------------------------------------- classical

inline Sequent set_sequent(std::vector<Formula> ant, std::vector<Formula> succ) {
  Sequent s;
  s.logic = LogicId::Classical;
  s.ant = as_set(std::move(ant));
  s.succ = as_set(std::move(succ));
  return s;
}

inline DerivationPtr prove_classical(SearchCtx& ctx, const std::vector<Formula>& ant,
                                     const std::vector<Formula>& succ, int depth) {
  ctx.tick(depth);
  Sequent here = set_sequent(ant, succ);
  for (const auto& f : here.ant)
    for (const auto& g : here.succ)
      if (f == g) return make_deriv(here, "Axiom");

  auto sub = [&](std::vector<Formula> a, std::vector<Formula> s) {
    return prove_classical(ctx, as_set(std::move(a)), as_set(std::move(s)), depth + 1);
  };

  // Every set-calculus rule is invertible (the alpha rules keep both
  // components in one premise), so the first non-atomic formula can be
  // decomposed with no backtracking.
  for (size_t i = 0; i < here.ant.size(); ++i) {
    const Formula& f = here.ant[i];
    if (f.is_atom()) continue;
    auto rest = erase_at(here.ant, i);
    switch (f.conn()) {
      case Conn::Neg: {
        auto p = sub(rest, with(here.succ, f.left()));
        return p ? make_deriv(here, "~L", {p}) : nullptr;
      }
      case Conn::And: {
        auto p = sub(with(rest, f.left(), f.right()), here.succ);
        return p ? make_deriv(here, "&L", {p}) : nullptr;
      }
      case Conn::Or: {
        auto p1 = sub(with(rest, f.left()), here.succ);
        if (!p1) return nullptr;
        auto p2 = sub(with(rest, f.right()), here.succ);
        return p2 ? make_deriv(here, "|L", {p1, p2}) : nullptr;
      }
      default: {  // ->
        auto p1 = sub(rest, with(here.succ, f.left()));
        if (!p1) return nullptr;
        auto p2 = sub(with(rest, f.right()), here.succ);
        return p2 ? make_deriv(here, "->L", {p1, p2}) : nullptr;
      }
    }
  }
  for (size_t i = 0; i < here.succ.size(); ++i) {
    const Formula& f = here.succ[i];
    if (f.is_atom()) continue;
    auto rest = erase_at(here.succ, i);
    switch (f.conn()) {
      case Conn::Neg: {
        auto p = sub(with(here.ant, f.left()), rest);
        return p ? make_deriv(here, "~R", {p}) : nullptr;
      }
      case Conn::Or: {
        auto p = sub(here.ant, with(rest, f.left(), f.right()));
        return p ? make_deriv(here, "|R", {p}) : nullptr;
      }
      case Conn::And: {
        auto p1 = sub(here.ant, with(rest, f.left()));
        if (!p1) return nullptr;
        auto p2 = sub(here.ant, with(rest, f.right()));
        return p2 ? make_deriv(here, "&R", {p1, p2}) : nullptr;
      }
      default: {  // ->
        auto p = sub(with(here.ant, f.left()), with(rest, f.right()));
        return p ? make_deriv(here, "->R", {p}) : nullptr;
      }
    }
  }
  return nullptr;
}

// ---------------------------------------------------------------- MLL/MILL

inline Sequent mseq(LogicId logic, std::vector<Formula> ant, std::vector<Formula> succ) {
  Sequent s;
  s.logic = logic;
  s.ant = sorted_formulas(std::move(ant));
  s.succ = sorted_formulas(std::move(succ));
  return s;
}

// All ways to split a multiset in two (by index subset).
template <typename Fn>
inline bool each_split(const std::vector<Formula>& v, Fn&& fn) {
  size_t n = v.size();
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    std::vector<Formula> a, b;
    for (size_t i = 0; i < n; ++i) (mask >> i & 1 ? a : b).push_back(v[i]);
    if (fn(a, b)) return true;
  }
  return false;
}

inline DerivationPtr prove_linear(SearchCtx& ctx, LogicId logic,
                                  const std::vector<Formula>& ant0,
                                  const std::vector<Formula>& succ0, int depth) {
  ctx.tick(depth);
  Sequent here = mseq(logic, ant0, succ0);
  const auto& ant = here.ant;
  const auto& succ = here.succ;
  if (ant.size() == 1 && succ.size() == 1 && ant[0] == succ[0])
    return make_deriv(here, "Axiom");

  bool mill = logic == LogicId::MILL;
  auto ok_succ = [&](const std::vector<Formula>& s) { return !mill || s.size() == 1; };
  auto sub = [&](std::vector<Formula> a, std::vector<Formula> s) -> DerivationPtr {
    if (!ok_succ(s)) return nullptr;
    return prove_linear(ctx, logic, a, s, depth + 1);
  };

  // Invertible single-premise rules first: ^L ^R *L @R -oR.
  for (size_t i = 0; i < ant.size(); ++i) {
    const Formula& f = ant[i];
    if (f.conn() == Conn::LinNeg) {
      auto p = sub(erase_at(ant, i), with(succ, f.left()));
      return p ? make_deriv(here, "^L", {p}) : nullptr;
    }
    if (f.conn() == Conn::Tensor) {
      auto p = sub(with(erase_at(ant, i), f.left(), f.right()), succ);
      return p ? make_deriv(here, "*L", {p}) : nullptr;
    }
  }
  for (size_t i = 0; i < succ.size(); ++i) {
    const Formula& f = succ[i];
    if (f.conn() == Conn::LinNeg) {
      auto p = sub(with(ant, f.left()), erase_at(succ, i));
      return p ? make_deriv(here, "^R", {p}) : nullptr;
    }
    if (f.conn() == Conn::Par) {
      auto p = sub(ant, with(erase_at(succ, i), f.left(), f.right()));
      return p ? make_deriv(here, "@R", {p}) : nullptr;
    }
    if (f.conn() == Conn::Lolli) {
      auto p = sub(with(ant, f.left()), with(erase_at(succ, i), f.right()));
      return p ? make_deriv(here, "-oR", {p}) : nullptr;
    }
  }
  // Context-splitting rules: @L -oL (antecedent), *R (succedent).
  for (size_t i = 0; i < ant.size(); ++i) {
    const Formula& f = ant[i];
    if (f.is_atom() || f.conn() == Conn::LinNeg || f.conn() == Conn::Tensor) continue;
    if (i > 0 && f == ant[i - 1]) continue;
    auto rest_ant = erase_at(ant, i);
    DerivationPtr found;
    each_split(rest_ant, [&](const std::vector<Formula>& ga, const std::vector<Formula>& gb) {
      return each_split(succ, [&](const std::vector<Formula>& da, const std::vector<Formula>& db) {
        DerivationPtr p1, p2;
        if (f.conn() == Conn::Par) {  // @L
          p1 = sub(with(ga, f.left()), da);
          if (p1) p2 = sub(with(gb, f.right()), db);
        } else {  // -oL
          p1 = sub(ga, with(da, f.left()));
          if (p1) p2 = sub(with(gb, f.right()), db);
        }
        if (p1 && p2) {
          found = make_deriv(here, f.conn() == Conn::Par ? "@L" : "-oL", {p1, p2});
          return true;
        }
        return false;
      });
    });
    if (found) return found;
  }
  for (size_t i = 0; i < succ.size(); ++i) {
    const Formula& f = succ[i];
    if (f.conn() != Conn::Tensor) continue;
    if (i > 0 && f == succ[i - 1]) continue;
    auto rest_succ = erase_at(succ, i);
    DerivationPtr found;
    each_split(ant, [&](const std::vector<Formula>& ga, const std::vector<Formula>& gb) {
      return each_split(rest_succ, [&](const std::vector<Formula>& da, const std::vector<Formula>& db) {
        auto p1 = sub(ga, with(da, f.left()));
        if (!p1) return false;
        auto p2 = sub(gb, with(db, f.right()));
        if (!p2) return false;
        found = make_deriv(here, "*R", {p1, p2});
        return true;
      });
    });
    if (found) return found;
  }
  return nullptr;
}

// ---------------------------------------------------------------- Lambek L

inline Sequent lseq(LogicId logic, std::vector<Formula> ant, Formula succ) {
  Sequent s;
  s.logic = logic;
  s.ant = std::move(ant);
  s.succ = {std::move(succ)};
  return s;
}

inline DerivationPtr prove_lambek(SearchCtx& ctx, LogicId logic,
                                  const std::vector<Formula>& ant, const Formula& succ,
                                  int depth) {
  ctx.tick(depth);
  bool eps = logic == LogicId::LambekLEps;
  Sequent here = lseq(logic, ant, succ);
  if (ant.size() == 1 && ant[0] == succ) return make_deriv(here, "Axiom");

  auto sub = [&](std::vector<Formula> a, const Formula& s) -> DerivationPtr {
    if (!eps && a.empty()) return nullptr;
    return prove_lambek(ctx, logic, std::move(a), s, depth + 1);
  };

  // Invertible: /R \R, then the leftmost .L.
  if (succ.conn() == Conn::Over) {
    auto p = sub(with(ant, succ.right()), succ.left());
    return p ? make_deriv(here, "/R", {p}) : nullptr;
  }
  if (succ.conn() == Conn::Under) {
    std::vector<Formula> a{succ.left()};
    a.insert(a.end(), ant.begin(), ant.end());
    auto p = sub(std::move(a), succ.right());
    return p ? make_deriv(here, "\\R", {p}) : nullptr;
  }
  for (size_t i = 0; i < ant.size(); ++i) {
    if (ant[i].conn() != Conn::Prod) continue;
    std::vector<Formula> a(ant.begin(), ant.begin() + static_cast<long>(i));
    a.push_back(ant[i].left());
    a.push_back(ant[i].right());
    a.insert(a.end(), ant.begin() + static_cast<long>(i) + 1, ant.end());
    auto p = sub(std::move(a), succ);
    return p ? make_deriv(here, ".L", {p}) : nullptr;
  }
  // Branching: /L \L with a contiguous segment Delta, .R with a split point.
  for (size_t i = 0; i < ant.size(); ++i) {
    const Formula& f = ant[i];
    if (f.conn() == Conn::Over) {  // Gamma[A/B, Delta] => C
      size_t min_j = eps ? i + 1 : i + 2;
      for (size_t j = min_j; j <= ant.size(); ++j) {
        std::vector<Formula> delta(ant.begin() + static_cast<long>(i) + 1,
                                   ant.begin() + static_cast<long>(j));
        auto p1 = sub(std::move(delta), f.right());
        if (!p1) continue;
        std::vector<Formula> ctxa(ant.begin(), ant.begin() + static_cast<long>(i));
        ctxa.push_back(f.left());
        ctxa.insert(ctxa.end(), ant.begin() + static_cast<long>(j), ant.end());
        if (auto p2 = sub(std::move(ctxa), succ)) return make_deriv(here, "/L", {p1, p2});
      }
    }
    if (f.conn() == Conn::Under) {  // Gamma[Delta, B\A] => C
      size_t max_j = eps ? i : (i == 0 ? 0 : i - 1);  // Delta = ant[j..i)
      for (size_t j = 0; j <= max_j && (eps || i > 0); ++j) {
        std::vector<Formula> delta(ant.begin() + static_cast<long>(j),
                                   ant.begin() + static_cast<long>(i));
        auto p1 = sub(std::move(delta), f.left());
        if (!p1) continue;
        std::vector<Formula> ctxa(ant.begin(), ant.begin() + static_cast<long>(j));
        ctxa.push_back(f.right());
        ctxa.insert(ctxa.end(), ant.begin() + static_cast<long>(i) + 1, ant.end());
        if (auto p2 = sub(std::move(ctxa), succ)) return make_deriv(here, "\\L", {p1, p2});
      }
    }
  }
  if (succ.conn() == Conn::Prod && (eps || ant.size() >= 2)) {
    size_t lo = eps ? 0 : 1;
    size_t hi = eps ? ant.size() : ant.size() - 1;
    for (size_t k = lo; k <= hi; ++k) {
      std::vector<Formula> ga(ant.begin(), ant.begin() + static_cast<long>(k));
      std::vector<Formula> gb(ant.begin() + static_cast<long>(k), ant.end());
      auto p1 = sub(std::move(ga), succ.left());
      if (!p1) continue;
      if (auto p2 = sub(std::move(gb), succ.right())) return make_deriv(here, ".R", {p1, p2});
    }
  }
  return nullptr;
}

// ---------------------------------------------------------------- NL

inline Sequent nlseq(StructTree ant, Formula succ) {
  Sequent s;
  s.logic = LogicId::NL;
  s.ant_tree = std::move(ant);
  s.succ = {std::move(succ)};
  return s;
}

template <typename Fn>
inline bool each_tree_node(const StructTree& t, std::vector<int>& path, Fn&& fn) {
  if (fn(t, path)) return true;
  if (t.is_leaf()) return false;
  path.push_back(0);
  if (each_tree_node(t.left(), path, fn)) return true;
  path.back() = 1;
  bool r = each_tree_node(t.right(), path, fn);
  path.pop_back();
  return r;
}

inline DerivationPtr prove_nl(SearchCtx& ctx, const StructTree& ant, const Formula& succ,
                              int depth) {
  ctx.tick(depth);
  Sequent here = nlseq(ant, succ);
  if (ant.is_leaf() && ant.formula() == succ) return make_deriv(here, "Axiom");

  // Invertible right rules.
  if (succ.conn() == Conn::Over) {
    auto p = prove_nl(ctx, StructTree::pair(ant, StructTree::leaf(succ.right())), succ.left(),
                      depth + 1);
    return p ? make_deriv(here, "/R", {p}) : nullptr;
  }
  if (succ.conn() == Conn::Under) {
    auto p = prove_nl(ctx, StructTree::pair(StructTree::leaf(succ.left()), ant), succ.right(),
                      depth + 1);
    return p ? make_deriv(here, "\\R", {p}) : nullptr;
  }
  // Left rules at any tree context.
  DerivationPtr found;
  std::vector<int> path;
  each_tree_node(ant, path, [&](const StructTree& node, const std::vector<int>& at) {
    if (node.is_leaf()) return false;
    StructTree l = node.left(), r = node.right();
    if (l.is_leaf() && l.formula().conn() == Conn::Over) {  // (A/B . Delta)
      const Formula& f = l.formula();
      auto p1 = prove_nl(ctx, r, f.right(), depth + 1);
      if (p1) {
        auto p2 = prove_nl(ctx, ant.replace(at, StructTree::leaf(f.left())), succ, depth + 1);
        if (p2) {
          found = make_deriv(here, "/L", {p1, p2});
          return true;
        }
      }
    }
    if (r.is_leaf() && r.formula().conn() == Conn::Under) {  // (Delta . B\A)
      const Formula& f = r.formula();
      auto p1 = prove_nl(ctx, l, f.left(), depth + 1);
      if (p1) {
        auto p2 = prove_nl(ctx, ant.replace(at, StructTree::leaf(f.right())), succ, depth + 1);
        if (p2) {
          found = make_deriv(here, "\\L", {p1, p2});
          return true;
        }
      }
    }
    return false;
  });
  return found;
}

}  // namespace detail

inline Verdict prove(const Sequent& s, const ProveOptions& opts = {}) {
  s.validate();
  detail::SearchCtx ctx{opts.budget, {}};
  Verdict v;
  try {
    DerivationPtr d;
    switch (s.logic) {
      case LogicId::Classical:
        d = detail::prove_classical(ctx, detail::as_set(s.ant), detail::as_set(s.succ), 1);
        break;
      case LogicId::MLL:
      case LogicId::MILL:
        d = detail::prove_linear(ctx, s.logic, s.ant, s.succ, 1);
        break;
      case LogicId::LambekL:
      case LogicId::LambekLEps:
        d = detail::prove_lambek(ctx, s.logic, s.ant, s.succ[0], 1);
        break;
      case LogicId::NL:
        d = detail::prove_nl(ctx, s.ant_tree, s.succ[0], 1);
        break;
    }
    v.status = d ? ProveStatus::Provable : ProveStatus::NotProvable;
    v.witness = d;
  } catch (const detail::BudgetInterrupt&) {
    v.status = ProveStatus::BudgetExhausted;
  }
  v.stats = ctx.stats;
  return v;
}

// ------------------------------------------------------------ rule checking

struct CheckResult {
  bool ok = true;
  std::string path;  // first bad node, e.g. "root.premise[0]"
  std::string why;
};

namespace detail {

inline bool same_multiset(std::vector<Formula> a, std::vector<Formula> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

inline bool same_set(std::vector<Formula> a, std::vector<Formula> b) {
  return as_set(std::move(a)) == as_set(std::move(b));
}

inline bool seq_matches(const Sequent& a, const Sequent& b) {
  if (a.logic != b.logic) return false;
  switch (a.logic) {
    case LogicId::Classical:
      return same_set(a.ant, b.ant) && same_set(a.succ, b.succ);
    case LogicId::MLL:
    case LogicId::MILL:
      return same_multiset(a.ant, b.ant) && same_multiset(a.succ, b.succ);
    default:
      return a == b;  // sequences and trees compare exactly
  }
}

// Does (conclusion, rule, premises) instantiate a rule of the logic?  The
// checker recomputes every legal premise tuple for the named rule and looks
// for a match, so it is independent of the search heuristics.
inline bool node_instantiates(const Sequent& concl, const std::string& rule,
                              const std::vector<Sequent>& prem) {
  const LogicId logic = concl.logic;
  auto match1 = [&](const Sequent& p) { return prem.size() == 1 && seq_matches(prem[0], p); };
  auto match2 = [&](const Sequent& p1, const Sequent& p2) {
    return prem.size() == 2 && seq_matches(prem[0], p1) && seq_matches(prem[1], p2);
  };

  if (rule == "Axiom") {
    if (!prem.empty()) return false;
    if (logic == LogicId::Classical) {
      for (const auto& f : concl.ant)
        for (const auto& g : concl.succ)
          if (f == g) return true;
      return false;
    }
    if (logic == LogicId::NL)
      return concl.ant_tree.is_leaf() && concl.ant_tree.formula() == concl.succ[0];
    return concl.ant.size() == 1 && concl.succ.size() == 1 && concl.ant[0] == concl.succ[0];
  }

  switch (logic) {
    case LogicId::Classical: {
      const auto ant = as_set(concl.ant), succ = as_set(concl.succ);
      for (size_t i = 0; i < ant.size(); ++i) {
        const Formula& f = ant[i];
        auto rest = erase_at(ant, i);
        if (rule == "~L" && f.conn() == Conn::Neg &&
            match1(set_sequent(rest, with(succ, f.left()))))
          return true;
        if (rule == "->L" && f.conn() == Conn::Impl &&
            match2(set_sequent(rest, with(succ, f.left())),
                   set_sequent(with(rest, f.right()), succ)))
          return true;
        if (rule == "|L" && f.conn() == Conn::Or &&
            match2(set_sequent(with(rest, f.left()), succ),
                   set_sequent(with(rest, f.right()), succ)))
          return true;
        if (rule == "&L" && f.conn() == Conn::And &&
            match1(set_sequent(with(rest, f.left(), f.right()), succ)))
          return true;
      }
      for (size_t i = 0; i < succ.size(); ++i) {
        const Formula& f = succ[i];
        auto rest = erase_at(succ, i);
        if (rule == "~R" && f.conn() == Conn::Neg &&
            match1(set_sequent(with(ant, f.left()), rest)))
          return true;
        if (rule == "->R" && f.conn() == Conn::Impl &&
            match1(set_sequent(with(ant, f.left()), with(rest, f.right()))))
          return true;
        if (rule == "&R" && f.conn() == Conn::And &&
            match2(set_sequent(ant, with(rest, f.left())),
                   set_sequent(ant, with(rest, f.right()))))
          return true;
        if (rule == "|R" && f.conn() == Conn::Or &&
            match1(set_sequent(ant, with(rest, f.left(), f.right()))))
          return true;
      }
      return false;
    }
    case LogicId::MLL:
    case LogicId::MILL: {
      const auto& ant = concl.ant;
      const auto& succ = concl.succ;
      bool ok = false;
      for (size_t i = 0; i < ant.size() && !ok; ++i) {
        const Formula& f = ant[i];
        auto rest = erase_at(ant, i);
        if (rule == "^L" && f.conn() == Conn::LinNeg)
          ok = match1(mseq(logic, rest, with(succ, f.left())));
        if (rule == "*L" && f.conn() == Conn::Tensor)
          ok = match1(mseq(logic, with(rest, f.left(), f.right()), succ));
        if ((rule == "@L" && f.conn() == Conn::Par) ||
            (rule == "-oL" && f.conn() == Conn::Lolli)) {
          each_split(rest, [&](const std::vector<Formula>& ga, const std::vector<Formula>& gb) {
            return each_split(succ, [&](const std::vector<Formula>& da,
                                        const std::vector<Formula>& db) {
              if (rule == "@L")
                ok = match2(mseq(logic, with(ga, f.left()), da),
                            mseq(logic, with(gb, f.right()), db));
              else
                ok = match2(mseq(logic, ga, with(da, f.left())),
                            mseq(logic, with(gb, f.right()), db));
              return ok;
            });
          });
        }
      }
      for (size_t i = 0; i < succ.size() && !ok; ++i) {
        const Formula& f = succ[i];
        auto rest = erase_at(succ, i);
        if (rule == "^R" && f.conn() == Conn::LinNeg)
          ok = match1(mseq(logic, with(ant, f.left()), rest));
        if (rule == "@R" && f.conn() == Conn::Par)
          ok = match1(mseq(logic, ant, with(rest, f.left(), f.right())));
        if (rule == "-oR" && f.conn() == Conn::Lolli)
          ok = match1(mseq(logic, with(ant, f.left()), with(rest, f.right())));
        if (rule == "*R" && f.conn() == Conn::Tensor) {
          each_split(ant, [&](const std::vector<Formula>& ga, const std::vector<Formula>& gb) {
            return each_split(rest, [&](const std::vector<Formula>& da,
                                        const std::vector<Formula>& db) {
              ok = match2(mseq(logic, ga, with(da, f.left())),
                          mseq(logic, gb, with(db, f.right())));
              return ok;
            });
          });
        }
      }
      return ok;
    }
    case LogicId::LambekL:
    case LogicId::LambekLEps: {
      bool eps = logic == LogicId::LambekLEps;
      const auto& ant = concl.ant;
      const Formula& succ = concl.succ[0];
      auto nonempty_ok = [&](const std::vector<Formula>& a) { return eps || !a.empty(); };
      if (rule == "/R" && succ.conn() == Conn::Over)
        return match1(lseq(logic, with(ant, succ.right()), succ.left()));
      if (rule == "\\R" && succ.conn() == Conn::Under) {
        std::vector<Formula> a{succ.left()};
        a.insert(a.end(), ant.begin(), ant.end());
        return match1(lseq(logic, std::move(a), succ.right()));
      }
      if (rule == ".L") {
        for (size_t i = 0; i < ant.size(); ++i) {
          if (ant[i].conn() != Conn::Prod) continue;
          std::vector<Formula> a(ant.begin(), ant.begin() + static_cast<long>(i));
          a.push_back(ant[i].left());
          a.push_back(ant[i].right());
          a.insert(a.end(), ant.begin() + static_cast<long>(i) + 1, ant.end());
          if (match1(lseq(logic, std::move(a), succ))) return true;
        }
        return false;
      }
      if (rule == ".R" && succ.conn() == Conn::Prod) {
        for (size_t k = 0; k <= ant.size(); ++k) {
          std::vector<Formula> ga(ant.begin(), ant.begin() + static_cast<long>(k));
          std::vector<Formula> gb(ant.begin() + static_cast<long>(k), ant.end());
          if (!nonempty_ok(ga) || !nonempty_ok(gb)) continue;
          if (match2(lseq(logic, ga, succ.left()), lseq(logic, gb, succ.right()))) return true;
        }
        return false;
      }
      if (rule == "/L" || rule == "\\L") {
        for (size_t i = 0; i < ant.size(); ++i) {
          const Formula& f = ant[i];
          if (rule == "/L" && f.conn() == Conn::Over) {
            for (size_t j = i + 1; j <= ant.size(); ++j) {
              std::vector<Formula> delta(ant.begin() + static_cast<long>(i) + 1,
                                         ant.begin() + static_cast<long>(j));
              if (!nonempty_ok(delta)) continue;
              std::vector<Formula> ctxa(ant.begin(), ant.begin() + static_cast<long>(i));
              ctxa.push_back(f.left());
              ctxa.insert(ctxa.end(), ant.begin() + static_cast<long>(j), ant.end());
              if (match2(lseq(logic, delta, f.right()), lseq(logic, ctxa, succ))) return true;
            }
          }
          if (rule == "\\L" && f.conn() == Conn::Under) {
            for (size_t j = 0; j <= i; ++j) {
              std::vector<Formula> delta(ant.begin() + static_cast<long>(j),
                                         ant.begin() + static_cast<long>(i));
              if (!nonempty_ok(delta)) continue;
              std::vector<Formula> ctxa(ant.begin(), ant.begin() + static_cast<long>(j));
              ctxa.push_back(f.right());
              ctxa.insert(ctxa.end(), ant.begin() + static_cast<long>(i) + 1, ant.end());
              if (match2(lseq(logic, delta, f.left()), lseq(logic, ctxa, succ))) return true;
            }
          }
        }
        return false;
      }
      return false;
    }
    case LogicId::NL: {
      const StructTree& ant = concl.ant_tree;
      const Formula& succ = concl.succ[0];
      if (rule == "/R" && succ.conn() == Conn::Over)
        return match1(nlseq(StructTree::pair(ant, StructTree::leaf(succ.right())), succ.left()));
      if (rule == "\\R" && succ.conn() == Conn::Under)
        return match1(nlseq(StructTree::pair(StructTree::leaf(succ.left()), ant), succ.right()));
      if (rule == "/L" || rule == "\\L") {
        bool ok = false;
        std::vector<int> path;
        each_tree_node(ant, path, [&](const StructTree& node, const std::vector<int>& at) {
          if (node.is_leaf()) return false;
          if (rule == "/L" && node.left().is_leaf() &&
              node.left().formula().conn() == Conn::Over) {
            const Formula& f = node.left().formula();
            ok = match2(nlseq(node.right(), f.right()),
                        nlseq(ant.replace(at, StructTree::leaf(f.left())), succ));
          }
          if (!ok && rule == "\\L" && node.right().is_leaf() &&
              node.right().formula().conn() == Conn::Under) {
            const Formula& f = node.right().formula();
            ok = match2(nlseq(node.left(), f.left()),
                        nlseq(ant.replace(at, StructTree::leaf(f.right())), succ));
          }
          return ok;
        });
        return ok;
      }
      return false;
    }
  }
  return false;
}

inline bool check_deriv_rec(const Derivation& d, std::string path, CheckResult& out) {
  std::vector<Sequent> prem;
  prem.reserve(d.premises.size());
  for (const auto& p : d.premises) prem.push_back(p->conclusion);
  if (!node_instantiates(d.conclusion, d.rule, prem)) {
    out.ok = false;
    out.path = path;
    out.why = "not a valid " + d.rule + " instance: " + print_sequent(d.conclusion);
    return false;
  }
  for (size_t i = 0; i < d.premises.size(); ++i)
    if (!check_deriv_rec(*d.premises[i], path + ".premise[" + std::to_string(i) + "]", out))
      return false;
  return true;
}

}  // namespace detail

inline CheckResult check_derivation(const Derivation& d) {
  CheckResult r;
  detail::check_deriv_rec(d, "root", r);
  return r;
}

inline void derivation_text_rec(const Derivation& d, int indent, std::string& out) {
  out.append(static_cast<size_t>(indent) * 2, ' ');
  out += d.rule;
  out += ": ";
  out += print_sequent(d.conclusion);
  out += '\n';
  for (const auto& p : d.premises) derivation_text_rec(*p, indent + 1, out);
}

inline std::string derivation_text(const Derivation& d) {
  std::string out;
  derivation_text_rec(d, 0, out);
  return out;
}

// Subformula property: every formula in the derivation is a subformula of
// the endsequent.
inline bool subformula_property(const Derivation& d) {
  std::vector<Formula> top;
  if (d.conclusion.logic == LogicId::NL)
    top = d.conclusion.ant_tree.leaves();
  else
    top = d.conclusion.ant;
  top.insert(top.end(), d.conclusion.succ.begin(), d.conclusion.succ.end());
  auto covered = [&](const Formula& f) {
    for (const auto& t : top)
      if (t.has_subformula(f)) return true;
    return false;
  };
  struct Walk {
    const std::vector<Formula>& top;
    bool ok = true;
    void visit(const Derivation& node, const decltype(covered)& cov) {
      std::vector<Formula> fs;
      if (node.conclusion.logic == LogicId::NL)
        fs = node.conclusion.ant_tree.leaves();
      else
        fs = node.conclusion.ant;
      fs.insert(fs.end(), node.conclusion.succ.begin(), node.conclusion.succ.end());
      for (const auto& f : fs)
        if (!cov(f)) ok = false;
      for (const auto& p : node.premises) visit(*p, cov);
    }
  } walk{top};
  walk.visit(d, covered);
  return walk.ok;
}

}  // namespace spk
