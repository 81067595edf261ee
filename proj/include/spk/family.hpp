#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "spk/logic.hpp"

namespace spk {

// Bounded sequent families for the cross-validation suites.  Default runs
// enumerate exhaustively; large bounds are sampled with a stated seed.

struct FamilyBounds {
  int atoms = 2;      // number of distinct atom names (A, B, C, ...)
  int depth = 1;      // connective nesting depth per formula
  int max_ant = 2;    // antecedent formulas (NL: antecedent tree leaves)
  int max_succ = 2;   // succedent formulas (single-conclusion logics use 1)
};

namespace detail {

inline std::vector<Conn> logic_binaries(LogicId logic) {
  switch (logic) {
    case LogicId::Classical: return {Conn::And, Conn::Or, Conn::Impl};
    case LogicId::MLL: return {Conn::Tensor, Conn::Par, Conn::Lolli};
    case LogicId::MILL: return {Conn::Tensor, Conn::Lolli};
    case LogicId::LambekL:
    case LogicId::LambekLEps: return {Conn::Over, Conn::Under, Conn::Prod};
    case LogicId::NL: return {Conn::Over, Conn::Under};
  }
  return {};
}

inline std::vector<Conn> logic_unaries(LogicId logic) {
  switch (logic) {
    case LogicId::Classical: return {Conn::Neg};
    case LogicId::MLL: return {Conn::LinNeg};
    default: return {};
  }
}

}  // namespace detail

inline std::vector<std::string> atom_names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('A' + i)));
  return out;
}

inline std::vector<Formula> enumerate_formulas(LogicId logic, int atoms, int depth) {
  std::vector<Formula> cur;
  for (const auto& name : atom_names(atoms)) cur.push_back(Formula::atom(name));
  auto unaries = detail::logic_unaries(logic);
  auto binaries = detail::logic_binaries(logic);
  std::vector<Formula> all = cur;
  for (int d = 0; d < depth; ++d) {
    std::vector<Formula> next = all;
    for (Conn u : unaries)
      for (const auto& f : all) next.push_back(Formula::unary(u, f));
    for (Conn b : binaries)
      for (const auto& l : all)
        for (const auto& r : all) next.push_back(Formula::binary(b, l, r));
    all = std::move(next);
    // dedupe (growth by depth keeps earlier strata)
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
  }
  return all;
}

namespace detail {

inline void enum_lists(const std::vector<Formula>& pool, int max_len, std::vector<Formula>& acc,
                       const std::function<void(const std::vector<Formula>&)>& fn) {
  fn(acc);
  if (static_cast<int>(acc.size()) == max_len) return;
  for (const auto& f : pool) {
    acc.push_back(f);
    enum_lists(pool, max_len, acc, fn);
    acc.pop_back();
  }
}

inline void enum_trees(const std::vector<Formula>& pool, int leaves,
                       const std::function<void(const StructTree&)>& fn) {
  if (leaves == 1) {
    for (const auto& f : pool) fn(StructTree::leaf(f));
    return;
  }
  for (int k = 1; k < leaves; ++k)
    enum_trees(pool, k, [&](const StructTree& l) {
      enum_trees(pool, leaves - k, [&](const StructTree& r) { fn(StructTree::pair(l, r)); });
    });
}

}  // namespace detail

// Exhaustive enumeration of the family; fn returns true to stop early.
inline long enumerate_sequents(LogicId logic, const FamilyBounds& b,
                               const std::function<bool(const Sequent&)>& fn) {
  auto pool = enumerate_formulas(logic, b.atoms, b.depth);
  long count = 0;
  bool stop = false;
  auto emit = [&](const Sequent& s) {
    if (stop) return;
    ++count;
    if (fn(s)) stop = true;
  };
  if (logic == LogicId::NL) {
    for (int leaves = 1; leaves <= b.max_ant && !stop; ++leaves)
      detail::enum_trees(pool, leaves, [&](const StructTree& t) {
        if (stop) return;
        for (const auto& succ : pool) {
          if (stop) return;
          emit(Sequent::nl(t, succ));
        }
      });
    return count;
  }
  int min_ant = logic == LogicId::LambekL ? 1 : 0;
  std::vector<Formula> ant;
  detail::enum_lists(pool, b.max_ant, ant, [&](const std::vector<Formula>& a) {
    if (stop || static_cast<int>(a.size()) < min_ant) return;
    if (single_conclusion(logic)) {
      for (const auto& succ : pool) {
        if (stop) return;
        emit(Sequent::lists(logic, a, {succ}));
      }
    } else {
      std::vector<Formula> succ;
      detail::enum_lists(pool, b.max_succ, succ, [&](const std::vector<Formula>& s) {
        if (stop) return;
        emit(Sequent::lists(logic, a, s));
      });
    }
  });
  return count;
}

// Seeded sampling from the same family.
struct FamilySampler {
  LogicId logic;
  FamilyBounds bounds;
  std::mt19937_64 rng;

  FamilySampler(LogicId l, const FamilyBounds& b, uint64_t seed)
      : logic(l), bounds(b), rng(seed) {}

  int uniform(int lo, int hi) {  // inclusive
    return static_cast<int>(std::uniform_int_distribution<int>(lo, hi)(rng));
  }

  Formula random_formula(int depth) {
    auto unaries = detail::logic_unaries(logic);
    auto binaries = detail::logic_binaries(logic);
    if (depth == 0 || uniform(0, 2) == 0)
      return Formula::atom(atom_names(bounds.atoms)[static_cast<size_t>(
          uniform(0, bounds.atoms - 1))]);
    int choices = static_cast<int>(unaries.size() + binaries.size());
    int pick = uniform(0, choices - 1);
    if (pick < static_cast<int>(unaries.size()))
      return Formula::unary(unaries[static_cast<size_t>(pick)], random_formula(depth - 1));
    Conn c = binaries[static_cast<size_t>(pick) - unaries.size()];
    return Formula::binary(c, random_formula(depth - 1), random_formula(depth - 1));
  }

  StructTree random_tree(int leaves) {
    if (leaves == 1) return StructTree::leaf(random_formula(bounds.depth));
    int k = uniform(1, leaves - 1);
    return StructTree::pair(random_tree(k), random_tree(leaves - k));
  }

  Sequent sample() {
    if (logic == LogicId::NL)
      return Sequent::nl(random_tree(uniform(1, bounds.max_ant)),
                         random_formula(bounds.depth));
    int min_ant = logic == LogicId::LambekL ? 1 : 0;
    int na = uniform(min_ant, bounds.max_ant);
    std::vector<Formula> ant;
    for (int i = 0; i < na; ++i) ant.push_back(random_formula(bounds.depth));
    std::vector<Formula> succ;
    int ns = single_conclusion(logic) ? 1 : uniform(0, bounds.max_succ);
    for (int i = 0; i < ns; ++i) succ.push_back(random_formula(bounds.depth));
    if (!single_conclusion(logic) && na == 0 && ns == 0) succ.push_back(random_formula(0));
    return Sequent::lists(logic, ant, succ);
  }
};

}  // namespace spk
