#pragma once

#include <chrono>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spk/family.hpp"
#include "spk/matrix.hpp"
#include "spk/netsearch.hpp"
#include "spk/prover.hpp"
#include "spk/syntax.hpp"

namespace spk {

// Running all applicable decision methods on a sequent and comparing them is
// the point of the toolkit: the sequent prover is the oracle, matrices and
// proof nets must agree with it.

enum class MethodVerdict { Provable, NotProvable, Inconclusive };

inline const char* method_verdict_name(MethodVerdict v) {
  switch (v) {
    case MethodVerdict::Provable: return "provable";
    case MethodVerdict::NotProvable: return "not_provable";
    case MethodVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct MethodReport {
  std::string method;  // sequent | matrix | net
  MethodVerdict verdict = MethodVerdict::Inconclusive;
  double ms = 0.0;
  long nodes = 0;        // sequent: expansions
  int depth = 0;         // sequent: max depth
  long paths = 0;        // matrix: atomic paths
  long connections = 0;  // matrix: connections in the found set
  long linkings = 0;     // net: matchings examined
  long switchings = 0;   // net: switchings of the found/last structure
  long contraction_steps = 0;
  std::string failure;   // net: deepest failure when unprovable
  std::string note;
};

struct RunReport {
  std::string sequent;
  LogicId logic = LogicId::Classical;
  std::vector<MethodReport> methods;
  bool agreement = true;       // conclusive methods all agree
  bool all_conclusive = true;  // no budget/bound interruptions
  std::optional<bool> provable;
};

struct RunOptions {
  long budget = default_budget();
  bool planar_only = false;
  NetSearchOptions net;
};

namespace detail {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

}  // namespace detail

inline bool matrix_applicable(LogicId logic) {
  return logic == LogicId::Classical || logic == LogicId::MLL || logic == LogicId::MILL;
}

inline MethodReport run_sequent_method(const Sequent& s, const RunOptions& opts) {
  MethodReport r;
  r.method = "sequent";
  detail::Timer t;
  ProveOptions po;
  po.budget = opts.budget;
  Verdict v = prove(s, po);
  r.ms = t.ms();
  r.nodes = v.stats.nodes;
  r.depth = v.stats.max_depth;
  switch (v.status) {
    case ProveStatus::Provable: r.verdict = MethodVerdict::Provable; break;
    case ProveStatus::NotProvable: r.verdict = MethodVerdict::NotProvable; break;
    case ProveStatus::BudgetExhausted:
      r.verdict = MethodVerdict::Inconclusive;
      r.note = "node budget exhausted";
      break;
  }
  return r;
}

inline MethodReport run_matrix_method(const Sequent& s, const RunOptions&) {
  MethodReport r;
  r.method = "matrix";
  detail::Timer t;
  SequentMatrix sm = build_matrix(s);
  r.paths = static_cast<long>(atomic_paths(sm).size());
  std::optional<ConnectionSet> cs = s.logic == LogicId::Classical
                                        ? spanning_set(sm)
                                        : linear_spanning_set(sm);
  r.ms = t.ms();
  r.verdict = cs ? MethodVerdict::Provable : MethodVerdict::NotProvable;
  if (cs) r.connections = static_cast<long>(cs->connections.size());
  return r;
}

inline MethodReport run_net_method(const Sequent& s, const RunOptions& opts) {
  MethodReport r;
  r.method = "net";
  detail::Timer t;
  NetSearchOptions no = opts.net;
  no.planar_only = no.planar_only || opts.planar_only;
  try {
    NetSearchResult res = find_proof_net(s, no);
    r.ms = t.ms();
    r.linkings = res.linkings;
    r.switchings = res.verdict.switchings;
    r.contraction_steps = res.verdict.contraction_steps;
    if (res.found()) {
      r.verdict = MethodVerdict::Provable;
    } else if (res.conclusive) {
      r.verdict = MethodVerdict::NotProvable;
      r.failure = failure_name(res.verdict.failure);
      r.note = res.verdict.detail;
    } else {
      r.verdict = MethodVerdict::Inconclusive;
      r.note = "no net within the structural-link bounds (classical synthesis is bounded)";
    }
  } catch (const ResourceLimit& e) {
    r.ms = t.ms();
    r.verdict = MethodVerdict::Inconclusive;
    r.note = e.what();
  }
  return r;
}

inline RunReport run_methods(const Sequent& s, const std::vector<std::string>& methods,
                             const RunOptions& opts = {}) {
  RunReport rep;
  rep.sequent = print_sequent(s);
  rep.logic = s.logic;
  for (const auto& m : methods) {
    if (m == "sequent") rep.methods.push_back(run_sequent_method(s, opts));
    if (m == "matrix") {
      if (!matrix_applicable(s.logic))
        throw UnsupportedLogic("the matrix method is not defined for the Lambek systems");
      rep.methods.push_back(run_matrix_method(s, opts));
    }
    if (m == "net") rep.methods.push_back(run_net_method(s, opts));
  }
  std::optional<bool> verdict;
  for (const auto& m : rep.methods) {
    if (m.verdict == MethodVerdict::Inconclusive) {
      rep.all_conclusive = false;
      continue;
    }
    bool p = m.verdict == MethodVerdict::Provable;
    if (!verdict) {
      verdict = p;
    } else if (*verdict != p) {
      rep.agreement = false;
    }
  }
  rep.provable = rep.agreement ? verdict : std::nullopt;
  return rep;
}

inline std::vector<std::string> default_methods(LogicId logic) {
  if (matrix_applicable(logic)) return {"sequent", "matrix", "net"};
  return {"sequent", "net"};
}

// ------------------------------------------------------------------- JSON

inline nlohmann::json to_json(const MethodReport& m) {
  nlohmann::json j;
  j["method"] = m.method;
  j["verdict"] = method_verdict_name(m.verdict);
  j["ms"] = m.ms;
  j["nodes"] = m.nodes;
  j["depth"] = m.depth;
  j["paths"] = m.paths;
  j["connections"] = m.connections;
  j["linkings"] = m.linkings;
  j["switchings"] = m.switchings;
  j["contraction_steps"] = m.contraction_steps;
  j["failure"] = m.failure;
  j["note"] = m.note;
  return j;
}

inline MethodReport method_report_from_json(const nlohmann::json& j) {
  MethodReport m;
  m.method = j.at("method").get<std::string>();
  std::string v = j.at("verdict").get<std::string>();
  m.verdict = v == "provable" ? MethodVerdict::Provable
              : v == "not_provable" ? MethodVerdict::NotProvable
                                    : MethodVerdict::Inconclusive;
  m.ms = j.at("ms").get<double>();
  m.nodes = j.at("nodes").get<long>();
  m.depth = j.at("depth").get<int>();
  m.paths = j.at("paths").get<long>();
  m.connections = j.at("connections").get<long>();
  m.linkings = j.at("linkings").get<long>();
  m.switchings = j.at("switchings").get<long>();
  m.contraction_steps = j.at("contraction_steps").get<long>();
  m.failure = j.at("failure").get<std::string>();
  m.note = j.at("note").get<std::string>();
  return m;
}

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j;
  j["sequent"] = r.sequent;
  j["logic"] = logic_name(r.logic);
  j["agreement"] = r.agreement;
  j["all_conclusive"] = r.all_conclusive;
  if (r.provable)
    j["provable"] = *r.provable;
  else
    j["provable"] = nullptr;
  j["methods"] = nlohmann::json::array();
  for (const auto& m : r.methods) j["methods"].push_back(to_json(m));
  return j;
}

inline RunReport run_report_from_json(const nlohmann::json& j) {
  RunReport r;
  r.sequent = j.at("sequent").get<std::string>();
  r.logic = *logic_from_name(j.at("logic").get<std::string>());
  r.agreement = j.at("agreement").get<bool>();
  r.all_conclusive = j.at("all_conclusive").get<bool>();
  if (!j.at("provable").is_null()) r.provable = j.at("provable").get<bool>();
  for (const auto& m : j.at("methods")) r.methods.push_back(method_report_from_json(m));
  return r;
}

inline bool reports_equal(const RunReport& a, const RunReport& b) {
  return to_json(a) == to_json(b);
}

inline std::string report_text(const RunReport& r) {
  std::string out;
  out += "sequent: " + r.sequent + "\n";
  out += "logic: " + std::string(logic_name(r.logic)) + "\n";
  char buf[64];
  for (const auto& m : r.methods) {
    out += "method " + m.method + ": " + method_verdict_name(m.verdict);
    std::snprintf(buf, sizeof buf, " (%.2f ms", m.ms);
    out += buf;
    if (m.method == "sequent")
      out += ", nodes=" + std::to_string(m.nodes) + ", depth=" + std::to_string(m.depth);
    if (m.method == "matrix")
      out += ", paths=" + std::to_string(m.paths) +
             ", connections=" + std::to_string(m.connections);
    if (m.method == "net") out += ", linkings=" + std::to_string(m.linkings);
    out += ")";
    if (!m.failure.empty()) out += " failure=" + m.failure;
    if (!m.note.empty()) out += " [" + m.note + "]";
    out += "\n";
  }
  out += std::string("agreement: ") + (r.agreement ? "yes" : "NO") + "\n";
  if (r.provable) out += std::string("verdict: ") + (*r.provable ? "provable" : "not provable") + "\n";
  return out;
}

// ------------------------------------------------------ derivation objects

inline nlohmann::json to_json(const Derivation& d) {
  nlohmann::json j;
  j["rule"] = d.rule;
  j["sequent"] = print_sequent(d.conclusion);
  j["premises"] = nlohmann::json::array();
  for (const auto& p : d.premises) j["premises"].push_back(to_json(*p));
  return j;
}

inline DerivationPtr derivation_from_json(const nlohmann::json& j, LogicId logic) {
  std::vector<DerivationPtr> prem;
  for (const auto& p : j.at("premises")) prem.push_back(derivation_from_json(p, logic));
  return make_deriv(parse_sequent(j.at("sequent").get<std::string>(), logic),
                    j.at("rule").get<std::string>(), std::move(prem));
}

// -------------------------------------------------------------- crosscheck

struct CrosscheckOptions {
  FamilyBounds bounds;
  long samples = 0;  // 0 = exhaustive
  uint64_t seed = 42;
  long budget = default_budget();
  long progress_every = 0;  // 0 = silent
};

struct CrosscheckSummary {
  long total = 0;
  long provable = 0;
  long disagreements = 0;
  long inconclusive = 0;  // budget/bound interruptions, tallied separately
  long structures = 0;    // complete proof structures examined
  long dr_contraction_mismatches = 0;
  long contraction_bound_violations = 0;  // steps > edge count
  long minimality_decisive = 0;           // condition (3) changed the linear verdict
  long witness_check_failures = 0;        // witnesses rejected by check_derivation
  long subformula_violations = 0;         // witnesses breaking the subformula property
  long connection_verify_failures = 0;    // found sets rejected by verify_connections
  std::vector<std::string> disagreement_examples;
  double ms = 0.0;
  // minimality_decisive is informational: it counts the sequents where
  // Galmiche's condition (3) changed the linear-spanning verdict, settling
  // whether (3) is redundant (it is not: see A*A => A@A).
  bool ok() const {
    return disagreements == 0 && dr_contraction_mismatches == 0 &&
           contraction_bound_violations == 0 && witness_check_failures == 0 &&
           subformula_violations == 0 && connection_verify_failures == 0;
  }
};

namespace detail {

inline long structure_edge_count(const ProofStructure& ps) {
  long n = 0;
  for (const auto& l : ps.links) {
    switch (l.kind) {
      case LinkKind::Axiom: n += 1; break;
      case LinkKind::Weakening: n += 2; break;
      default: n += static_cast<long>(l.premises.size()); break;
    }
  }
  return n;
}

// Check one sequent with every applicable method, feeding the summary.
inline void crosscheck_one(const Sequent& s, const CrosscheckOptions& opts,
                           CrosscheckSummary& sum, std::ostream* log) {
  ++sum.total;
  ProveOptions po;
  po.budget = opts.budget;
  Verdict oracle = prove(s, po);
  if (oracle.status == ProveStatus::BudgetExhausted) {
    ++sum.inconclusive;
    return;
  }
  bool expected = oracle.provable();
  if (expected) ++sum.provable;

  std::vector<std::pair<std::string, bool>> verdicts;
  verdicts.emplace_back("sequent", expected);

  if (matrix_applicable(s.logic)) {
    SequentMatrix sm = build_matrix(s);
    if (s.logic == LogicId::Classical) {
      verdicts.emplace_back("matrix", spanning_set(sm).has_value());
    } else {
      bool full = linear_spanning_set(sm, true).has_value();
      bool no_min = linear_spanning_set(sm, false).has_value();
      if (full != no_min) ++sum.minimality_decisive;
      verdicts.emplace_back("matrix", full);
    }
  }

  if (s.logic != LogicId::Classical) {
    // Proof nets: enumerate every linking (planar-only for the Lambek
    // systems) so that DR and contraction can be compared structure by
    // structure; net existence is the OR over the stack verdicts.
    DecompositionForest forest = decompose(s);
    ProofStructure skeleton = build_skeleton(forest);
    bool lambek = s.logic != LogicId::MLL && s.logic != LogicId::MILL;
    bool net_exists = false;
    bool contraction_net_exists = false;
    try {
    enumerate_linkings(skeleton, lambek, [&](const ProofStructure& ps) {
      ++sum.structures;
      NetVerdict dr = dr_check(ps);
      NetVerdict con = contraction_check(ps);
      if (dr.is_net != con.is_net) ++sum.dr_contraction_mismatches;
      if (con.contraction_steps > structure_edge_count(ps)) ++sum.contraction_bound_violations;
      if (con.is_net) contraction_net_exists = true;
      if (!dr.is_net) return false;
      if (lambek) {
        if (!planarity_check(ps).is_net) return false;
        if ((s.logic == LogicId::LambekL || s.logic == LogicId::NL) &&
            !subnet_check(ps).is_net)
          return false;
        if (s.logic == LogicId::NL) {
          if (!nl_boundary_check(ps, nl_boundaries(s, ps)).is_net) return false;
          if (!nl_consumption_check(s, ps).is_net) return false;
        }
      }
      net_exists = true;
      return false;  // keep enumerating: the suite wants every structure
    });
    } catch (const ResourceLimit&) {
      ++sum.inconclusive;
      return;
    }
    verdicts.emplace_back("net", net_exists);
    if (s.logic == LogicId::MLL || s.logic == LogicId::MILL)
      verdicts.emplace_back("net-contraction", contraction_net_exists);
  }

  bool agree = true;
  for (const auto& [name, v] : verdicts)
    if (v != expected) agree = false;
  if (!agree) {
    ++sum.disagreements;
    if (sum.disagreement_examples.size() < 20) {
      std::string line = print_sequent(s) + " [oracle=" +
                         (expected ? "provable" : "not_provable") + "";
      for (const auto& [name, v] : verdicts)
        if (v != expected) line += ", " + name + "=" + (v ? "provable" : "not_provable");
      line += "]";
      sum.disagreement_examples.push_back(line);
    }
  }
  if (log && opts.progress_every > 0 && sum.total % opts.progress_every == 0)
    *log << "  ... " << sum.total << " sequents, " << sum.disagreements << " disagreements\n";
}

}  // namespace detail

inline CrosscheckSummary crosscheck(LogicId logic, const CrosscheckOptions& opts,
                                    std::ostream* log = nullptr) {
  CrosscheckSummary sum;
  detail::Timer t;
  if (opts.samples > 0) {
    FamilySampler sampler(logic, opts.bounds, opts.seed);
    for (long i = 0; i < opts.samples; ++i)
      detail::crosscheck_one(sampler.sample(), opts, sum, log);
  } else {
    enumerate_sequents(logic, opts.bounds, [&](const Sequent& s) {
      detail::crosscheck_one(s, opts, sum, log);
      return false;
    });
  }
  sum.ms = t.ms();
  return sum;
}

inline std::string crosscheck_text(LogicId logic, const CrosscheckOptions& opts,
                                   const CrosscheckSummary& s) {
  std::string out;
  out += "logic: " + std::string(logic_name(logic)) + "\n";
  out += "bounds: atoms<=" + std::to_string(opts.bounds.atoms) +
         " depth<=" + std::to_string(opts.bounds.depth) +
         " ant<=" + std::to_string(opts.bounds.max_ant) +
         " succ<=" + std::to_string(opts.bounds.max_succ);
  if (opts.samples > 0)
    out += " (sampled " + std::to_string(opts.samples) + ", seed " +
           std::to_string(opts.seed) + ")";
  out += "\n";
  out += "sequents: " + std::to_string(s.total) + " (" + std::to_string(s.provable) +
         " provable)\n";
  out += "structures: " + std::to_string(s.structures) + "\n";
  out += "disagreements: " + std::to_string(s.disagreements) + "\n";
  out += "dr/contraction mismatches: " + std::to_string(s.dr_contraction_mismatches) + "\n";
  out += "contraction bound violations: " + std::to_string(s.contraction_bound_violations) + "\n";
  out += "minimality-decisive sequents (condition 3 at work): " +
         std::to_string(s.minimality_decisive) + "\n";
  out += "resource-limited: " + std::to_string(s.inconclusive) + "\n";
  for (const auto& e : s.disagreement_examples) out += "  disagrees: " + e + "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "elapsed: %.1f ms\n", s.ms);
  out += buf;
  return out;
}

inline nlohmann::json to_json(LogicId logic, const CrosscheckOptions& opts,
                              const CrosscheckSummary& s) {
  nlohmann::json j;
  j["logic"] = logic_name(logic);
  j["bounds"] = {{"atoms", opts.bounds.atoms},
                 {"depth", opts.bounds.depth},
                 {"ant", opts.bounds.max_ant},
                 {"succ", opts.bounds.max_succ}};
  j["samples"] = opts.samples;
  j["seed"] = opts.seed;
  j["sequents"] = s.total;
  j["provable"] = s.provable;
  j["structures"] = s.structures;
  j["disagreements"] = s.disagreements;
  j["dr_contraction_mismatches"] = s.dr_contraction_mismatches;
  j["contraction_bound_violations"] = s.contraction_bound_violations;
  j["minimality_decisive"] = s.minimality_decisive;
  j["resource_limited"] = s.inconclusive;
  j["disagreement_examples"] = s.disagreement_examples;
  j["ms"] = s.ms;
  return j;
}

}  // namespace spk
