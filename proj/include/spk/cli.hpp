#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spk/crosscheck.hpp"
#include "spk/structure_io.hpp"

namespace spk {

// Exit codes: 0 provable, 1 not provable, 2 error / disagreement /
// resource limit.

namespace cli_detail {

inline LogicId parse_logic(const std::string& name) {
  auto id = logic_from_name(name);
  if (!id) throw CLI::ValidationError("--logic", "unknown logic '" + name + "'");
  return *id;
}

inline void write_out(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot open output file " + path);
  f << content;
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sequent provability by proof search, matrices and proof nets"};
  app.require_subcommand(1);

  std::string logic_name_arg, sequent_text, method = "all", format = "text", out_path;
  std::string kind = "matrix", structure_path;
  long budget = default_budget();
  bool planar_only = false;
  long samples = 0;
  uint64_t seed = 42;
  int atoms = 2, depth = 1, width = 2, succ_width = -1;

  auto* prove_cmd = app.add_subcommand("prove", "decide a sequent");
  prove_cmd->add_option("--logic", logic_name_arg, "classical|mll|mill|l|leps|nl")->required();
  prove_cmd->add_option("sequent", sequent_text, "sequent text")->required();
  prove_cmd->add_option("--method", method, "sequent|matrix|net|all");
  prove_cmd->add_option("--format", format, "text|structured");
  prove_cmd->add_option("--out", out_path, "write the report to a file");
  prove_cmd->add_option("--budget", budget, "search node budget");
  prove_cmd->add_flag("--planar-only", planar_only,
                      "restrict axiom linkings to planar matchings (always on for L/NL)");

  auto* export_cmd = app.add_subcommand("export", "export matrices, nets and derivations");
  export_cmd->add_option("--logic", logic_name_arg, "classical|mll|mill|l|leps|nl")->required();
  export_cmd->add_option("sequent", sequent_text, "sequent text")->required();
  export_cmd->add_option("--kind", kind, "matrix|net|derivation|dot")->required();
  export_cmd->add_option("--out", out_path, "output path ('-' for stdout)")->required();
  export_cmd->add_option("--budget", budget, "search node budget");
  export_cmd->add_option("--format", format, "text|structured (derivation exports)");

  auto* check_cmd = app.add_subcommand("check-structure", "check a proof structure file");
  check_cmd->add_option("file", structure_path, "structure file path")->required();

  auto* cross_cmd = app.add_subcommand("crosscheck", "cross-validate the methods on a family");
  cross_cmd->add_option("--logic", logic_name_arg, "classical|mll|mill|l|leps|nl")->required();
  cross_cmd->add_option("--atoms", atoms, "distinct atom names");
  cross_cmd->add_option("--depth", depth, "connective depth per formula");
  cross_cmd->add_option("--width", width, "max antecedent size");
  cross_cmd->add_option("--succ", succ_width, "max succedent size (default: width)");
  cross_cmd->add_option("--samples", samples, "sample count (0 = exhaustive)");
  cross_cmd->add_option("--seed", seed, "sampling seed");
  cross_cmd->add_option("--budget", budget, "search node budget");
  cross_cmd->add_option("--format", format, "text|structured");
  cross_cmd->add_option("--out", out_path, "write the summary to a file");

  try {
    std::vector<const char*> argv;
    argv.push_back("spk");
    for (auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (prove_cmd->parsed()) {
      LogicId logic = cli_detail::parse_logic(logic_name_arg);
      Sequent s = parse_sequent(sequent_text, logic);
      std::vector<std::string> methods;
      if (method == "all")
        methods = default_methods(logic);
      else if (method == "sequent" || method == "net")
        methods = {method};
      else if (method == "matrix") {
        if (!matrix_applicable(logic))
          throw UnsupportedLogic("the matrix method is not defined for the Lambek systems");
        methods = {method};
      } else
        throw Error("unknown method '" + method + "'");
      RunOptions opts;
      opts.budget = budget;
      opts.planar_only = planar_only;
      RunReport rep = run_methods(s, methods, opts);
      std::string text = format == "structured" ? to_json(rep).dump(2) + "\n" : report_text(rep);
      cli_detail::write_out(out_path, text, out);
      if (!rep.agreement) {
        err << "error: methods disagree\n";
        return 2;
      }
      if (!rep.all_conclusive && !rep.provable) {
        err << "error: resource limit reached before a verdict\n";
        return 2;
      }
      return *rep.provable ? 0 : 1;
    }

    if (export_cmd->parsed()) {
      LogicId logic = cli_detail::parse_logic(logic_name_arg);
      Sequent s = parse_sequent(sequent_text, logic);
      if (kind == "matrix") {
        SequentMatrix sm = build_matrix(s);
        cli_detail::write_out(out_path, render_matrix(sm) + "\n", out);
        return 0;
      }
      if (kind == "net" || kind == "dot") {
        NetSearchOptions no;
        NetSearchResult res = find_proof_net(s, no);
        if (!res.found())
          throw NotProvable("no proof net exists for this sequent" +
                            std::string(res.conclusive ? "" : " within the structural bounds"));
        cli_detail::write_out(out_path,
                              kind == "net" ? structure_text(*res.net) : to_dot(*res.net), out);
        return 0;
      }
      if (kind == "derivation") {
        ProveOptions po;
        po.budget = budget;
        Verdict v = prove(s, po);
        if (v.status == ProveStatus::BudgetExhausted)
          throw ResourceLimit("node budget exhausted before a verdict");
        if (!v.provable()) throw NotProvable("sequent is not provable; no derivation to export");
        std::string text = format == "structured" ? to_json(*v.witness).dump(2) + "\n"
                                                  : derivation_text(*v.witness);
        cli_detail::write_out(out_path, text, out);
        return 0;
      }
      throw Error("unknown export kind '" + kind + "'");
    }

    if (check_cmd->parsed()) {
      std::ifstream f(structure_path);
      if (!f) throw Error("cannot open " + structure_path);
      ProofStructure ps = read_structure(f);
      NetVerdict v = ps.logic == LogicId::Classical ? check_classical_structure(ps) : dr_check(ps);
      out << (v.is_net ? "proof net" : std::string("not a proof net: ") + failure_name(v.failure))
          << "\n";
      if (!v.detail.empty()) out << v.detail << "\n";
      return v.is_net ? 0 : 1;
    }

    if (cross_cmd->parsed()) {
      LogicId logic = cli_detail::parse_logic(logic_name_arg);
      CrosscheckOptions opts;
      opts.bounds.atoms = atoms;
      opts.bounds.depth = depth;
      opts.bounds.max_ant = width;
      opts.bounds.max_succ = succ_width < 0 ? width : succ_width;
      opts.samples = samples;
      opts.seed = seed;
      opts.budget = budget;
      CrosscheckSummary sum = crosscheck(logic, opts);
      std::string text = format == "structured" ? to_json(logic, opts, sum).dump(2) + "\n"
                                                : crosscheck_text(logic, opts, sum);
      cli_detail::write_out(out_path, text, out);
      return sum.ok() ? 0 : 2;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace spk
