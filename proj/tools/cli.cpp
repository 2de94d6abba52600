#include "folp/cli.hpp"

#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "folp/checker.hpp"
#include "folp/constant_spec.hpp"
#include "folp/error.hpp"
#include "folp/model.hpp"
#include "folp/search.hpp"
#include "folp/text_format.hpp"

namespace folp::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string formula;
  std::string file;
  std::string cs_path;
  std::string goal;
  std::string format = "text";
  std::string out_path;
  std::vector<std::string> hints;
  std::size_t max_nodes = SearchBudget{}.max_nodes;
  std::size_t max_depth = SearchBudget{}.max_depth;
  std::size_t max_params = SearchBudget{}.max_params;
  std::size_t max_cuts = SearchBudget{}.max_cut_candidates;
  double timeout = 30.0;
  bool validate_only = false;
};

ConstantSpecification load_cs(const Options& o, Signature& sig) {
  if (o.cs_path.empty()) return {};
  return read_cs_file(o.cs_path, &sig);
}

int cmd_parse(const Options& o, std::ostream& out) {
  Signature sig;
  load_cs(o, sig);
  out << print_formula(parse_formula(o.formula, sig)) << '\n';
  return 0;
}

int cmd_axiom_match(const Options& o, std::ostream& out) {
  Signature sig;
  load_cs(o, sig);
  auto s = match_axiom(parse_formula(o.formula, sig));
  out << (s ? std::string(scheme_name(*s)) : std::string("none")) << '\n';
  return 0;
}

std::string status_name(SearchOutcome::Status s) {
  switch (s) {
    case SearchOutcome::Status::Proved: return "proved";
    case SearchOutcome::Status::Open: return "open";
    case SearchOutcome::Status::Exhausted: return "exhausted";
  }
  return "open";
}

int cmd_prove(const Options& o, std::ostream& out, std::ostream& err) {
  Signature sig;
  const ConstantSpecification cs = load_cs(o, sig);
  const Formula goal = parse_formula(o.formula, sig);
  if (!is_sentence(goal)) throw FormatError("goal must be a sentence without parameters: " + print_formula(goal));
  std::vector<Formula> hints;
  for (const auto& h : o.hints) hints.push_back(parse_formula(h, sig));
  SearchBudget budget;
  budget.max_nodes = o.max_nodes;
  budget.max_depth = o.max_depth;
  budget.max_params = o.max_params;
  budget.max_cut_candidates = o.max_cuts;
  budget.time_limit = std::chrono::milliseconds(static_cast<long long>(o.timeout * 1000));
  const SearchOutcome r = prove(goal, cs, budget, hints);

  if (r.status == SearchOutcome::Status::Proved) {
    const Verdict v = check_proof(*r.proof, cs, goal);
    if (!v.accepted) {
      err << "internal error: the checker rejects the proof found: " << v.to_text() << '\n';
      return 2;
    }
    if (!o.out_path.empty()) write_proof_file(o.out_path, *r.proof);
  }
  if (o.format == "json") {
    json j{{"status", status_name(r.status)},
           {"nodes_explored", r.stats.nodes},
           {"elapsed_ms", r.stats.elapsed.count()}};
    if (r.proof) {
      j["proof"] = json::parse(proof_to_json(*r.proof));
    } else {
      j["branch"] = json::array();
      for (const auto& f : r.open_branch) j["branch"].push_back(print_formula(f));
      if (!r.dimension.empty()) j["dimension"] = r.dimension;
    }
    out << j.dump(2) << '\n';
  } else {
    out << status_name(r.status);
    if (!r.dimension.empty()) out << " (" << r.dimension << " budget)";
    out << '\n';
    if (r.proof) {
      out << proof_to_text(*r.proof);
    } else {
      for (const auto& d : r.diagnostics) out << d << '\n';
      for (const auto& f : r.open_branch) out << "  " << print_formula(f) << '\n';
    }
  }
  return r.status == SearchOutcome::Status::Proved ? 0 : 1;
}

int cmd_check(const Options& o, std::ostream& out) {
  Signature sig;
  const ConstantSpecification cs = load_cs(o, sig);
  const ProofTree t = read_proof_file(o.file, sig.constants);
  std::optional<Formula> goal;
  if (!o.goal.empty()) goal = parse_formula(o.goal, sig);
  const Verdict v = check_proof(t, cs, goal);
  out << (o.format == "json" ? v.to_json() : v.to_text()) << '\n';
  return v.accepted ? 0 : 1;
}

int cmd_model_check(const Options& o, std::ostream& out) {
  Signature sig;
  const ConstantSpecification cs = load_cs(o, sig);
  const MkrtychevModel m = read_model_file(o.file, sig.constants);
  std::vector<Formula> queries;
  if (!o.formula.empty()) queries.push_back(parse_formula(o.formula, sig));
  if (queries.empty() && !o.validate_only) throw FormatError("--formula is required unless --validate-only is given");
  const auto violations = validate_model(m, cs, queries);
  std::optional<bool> truth;
  if (violations.empty() && !o.validate_only) truth = satisfies(m, queries.front());
  if (o.format == "json") {
    json j{{"valid", violations.empty()}, {"violations", json::array()}};
    for (const auto& v : violations)
      j["violations"].push_back({{"condition", v.condition},
                                 {"term", v.term ? json(print_term(*v.term)) : json(nullptr)},
                                 {"formula", v.formula ? json(print_formula(*v.formula)) : json(nullptr)},
                                 {"message", v.message}});
    if (truth) j["satisfied"] = *truth;
    out << j.dump(2) << '\n';
  } else {
    for (const auto& v : violations) out << "violation " << v.message << '\n';
    if (violations.empty()) out << "model valid\n";
    if (truth) out << (*truth ? "true" : "false") << '\n';
  }
  if (!violations.empty()) return 1;
  return truth.value_or(true) ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tableau prover, proof checker and model evaluator for first order logic of proofs", "folp"};
  app.require_subcommand(1);
  Options o;

  auto add_cs = [&o](CLI::App* sub) { sub->add_option("--cs", o.cs_path, "Constant specification file"); };
  auto add_format = [&o](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* parse = app.add_subcommand("parse", "Print the canonical form of a formula");
  parse->add_option("formula", o.formula, "Formula")->required();
  add_cs(parse);

  CLI::App* prove_cmd = app.add_subcommand("prove", "Search for a tableau proof of a sentence");
  prove_cmd->add_option("goal", o.formula, "Goal sentence")->required();
  add_cs(prove_cmd);
  prove_cmd->add_option("--max-nodes", o.max_nodes, "Node budget")->check(CLI::PositiveNumber);
  prove_cmd->add_option("--max-depth", o.max_depth, "Branch depth budget")->check(CLI::PositiveNumber);
  prove_cmd->add_option("--max-params", o.max_params, "Parameters per branch")->check(CLI::PositiveNumber);
  prove_cmd->add_option("--max-cuts", o.max_cuts, "Cut candidates per (F*) premise")->check(CLI::PositiveNumber);
  prove_cmd->add_option("--timeout", o.timeout, "Seconds")->check(CLI::PositiveNumber);
  prove_cmd->add_option("--hint", o.hints, "Cut formula candidate for (F*)");
  prove_cmd->add_option("--out", o.out_path, "Write the proof as JSON");
  add_format(prove_cmd);

  CLI::App* check = app.add_subcommand("check", "Verify a proof file");
  check->add_option("proof", o.file, "Proof JSON")->required();
  add_cs(check);
  check->add_option("--goal", o.goal, "Expected goal sentence");
  add_format(check);

  CLI::App* model = app.add_subcommand("model-check", "Validate a model and evaluate a formula in it");
  model->add_option("model", o.file, "Model JSON")->required();
  add_cs(model);
  model->add_option("--formula", o.formula, "Closed formula over the domain");
  model->add_flag("--validate-only", o.validate_only, "Only check conditions E1-E6");
  add_format(model);

  CLI::App* axiom = app.add_subcommand("axiom-match", "Print the first axiom scheme a formula instantiates");
  axiom->add_option("formula", o.formula, "Formula")->required();
  add_cs(axiom);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (parse->parsed()) return cmd_parse(o, out);
    if (prove_cmd->parsed()) return cmd_prove(o, out, err);
    if (check->parsed()) return cmd_check(o, out);
    if (model->parsed()) return cmd_model_check(o, out);
    if (axiom->parsed()) return cmd_axiom_match(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace folp::cli
