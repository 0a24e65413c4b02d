#pragma once

// Command-line front end. Exit codes: 0 success, 1 validation/interface or
// evaluation error, 2 usage error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wfeval/case_study.hpp"
#include "wfeval/composition.hpp"
#include "wfeval/io.hpp"
#include "wfeval/report.hpp"

namespace wfeval {

namespace detail {

inline EvaluationConfig config_or_default(const std::string& path) {
  return path.empty() ? EvaluationConfig{} : load_config(path);
}

inline ReportFormat report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "jsonl") return ReportFormat::JsonLines;
  return ReportFormat::TextTable;
}

inline int cmd_validate(const std::vector<std::string>& files, std::ostream& out) {
  int rc = 0;
  for (const auto& f : files) {
    try {
      auto doc = parse_document(read_file(f));
      auto report = validate(doc.graph);
      if (report.ok) {
        out << "ok       " << f << " (" << doc.graph.id() << ")\n";
        continue;
      }
      rc = 1;
      out << "invalid  " << f << " (" << doc.graph.id() << ")\n";
      for (const auto& v : report.violations) out << "  " << v.code << " at " << v.locus << ": " << v.message << "\n";
    } catch (const Error& e) {
      rc = 1;
      out << "error    " << f << ": " << e.what() << "\n";
    }
  }
  return rc;
}

inline std::vector<EvaluationReport> evaluate_files(const std::vector<std::string>& files,
                                                    const EvaluationConfig& cfg,
                                                    std::vector<WorkflowGraph>* graphs = nullptr) {
  std::vector<EvaluationReport> reports;
  for (const auto& f : files) {
    auto w = load_workflow(f);
    reports.push_back(evaluate(w, cfg));
    if (graphs) graphs->push_back(std::move(w));
  }
  return reports;
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"Evaluate, rank and compose workflow DAGs by expected reward and normative penalty"};
  app.name("wfeval");
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string config_path, format = "text", output_path, scenario_path, fixture_dir;
  std::vector<std::string> pair;
  bool seq = false, par = false, sample = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check workflow documents against every structural invariant");
  validate_cmd->add_option("files", files, "Workflow documents")->required();

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate workflows and print a report");
  evaluate_cmd->add_option("files", files, "Workflow documents")->required();
  evaluate_cmd->add_option("--config", config_path, "Config document (defaults apply when omitted)");
  evaluate_cmd->add_option("--format", format, "text, csv or jsonl")->check(CLI::IsMember({"text", "csv", "jsonl"}));
  evaluate_cmd->add_flag("--sample", sample, "Also run the Monte Carlo net-benefit sampler");

  auto* rank_cmd = app.add_subcommand("rank", "Select the optimal workflow(s) and print pairwise verdicts");
  rank_cmd->add_option("files", files, "Workflow documents sharing one interface")->required();
  rank_cmd->add_option("--config", config_path, "Config document");

  auto* compose_cmd = app.add_subcommand("compose", "Compose two workflows");
  auto* seq_flag = compose_cmd->add_flag("--seq", seq, "Sequential: outputs of the first feed inputs of the second");
  auto* par_flag = compose_cmd->add_flag("--par", par, "Parallel: disjoint union");
  seq_flag->excludes(par_flag);
  compose_cmd->add_option("workflows", pair, "First and second workflow documents")->required()->expected(2);
  compose_cmd->add_option("-o,--output", output_path, "Where to write the composed document")->required();

  auto* conditional_cmd = app.add_subcommand("conditional", "Expected reward of a scenario mixture");
  conditional_cmd->add_option("scenarios", scenario_path, "Scenario document")->required();
  conditional_cmd->add_option("--config", config_path, "Config document");

  auto* case_cmd = app.add_subcommand("case-study", "Reproduce the bundled benchmark table");
  case_cmd->add_option("--fixtures", fixture_dir, "Fixture directory (defaults to the bundled one)");

  try {
    app.parse(argc, argv);
    if (compose_cmd->parsed() && seq == par) throw CLI::ValidationError("compose", "exactly one of --seq or --par is required");
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (validate_cmd->parsed()) return detail::cmd_validate(files, out);

    if (evaluate_cmd->parsed()) {
      const auto cfg = detail::config_or_default(config_path);
      std::vector<WorkflowGraph> graphs;
      const auto reports = detail::evaluate_files(files, cfg, &graphs);
      const auto fmt = detail::report_format(format);
      if (fmt == ReportFormat::TextTable) out << emit_config_echo(cfg);
      out << emit_report(reports, fmt);
      if (sample) {
        for (const auto& w : graphs) {
          auto est = sample_net_benefit(w, cfg, cfg.sampler.seed, cfg.sampler.samples, cfg.sampler.threads);
          out << "sample " << w.id() << " mean=" << cellfmt::exact(est.mean)
              << " std_error=" << cellfmt::exact(est.std_error) << " n=" << est.samples << " algorithm=" << est.algorithm
              << "\n";
        }
      }
      return 0;
    }

    if (rank_cmd->parsed()) {
      const auto cfg = detail::config_or_default(config_path);
      std::vector<WorkflowGraph> graphs;
      const auto reports = detail::evaluate_files(files, cfg, &graphs);
      CandidateSet cs;
      for (std::size_t i = 0; i < graphs.size(); ++i) cs.candidates.push_back({graphs[i], reports[i]});
      const auto sel = select_stages(cs, cfg);
      out << emit_config_echo(cfg) << emit_report(reports, ReportFormat::TextTable) << "\n";
      for (std::size_t i = 0; i < reports.size(); ++i)
        for (std::size_t j = i + 1; j < reports.size(); ++j)
          out << reports[i].workflow_id << " vs " << reports[j].workflow_id << ": "
              << to_string(compare(reports[i], reports[j], cfg)) << " distance=" << cellfmt::exact(distance(reports[i], reports[j]))
              << "\n";
      std::string stage1, stage2;
      for (const auto& s : sel.reward_optimal) stage1 += (stage1.empty() ? "" : ",") + s;
      for (const auto& s : sel.optimal) stage2 += (stage2.empty() ? "" : ",") + s;
      out << "reward-optimal: {" << stage1 << "}\n";
      out << "selected: {" << stage2 << "}\n";
      return 0;
    }

    if (compose_cmd->parsed()) {
      const auto a = load_workflow(pair[0]);
      const auto b = load_workflow(pair[1]);
      const auto res = seq ? sequential(a, b) : parallel(a, b);
      write_file(output_path, emit_workflow(res.workflow));
      out << "wrote " << output_path << " (" << res.workflow.id() << ", " << res.workflow.nodes().size() << " nodes, "
          << res.workflow.edges().size() << " edges";
      if (seq) out << ", " << res.bridge_edges.size() << " bridge edges";
      out << ")\n";
      return 0;
    }

    if (conditional_cmd->parsed()) {
      const auto cfg = detail::config_or_default(config_path);
      const auto cw = parse_conditional(read_file(scenario_path), std::filesystem::path(scenario_path).parent_path());
      const double mixture = conditional_reward(cw, cfg);
      out << emit_config_echo(cfg);
      for (const auto& s : cw.scenarios)
        out << "scenario " << s.workflow.id() << " p=" << cellfmt::exact(s.probability)
            << " reward=" << cellfmt::exact(expected_reward(s.workflow, cfg).reward) << "\n";
      out << "conditional reward " << (cw.id.empty() ? std::string("(unnamed)") : cw.id) << " = "
          << cellfmt::exact(mixture) << "\n";
      return 0;
    }

    if (case_cmd->parsed()) {
      const auto res = run_case_study(fixture_dir.empty() ? default_fixture_dir() : std::filesystem::path(fixture_dir));
      out << emit_case_study(res);
      return res.all_pass() ? 0 : 1;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace wfeval
