#pragma once

// Reproduction of the customer-complaint triage benchmark: three candidate
// workflows evaluated under the bundled config and checked cell by cell
// against the reference values.

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "wfeval/io.hpp"
#include "wfeval/ranking.hpp"
#include "wfeval/report.hpp"

#ifndef WFEVAL_FIXTURE_DIR
#define WFEVAL_FIXTURE_DIR "fixtures"
#endif

namespace wfeval {

inline std::filesystem::path default_fixture_dir() { return WFEVAL_FIXTURE_DIR; }

struct CaseStudyCell {
  std::string workflow;
  std::string metric;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;  // absolute; 0 means exact
  bool pass = false;
};

struct CaseStudyExpectation {
  std::string workflow;
  double cost, duration, success, reward;
};

/// Reference benchmark values. Cost is the cumulative dollar spend.
inline const std::vector<CaseStudyExpectation>& case_study_table() {
  static const std::vector<CaseStudyExpectation> table = {
      {"W1", 2.52e-3, 6110.0, 0.9262, 0.8495},
      {"W2", 9.6e-4, 3810.0, 0.9250, 0.8500},
      {"W3", 9.6e-4, 3810.0, 0.9250, 0.8500},
  };
  return table;
}

inline constexpr double kCaseCostTolerance = 1e-12;
inline constexpr double kCaseSuccessTolerance = 1e-4;
inline constexpr double kCaseRewardTolerance = 5e-4;
// Unrounded small-customer gain: CLV $30 times the 0.0305 expected-loss rate.
inline constexpr double kExactSmallCustomerGain = 30.0 * 0.0305;

struct CaseStudyResult {
  EvaluationConfig config;
  std::vector<WorkflowGraph> workflows;
  std::vector<EvaluationReport> reports;
  std::vector<EvaluationReport> exact_gain_reports;  // gain 0.915 instead of the rounded 0.92
  std::vector<CaseStudyCell> cells;
  Ordering w2_vs_w1 = Ordering::Equal;
  Ordering w2_vs_w3 = Ordering::Equal;
  std::vector<std::string> selected;

  bool all_pass() const {
    for (const auto& c : cells)
      if (!c.pass) return false;
    return w2_vs_w1 == Ordering::APrecedes && w2_vs_w3 == Ordering::APrecedes &&
           selected == std::vector<std::string>{"W2"};
  }
};

inline CaseStudyResult run_case_study(const std::filesystem::path& fixture_dir = default_fixture_dir()) {
  const auto dir = fixture_dir / "case_study";
  CaseStudyResult res;
  res.config = load_config(dir / "config.json");
  for (const char* name : {"w1.json", "w2.json", "w3.json"}) res.workflows.push_back(load_workflow(dir / name));

  auto exact_cfg = res.config;
  for (const auto& w : res.workflows)
    for (const auto& n : w.nodes())
      if (n.is_output()) exact_cfg.gain_overrides[n.id] = kExactSmallCustomerGain;

  const auto& table = case_study_table();
  for (std::size_t i = 0; i < res.workflows.size(); ++i) {
    const auto& w = res.workflows[i];
    auto report = evaluate(w, res.config);
    const auto& want = table[i];
    const auto wg = res.config.cumulative_weights(w.cumulative_dims().size());
    double cumulative_cost = 0.0;
    for (std::size_t k = 0; k < wg.size(); ++k) cumulative_cost += wg[k] * report.resources.cumulative[k];

    auto cell = [&](const char* metric, double expected, double actual, double tol) {
      res.cells.push_back({w.id(), metric, expected, actual, tol, std::abs(actual - expected) <= tol});
    };
    cell("Cost ($)", want.cost, cumulative_cost, kCaseCostTolerance);
    cell("Max duration (ms)", want.duration, report.resources.duration, 0.0);
    cell("Success probability", want.success, report.success_probability, kCaseSuccessTolerance);
    cell("Reward R ($)", want.reward, report.reward.reward, kCaseRewardTolerance);

    res.reports.push_back(std::move(report));
    res.exact_gain_reports.push_back(evaluate(w, exact_cfg));
  }

  res.w2_vs_w1 = compare(res.reports[1], res.reports[0], res.config);
  res.w2_vs_w3 = compare(res.reports[1], res.reports[2], res.config);
  CandidateSet cs;
  for (std::size_t i = 0; i < res.workflows.size(); ++i) cs.candidates.push_back({res.workflows[i], res.reports[i]});
  res.selected = select_optimal(cs, res.config);
  return res;
}

inline std::string emit_case_study(const CaseStudyResult& res) {
  std::string out = emit_config_echo(res.config);
  out += emit_report(res.reports, ReportFormat::TextTable);
  out += "\n";
  for (const auto& c : res.cells) {
    out += std::string(c.pass ? "PASS" : "FAIL") + "  " + cellfmt::pad(c.workflow, 4) +
           cellfmt::pad(c.metric, 21) + " expected " + cellfmt::exact(c.expected) + " got " +
           cellfmt::exact(c.actual) + " (tol " + cellfmt::exact(c.tolerance) + ")\n";
  }
  out += "INFO  CIP/SIP/Penalty rows use non-normative fixture annotations; reference penalty values are not reproduced\n";
  for (const auto& r : res.exact_gain_reports)
    out += "INFO  " + r.workflow_id + " reward with unrounded gain " + cellfmt::exact(kExactSmallCustomerGain) +
           ": " + cellfmt::printf("%.4f", r.reward.reward) + "\n";
  out += std::string(res.w2_vs_w1 == Ordering::APrecedes ? "PASS" : "FAIL") + "  compare(W2, W1) = " +
         to_string(res.w2_vs_w1) + "\n";
  out += std::string(res.w2_vs_w3 == Ordering::APrecedes ? "PASS" : "FAIL") + "  compare(W2, W3) = " +
         to_string(res.w2_vs_w3) + "\n";
  std::string sel;
  for (const auto& s : res.selected) sel += (sel.empty() ? "" : ",") + s;
  out += std::string(res.selected == std::vector<std::string>{"W2"} ? "PASS" : "FAIL") + "  selected = {" + sel + "}\n";
  out += res.all_pass() ? "case study: all checks passed\n" : "case study: FAILED\n";
  return out;
}

}  // namespace wfeval
