#pragma once

// Report emission. Text tables use the benchmark layout (one metric per row,
// one workflow per column); CSV has one workflow per row; JSON lines carry
// full-precision numbers.

#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "wfeval/evaluate.hpp"
#include "wfeval/reward.hpp"

namespace wfeval {

enum class ReportFormat { TextTable, Csv, JsonLines };

namespace cellfmt {

inline std::string printf(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

inline std::string money(double x) { return printf("%#.4g", x); }        // 4 significant figures
inline std::string probability(double x) { return printf("%.4f", x); }   // 4 decimals
inline std::string duration(double x) { return printf("%.1f", x); }      // 1 decimal
inline std::string exact(double x) { return printf("%.17g", x); }

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace cellfmt

struct ReportRow {
  const char* label;
  const char* csv_key;
  std::string (*cell)(const EvaluationReport&);
};

inline const std::vector<ReportRow>& report_rows() {
  static const std::vector<ReportRow> rows = {
      {"Cost ($)", "cost", [](const EvaluationReport& r) { return cellfmt::money(r.reward.cost); }},
      {"Max duration (ms)", "max_duration_ms", [](const EvaluationReport& r) { return cellfmt::duration(r.resources.duration); }},
      {"Success probability", "success_probability",
       [](const EvaluationReport& r) { return cellfmt::probability(r.success_probability); }},
      {"Reward R ($)", "reward", [](const EvaluationReport& r) { return cellfmt::money(r.reward.reward); }},
      {"CIP", "cip",
       [](const EvaluationReport& r) { return r.penalty ? cellfmt::probability(r.penalty->cip) : std::string("n/a"); }},
      {"SIP", "sip",
       [](const EvaluationReport& r) { return r.penalty ? cellfmt::probability(r.penalty->sip) : std::string("n/a"); }},
      {"Penalty L", "penalty",
       [](const EvaluationReport& r) { return r.penalty ? cellfmt::probability(r.penalty->total) : std::string("n/a"); }},
  };
  return rows;
}

inline std::string emit_report(std::span<const EvaluationReport> reports, ReportFormat format) {
  std::string out;
  switch (format) {
    case ReportFormat::TextTable: {
      constexpr std::size_t label_width = 21, cell_width = 14;
      out += cellfmt::pad("Benchmark", label_width);
      for (const auto& r : reports) out += " | " + cellfmt::pad(r.workflow_id, cell_width);
      out += "\n";
      if (reports.empty()) break;
      for (const auto& row : report_rows()) {
        out += cellfmt::pad(row.label, label_width);
        for (const auto& r : reports) out += " | " + cellfmt::pad(row.cell(r), cell_width);
        out += "\n";
      }
      break;
    }
    case ReportFormat::Csv: {
      out += "workflow";
      for (const auto& row : report_rows()) out += std::string(",") + row.csv_key;
      out += "\n";
      for (const auto& r : reports) {
        out += r.workflow_id;
        for (const auto& row : report_rows()) out += "," + row.cell(r);
        out += "\n";
      }
      break;
    }
    case ReportFormat::JsonLines: {
      for (const auto& r : reports) {
        nlohmann::json j;
        j["workflow"] = r.workflow_id;
        j["cost"] = r.reward.cost;
        j["max_duration_ms"] = r.resources.duration;
        j["success_probability"] = r.success_probability;
        j["reward"] = r.reward.reward;
        j["expected_gain"] = r.reward.expected_gain;
        j["cumulative"] = r.resources.cumulative;
        j["releasable_peak"] = r.resources.releasable_peak;
        if (r.penalty) {
          j["cip"] = r.penalty->cip;
          j["sip"] = r.penalty->sip;
          j["penalty"] = r.penalty->total;
          j["srp_target"] = r.penalty->srp_target;
        } else {
          j["cip"] = j["sip"] = j["penalty"] = nullptr;
        }
        out += j.dump() + "\n";
      }
      break;
    }
  }
  return out;
}

/// One "# key=value" line per setting, for the head of text reports.
inline std::string emit_config_echo(const EvaluationConfig& cfg) {
  auto vec = [](const std::optional<std::vector<double>>& v, const char* fallback) {
    if (!v) return std::string(fallback);
    std::string s = "[";
    for (std::size_t i = 0; i < v->size(); ++i) s += (i ? "," : "") + cellfmt::exact((*v)[i]);
    return s + "]";
  };
  std::string out;
  out += "# w_g=" + vec(cfg.w_g, "ones") + " w_d=" + cellfmt::exact(cfg.w_d) + " w_r=" + vec(cfg.w_r, "zeros") + "\n";
  out += "# alpha_ch=" + cellfmt::exact(cfg.alpha_ch) + " alpha_ob=" + cellfmt::exact(cfg.alpha_ob) +
         " gamma_s=" + cellfmt::exact(cfg.gamma_s) + " reward_tolerance=" + cellfmt::exact(cfg.reward_tolerance) + "\n";
  for (const auto& [id, g] : cfg.gain_overrides) out += "# gain[" + id + "]=" + cellfmt::exact(g) + "\n";
  out += "# sampler=" + std::string(kSamplerAlgorithm) + " seed=" + std::to_string(cfg.sampler.seed) +
         " samples=" + std::to_string(cfg.sampler.samples) + "\n";
  return out;
}

}  // namespace wfeval
