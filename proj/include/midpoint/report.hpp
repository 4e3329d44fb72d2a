#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

namespace midpoint {

inline constexpr const char* kReportSchema = "midpoint.report/1";

enum class ReportKind { bm_flat, bm_curved, verify_suite, concentration, embedding };

std::string to_string(ReportKind kind);

// Record of one experiment. Metrics keep insertion order. runtime_ms is the
// only field that varies between identical runs, so structured output leaves
// it out unless asked.
struct ExperimentReport {
  ReportKind kind = ReportKind::verify_suite;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  // Optional audit payload (keys, injection records, tables).
  nlohmann::ordered_json details;
  bool passed = false;
  std::int64_t runtime_ms = 0;

  std::int64_t metric_int(const std::string& name) const { return metrics.at(name).get<std::int64_t>(); }
  double metric_real(const std::string& name) const { return metrics.at(name).get<double>(); }

  nlohmann::ordered_json to_json(bool with_timing = false) const;
};

// One row per report; columns are kind, passed, then every input and metric
// key in first-appearance order. Nested values are written as compact JSON.
void write_csv(std::ostream& out, std::span<const ExperimentReport> reports);

// RFC 4180 quoting when needed.
std::string csv_field(const std::string& value);

}  // namespace midpoint
