#include "midpoint/report.hpp"

#include <algorithm>
#include <vector>

namespace midpoint {

std::string to_string(ReportKind kind) {
  switch (kind) {
    case ReportKind::bm_flat: return "bm_flat";
    case ReportKind::bm_curved: return "bm_curved";
    case ReportKind::verify_suite: return "verify_suite";
    case ReportKind::concentration: return "concentration";
    case ReportKind::embedding: return "embedding";
  }
  return "unknown";
}

nlohmann::ordered_json ExperimentReport::to_json(bool with_timing) const {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["kind"] = to_string(kind);
  j["inputs"] = inputs;
  j["metrics"] = metrics;
  j["passed"] = passed;
  if (!details.is_null()) j["details"] = details;
  if (with_timing) j["runtime_ms"] = runtime_ms;
  return j;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n\r") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string cell(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

}  // namespace

void write_csv(std::ostream& out, std::span<const ExperimentReport> reports) {
  std::vector<std::string> input_keys;
  std::vector<std::string> metric_keys;
  auto note = [](std::vector<std::string>& keys, const std::string& k) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  };
  for (const auto& r : reports) {
    for (const auto& [k, v] : r.inputs.items()) note(input_keys, k);
    for (const auto& [k, v] : r.metrics.items()) note(metric_keys, k);
  }
  out << "kind,passed";
  for (const auto& k : input_keys) out << ',' << csv_field(k);
  // A metric sharing a name with an input gets a prefix to keep headers unique.
  for (const auto& k : metric_keys) {
    const bool clash = std::find(input_keys.begin(), input_keys.end(), k) != input_keys.end();
    out << ',' << csv_field(clash ? "metric." + k : k);
  }
  out << '\n';
  for (const auto& r : reports) {
    out << to_string(r.kind) << ',' << (r.passed ? "true" : "false");
    for (const auto& k : input_keys) {
      out << ',' << (r.inputs.contains(k) ? csv_field(cell(r.inputs[k])) : "");
    }
    for (const auto& k : metric_keys) {
      out << ',' << (r.metrics.contains(k) ? csv_field(cell(r.metrics[k])) : "");
    }
    out << '\n';
  }
}

}  // namespace midpoint
