#pragma once

#include <crformal/workspace.hpp>

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace crformal {

inline constexpr const char* kReportSchema = "crformal.report/1";
inline constexpr const char* kToolVersion = "0.1.0";

struct Report {
  nlohmann::ordered_json json;
  /// Human-readable lines, one block per task.
  std::string summary;
  std::size_t falsified = 0;
  std::size_t errors = 0;
  bool ok() const { return falsified == 0 && errors == 0; }
  /// Indented JSON with a trailing newline.
  std::string json_text() const { return json.dump(2) + "\n"; }
};

enum class TaskFilter { All, Classify, CheckMap, Prolong, Verify, Examples };

/// Parses and runs a document. Parse errors become a report with one error
/// entry. With a filter only matching tasks run; classify with no classify
/// task classifies every declared hypersurface.
Report run_document_text(const std::string& text, const Overrides& overrides, TaskFilter filter);
Report run_suites(const std::vector<std::string>& names, const Overrides& overrides);
Report run_examples(const Overrides& overrides);

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view data);

}  // namespace crformal
