#pragma once

// JSON Lines rendering of a scan report: one object per alert followed
// by one summary object. Field names are a stability contract.

#include <string>

#include <json.hpp>

#include "logtrawl/verify.hpp"

namespace logtrawl {

inline std::string render_alerts_jsonl(const std::string& file,
                                       const ScanReport& report) {
  std::string out;
  for (const Alert& a : report.alerts) {
    nlohmann::json j{{"file", file},
                     {"offset", a.offset},
                     {"line", a.line},
                     {"rule_id", a.rule_id},
                     {"rule", a.rule_name}};
    out += j.dump();
    out += '\n';
  }
  nlohmann::json summary{{"file", file},
                         {"total_matches", report.total_matches},
                         {"stage1_hits", report.stage1_hits},
                         {"stage1_rejected", report.stage1_rejected},
                         {"bytes_scanned", report.bytes_scanned}};
  out += summary.dump();
  out += '\n';
  return out;
}

}  // namespace logtrawl
