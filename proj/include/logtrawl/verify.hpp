#pragma once

// Stage-2 verification: confirm each prefix hit against the full pattern
// and assemble the alert report. Patterns no longer than the prefix
// length were matched completely by stage 1 and are auto-verified.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "logtrawl/rules.hpp"
#include "logtrawl/scan.hpp"

namespace logtrawl {

struct Alert {
  std::size_t offset = 0;
  std::size_t line = 0;  // 1-based; 0 when no line index was supplied
  std::uint32_t rule_id = 0;
  std::string rule_name;
  std::uint32_t pattern_len = 0;
  bool verified = false;

  friend bool operator==(const Alert&, const Alert&) = default;
};

struct ScanReport {
  std::vector<Alert> alerts;  // sorted by (offset, rule_id)
  std::size_t total_matches = 0;
  std::size_t stage1_hits = 0;
  std::size_t stage1_rejected = 0;
  std::size_t bytes_scanned = 0;
};

// Newline-offset index over a log buffer; built once per file, maps byte
// offsets to 1-based line numbers.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < text.size(); ++i)
      if (text[i] == '\n') line_starts_.push_back(i + 1);
  }

  std::size_t line_of(std::size_t offset) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(),
                               offset);
    return static_cast<std::size_t>(it - line_starts_.begin());
  }

  // [begin, end) byte span of a 1-based line; end is one past the LF (or
  // npos-ish text end for the last line, which the caller clamps).
  std::size_t line_begin(std::size_t line) const {
    return line_starts_.at(line - 1);
  }

  std::size_t line_count() const { return line_starts_.size(); }

 private:
  std::vector<std::size_t> line_starts_;
};

// Checks text beyond each hit's prefix against the pattern suffix.
// Returns confirmed alerts sorted by (offset, rule_id). A hit pointing
// outside the text signals a scan bug and throws.
inline std::vector<Alert> verify_hits(std::string_view text,
                                      const std::vector<Hit>& hits,
                                      const PrefixSet& prefixes,
                                      const RuleSet& rules,
                                      const LineIndex* lines = nullptr) {
  std::vector<Alert> alerts;
  for (const Hit& h : hits) {
    if (h.offset + h.matched_len > text.size())
      throw std::logic_error("verify_hits: hit extends past end of text");
    const Pattern& p = rules.patterns.at(h.pattern_id);
    const std::size_t plen = p.bytes.size();
    bool ok;
    if (plen <= prefixes.prefix_len) {
      ok = true;  // the whole pattern is the prefix
    } else if (h.offset + plen > text.size()) {
      ok = false;
    } else {
      ok = text.compare(h.offset + h.matched_len, plen - h.matched_len,
                        p.bytes, h.matched_len,
                        plen - h.matched_len) == 0;
    }
    if (!ok) continue;
    Alert al;
    al.offset = h.offset;
    al.line = lines ? lines->line_of(h.offset) : 0;
    al.rule_id = p.id;
    al.rule_name = p.name;
    al.pattern_len = static_cast<std::uint32_t>(plen);
    al.verified = true;
    alerts.push_back(std::move(al));
  }
  std::sort(alerts.begin(), alerts.end(), [](const Alert& a, const Alert& b) {
    return a.offset != b.offset ? a.offset < b.offset
                                : a.rule_id < b.rule_id;
  });
  return alerts;
}

inline ScanReport assemble_report(std::vector<Alert> alerts,
                                  std::size_t stage1_hits,
                                  std::size_t bytes_scanned) {
  ScanReport r;
  r.total_matches = alerts.size();
  r.stage1_hits = stage1_hits;
  r.stage1_rejected = stage1_hits - r.total_matches;
  r.bytes_scanned = bytes_scanned;
  r.alerts = std::move(alerts);
  return r;
}

}  // namespace logtrawl
