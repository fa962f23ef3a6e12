#pragma once

// End-to-end scan pipeline shared by the CLI and the bench harness:
// engine selection, automaton construction, scan, verification, report.

#include <optional>
#include <string>
#include <string_view>

#include "logtrawl/automaton.hpp"
#include "logtrawl/kmp.hpp"
#include "logtrawl/rules.hpp"
#include "logtrawl/scan.hpp"
#include "logtrawl/verify.hpp"

namespace logtrawl {

enum class EngineKind { kmp, pfac_dense, pfac_compact, ac_chunked };

inline const char* engine_name(EngineKind e) {
  switch (e) {
    case EngineKind::kmp: return "kmp";
    case EngineKind::pfac_dense: return "pfac_dense";
    case EngineKind::pfac_compact: return "pfac_compact";
    case EngineKind::ac_chunked: return "ac_chunked";
  }
  return "?";
}

inline std::optional<EngineKind> engine_from_name(std::string_view s) {
  if (s == "kmp") return EngineKind::kmp;
  if (s == "pfac_dense") return EngineKind::pfac_dense;
  if (s == "pfac_compact") return EngineKind::pfac_compact;
  if (s == "ac_chunked") return EngineKind::ac_chunked;
  return std::nullopt;
}

struct EngineConfig {
  EngineKind engine = EngineKind::pfac_compact;
  std::size_t prefix_len = kDefaultPrefixLen;
  unsigned workers = 0;          // 0 = hardware parallelism
  std::size_t chunk_size = 1 << 16;  // ac_chunked only
};

// Scans one in-memory log with the selected engine and assembles the
// full report. For the pfac engines this is the two-stage path (prefix
// scan then verification); kmp and ac_chunked match full patterns
// directly, so every hit is already verified.
inline ScanReport run_engine_scan(std::string_view text, const RuleSet& rules,
                                  const EngineConfig& cfg,
                                  const LineIndex* lines = nullptr) {
  ScanConfig scan_cfg;
  scan_cfg.workers = cfg.workers ? cfg.workers : default_workers();

  auto alerts_from_matches = [&](const std::vector<Match>& matches) {
    std::vector<Alert> alerts;
    alerts.reserve(matches.size());
    for (const Match& m : matches) {
      const Pattern& p = rules.patterns.at(m.pattern_id);
      Alert al;
      al.offset = m.offset;
      al.line = lines ? lines->line_of(m.offset) : 0;
      al.rule_id = p.id;
      al.rule_name = p.name;
      al.pattern_len = static_cast<std::uint32_t>(p.bytes.size());
      al.verified = true;
      alerts.push_back(std::move(al));
    }
    return alerts;
  };

  switch (cfg.engine) {
    case EngineKind::kmp: {
      std::vector<Match> matches = kmp_multi(text, rules);
      std::size_t hits = matches.size();
      return assemble_report(alerts_from_matches(matches), hits, text.size());
    }
    case EngineKind::ac_chunked: {
      Automaton ac = build_ac_automaton(rules);
      scan_cfg.chunk_size = cfg.chunk_size;
      scan_cfg.overlap = rules.max_len ? rules.max_len - 1 : 0;
      std::vector<Match> matches = chunked_ac_scan(text, ac, scan_cfg);
      std::size_t hits = matches.size();
      return assemble_report(alerts_from_matches(matches), hits, text.size());
    }
    case EngineKind::pfac_dense:
    case EngineKind::pfac_compact: {
      Backend backend = cfg.engine == EngineKind::pfac_dense
                            ? Backend::dense
                            : Backend::compact;
      PrefixSet prefixes = truncate_prefixes(rules, cfg.prefix_len);
      Automaton trie = build_failureless_trie(prefixes, backend);
      std::vector<Hit> hits = pfac_scan(text, trie, scan_cfg);
      std::vector<Alert> alerts =
          verify_hits(text, hits, prefixes, rules, lines);
      return assemble_report(std::move(alerts), hits.size(), text.size());
    }
  }
  throw std::logic_error("run_engine_scan: bad engine");
}

}  // namespace logtrawl
