#pragma once

// Throughput measurement harness. The timed region covers the scan (and,
// for the pfac engines, verification) only: text loading and automaton
// or table construction happen before the clock starts, and one untimed
// warm-up run precedes measurement. Throughput is 8*N / mean_seconds in
// bits per second, N = log size in bytes.

#include <chrono>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "logtrawl/loggen.hpp"
#include "logtrawl/pipeline.hpp"

namespace logtrawl {

inline constexpr std::size_t kDefaultRuns = 100;

struct ThroughputReport {
  EngineKind engine = EngineKind::pfac_compact;
  std::size_t pattern_count = 0;
  std::size_t bytes = 0;
  std::size_t runs = 0;
  std::vector<double> run_seconds;
  double mean_seconds = 0.0;
  double throughput_bps = 0.0;
};

namespace detail {

template <typename Fn>
inline ThroughputReport time_runs(EngineKind engine, std::size_t patterns,
                                  std::size_t bytes, std::size_t runs,
                                  Fn&& timed_scan) {
  using clock = std::chrono::steady_clock;
  ThroughputReport r;
  r.engine = engine;
  r.pattern_count = patterns;
  r.bytes = bytes;
  r.runs = runs;
  timed_scan();  // warm-up, untimed
  for (std::size_t i = 0; i < runs; ++i) {
    auto t0 = clock::now();
    timed_scan();
    auto t1 = clock::now();
    r.run_seconds.push_back(
        std::chrono::duration<double>(t1 - t0).count());
  }
  r.mean_seconds =
      std::accumulate(r.run_seconds.begin(), r.run_seconds.end(), 0.0) /
      static_cast<double>(runs);
  r.throughput_bps = 8.0 * static_cast<double>(bytes) / r.mean_seconds;
  return r;
}

}  // namespace detail

// One measurement: prebuilds everything the engine needs, then times
// `runs` repetitions of the scan itself.
inline ThroughputReport measure(const EngineConfig& cfg,
                                std::string_view text, const RuleSet& rules,
                                std::size_t runs = kDefaultRuns) {
  if (runs < 1) throw std::invalid_argument("measure: runs must be >= 1");
  ScanConfig scan_cfg;
  scan_cfg.workers = cfg.workers ? cfg.workers : default_workers();

  switch (cfg.engine) {
    case EngineKind::kmp: {
      std::vector<FailureTable> tables;
      tables.reserve(rules.patterns.size());
      for (const Pattern& p : rules.patterns)
        tables.push_back(build_failure_table(p));
      return detail::time_runs(cfg.engine, rules.patterns.size(), text.size(),
                               runs, [&] {
                                 volatile std::size_t sink =
                                     kmp_multi(text, rules, &tables).size();
                                 (void)sink;
                               });
    }
    case EngineKind::ac_chunked: {
      Automaton ac = build_ac_automaton(rules);
      scan_cfg.chunk_size = cfg.chunk_size;
      scan_cfg.overlap = rules.max_len ? rules.max_len - 1 : 0;
      return detail::time_runs(cfg.engine, rules.patterns.size(), text.size(),
                               runs, [&] {
                                 volatile std::size_t sink =
                                     chunked_ac_scan(text, ac, scan_cfg)
                                         .size();
                                 (void)sink;
                               });
    }
    case EngineKind::pfac_dense:
    case EngineKind::pfac_compact: {
      Backend backend = cfg.engine == EngineKind::pfac_dense
                            ? Backend::dense
                            : Backend::compact;
      PrefixSet prefixes = truncate_prefixes(rules, cfg.prefix_len);
      Automaton trie = build_failureless_trie(prefixes, backend);
      return detail::time_runs(
          cfg.engine, rules.patterns.size(), text.size(), runs, [&] {
            std::vector<Hit> hits = pfac_scan(text, trie, scan_cfg);
            volatile std::size_t sink =
                verify_hits(text, hits, prefixes, rules).size();
            (void)sink;
          });
    }
  }
  throw std::logic_error("measure: bad engine");
}

// One report per pattern count on the same text; fresh random patterns
// are drawn for every point.
inline std::vector<ThroughputReport> scaling_sweep(
    const EngineConfig& cfg, std::string_view text,
    const std::vector<std::size_t>& pattern_counts, std::size_t runs,
    std::uint32_t seed, std::size_t pattern_len = 16) {
  std::vector<ThroughputReport> reports;
  std::uint32_t point = 0;
  for (std::size_t k : pattern_counts) {
    RuleSet rules = random_rules(k, pattern_len, seed + point++);
    reports.push_back(measure(cfg, text, rules, runs));
  }
  return reports;
}

inline const char* backend_name(EngineKind e) {
  switch (e) {
    case EngineKind::pfac_dense: return "dense";
    case EngineKind::pfac_compact: return "compact";
    case EngineKind::ac_chunked: return "dense";
    case EngineKind::kmp: return "-";
  }
  return "?";
}

inline constexpr const char* kCsvHeader =
    "engine,backend,patterns,bytes,runs,mean_seconds,throughput_bps";

inline std::string to_csv(const std::vector<ThroughputReport>& reports) {
  std::string out = std::string(kCsvHeader) + "\n";
  char buf[256];
  for (const ThroughputReport& r : reports) {
    const char* eng = r.engine == EngineKind::pfac_dense ||
                              r.engine == EngineKind::pfac_compact
                          ? "pfac"
                          : engine_name(r.engine);
    std::snprintf(buf, sizeof(buf), "%s,%s,%zu,%zu,%zu,%.9g,%.9g\n", eng,
                  backend_name(r.engine), r.pattern_count, r.bytes, r.runs,
                  r.mean_seconds, r.throughput_bps);
    out += buf;
  }
  return out;
}

// Reparses a CSV produced by to_csv. Per-run timings are not part of the
// CSV schema, so only the aggregate fields come back.
inline std::vector<ThroughputReport> parse_csv(const std::string& csv) {
  std::vector<ThroughputReport> reports;
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("parse_csv: bad header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string eng, backend, field;
    ThroughputReport r;
    std::getline(row, eng, ',');
    std::getline(row, backend, ',');
    std::getline(row, field, ',');
    r.pattern_count = std::stoull(field);
    std::getline(row, field, ',');
    r.bytes = std::stoull(field);
    std::getline(row, field, ',');
    r.runs = std::stoull(field);
    std::getline(row, field, ',');
    r.mean_seconds = std::stod(field);
    std::getline(row, field, ',');
    r.throughput_bps = std::stod(field);
    if (eng == "pfac")
      r.engine = backend == "compact" ? EngineKind::pfac_compact
                                      : EngineKind::pfac_dense;
    else if (auto e = engine_from_name(eng))
      r.engine = *e;
    else
      throw std::runtime_error("parse_csv: unknown engine " + eng);
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace logtrawl
