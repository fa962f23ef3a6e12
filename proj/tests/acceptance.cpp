// Acceptance suite: end-to-end checks of engine equivalence, scaling
// shape, generator fidelity, and output determinism. Prints one
// PASS/FAIL line per criterion; exit status is the failure count.

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "logtrawl/bench.hpp"
#include "logtrawl/jsonl.hpp"
#include "logtrawl/loggen.hpp"
#include "logtrawl/pipeline.hpp"
#include "logtrawl/sha256.hpp"

using namespace logtrawl;

namespace {

int failures = 0;

void criterion(const char* name, bool ok, const std::string& detail = "") {
  std::printf("%s: %s%s%s\n", ok ? "PASS" : "FAIL", name,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

RuleSet make_rules(const std::vector<std::string>& patterns) {
  RuleSet r;
  for (const std::string& b : patterns) {
    r.patterns.push_back({static_cast<std::uint32_t>(r.patterns.size()),
                          "p" + std::to_string(r.patterns.size()), b});
    r.max_len = std::max(r.max_len, b.size());
  }
  return r;
}

// Criterion 1: verifier-composed pfac output equals the naive oracle on
// 1,000 randomized trials over small and full byte alphabets.
void check_oracle_exactness() {
  std::mt19937 rng(2024);
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    bool full_byte = trial % 2;
    std::set<std::string> used;
    RuleSet rules;
    std::size_t count = 1 + rng() % 32;
    while (rules.patterns.size() < count) {
      std::string b;
      std::size_t len = 1 + rng() % 16;
      for (std::size_t j = 0; j < len; ++j)
        b.push_back(full_byte ? static_cast<char>(rng() & 0xFF)
                              : static_cast<char>('A' + rng() % 4));
      if (!used.insert(b).second) continue;
      rules.patterns.push_back(
          {static_cast<std::uint32_t>(rules.patterns.size()), "r", b});
      rules.max_len = std::max(rules.max_len, b.size());
    }
    std::string text;
    std::size_t n = rng() % 4096;
    for (std::size_t i = 0; i < n; ++i)
      text.push_back(full_byte ? static_cast<char>(rng() & 0xFF)
                               : static_cast<char>('A' + rng() % 4));
    std::size_t L = trial % 3 == 0 ? 4 : (trial % 3 == 1 ? 8 : 4096);

    PrefixSet ps = truncate_prefixes(rules, L);
    Automaton trie = build_failureless_trie(ps);
    auto hits = pfac_scan(text, trie, {.workers = 1 + rng() % 4});
    auto alerts = verify_hits(text, hits, ps, rules);
    std::vector<Match> got;
    for (const Alert& a : alerts) got.push_back({a.offset, a.rule_id});
    if (got != naive_scan(text, rules)) ++bad;
  }
  criterion("oracle exactness (1000 randomized trials)", bad == 0,
            bad ? std::to_string(bad) + " mismatching trials" : "");
}

// Criterion 2: the chunk-boundary regression and its overlap fix.
void check_boundary_regression() {
  RuleSet rules = make_rules({"HIS", "SHE"});
  Automaton ac = build_ac_automaton(rules);
  std::string text = "XXHISXX";
  auto lost = chunked_ac_scan(text, ac,
                              {.workers = 1, .chunk_size = 4, .overlap = 0});
  auto found = chunked_ac_scan(text, ac,
                               {.workers = 1, .chunk_size = 4, .overlap = 2});
  auto whole = chunked_ac_scan(
      text, ac, {.workers = 1, .chunk_size = text.size(), .overlap = 0});
  bool ok = lost.empty() && found == std::vector<Match>{{2, 0}} &&
            found == whole;
  criterion("chunk boundary regression (overlap 0 loses, max_len-1 restores)",
            ok);
}

// Wall-clock criteria share one box with whatever else the host runs, so
// a single measurement can be poisoned by outside CPU contention. Each
// timing criterion gets up to kTimingAttempts sweeps and passes if any
// quiet attempt lands in range; the thresholds themselves never move.
constexpr int kTimingAttempts = 3;

// Criterion 3: KMP throughput drops ~10x from 10 to 100 patterns.
void check_kmp_scaling() {
  GenResult log = generate_log({.size = 5'000'000, .seed = 303,
                                .line_len = 80});
  EngineConfig cfg;
  cfg.engine = EngineKind::kmp;
  double ratio = 0;
  for (int attempt = 0; attempt < kTimingAttempts; ++attempt) {
    auto reports = scaling_sweep(cfg, log.bytes, {10, 100}, 3, 404);
    ratio = reports[0].throughput_bps / reports[1].throughput_bps;
    if (ratio >= 6.0 && ratio <= 14.0) break;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "ratio k10/k100 = %.2f", ratio);
  criterion("KMP scaling: throughput ratio within [6, 14]",
            ratio >= 6.0 && ratio <= 14.0, buf);
}

// Criterion 4: pfac throughput stays within 2x from 10 to 1000 patterns.
void check_pfac_invariance() {
  GenResult log = generate_log({.size = 10'000'000, .seed = 505,
                                .line_len = 80});
  for (EngineKind e : {EngineKind::pfac_dense, EngineKind::pfac_compact}) {
    EngineConfig cfg;
    cfg.engine = e;
    double ratio = 0;
    for (int attempt = 0; attempt < kTimingAttempts; ++attempt) {
      auto reports = scaling_sweep(cfg, log.bytes, {10, 1000}, 10, 606);
      ratio = reports[1].throughput_bps / reports[0].throughput_bps;
      if (ratio >= 0.5) break;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%s throughput k1000/k10 = %.2f",
                  engine_name(e), ratio);
    criterion("PFAC pattern-count invariance (ratio >= 0.5)", ratio >= 0.5,
              buf);
  }
}

// Criterion 5: one invocation emits paired dense/compact reports at
// runs=100 on identical inputs; the ratio is reported, not thresholded.
void check_backend_comparison() {
  GenResult log = generate_log({.size = 2'000'000, .seed = 707,
                                .line_len = 80});
  RuleSet rules = random_rules(100, 16, 808);
  EngineConfig dense_cfg, compact_cfg;
  dense_cfg.engine = EngineKind::pfac_dense;
  compact_cfg.engine = EngineKind::pfac_compact;
  ThroughputReport dense = measure(dense_cfg, log.bytes, rules, 100);
  ThroughputReport compact = measure(compact_cfg, log.bytes, rules, 100);
  bool ok = dense.runs == 100 && compact.runs == 100 &&
            dense.bytes == compact.bytes &&
            dense.pattern_count == compact.pattern_count;
  char buf[96];
  std::snprintf(buf, sizeof(buf),
                "compact/dense throughput ratio = %.3f",
                compact.throughput_bps / dense.throughput_bps);
  criterion("backend comparison: paired reports at runs=100", ok, buf);
  std::puts(to_csv({dense, compact}).c_str());
}

// Criterion 6: stage-1 false-positive rate below 1e-6 with L=8.
void check_false_positive_rate() {
  GenResult log = generate_log({.size = 10'000'000, .seed = 909,
                                .line_len = 80});
  RuleSet rules = random_rules(1000, 32, 1010);
  PrefixSet ps = truncate_prefixes(rules, 8);
  Automaton trie = build_failureless_trie(ps, Backend::compact);
  auto hits = pfac_scan(log.bytes, trie, {});
  auto alerts = verify_hits(log.bytes, hits, ps, rules);
  std::size_t rejected = hits.size() - alerts.size();
  double rate = static_cast<double>(rejected) /
                static_cast<double>(log.bytes.size());
  char buf[96];
  std::snprintf(buf, sizeof(buf), "rejected %zu of %zu bytes (rate %.3g)",
                rejected, log.bytes.size(), rate);
  criterion("prefix false-positive rate < 1e-6", rate < 1e-6, buf);
}

// Criterion 7: scan output byte-identical across worker counts.
void check_determinism() {
  GenResult log = generate_log({.size = 10'000'000, .seed = 1111,
                                .line_len = 80});
  std::string text = log.bytes;
  RuleSet rules = random_rules(100, 16, 1212);
  // splice some patterns in so the alert stream is non-trivial
  std::mt19937 rng(1313);
  for (int i = 0; i < 50; ++i) {
    const std::string& p = rules.patterns[rng() % rules.patterns.size()].bytes;
    text.replace(rng() % (text.size() - p.size()), p.size(), p);
  }
  LineIndex lines(text);
  std::vector<std::string> outputs;
  for (unsigned w : {1u, 2u, 8u}) {
    EngineConfig cfg;
    cfg.engine = EngineKind::pfac_compact;
    cfg.workers = w;
    ScanReport report = run_engine_scan(text, rules, cfg, &lines);
    outputs.push_back(render_alerts_jsonl("log", report));
  }
  bool ok = outputs[0] == outputs[1] && outputs[1] == outputs[2] &&
            outputs[0].find("\"total_matches\":0") == std::string::npos;
  criterion("determinism: identical scan output for workers {1,2,8}", ok);
}

// Criterion 8: instrumented KMP comparisons <= 2*|text|.
void check_kmp_comparison_bound() {
  std::mt19937 rng(1414);
  std::size_t violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::size_t n = rng() % 1024;
    std::size_t m = 1 + rng() % 32;
    int alpha = 1 + rng() % 4;
    std::string text, p;
    for (std::size_t i = 0; i < n; ++i)
      text.push_back(static_cast<char>('A' + rng() % alpha));
    for (std::size_t i = 0; i < m; ++i)
      p.push_back(static_cast<char>('A' + rng() % alpha));
    Pattern pt{0, "p", p};
    std::uint64_t cmp = 0;
    kmp_search(text, pt, build_failure_table(pt), &cmp);
    if (cmp > 2 * text.size()) ++violations;
  }
  criterion("KMP comparison bound <= 2n on 10,000 random pairs",
            violations == 0,
            violations ? std::to_string(violations) + " violations" : "");
}

// Criterion 9: generator fidelity.
void check_generator_fidelity() {
  bool mt_ok = std::mt19937(5489)() == 3499211612u;
  bool sha_ok =
      sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855" &&
      sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad";
  bool sizes_ok = true;
  for (std::uint64_t size : {std::uint64_t{1}, std::uint64_t{1023},
                             std::uint64_t{1024}, std::uint64_t{1000000}}) {
    GenResult r = generate_log({.size = size, .seed = 5, .line_len = 80});
    sizes_ok = sizes_ok && r.bytes.size() == size;
  }
  criterion("generator fidelity: MT19937 vector, SHA-256 vectors, exact sizes",
            mt_ok && sha_ok && sizes_ok);
}

}  // namespace

int main() {
  check_oracle_exactness();
  check_boundary_regression();
  check_kmp_scaling();
  check_pfac_invariance();
  check_backend_comparison();
  check_false_positive_rate();
  check_determinism();
  check_kmp_comparison_bound();
  check_generator_fidelity();
  std::printf("%s (%d failure%s)\n", failures ? "FAILED" : "OK", failures,
              failures == 1 ? "" : "s");
  return failures;
}
