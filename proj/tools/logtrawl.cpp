// logtrawl command line tool: scan syslog trace files against rule sets,
// run throughput benchmarks, and generate synthetic log corpora.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "logtrawl/bench.hpp"
#include "logtrawl/jsonl.hpp"
#include "logtrawl/loggen.hpp"
#include "logtrawl/pipeline.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("short write to " + path);
}

unsigned workers_default() {
  if (const char* env = std::getenv("LOGTRAWL_WORKERS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 0;  // hardware parallelism
}

struct ScanArgs {
  std::string rules_path;
  std::vector<std::string> inputs;
  std::string engine = "pfac_compact";
  std::size_t prefix_len = logtrawl::kDefaultPrefixLen;
  unsigned workers = workers_default();
  std::size_t chunk_size = 1 << 16;
  std::string format = "jsonl";
};

int do_scan(const ScanArgs& args) {
  using namespace logtrawl;
  RuleSet rules = parse_rules(read_file(args.rules_path));
  if (rules.patterns.empty())
    throw std::runtime_error(args.rules_path + ": rule file has no rules");
  auto engine = engine_from_name(args.engine);
  if (!engine) throw std::runtime_error("unknown engine " + args.engine);

  EngineConfig cfg;
  cfg.engine = *engine;
  cfg.prefix_len = args.prefix_len;
  cfg.workers = args.workers;
  cfg.chunk_size = args.chunk_size;

  std::size_t total_matches = 0;
  for (const std::string& path : args.inputs) {
    std::string text = read_file(path);
    LineIndex lines(text);
    ScanReport report = run_engine_scan(text, rules, cfg, &lines);
    total_matches += report.total_matches;
    if (args.format == "jsonl") {
      std::cout << render_alerts_jsonl(path, report);
    } else {
      std::cout << path << ": total_matches=" << report.total_matches
                << " stage1_hits=" << report.stage1_hits
                << " stage1_rejected=" << report.stage1_rejected
                << " bytes_scanned=" << report.bytes_scanned << "\n";
    }
  }
  return total_matches ? 1 : 0;
}

struct BenchArgs {
  std::string input_path;
  std::string engine = "pfac_compact";
  std::vector<std::size_t> pattern_counts{10, 100, 1000};
  std::size_t runs = logtrawl::kDefaultRuns;
  std::size_t prefix_len = logtrawl::kDefaultPrefixLen;
  std::size_t pattern_len = 16;
  unsigned workers = workers_default();
  std::uint32_t seed = 1;
  std::string out_path;  // empty = stdout
  bool paired_backends = false;
};

int do_bench(const BenchArgs& args) {
  using namespace logtrawl;
  std::string text = read_file(args.input_path);
  auto engine = engine_from_name(args.engine);
  if (!engine) throw std::runtime_error("unknown engine " + args.engine);

  EngineConfig cfg;
  cfg.engine = *engine;
  cfg.prefix_len = args.prefix_len;
  cfg.workers = args.workers;

  std::vector<ThroughputReport> reports = scaling_sweep(
      cfg, text, args.pattern_counts, args.runs, args.seed, args.pattern_len);
  if (args.paired_backends) {
    // second sweep with the other pfac backend on identical patterns
    EngineConfig other = cfg;
    other.engine = cfg.engine == EngineKind::pfac_dense
                       ? EngineKind::pfac_compact
                       : EngineKind::pfac_dense;
    auto more = scaling_sweep(other, text, args.pattern_counts, args.runs,
                              args.seed, args.pattern_len);
    reports.insert(reports.end(), more.begin(), more.end());
  }

  std::string csv = to_csv(reports);
  if (args.out_path.empty())
    std::cout << csv;
  else
    write_file(args.out_path, csv);
  return 0;
}

struct GenArgs {
  std::uint64_t size = 0;
  std::uint32_t seed = 0;
  std::uint64_t line_len = 80;
  std::string out_path;
};

int do_gen(const GenArgs& args) {
  using namespace logtrawl;
  GenSpec spec;
  spec.size = args.size;
  spec.seed = args.seed;
  spec.line_len = args.line_len;
  GenResult r = generate_log(spec);
  write_file(args.out_path, r.bytes);
  std::cout << "sha256  " << r.sha256_hex << " " << args.out_path << " "
            << r.bytes.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logtrawl: parallel multi-pattern log scanning"};
  app.require_subcommand(1);

  ScanArgs scan_args;
  CLI::App* scan = app.add_subcommand("scan", "scan log files against rules");
  scan->add_option("-r,--rules", scan_args.rules_path, "rule file")
      ->required();
  scan->add_option("inputs", scan_args.inputs, "log files")->required();
  scan->add_option("--engine", scan_args.engine,
                   "kmp|pfac_dense|pfac_compact|ac_chunked");
  scan->add_option("--prefix-len", scan_args.prefix_len, "stage-1 prefix length");
  scan->add_option("--workers", scan_args.workers, "worker threads (0 = auto)");
  scan->add_option("--chunk-size", scan_args.chunk_size,
                   "chunk size for ac_chunked");
  scan->add_option("--format", scan_args.format, "jsonl|summary")
      ->check(CLI::IsMember({"jsonl", "summary"}));

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "throughput benchmark");
  bench->add_option("-i,--input", bench_args.input_path, "log file to scan")
      ->required();
  bench->add_option("--engine", bench_args.engine,
                    "kmp|pfac_dense|pfac_compact|ac_chunked");
  bench->add_option("--patterns", bench_args.pattern_counts,
                    "pattern counts to sweep")
      ->delimiter(',');
  bench->add_option("--runs", bench_args.runs, "timed runs per point");
  bench->add_option("--prefix-len", bench_args.prefix_len, "prefix length");
  bench->add_option("--pattern-len", bench_args.pattern_len,
                    "random pattern length");
  bench->add_option("--workers", bench_args.workers, "worker threads");
  bench->add_option("--seed", bench_args.seed, "pattern RNG seed");
  bench->add_option("-o,--out", bench_args.out_path, "CSV output path");
  bench->add_flag("--paired-backends", bench_args.paired_backends,
                  "also run the other pfac backend on identical inputs");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic log");
  gen->add_option("--size", gen_args.size, "output size in bytes")->required();
  gen->add_option("--seed", gen_args.seed, "MT19937 seed")->required();
  gen->add_option("--line-len", gen_args.line_len, "forced-LF spacing");
  gen->add_option("-o,--out", gen_args.out_path, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (scan->parsed()) return do_scan(scan_args);
    if (bench->parsed()) return do_bench(bench_args);
    if (gen->parsed()) return do_gen(gen_args);
  } catch (const std::exception& e) {
    std::cerr << "logtrawl: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
