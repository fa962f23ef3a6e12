#pragma once

// Data-parallel scanning kernels.
//
// pfac_scan realizes the one-worker-per-byte contract: a logical worker
// walks the failureless trie from every start position and dies on the
// first missing edge. Logical workers are batched onto a fixed pool by
// partitioning start positions into contiguous ranges; hit buffers stay
// worker-private until a deterministic merge, so results are identical
// for every worker count.
//
// chunked_ac_scan is the classic alternative: one worker per text chunk,
// each chunk extended by `overlap` bytes so matches straddling a boundary
// are still seen. A match is reported only by the worker whose ownership
// range contains the match START, which deduplicates the overlap region.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <string_view>
#include <thread>
#include <vector>

#include "logtrawl/automaton.hpp"
#include "logtrawl/rules.hpp"

namespace logtrawl {

// Stage-1 prefix hit, pending full-pattern verification.
struct Hit {
  std::size_t offset = 0;
  std::uint32_t pattern_id = 0;
  std::uint32_t matched_len = 0;

  friend bool operator==(const Hit&, const Hit&) = default;
  friend bool operator<(const Hit& a, const Hit& b) {
    return a.offset != b.offset ? a.offset < b.offset
                                : a.pattern_id < b.pattern_id;
  }
};

struct ScanConfig {
  unsigned workers = 1;
  std::size_t chunk_size = 0;  // chunked AC only; 0 = whole text
  std::size_t overlap = 0;     // chunked AC only; lossless needs max_len-1
};

inline unsigned default_workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

namespace detail {

// Runs fn(task_begin, task_end, slot) over `tasks` items split into
// contiguous ranges, one range per worker. Single-worker calls stay on
// the calling thread.
template <typename Fn>
void parallel_ranges(std::size_t tasks, unsigned workers, Fn&& fn) {
  if (workers <= 1 || tasks <= 1) {
    if (tasks > 0) fn(std::size_t{0}, tasks, 0u);
    return;
  }
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, tasks));
  std::size_t per = tasks / workers;
  std::size_t extra = tasks % workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t len = per + (w < extra ? 1 : 0);
    std::size_t end = begin + len;
    pool.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
    begin = end;
  }
  for (std::thread& t : pool) t.join();
}

// Jump tables resolving the first one and two trie levels with flat
// array probes, so the hot per-position cost does not grow with the
// root's edge count. A two-byte entry is the state after both bytes,
// kJumpDead when the walk cannot continue, or kJumpSlow when the
// per-byte path must run (a depth-1 state on that row carries outputs).
inline constexpr std::int32_t kJumpDead = -1;
inline constexpr std::int32_t kJumpSlow = -2;

struct RootJump {
  std::array<std::int32_t, 256> depth1;
  std::vector<std::int32_t> depth2;  // 256 * 256

  explicit RootJump(const Automaton& a) : depth2(256 * 256, kJumpDead) {
    for (unsigned b0 = 0; b0 < 256; ++b0) {
      std::int32_t s1 = a.goto_edge(0, static_cast<unsigned char>(b0));
      depth1[b0] = s1;
      if (s1 == kNoTransition) continue;
      if (!a.outputs[s1].empty()) {
        for (unsigned b1 = 0; b1 < 256; ++b1)
          depth2[(b0 << 8) | b1] = kJumpSlow;
        continue;
      }
      for (unsigned b1 = 0; b1 < 256; ++b1)
        depth2[(b0 << 8) | b1] =
            a.goto_edge(s1, static_cast<unsigned char>(b1));
    }
  }
};

// Backend-specialized trie walk over one range of start positions. The
// per-byte lookup is the hot path, so it works on raw arrays with no
// per-lookup backend branch.
template <Backend B>
void pfac_walk_range(std::string_view text, const Automaton& a,
                     const RootJump& jump, std::size_t begin,
                     std::size_t end, std::vector<Hit>& out) {
  const std::size_t n = text.size();
  const std::int32_t* dense = a.dense_table.data();
  const Automaton::CompactNode* cnodes = a.cnodes.data();
  const std::int32_t* packed = a.packed.data();
  const std::uint32_t* out_offsets = a.out_offsets.data();
  const AutomatonOutput* out_flat = a.out_flat.data();
  const std::int32_t* depth1 = jump.depth1.data();
  const std::int32_t* depth2 = jump.depth2.data();
  for (std::size_t i = begin; i < end; ++i) {
    std::int32_t s = depth1[static_cast<unsigned char>(text[i])];
    if (s < 0) continue;
    std::size_t j = i;
    if (j + 1 < n) {
      // resolve the first two bytes with one probe
      const std::int32_t e =
          depth2[(static_cast<unsigned>(
                      static_cast<unsigned char>(text[i]))
                  << 8) |
                 static_cast<unsigned char>(text[i + 1])];
      if (e == kJumpDead) continue;
      if (e != kJumpSlow) {
        s = e;
        ++j;
      }
    }
    for (;;) {
      std::uint32_t ob, oe;
      if constexpr (B == Backend::dense) {
        ob = out_offsets[s];
        oe = out_offsets[s + 1];
      } else {
        ob = cnodes[s].out_begin;
        oe = cnodes[s].out_end;
      }
      for (std::uint32_t k = ob; k < oe; ++k)
        out.push_back({i, out_flat[k].pattern_id, out_flat[k].matched_len});
      if (++j >= n) break;
      const unsigned char b = static_cast<unsigned char>(text[j]);
      if constexpr (B == Backend::dense) {
        s = dense[static_cast<std::size_t>(s) * 256 + b];
        if (s == kTerminate) break;
      } else {
        const Automaton::CompactNode& nd = cnodes[s];
        const std::uint64_t bits = nd.bits[b >> 6];
        const std::uint64_t mask = std::uint64_t{1} << (b & 63);
        if (!(bits & mask)) break;
        const std::uint32_t rank =
            nd.word_rank[b >> 6] +
            static_cast<std::uint32_t>(std::popcount(bits & (mask - 1)));
        s = packed[nd.slot + rank];
      }
    }
  }
}

}  // namespace detail

// One logical worker per byte position: walk the failureless trie over
// text[i..], emit a Hit for every output state visited, stop at the
// first missing edge or end of text. Sorted by (offset, pattern_id).
inline std::vector<Hit> pfac_scan(std::string_view text, const Automaton& a,
                                  const ScanConfig& cfg = {}) {
  if (a.kind != AutomatonKind::failureless)
    throw std::invalid_argument("pfac_scan: automaton must be failureless");
  const std::size_t n = text.size();
  unsigned workers = cfg.workers ? cfg.workers : default_workers();
  std::vector<std::vector<Hit>> buffers(std::max(1u, workers));

  const detail::RootJump jump(a);

  detail::parallel_ranges(n, workers, [&](std::size_t begin, std::size_t end,
                                          unsigned slot) {
    if (a.backend == Backend::dense)
      detail::pfac_walk_range<Backend::dense>(text, a, jump, begin, end,
                                              buffers[slot]);
    else
      detail::pfac_walk_range<Backend::compact>(text, a, jump, begin, end,
                                                buffers[slot]);
  });

  std::vector<Hit> hits;
  for (auto& b : buffers)
    hits.insert(hits.end(), b.begin(), b.end());
  std::sort(hits.begin(), hits.end());
  return hits;
}

// Chunked full-AC scan. Ownership boundaries fall at multiples of
// chunk_size; worker k scans [k*c, min(k*c + c + overlap, n)) and reports
// a match only when its start offset lies inside [k*c, (k+1)*c).
inline std::vector<Match> chunked_ac_scan(std::string_view text,
                                          const Automaton& a,
                                          const ScanConfig& cfg) {
  if (a.kind != AutomatonKind::full_ac)
    throw std::invalid_argument("chunked_ac_scan: automaton must be full_ac");
  const std::size_t n = text.size();
  const std::size_t c = cfg.chunk_size ? cfg.chunk_size : std::max<std::size_t>(n, 1);
  const std::size_t chunks = n ? (n + c - 1) / c : 0;
  unsigned workers = cfg.workers ? cfg.workers : default_workers();
  std::vector<std::vector<Match>> buffers(std::max(1u, workers));

  detail::parallel_ranges(chunks, workers, [&](std::size_t begin,
                                               std::size_t end,
                                               unsigned slot) {
    std::vector<Match>& out = buffers[slot];
    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t own_begin = k * c;
      const std::size_t own_end = std::min(own_begin + c, n);
      const std::size_t scan_end = std::min(own_begin + c + cfg.overlap, n);
      std::int32_t s = 0;
      for (std::size_t j = own_begin; j < scan_end; ++j) {
        s = a.next_state(s, static_cast<unsigned char>(text[j]));
        for (const AutomatonOutput& o : a.outputs[s]) {
          std::size_t start = j + 1 - o.matched_len;
          if (start >= own_begin && start < own_end)
            out.push_back({start, o.pattern_id});
        }
      }
    }
  });

  std::vector<Match> matches;
  for (auto& b : buffers)
    matches.insert(matches.end(), b.begin(), b.end());
  std::sort(matches.begin(), matches.end());
  return matches;
}

// Brute-force ground truth: direct byte comparison of every pattern at
// every position. The oracle all engine equivalences are tested against.
inline std::vector<Match> naive_scan(std::string_view text,
                                     const RuleSet& rules) {
  std::vector<Match> matches;
  for (const Pattern& p : rules.patterns) {
    const std::size_t m = p.bytes.size();
    if (m == 0 || text.size() < m) continue;
    for (std::size_t i = 0; i + m <= text.size(); ++i) {
      if (std::memcmp(text.data() + i, p.bytes.data(), m) == 0)
        matches.push_back({i, p.id});
    }
  }
  std::sort(matches.begin(), matches.end());
  return matches;
}

}  // namespace logtrawl
