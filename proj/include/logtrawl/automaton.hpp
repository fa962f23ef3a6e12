#pragma once

// Failureless-trie and full Aho-Corasick automata over the 256-value byte
// alphabet, with two interchangeable storage backends:
//
//   dense   - Q x 256 successor table, sentinel -1 for "no edge"
//   compact - per-state 256-bit presence bitmap plus a packed successor
//             array indexed by popcount rank
//
// Both backends define the same transition function; the compact layout
// trades a rank computation per lookup for much better cache residency.
//
// State numbering is deterministic: root = 0, remaining states in
// breadth-first order with children visited in ascending byte value.

#include <bit>
#include <cstdint>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "logtrawl/rules.hpp"

namespace logtrawl {

enum class AutomatonKind { failureless, full_ac };
enum class Backend { dense, compact };

inline constexpr std::int32_t kNoTransition = -1;
// pfac walk result when the failureless trie has no edge for the next byte
inline constexpr std::int32_t kTerminate = -1;
inline constexpr std::size_t kDefaultStateCeiling = std::size_t{1} << 22;

class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(std::size_t ceiling)
      : std::runtime_error("automaton state count would exceed ceiling of " +
                           std::to_string(ceiling) + " states") {}
};

struct AutomatonOutput {
  std::uint32_t pattern_id = 0;
  std::uint32_t matched_len = 0;  // bytes matched when this output fires

  friend bool operator==(const AutomatonOutput&, const AutomatonOutput&) =
      default;
};

struct Automaton {
  AutomatonKind kind = AutomatonKind::failureless;
  Backend backend = Backend::dense;
  std::size_t state_count = 0;

  // dense backend: goto table, state_count * 256, kNoTransition sentinel
  std::vector<std::int32_t> dense_table;

  // compact backend: one node per state holding the 256-bit presence
  // bitmap, the state's offset into the packed successor array, and
  // cached cumulative popcounts of the preceding bitmap words, so a
  // lookup touches one node plus one packed entry
  struct CompactNode {
    std::uint64_t bits[4];
    std::uint32_t slot;
    std::uint32_t out_begin;  // range into out_flat, kept in the node so
    std::uint32_t out_end;    // the output check shares its cache line
    std::uint8_t word_rank[4];
  };
  std::vector<CompactNode> cnodes;
  std::vector<std::int32_t> packed;

  std::vector<std::int32_t> failure;          // full_ac only; failure[0] = 0
  std::vector<std::uint32_t> depth;           // trie depth per state
  std::vector<std::vector<AutomatonOutput>> outputs;  // per state

  // outputs flattened to CSR form for the scan hot path
  std::vector<std::uint32_t> out_offsets;  // state_count + 1 entries
  std::vector<AutomatonOutput> out_flat;

  // Raw goto edge; kNoTransition when the state has no edge for b.
  std::int32_t goto_edge(std::int32_t s, unsigned char b) const {
    if (backend == Backend::dense) return dense_table[s * 256u + b];
    const CompactNode& nd = cnodes[s];
    std::uint64_t bits = nd.bits[b >> 6];
    std::uint64_t mask = std::uint64_t{1} << (b & 63);
    if (!(bits & mask)) return kNoTransition;
    std::uint32_t rank =
        nd.word_rank[b >> 6] +
        static_cast<std::uint32_t>(std::popcount(bits & (mask - 1)));
    return packed[nd.slot + rank];
  }

  // Scan-time transition. Failureless: child or kTerminate. Full AC:
  // total function, resolved through failure links.
  std::int32_t next_state(std::int32_t s, unsigned char b) const {
    if (kind == AutomatonKind::failureless) return goto_edge(s, b);
    std::int32_t t = goto_edge(s, b);
    while (t == kNoTransition && s != 0) {
      s = failure[s];
      t = goto_edge(s, b);
    }
    return t == kNoTransition ? 0 : t;
  }

  std::size_t table_bytes() const {
    return dense_table.size() * sizeof(std::int32_t) +
           cnodes.size() * sizeof(CompactNode) +
           packed.size() * sizeof(std::int32_t);
  }

  // Debug dump, one line per edge plus output annotations. Test/doc aid
  // only, not a stability contract.
  std::string dump() const {
    std::string out;
    for (std::size_t s = 0; s < state_count; ++s) {
      for (unsigned b = 0; b < 256; ++b) {
        std::int32_t t = goto_edge(static_cast<std::int32_t>(s),
                                   static_cast<unsigned char>(b));
        if (t == kNoTransition) continue;
        out += std::to_string(s) + " --" + std::to_string(b) + "--> " +
               std::to_string(t) + "\n";
      }
      for (const AutomatonOutput& o : outputs[s])
        out += std::to_string(s) + ": output pattern " +
               std::to_string(o.pattern_id) + " len " +
               std::to_string(o.matched_len) + "\n";
    }
    return out;
  }

  void rebuild_flat_outputs() {
    out_offsets.assign(state_count + 1, 0);
    out_flat.clear();
    for (std::size_t s = 0; s < state_count; ++s) {
      out_offsets[s] = static_cast<std::uint32_t>(out_flat.size());
      out_flat.insert(out_flat.end(), outputs[s].begin(), outputs[s].end());
    }
    out_offsets[state_count] = static_cast<std::uint32_t>(out_flat.size());
  }
};

namespace detail {

// Pointer-free construction trie; renumbered breadth-first at the end so
// builds are deterministic regardless of insertion layout.
struct BuildTrie {
  struct Node {
    std::map<unsigned char, std::int32_t> children;  // ordered by byte
    std::vector<AutomatonOutput> outputs;
  };
  std::vector<Node> nodes{1};
  std::size_t max_states;

  explicit BuildTrie(std::size_t ceiling) : max_states(ceiling) {}

  void insert(std::string_view bytes,
              const std::vector<std::uint32_t>& pattern_ids) {
    std::int32_t s = 0;
    for (unsigned char b : bytes) {
      auto it = nodes[s].children.find(b);
      if (it == nodes[s].children.end()) {
        if (nodes.size() >= max_states) throw CapacityError(max_states);
        std::int32_t t = static_cast<std::int32_t>(nodes.size());
        nodes.emplace_back();
        nodes[s].children.emplace(b, t);
        s = t;
      } else {
        s = it->second;
      }
    }
    for (std::uint32_t id : pattern_ids)
      nodes[s].outputs.push_back(
          {id, static_cast<std::uint32_t>(bytes.size())});
  }

  // Emits a dense automaton with BFS state numbering and fills failure
  // links (full_ac) including output merging.
  Automaton finish(AutomatonKind kind) const {
    Automaton a;
    a.kind = kind;
    a.backend = Backend::dense;
    a.state_count = nodes.size();
    a.dense_table.assign(a.state_count * 256, kNoTransition);
    a.outputs.resize(a.state_count);
    a.depth.assign(a.state_count, 0);

    std::vector<std::int32_t> renumber(nodes.size(), -1);
    std::vector<std::int32_t> order;  // new id -> old id
    order.reserve(nodes.size());
    std::queue<std::int32_t> q;
    q.push(0);
    renumber[0] = 0;
    order.push_back(0);
    while (!q.empty()) {
      std::int32_t old = q.front();
      q.pop();
      for (auto [b, child] : nodes[old].children) {
        renumber[child] = static_cast<std::int32_t>(order.size());
        order.push_back(child);
        q.push(child);
      }
    }
    for (std::size_t ns = 0; ns < order.size(); ++ns) {
      const Node& n = nodes[order[ns]];
      a.outputs[ns] = n.outputs;
      for (auto [b, child] : n.children) {
        std::int32_t nc = renumber[child];
        a.dense_table[ns * 256 + b] = nc;
        a.depth[nc] = a.depth[ns] + 1;
      }
    }

    if (kind == AutomatonKind::full_ac) {
      a.failure.assign(a.state_count, 0);
      std::queue<std::int32_t> bfs;
      for (unsigned b = 0; b < 256; ++b) {
        std::int32_t c = a.dense_table[b];
        if (c != kNoTransition) bfs.push(c);  // failure already 0
      }
      while (!bfs.empty()) {
        std::int32_t s = bfs.front();
        bfs.pop();
        for (unsigned b = 0; b < 256; ++b) {
          std::int32_t t = a.dense_table[s * 256u + b];
          if (t == kNoTransition) continue;
          std::int32_t f = a.failure[s];
          while (f != 0 && a.dense_table[f * 256u + b] == kNoTransition)
            f = a.failure[f];
          std::int32_t ft = a.dense_table[f * 256u + b];
          a.failure[t] = (ft != kNoTransition && ft != t) ? ft : 0;
          const auto& inherited = a.outputs[a.failure[t]];
          a.outputs[t].insert(a.outputs[t].end(), inherited.begin(),
                              inherited.end());
          bfs.push(t);
        }
      }
    }
    a.rebuild_flat_outputs();
    return a;
  }
};

}  // namespace detail

// Re-encodes a dense automaton into the compact bitmap/rank layout. The
// transition function and outputs are identical by construction.
inline Automaton to_compact(const Automaton& a) {
  if (a.backend != Backend::dense)
    throw std::invalid_argument("to_compact: source must be dense");
  Automaton c;
  c.kind = a.kind;
  c.backend = Backend::compact;
  c.state_count = a.state_count;
  c.failure = a.failure;
  c.depth = a.depth;
  c.outputs = a.outputs;
  c.cnodes.assign(a.state_count, Automaton::CompactNode{});
  for (std::size_t s = 0; s < a.state_count; ++s) {
    Automaton::CompactNode& nd = c.cnodes[s];
    nd.slot = static_cast<std::uint32_t>(c.packed.size());
    for (unsigned b = 0; b < 256; ++b) {
      std::int32_t t = a.dense_table[s * 256 + b];
      if (t == kNoTransition) continue;
      nd.bits[b >> 6] |= std::uint64_t{1} << (b & 63);
      c.packed.push_back(t);
    }
    for (unsigned w = 1; w < 4; ++w)
      nd.word_rank[w] =
          nd.word_rank[w - 1] +
          static_cast<std::uint8_t>(std::popcount(nd.bits[w - 1]));
  }
  c.rebuild_flat_outputs();
  for (std::size_t s = 0; s < c.state_count; ++s) {
    c.cnodes[s].out_begin = c.out_offsets[s];
    c.cnodes[s].out_end = c.out_offsets[s + 1];
  }
  return c;
}

// Builds the failureless trie over the truncated prefixes. No failure
// links: a missing edge means the scanning worker terminates.
inline Automaton build_failureless_trie(
    const PrefixSet& prefixes, Backend backend = Backend::dense,
    std::size_t max_states = kDefaultStateCeiling) {
  detail::BuildTrie trie(max_states);
  for (const PrefixEntry& e : prefixes.entries)
    trie.insert(e.bytes, e.pattern_ids);
  Automaton a = trie.finish(AutomatonKind::failureless);
  return backend == Backend::compact ? to_compact(a) : a;
}

// Builds the classic Aho-Corasick machine over full (untruncated)
// patterns: goto trie + breadth-first failure links + merged outputs.
inline Automaton build_ac_automaton(
    const RuleSet& rules, Backend backend = Backend::dense,
    std::size_t max_states = kDefaultStateCeiling) {
  detail::BuildTrie trie(max_states);
  for (const Pattern& p : rules.patterns) trie.insert(p.bytes, {p.id});
  Automaton a = trie.finish(AutomatonKind::full_ac);
  return backend == Backend::compact ? to_compact(a) : a;
}

}  // namespace logtrawl
