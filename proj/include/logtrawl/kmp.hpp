#pragma once

// Knuth-Morris-Pratt single-pattern baseline. Deliberately sequential:
// the multi-pattern driver runs one pattern at a time, which is the
// scaling behaviour the parallel engines are measured against.
//
// Failure table convention: table[i] is the length of the longest proper
// prefix of pattern[0..=i] that is also its suffix. Overlapping matches
// are reported (after a match the walk resumes from table[m-1]).

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <vector>

#include "logtrawl/rules.hpp"

namespace logtrawl {

struct FailureTable {
  std::uint32_t pattern_id = 0;
  std::vector<std::uint32_t> table;  // length == |pattern|
};

inline FailureTable build_failure_table(const Pattern& p) {
  FailureTable ft;
  ft.pattern_id = p.id;
  ft.table.assign(p.bytes.size(), 0);
  std::uint32_t k = 0;
  for (std::size_t i = 1; i < p.bytes.size(); ++i) {
    while (k > 0 && p.bytes[i] != p.bytes[k]) k = ft.table[k - 1];
    if (p.bytes[i] == p.bytes[k]) ++k;
    ft.table[i] = k;
  }
  return ft;
}

// All start offsets (ascending, overlapping included) of p in text.
// When `comparisons` is given, every byte comparison is counted; the
// classic bound comparisons <= 2*|text| holds for all inputs.
inline std::vector<std::size_t> kmp_search(std::string_view text,
                                           const Pattern& p,
                                           const FailureTable& ft,
                                           std::uint64_t* comparisons =
                                               nullptr) {
  std::vector<std::size_t> offsets;
  const std::size_t n = text.size();
  const std::size_t m = p.bytes.size();
  if (m == 0 || n < m) return offsets;
  std::uint64_t cmp = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < n;) {
    ++cmp;
    if (text[i] == p.bytes[j]) {
      ++i;
      ++j;
      if (j == m) {
        offsets.push_back(i - m);
        j = ft.table[m - 1];
      }
    } else if (j > 0) {
      j = ft.table[j - 1];
    } else {
      ++i;
    }
  }
  if (comparisons) *comparisons += cmp;
  return offsets;
}

// Sequential multi-pattern driver: one full kmp_search pass per pattern,
// results merged and sorted by (offset, pattern_id). Work grows linearly
// with the pattern count by construction.
inline std::vector<Match> kmp_multi(std::string_view text,
                                    const RuleSet& rules,
                                    const std::vector<FailureTable>*
                                        prebuilt = nullptr,
                                    std::uint64_t* comparisons = nullptr) {
  std::vector<Match> matches;
  for (const Pattern& p : rules.patterns) {
    FailureTable local;
    const FailureTable* ft;
    if (prebuilt) {
      ft = &(*prebuilt)[p.id];
    } else {
      local = build_failure_table(p);
      ft = &local;
    }
    for (std::size_t off : kmp_search(text, p, *ft, comparisons))
      matches.push_back({off, p.id});
  }
  std::sort(matches.begin(), matches.end());
  return matches;
}

}  // namespace logtrawl
