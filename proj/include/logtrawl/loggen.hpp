#pragma once

// Synthetic log corpus generation. A standard 32-bit MT19937 stream is
// mapped onto printable ASCII (32..126) by rejection sampling of the low
// byte of each 32-bit output; byte positions at multiples of line_len
// are forced to LF so the output has log-like line structure. The whole
// file is a deterministic function of (size, seed, line_len), and its
// SHA-256 hex digest doubles as a uniqueness fingerprint.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "logtrawl/rules.hpp"
#include "logtrawl/sha256.hpp"

namespace logtrawl {

struct GenSpec {
  std::uint64_t size = 100'000'000;  // decimal MB corpus default
  std::uint32_t seed = 5489;         // MT19937 default seed
  std::uint64_t line_len = 80;
};

struct GenResult {
  std::string bytes;
  std::string sha256_hex;
};

namespace detail {

// Low byte of one PRNG word per draw; values >= 190 (= 2*95) rejected so
// the mapping onto the 95 printable symbols is unbiased.
inline char printable_from(std::mt19937& rng) {
  for (;;) {
    std::uint32_t b = rng() & 0xFF;
    if (b < 190) return static_cast<char>(32 + b % 95);
  }
}

}  // namespace detail

inline GenResult generate_log(const GenSpec& spec) {
  if (spec.size == 0) throw std::invalid_argument("generate_log: size is 0");
  if (spec.line_len < 2)
    throw std::invalid_argument("generate_log: line_len must be >= 2");
  std::mt19937 rng(spec.seed);
  GenResult r;
  r.bytes.resize(spec.size);
  for (std::uint64_t p = 0; p < spec.size; ++p) {
    r.bytes[p] =
        (p % spec.line_len == 0) ? '\n' : detail::printable_from(rng);
  }
  r.sha256_hex = sha256_hex(r.bytes);
  return r;
}

// Random printable patterns for benchmark sweeps; names are synthetic.
inline RuleSet random_rules(std::size_t count, std::size_t pattern_len,
                            std::uint32_t seed) {
  std::mt19937 rng(seed);
  RuleSet rules;
  std::unordered_map<std::string, bool> seen;
  while (rules.patterns.size() < count) {
    std::string bytes(pattern_len, '\0');
    for (char& c : bytes) c = detail::printable_from(rng);
    if (seen.count(bytes)) continue;  // resample on (unlikely) duplicate
    seen.emplace(bytes, true);
    Pattern p;
    p.id = static_cast<std::uint32_t>(rules.patterns.size());
    p.name = "rand-" + std::to_string(p.id);
    p.bytes = std::move(bytes);
    rules.max_len = std::max(rules.max_len, pattern_len);
    rules.patterns.push_back(std::move(p));
  }
  return rules;
}

}  // namespace logtrawl
