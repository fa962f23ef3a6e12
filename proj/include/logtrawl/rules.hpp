#pragma once

// Rule file parsing and prefix truncation for the two-stage matcher.
//
// Rule files are line oriented: `name : pattern`, one rule per line.
// Blank lines and lines starting with '#' are ignored. The pattern
// segment supports \xNN hex escapes and \\ for a literal backslash, so
// rules can carry arbitrary binary bytes.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace logtrawl {

inline constexpr std::size_t kDefaultPrefixLen = 8;
inline constexpr std::size_t kMaxPatternLen = 4096;

struct Pattern {
  std::uint32_t id = 0;  // dense, 0-based within a RuleSet
  std::string name;
  std::string bytes;     // non-empty
};

struct RuleSet {
  std::vector<Pattern> patterns;
  std::size_t max_len = 0;  // max over pattern byte lengths
};

// One pattern occurrence: `bytes` match starting at `offset`.
struct Match {
  std::size_t offset = 0;
  std::uint32_t pattern_id = 0;

  friend bool operator==(const Match&, const Match&) = default;
  friend bool operator<(const Match& a, const Match& b) {
    return a.offset != b.offset ? a.offset < b.offset
                                : a.pattern_id < b.pattern_id;
  }
};

struct PrefixEntry {
  std::string bytes;                       // first min(|pattern|, L) bytes
  std::vector<std::uint32_t> pattern_ids;  // all patterns sharing this prefix
};

struct PrefixSet {
  std::size_t prefix_len = kDefaultPrefixLen;
  std::vector<PrefixEntry> entries;  // first-appearance order
};

class RuleParseError : public std::runtime_error {
 public:
  RuleParseError(std::size_t line, const std::string& what)
      : std::runtime_error("rules:" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  return s;
}

inline int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

inline std::string expand_escapes(std::string_view raw, std::size_t line) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    char c = raw[i];
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (i + 1 >= raw.size())
      throw RuleParseError(line, "dangling backslash in pattern");
    char e = raw[++i];
    if (e == '\\') {
      out.push_back('\\');
    } else if (e == 'x') {
      if (i + 2 >= raw.size())
        throw RuleParseError(line, "truncated \\xNN escape");
      int hi = hex_digit(raw[i + 1]);
      int lo = hex_digit(raw[i + 2]);
      if (hi < 0 || lo < 0)
        throw RuleParseError(line, "bad hex digits in \\xNN escape");
      out.push_back(static_cast<char>(hi * 16 + lo));
      i += 2;
    } else {
      throw RuleParseError(line, std::string("unknown escape \\") + e);
    }
  }
  return out;
}

}  // namespace detail

// Parses a rule file. Patterns keep file order; ids are assigned 0,1,2,...
inline RuleSet parse_rules(std::string_view source_text) {
  RuleSet rules;
  std::unordered_map<std::string, std::size_t> seen;  // bytes -> line no
  std::size_t line_no = 0;
  while (!source_text.empty()) {
    ++line_no;
    std::size_t nl = source_text.find('\n');
    std::string_view line = source_text.substr(0, nl);
    source_text = nl == std::string_view::npos
                      ? std::string_view{}
                      : source_text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;

    std::size_t colon = t.find(':');
    if (colon == std::string_view::npos)
      throw RuleParseError(line_no, "expected `name : pattern`");
    std::string name(detail::trim(t.substr(0, colon)));
    if (name.empty()) throw RuleParseError(line_no, "empty rule name");
    std::string bytes =
        detail::expand_escapes(detail::trim(t.substr(colon + 1)), line_no);
    if (bytes.empty())
      throw RuleParseError(line_no, "empty pattern after escape expansion");
    if (bytes.size() > kMaxPatternLen)
      throw RuleParseError(line_no, "pattern exceeds " +
                                        std::to_string(kMaxPatternLen) +
                                        " bytes");
    if (auto it = seen.find(bytes); it != seen.end())
      throw RuleParseError(line_no,
                           "duplicate pattern (same bytes as line " +
                               std::to_string(it->second) + ")");
    seen.emplace(bytes, line_no);

    Pattern p;
    p.id = static_cast<std::uint32_t>(rules.patterns.size());
    p.name = std::move(name);
    p.bytes = std::move(bytes);
    rules.max_len = std::max(rules.max_len, p.bytes.size());
    rules.patterns.push_back(std::move(p));
  }
  return rules;
}

// Inverse of parse_rules up to escaping choices. Spaces and non-printable
// bytes are emitted as \xNN so the output survives the parser's trimming.
inline std::string serialize_rules(const RuleSet& rules) {
  std::string out;
  static const char* hex = "0123456789abcdef";
  for (const Pattern& p : rules.patterns) {
    out += p.name;
    out += " : ";
    for (unsigned char b : p.bytes) {
      if (b == '\\') {
        out += "\\\\";
      } else if (b > 32 && b < 127 && b != '#') {
        out.push_back(static_cast<char>(b));
      } else {
        out += "\\x";
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 0xF]);
      }
    }
    out.push_back('\n');
  }
  return out;
}

// Truncates every pattern to its first min(len, prefix_len) bytes and
// merges patterns whose truncated prefixes collide. Entry order is
// first-appearance order over pattern ids.
inline PrefixSet truncate_prefixes(const RuleSet& rules,
                                   std::size_t prefix_len = kDefaultPrefixLen) {
  if (prefix_len < 1)
    throw std::invalid_argument("truncate_prefixes: prefix_len must be >= 1");
  PrefixSet ps;
  ps.prefix_len = prefix_len;
  std::unordered_map<std::string, std::size_t> index;  // prefix -> entry
  for (const Pattern& p : rules.patterns) {
    std::string prefix =
        p.bytes.substr(0, std::min(p.bytes.size(), prefix_len));
    auto [it, inserted] = index.try_emplace(prefix, ps.entries.size());
    if (inserted) {
      ps.entries.push_back(PrefixEntry{std::move(prefix), {p.id}});
    } else {
      ps.entries[it->second].pattern_ids.push_back(p.id);
    }
  }
  return ps;
}

}  // namespace logtrawl
