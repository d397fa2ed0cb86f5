#pragma once

// Text formats.
//
// Code spec (key = value lines, '#' starts a comment):
//     p = 5
//     g = 1 1 0          # g0 g1 g2 of x^3 + g2 x^2 + g1 x + g0
//     delta = 1 2 3 4
//
// Symbol files: one extension-field element per line as "c0,c1,c2".
// All integers are base 10 and canonical in [0, p).

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "drs/code.hpp"
#include "drs/errors.hpp"
#include "drs/field.hpp"

namespace drs {

namespace detail {

inline std::string strip(std::string s) {
  if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::uint64_t parse_uint(const std::string& tok) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw FormatError("expected a non-negative integer, got '" + tok + "'");
  }
  try {
    return std::stoull(tok);
  } catch (const std::out_of_range&) {
    throw FormatError("integer out of range: '" + tok + "'");
  }
}

inline std::vector<std::uint64_t> parse_uint_list(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::uint64_t> out;
  for (std::string tok; in >> tok;) out.push_back(parse_uint(tok));
  return out;
}

inline std::uint64_t canonical(std::uint64_t v, std::uint64_t p) {
  if (v >= p) throw FormatError("value " + std::to_string(v) + " is not in canonical form modulo " + std::to_string(p));
  return v;
}

}  // namespace detail

inline void write_spec(std::ostream& out, const CodeSpec& spec) {
  const MonicCubic& g = spec.field().modulus();
  out << "p = " << spec.base().modulus() << '\n';
  out << "g = " << g.g0.value << ' ' << g.g1.value << ' ' << g.g2.value << '\n';
  out << "delta =";
  for (Residue d : spec.deltas()) out << ' ' << d.value;
  out << '\n';
}

/// Parses and fully validates a code spec. Format problems raise FormatError;
/// a well-formed file describing an invalid code raises InvalidParameter.
inline CodeSpec read_spec(std::istream& in) {
  std::map<std::string, std::string> fields;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    line = detail::strip(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("line " + std::to_string(line_no) + ": expected 'key = value'");
    std::string key = detail::strip(line.substr(0, eq));
    if (key != "p" && key != "g" && key != "delta") {
      throw FormatError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!fields.emplace(key, line.substr(eq + 1)).second) {
      throw FormatError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  for (const char* key : {"p", "g", "delta"}) {
    if (!fields.count(key)) throw FormatError(std::string("missing key '") + key + "'");
  }
  auto p_list = detail::parse_uint_list(fields["p"]);
  if (p_list.size() != 1) throw FormatError("'p' takes exactly one integer");
  const std::uint64_t p = p_list[0];
  PrimeField f(p);

  auto g_list = detail::parse_uint_list(fields["g"]);
  if (g_list.size() != 3) throw FormatError("'g' takes exactly three integers g0 g1 g2");
  MonicCubic g{Residue{detail::canonical(g_list[0], p)}, Residue{detail::canonical(g_list[1], p)},
               Residue{detail::canonical(g_list[2], p)}};

  std::vector<Residue> delta;
  for (std::uint64_t d : detail::parse_uint_list(fields["delta"])) delta.push_back(Residue{detail::canonical(d, p)});
  return CodeSpec(CubicField(f, g), std::move(delta));
}

inline void write_symbol(std::ostream& out, const ExtElem& x) {
  out << x.c0().value << ',' << x.c1().value << ',' << x.c2().value;
}

inline void write_symbols(std::ostream& out, const std::vector<ExtElem>& word) {
  for (const ExtElem& x : word) {
    write_symbol(out, x);
    out << '\n';
  }
}

inline ExtElem parse_symbol(const CubicField& F, const std::string& text) {
  std::string s = detail::strip(text);
  auto c1 = s.find(',');
  auto c2 = c1 == std::string::npos ? c1 : s.find(',', c1 + 1);
  if (c2 == std::string::npos || s.find(',', c2 + 1) != std::string::npos) {
    throw FormatError("expected 'c0,c1,c2', got '" + s + "'");
  }
  const std::uint64_t p = F.base().modulus();
  return F.element(detail::canonical(detail::parse_uint(detail::strip(s.substr(0, c1))), p),
                   detail::canonical(detail::parse_uint(detail::strip(s.substr(c1 + 1, c2 - c1 - 1))), p),
                   detail::canonical(detail::parse_uint(detail::strip(s.substr(c2 + 1))), p));
}

/// Blank lines and '#' comments are skipped.
inline std::vector<ExtElem> read_symbols(std::istream& in, const CubicField& F) {
  std::vector<ExtElem> word;
  for (std::string line; std::getline(in, line);) {
    if (detail::strip(line).empty()) continue;
    word.push_back(parse_symbol(F, line));
  }
  return word;
}

}  // namespace drs
