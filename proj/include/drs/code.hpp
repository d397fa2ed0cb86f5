#pragma once

// [n, 2] Reed-Solomon code over F_{p^3} whose evaluation points are
// alpha_i = delta_i + delta_i^2 * gamma for distinct nonzero delta_i in F_p.
// Such a code corrects any n - 3 deletions.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "drs/errors.hpp"
#include "drs/field.hpp"

namespace drs {

/// Coefficients of f(x) = m1 + m2 x.
struct Message {
  ExtElem m1;
  ExtElem m2;

  friend bool operator==(const Message&, const Message&) = default;
};

struct Codeword {
  std::vector<ExtElem> symbols;

  std::size_t size() const { return symbols.size(); }
  const ExtElem& operator[](std::size_t i) const { return symbols[i]; }

  friend bool operator==(const Codeword&, const Codeword&) = default;
};

/// Immutable description of one code: the field, the ordered delta seeds,
/// the derived evaluation points and the inverse delta -> position table.
/// Positions are 0-based throughout the library.
class CodeSpec {
 public:
  /// Validates every invariant; throws InvalidParameter on violation.
  CodeSpec(CubicField field, std::vector<Residue> delta) : field_(field), delta_(std::move(delta)) {
    const PrimeField& f = field_.base();
    const std::uint64_t p = f.modulus();
    const std::size_t n = delta_.size();
    if (n < 3 || n > p - 1) {
      throw InvalidParameter("blocklength must satisfy 3 <= n <= p - 1; got n = " + std::to_string(n) +
                             ", p = " + std::to_string(p));
    }
    index_.reserve(n * 2);
    alpha_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      Residue d = delta_[i];
      if (d.value == 0 || d.value >= p) {
        throw InvalidParameter("delta entries must lie in [1, p - 1]; got " + std::to_string(d.value));
      }
      if (!index_.emplace(d.value, i).second) {
        throw InvalidParameter("duplicate delta entry " + std::to_string(d.value));
      }
      alpha_.push_back(field_.element(d, f.mul(d, d), Residue{}));
    }
  }

  const CubicField& field() const { return field_; }
  const PrimeField& base() const { return field_.base(); }
  std::size_t length() const { return delta_.size(); }
  const std::vector<Residue>& deltas() const { return delta_; }
  const std::vector<ExtElem>& points() const { return alpha_; }
  const ExtElem& point(std::size_t i) const { return alpha_.at(i); }

  /// Position holding `d`, or nullopt.
  std::optional<std::size_t> lookup_delta(Residue d) const {
    auto it = index_.find(d.value);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const CodeSpec& a, const CodeSpec& b) {
    return a.field_ == b.field_ && a.delta_ == b.delta_;
  }

 private:
  CubicField field_;
  std::vector<Residue> delta_;
  std::vector<ExtElem> alpha_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Deterministic construction from (p, n): the lexicographically first
/// irreducible cubic and, unless overridden, delta = (1, 2, ..., n).
inline CodeSpec build_code(std::uint64_t p, std::size_t n,
                           const std::optional<std::vector<std::uint64_t>>& delta_override = std::nullopt) {
  PrimeField f(p);
  if (n < 3 || n > p - 1) {
    throw InvalidParameter("blocklength must satisfy 3 <= n <= p - 1; got n = " + std::to_string(n) +
                           ", p = " + std::to_string(p));
  }
  std::vector<Residue> delta;
  delta.reserve(n);
  if (delta_override) {
    if (delta_override->size() != n) {
      throw InvalidParameter("delta override has " + std::to_string(delta_override->size()) + " entries, expected " +
                             std::to_string(n));
    }
    for (std::uint64_t d : *delta_override) {
      if (d >= p) throw InvalidParameter("delta entry " + std::to_string(d) + " is not reduced modulo p");
      delta.push_back(Residue{d});
    }
  } else {
    for (std::size_t i = 1; i <= n; ++i) delta.push_back(Residue{i});
  }
  return CodeSpec(CubicField(f, find_irreducible_cubic(f)), std::move(delta));
}

inline Codeword encode(const CodeSpec& spec, const Message& m) {
  const CubicField& F = spec.field();
  Codeword c;
  c.symbols.reserve(spec.length());
  for (const ExtElem& a : spec.points()) c.symbols.push_back(F.add(m.m1, F.mul(m.m2, a)));
  return c;
}

/// The degree-one polynomial through (alpha_i, y_i) and (alpha_j, y_j).
inline Message interpolate(const CodeSpec& spec, std::size_t i, std::size_t j, const ExtElem& y_i,
                           const ExtElem& y_j) {
  if (i == j) throw InvalidParameter("interpolation needs two distinct positions");
  if (i >= spec.length() || j >= spec.length()) throw InvalidParameter("interpolation position out of range");
  const CubicField& F = spec.field();
  const ExtElem& a_i = spec.point(i);
  ExtElem m2 = F.div(F.sub(y_i, y_j), F.sub(a_i, spec.point(j)));
  ExtElem m1 = F.sub(y_i, F.mul(m2, a_i));
  return {m1, m2};
}

/// (alpha_i - alpha_j) / (alpha_j - alpha_k) over any evaluation vector.
inline ExtElem triple_ratio(const CubicField& F, const std::vector<ExtElem>& points, std::size_t i, std::size_t j,
                            std::size_t k) {
  if (!(i < j && j < k)) throw InvalidParameter("triple indices must be strictly increasing");
  if (k >= points.size()) throw InvalidParameter("triple index out of range");
  return F.div(F.sub(points[i], points[j]), F.sub(points[j], points[k]));
}

/// Gamma(alpha_i, alpha_j, alpha_k) for i < j < k. Injective on increasing
/// triples for every code produced by build_code.
inline ExtElem gamma_map(const CodeSpec& spec, std::size_t i, std::size_t j, std::size_t k) {
  return triple_ratio(spec.field(), spec.points(), i, j, k);
}

inline std::optional<std::size_t> lookup_delta(const CodeSpec& spec, Residue d) { return spec.lookup_delta(d); }

inline Message random_message(const CubicField& F, std::mt19937_64& rng) { return {F.random(rng), F.random(rng)}; }

}  // namespace drs
