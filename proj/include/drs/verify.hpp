#pragma once

// Brute-force oracles: Gamma injectivity, the 3x3 Vandermonde-variant
// determinant, LCS / fixed-length Levenshtein distance and pairwise codeword
// audits.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <ranges>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "drs/channel.hpp"
#include "drs/code.hpp"
#include "drs/errors.hpp"
#include "drs/field.hpp"

namespace drs {

struct CollisionWitness {
  IndexTriple triple_a;
  IndexTriple triple_b;
  ExtElem value;
};

struct InjectivityReport {
  std::uint64_t triples_checked = 0;
  std::optional<CollisionWitness> collision;

  bool passed() const { return !collision; }
};

inline constexpr std::uint64_t kDefaultTripleBudget = 10'000'000;

/// Evaluates the triple ratio on every increasing triple of `points` and
/// reports the first repeated value in lexicographic order. Refuses (throws
/// BudgetExceeded) rather than sampling when C(n, 3) exceeds the budget.
inline InjectivityReport check_injectivity(const CubicField& F, const std::vector<ExtElem>& points,
                                           std::uint64_t budget = kDefaultTripleBudget) {
  const std::size_t n = points.size();
  IncreasingTriples triples(n);
  if (triples.count() > budget) {
    throw BudgetExceeded("C(" + std::to_string(n) + ", 3) = " + std::to_string(triples.count()) +
                         " triples exceeds the budget of " + std::to_string(budget));
  }
  // 1 / (alpha_j - alpha_k) for every j < k.
  std::vector<ExtElem> inv_diff(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) inv_diff[j * n + k] = F.inv(F.sub(points[j], points[k]));

  InjectivityReport report;
  std::unordered_map<ExtElem, IndexTriple, ExtElemHash> seen;
  seen.reserve(static_cast<std::size_t>(triples.count()));
  for (const IndexTriple& t : triples) {
    ExtElem v = F.mul(F.sub(points[t[0]], points[t[1]]), inv_diff[t[1] * n + t[2]]);
    ++report.triples_checked;
    auto [it, inserted] = seen.emplace(v, t);
    if (!inserted) {
      report.collision = CollisionWitness{it->second, t, v};
      return report;
    }
  }
  return report;
}

inline InjectivityReport check_injectivity(const CodeSpec& spec, std::uint64_t budget = kDefaultTripleBudget) {
  return check_injectivity(spec.field(), spec.points(), budget);
}

/// Evaluation points alpha_i = delta_i embedded from the base field, with no
/// extension component. Gamma is far from injective on these.
inline std::vector<ExtElem> base_field_points(const CodeSpec& spec) {
  std::vector<ExtElem> pts;
  pts.reserve(spec.length());
  for (Residue d : spec.deltas()) pts.push_back(spec.field().embed(d));
  return pts;
}

inline std::size_t shared_coordinates(const IndexTriple& a, const IndexTriple& b) {
  std::size_t shared = 0;
  for (std::size_t x : a) shared += static_cast<std::size_t>(std::ranges::count(b, x));
  return shared;
}

/// det of the 3x3 matrix with rows (1, alpha_{I_m}, alpha_{J_m}).
inline ExtElem vandermonde_det(const CubicField& F, const std::vector<ExtElem>& points, const IndexTriple& I,
                               const IndexTriple& J) {
  for (const IndexTriple* t : {&I, &J}) {
    if (!((*t)[0] < (*t)[1] && (*t)[1] < (*t)[2])) throw InvalidParameter("index triples must be increasing");
    if ((*t)[2] >= points.size()) throw InvalidParameter("index triple out of range");
  }
  // Subtracting row 1 from rows 2 and 3 leaves a 2x2 minor.
  ExtElem u2 = F.sub(points[I[1]], points[I[0]]);
  ExtElem u3 = F.sub(points[I[2]], points[I[0]]);
  ExtElem v2 = F.sub(points[J[1]], points[J[0]]);
  ExtElem v3 = F.sub(points[J[2]], points[J[0]]);
  return F.sub(F.mul(u2, v3), F.mul(u3, v2));
}

inline ExtElem vandermonde_det(const CodeSpec& spec, const IndexTriple& I, const IndexTriple& J) {
  return vandermonde_det(spec.field(), spec.points(), I, J);
}

/// Longest common subsequence length by the standard O(|x| |y|) recurrence,
/// comparing symbols by exact equality.
template <std::ranges::random_access_range X, std::ranges::random_access_range Y>
std::size_t lcs_length(const X& x, const Y& y) {
  const auto nx = static_cast<std::size_t>(std::ranges::size(x));
  const auto ny = static_cast<std::size_t>(std::ranges::size(y));
  std::vector<std::size_t> prev(ny + 1, 0), cur(ny + 1, 0);
  for (std::size_t i = 1; i <= nx; ++i) {
    for (std::size_t j = 1; j <= ny; ++j) {
      cur[j] = std::ranges::begin(x)[i - 1] == std::ranges::begin(y)[j - 1] ? prev[j - 1] + 1
                                                                             : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[ny];
}

/// n - LCS for equal-length words.
template <std::ranges::random_access_range X, std::ranges::random_access_range Y>
std::size_t fll_distance(const X& x, const Y& y) {
  const auto n = static_cast<std::size_t>(std::ranges::size(x));
  if (n != static_cast<std::size_t>(std::ranges::size(y))) {
    throw InvalidParameter("fixed-length Levenshtein distance needs equal lengths");
  }
  return n - lcs_length(x, y);
}

struct AuditReport {
  std::size_t pairs = 0;
  std::size_t max_lcs = 0;
  std::size_t min_fll = 0;
  // First pair reaching max_lcs.
  std::optional<std::pair<Message, Message>> witness;
};

/// Largest LCS over the given codeword pairs. Identical messages are skipped.
inline AuditReport audit_code(const CodeSpec& spec, const std::vector<std::pair<Message, Message>>& messages) {
  AuditReport report;
  report.min_fll = spec.length();
  bool first = true;
  for (const auto& [a, b] : messages) {
    if (a == b) continue;
    Codeword ca = encode(spec, a), cb = encode(spec, b);
    std::size_t l = lcs_length(ca.symbols, cb.symbols);
    ++report.pairs;
    if (first || l > report.max_lcs) {
      report.max_lcs = l;
      report.witness = {a, b};
      first = false;
    }
    report.min_fll = std::min(report.min_fll, spec.length() - l);
  }
  return report;
}

/// `count` distinct message pairs drawn from `seed`. A quarter of the draws
/// use constant messages (m2 = 0) so those codewords are audited too.
inline std::vector<std::pair<Message, Message>> sample_message_pairs(const CodeSpec& spec, std::size_t count,
                                                                     std::uint64_t seed) {
  const CubicField& F = spec.field();
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    Message m = random_message(F, rng);
    if (rng() % 4 == 0) m.m2 = F.zero();
    return m;
  };
  auto key = [](const Message& a, const Message& b) {
    std::array<std::uint64_t, 12> k{};
    std::size_t pos = 0;
    for (const ExtElem* e : {&a.m1, &a.m2, &b.m1, &b.m2})
      for (Residue r : e->coefficients()) k[pos++] = r.value;
    return k;
  };
  std::vector<std::pair<Message, Message>> out;
  out.reserve(count);
  std::set<std::array<std::uint64_t, 12>> seen;
  while (out.size() < count) {
    Message a = draw(), b = draw();
    if (a == b) continue;
    if (seen.insert(key(a, b)).second) out.emplace_back(a, b);
  }
  return out;
}

}  // namespace drs
