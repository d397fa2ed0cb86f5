#pragma once

// Decoders for n - 3 deletions. Both consume the three surviving symbols
// (y1, y2, y3) in received order. The ratio
//     beta = (y1 - y2) / (y2 - y3)
// cancels the message and equals Gamma of the unknown kept positions, so
// decoding reduces to finding the unique increasing triple with that Gamma
// value. decode_cubic scans all C(n, 3) triples; decode_linear solves for the
// delta seeds of the triple in closed form and looks them up.

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "drs/channel.hpp"
#include "drs/code.hpp"
#include "drs/errors.hpp"
#include "drs/field.hpp"

namespace drs {

using ReceivedTriple = std::array<ExtElem, 3>;

enum class DecodePath { closed_form, fallback_search, constant };

inline const char* to_string(DecodePath p) {
  switch (p) {
    case DecodePath::closed_form:
      return "closed-form";
    case DecodePath::fallback_search:
      return "fallback-search";
    case DecodePath::constant:
      return "constant";
  }
  return "?";
}

struct DecodeOutcome {
  Message message;
  Codeword codeword;
  DeletionPattern kappa;  // empty on the constant path
  DecodePath path = DecodePath::constant;
};

/// Same recovered word: message, codeword and kept positions.
inline bool same_result(const DecodeOutcome& a, const DecodeOutcome& b) {
  return a.message == b.message && a.codeword == b.codeword && a.kappa == b.kappa;
}

/// Instrumentation filled in by the decoders on request. "Search" covers
/// everything up to and including identification of the kept triple;
/// "total" adds interpolation and re-encoding.
struct DecodeStats {
  OpCount search_ops;
  OpCount total_ops;
  std::uint64_t triples_tested = 0;
  double search_seconds = 0.0;
  double total_seconds = 0.0;
};

/// Takes the first three symbols of a longer word only when `truncate` is set.
inline ReceivedTriple received_triple(std::span<const ExtElem> y, bool truncate = false) {
  if (y.size() < 3 || (y.size() > 3 && !truncate)) {
    throw InvalidParameter("expected exactly 3 received symbols, got " + std::to_string(y.size()));
  }
  return {y[0], y[1], y[2]};
}

/// nullopt flags a constant received word (m2 = 0).
inline std::optional<ExtElem> compute_beta(const CubicField& F, const ReceivedTriple& y) {
  const bool e12 = y[0] == y[1], e23 = y[1] == y[2], e13 = y[0] == y[2];
  if (e12 && e23) {
    F.decompose(y[0]);  // context check
    return std::nullopt;
  }
  if (e12 || e23 || e13) {
    throw InconsistentReceivedWord("exactly two of the three received symbols are equal");
  }
  return F.div(F.sub(y[0], y[1]), F.sub(y[1], y[2]));
}

/// beta = a gamma^2 + b gamma + c and beta*gamma = r gamma^2 + s gamma + t.
struct ClosedFormCoefficients {
  Residue a, b, c, r, s, t;

  friend bool operator==(const ClosedFormCoefficients&, const ClosedFormCoefficients&) = default;
};

inline ClosedFormCoefficients extract_coefficients(const CubicField& F, const ExtElem& beta) {
  const PrimeField& f = F.base();
  const MonicCubic& g = F.modulus();
  auto [c, b, a] = F.decompose(beta);
  // beta*gamma = a gamma^3 + b gamma^2 + c gamma, with gamma^3 = -g2 gamma^2 - g1 gamma - g0.
  Residue r = f.sub(b, f.mul(a, g.g2));
  Residue s = f.sub(c, f.mul(a, g.g1));
  Residue t = f.neg(f.mul(a, g.g0));
  return {a, b, c, r, s, t};
}

/// Closed-form (delta_k1, delta_k2, delta_k3) with theta = a / r:
///   delta_k2 = (b - theta (c^2 + s - 2 c t theta + t^2 theta^2))
///              / (2 (c + c^2 - 2 c t theta + t theta (t theta - 1)))
///   delta_k3 = -delta_k2 - theta
///   delta_k1 = delta_k2 (1 + 2c - 2 t theta) + theta (c - t theta)
/// nullopt when r = 0 or the delta_k2 denominator vanishes. The other root
/// of the underlying quadratic, -a / (2r), would give delta_k2 = delta_k3 and
/// is never returned.
inline std::optional<std::array<Residue, 3>> solve_deltas(const PrimeField& f, const ClosedFormCoefficients& k) {
  if (k.r.value == 0) return std::nullopt;
  const Residue two{2 % f.modulus()};
  const Residue one{1};
  const Residue theta = f.div(k.a, k.r);
  const Residue t_theta = f.mul(k.t, theta);
  const Residue c_sq = f.mul(k.c, k.c);
  const Residue two_c_t_theta = f.mul(two, f.mul(k.c, t_theta));

  // c^2 + s - 2 c t theta + (t theta)^2
  Residue inner = f.add(f.sub(f.add(c_sq, k.s), two_c_t_theta), f.mul(t_theta, t_theta));
  Residue numer = f.sub(k.b, f.mul(theta, inner));

  // 2 (c + c^2 - 2 c t theta + t theta (t theta - 1))
  Residue denom = f.add(f.sub(f.add(k.c, c_sq), two_c_t_theta), f.mul(t_theta, f.sub(t_theta, one)));
  denom = f.mul(two, denom);
  if (denom.value == 0) return std::nullopt;

  const Residue d2 = f.div(numer, denom);
  const Residue d3 = f.sub(f.neg(d2), theta);
  const Residue slope = f.sub(f.add(one, f.mul(two, k.c)), f.mul(two, t_theta));
  const Residue d1 = f.add(f.mul(d2, slope), f.mul(theta, f.sub(k.c, t_theta)));
  return std::array<Residue, 3>{d1, d2, d3};
}

namespace detail {

// Lexicographic scan for the triple (i, j, k) with
//     alpha_i - alpha_j = beta (alpha_j - alpha_k),
// which is Gamma(i, j, k) = beta with the division cleared. beta*alpha is
// tabulated once; each tested triple then costs three F_p subtractions.
inline std::optional<IndexTriple> search_triple(const CodeSpec& spec, const ExtElem& beta,
                                                std::uint64_t& tested) {
  const CubicField& F = spec.field();
  const PrimeField& f = F.base();
  const std::size_t n = spec.length();
  const auto& alpha = spec.points();

  std::vector<std::array<std::uint64_t, 3>> beta_alpha(n);
  for (std::size_t m = 0; m < n; ++m) {
    auto c = F.decompose(F.mul(beta, alpha[m]));
    beta_alpha[m] = {c[0].value, c[1].value, c[2].value};
  }

  for (std::size_t i = 0; i + 2 < n; ++i) {
    for (std::size_t j = i + 1; j + 1 < n; ++j) {
      const auto lhs = F.decompose(F.sub(alpha[i], alpha[j]));
      const auto& bj = beta_alpha[j];
      std::size_t k = j + 1;
      for (; k < n; ++k) {
        const auto& bk = beta_alpha[k];
        if (f.raw_sub(bj[0], bk[0]) == lhs[0].value && f.raw_sub(bj[1], bk[1]) == lhs[1].value &&
            f.raw_sub(bj[2], bk[2]) == lhs[2].value) {
          break;
        }
      }
      const std::uint64_t scanned = (k < n ? k + 1 : n) - (j + 1);
      tested += scanned;
      tally_add_sub(3 * scanned);
      if (k < n) return IndexTriple{i, j, k};
    }
  }
  return std::nullopt;
}

// Interpolates through the first two kept points, checks the third, re-encodes.
inline std::optional<DecodeOutcome> complete(const CodeSpec& spec, const ReceivedTriple& y, const IndexTriple& kappa,
                                             DecodePath path) {
  const CubicField& F = spec.field();
  Message m = interpolate(spec, kappa[0], kappa[1], y[0], y[1]);
  if (F.add(m.m1, F.mul(m.m2, spec.point(kappa[2]))) != y[2]) return std::nullopt;
  return DecodeOutcome{m, encode(spec, m), to_pattern(kappa), path};
}

inline DecodeOutcome constant_outcome(const CodeSpec& spec, const ExtElem& value) {
  Message m{value, spec.field().zero()};
  return DecodeOutcome{m, encode(spec, m), DeletionPattern{}, DecodePath::constant};
}

class DecodeTimer {
 public:
  DecodeTimer(DecodeStats* stats, OpCount& ops) : stats_(stats), ops_(ops), start_(clock::now()) {}
  void mark_search(std::uint64_t tested) {
    if (!stats_) return;
    stats_->search_ops = ops_;
    stats_->triples_tested = tested;
    stats_->search_seconds = seconds();
  }
  void finish() {
    if (!stats_) return;
    stats_->total_ops = ops_;
    stats_->total_seconds = seconds();
  }

 private:
  using clock = std::chrono::steady_clock;
  double seconds() const { return std::chrono::duration<double>(clock::now() - start_).count(); }

  DecodeStats* stats_;
  OpCount& ops_;
  clock::time_point start_;
};

}  // namespace detail

/// Exhaustive triple search. Throws InconsistentReceivedWord or
/// UnrecognizedReceivedWord when `y` is not a valid channel output.
inline DecodeOutcome decode_cubic(const CodeSpec& spec, const ReceivedTriple& y, DecodeStats* stats = nullptr) {
  OpCount ops;
  CountingScope scope(ops);
  detail::DecodeTimer timer(stats, ops);

  std::optional<ExtElem> beta = compute_beta(spec.field(), y);
  if (!beta) {
    timer.mark_search(0);
    DecodeOutcome out = detail::constant_outcome(spec, y[0]);
    timer.finish();
    return out;
  }
  std::uint64_t tested = 0;
  std::optional<IndexTriple> kappa = detail::search_triple(spec, *beta, tested);
  timer.mark_search(tested);
  if (!kappa) throw UnrecognizedReceivedWord("no increasing triple of evaluation points matches the received ratio");
  std::optional<DecodeOutcome> out = detail::complete(spec, y, *kappa, DecodePath::fallback_search);
  if (!out) throw UnrecognizedReceivedWord("third received symbol is off the interpolated line");
  timer.finish();
  return *std::move(out);
}

/// Closed-form identification of the kept triple in O(1) field operations,
/// then an O(n) re-encode. Any degeneracy or failed consistency check falls
/// back to the exhaustive search, so the result always equals decode_cubic's.
inline DecodeOutcome decode_linear(const CodeSpec& spec, const ReceivedTriple& y, DecodeStats* stats = nullptr) {
  OpCount ops;
  CountingScope scope(ops);
  detail::DecodeTimer timer(stats, ops);

  const CubicField& F = spec.field();
  std::optional<ExtElem> beta = compute_beta(F, y);
  if (!beta) {
    timer.mark_search(0);
    DecodeOutcome out = detail::constant_outcome(spec, y[0]);
    timer.finish();
    return out;
  }

  std::optional<IndexTriple> kappa;
  if (auto deltas = solve_deltas(F.base(), extract_coefficients(F, *beta))) {
    auto k1 = spec.lookup_delta((*deltas)[0]);
    auto k2 = spec.lookup_delta((*deltas)[1]);
    auto k3 = spec.lookup_delta((*deltas)[2]);
    if (k1 && k2 && k3 && *k1 < *k2 && *k2 < *k3 && gamma_map(spec, *k1, *k2, *k3) == *beta) {
      kappa = IndexTriple{*k1, *k2, *k3};
    }
  }

  if (kappa) {
    timer.mark_search(0);
    if (auto out = detail::complete(spec, y, *kappa, DecodePath::closed_form)) {
      timer.finish();
      return *std::move(out);
    }
  }

  std::uint64_t tested = 0;
  kappa = detail::search_triple(spec, *beta, tested);
  timer.mark_search(tested);
  if (!kappa) throw UnrecognizedReceivedWord("no increasing triple of evaluation points matches the received ratio");
  std::optional<DecodeOutcome> out = detail::complete(spec, y, *kappa, DecodePath::fallback_search);
  if (!out) throw UnrecognizedReceivedWord("third received symbol is off the interpolated line");
  timer.finish();
  return *std::move(out);
}

enum class Algorithm { cubic, linear };

inline DecodeOutcome decode(const CodeSpec& spec, const ReceivedTriple& y, Algorithm algo,
                            DecodeStats* stats = nullptr) {
  return algo == Algorithm::cubic ? decode_cubic(spec, y, stats) : decode_linear(spec, y, stats);
}

}  // namespace drs
