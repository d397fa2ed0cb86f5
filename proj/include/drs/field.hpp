#pragma once

// Arithmetic in a prime field F_p and in its cubic extension
// F_p[x]/(g) with g a monic irreducible cubic. Elements of the extension are
// stored in the power basis {1, gamma, gamma^2} where gamma is the class of x.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "drs/errors.hpp"

namespace drs {

// ---------------------------------------------------------------------------
// Operation counting
// ---------------------------------------------------------------------------

/// Tally of base-field operations. Extension-field arithmetic is counted in
/// terms of the F_p operations it performs.
struct OpCount {
  std::uint64_t add_sub = 0;
  std::uint64_t mul = 0;
  std::uint64_t inv = 0;

  std::uint64_t total() const { return add_sub + mul + inv; }

  OpCount& operator+=(const OpCount& o) {
    add_sub += o.add_sub;
    mul += o.mul;
    inv += o.inv;
    return *this;
  }
  friend OpCount operator-(OpCount a, const OpCount& b) {
    a.add_sub -= b.add_sub;
    a.mul -= b.mul;
    a.inv -= b.inv;
    return a;
  }
  friend bool operator==(const OpCount&, const OpCount&) = default;
};

namespace detail {
inline thread_local OpCount* active_counter = nullptr;

inline void tally_add_sub(std::uint64_t k = 1) {
  if (active_counter) active_counter->add_sub += k;
}
inline void tally_mul(std::uint64_t k = 1) {
  if (active_counter) active_counter->mul += k;
}
inline void tally_inv() {
  if (active_counter) ++active_counter->inv;
}
}  // namespace detail

/// Routes every F_p operation on the current thread into `sink` for the
/// lifetime of the scope. Scopes nest: on exit the inner tally is folded into
/// the enclosing one.
class CountingScope {
 public:
  explicit CountingScope(OpCount& sink) : sink_(sink), previous_(detail::active_counter) {
    detail::active_counter = &sink_;
  }
  ~CountingScope() {
    detail::active_counter = previous_;
    if (previous_) *previous_ += sink_;
  }
  CountingScope(const CountingScope&) = delete;
  CountingScope& operator=(const CountingScope&) = delete;

 private:
  OpCount& sink_;
  OpCount* previous_;
};

// ---------------------------------------------------------------------------
// Prime field
// ---------------------------------------------------------------------------

/// Deterministic Miller-Rabin, exact for every 64-bit input.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, b);
      b = mulmod(b, b);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// An element of F_p, always reduced into [0, p).
struct Residue {
  std::uint64_t value = 0;

  friend auto operator<=>(const Residue&, const Residue&) = default;
};

/// Largest supported modulus (exclusive). Sums of two residues stay below 2^63
/// and products fit the 128-bit intermediate.
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p <= 2 || p >= kMaxModulus || !is_prime(p)) {
      throw InvalidParameter("modulus must be an odd prime below 2^62, got " + std::to_string(p));
    }
  }

  std::uint64_t modulus() const { return p_; }

  /// Reduces an arbitrary integer into the field.
  Residue operator()(std::uint64_t v) const { return Residue{v % p_}; }
  Residue from_signed(std::int64_t v) const {
    auto m = static_cast<std::int64_t>(v % static_cast<std::int64_t>(p_));
    return Residue{static_cast<std::uint64_t>(m < 0 ? m + static_cast<std::int64_t>(p_) : m)};
  }

  Residue add(Residue x, Residue y) const {
    detail::tally_add_sub();
    return Residue{raw_add(x.value, y.value)};
  }
  Residue sub(Residue x, Residue y) const {
    detail::tally_add_sub();
    return Residue{raw_sub(x.value, y.value)};
  }
  Residue neg(Residue x) const {
    detail::tally_add_sub();
    return Residue{x.value == 0 ? 0 : p_ - x.value};
  }
  Residue mul(Residue x, Residue y) const {
    detail::tally_mul();
    return Residue{raw_mul(x.value, y.value)};
  }

  /// Multiplicative inverse via the extended Euclidean algorithm.
  Residue inv(Residue x) const {
    if (x.value == 0) throw DivisionByZero("inverse of zero in F_" + std::to_string(p_));
    detail::tally_inv();
    return Residue{raw_inv(x.value)};
  }

  Residue div(Residue x, Residue y) const { return mul(x, inv(y)); }

  Residue pow(Residue base, std::uint64_t e) const {
    Residue r{1};
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  Residue random(std::mt19937_64& rng) const {
    return Residue{std::uniform_int_distribution<std::uint64_t>(0, p_ - 1)(rng)};
  }

  // Uncounted primitives for hot loops that tally in bulk.
  std::uint64_t raw_add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t raw_sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t raw_mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  // a must be nonzero.
  std::uint64_t raw_inv(std::uint64_t a) const {
    std::int64_t t = 0, new_t = 1;
    std::uint64_t r = p_, new_r = a;
    while (new_r != 0) {
      std::uint64_t q = r / new_r;
      std::int64_t tmp_t = t - static_cast<std::int64_t>(q) * new_t;
      t = new_t;
      new_t = tmp_t;
      std::uint64_t tmp_r = r - q * new_r;
      r = new_r;
      new_r = tmp_r;
    }
    return from_signed(t).value;
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

// ---------------------------------------------------------------------------
// Cubic polynomials
// ---------------------------------------------------------------------------

/// g(x) = x^3 + g2 x^2 + g1 x + g0.
struct MonicCubic {
  Residue g0, g1, g2;

  friend bool operator==(const MonicCubic&, const MonicCubic&) = default;
};

namespace detail {

// Dense polynomial over F_p, lowest degree first, no trailing zeros.
using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_from_cubic(const MonicCubic& g) { return {g.g0.value, g.g1.value, g.g2.value, 1}; }

// Quotient and remainder of a / b, b nonzero.
inline std::pair<Poly, Poly> poly_divmod(const PrimeField& f, Poly a, const Poly& b) {
  trim(a);
  Poly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, 0);
  Residue lead_inv{f.raw_inv(b.back())};
  for (std::size_t k = a.size(); k-- >= b.size();) {
    std::uint64_t coef = f.raw_mul(a[k], lead_inv.value);
    std::size_t shift = k - (b.size() - 1);
    q[shift] = coef;
    for (std::size_t m = 0; m < b.size(); ++m) {
      a[shift + m] = f.raw_sub(a[shift + m], f.raw_mul(coef, b[m]));
    }
    if (k == b.size() - 1) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline Poly poly_mul(const PrimeField& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.raw_add(r[i + j], f.raw_mul(a[i], b[j]));
  trim(r);
  return r;
}

inline Poly poly_sub(const PrimeField& f, Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.raw_sub(a[i], b[i]);
  trim(a);
  return a;
}

inline Poly poly_gcd(const PrimeField& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_divmod(f, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^e mod g using square-and-multiply on residues of degree < 3.
inline Poly poly_pow_x_mod(const PrimeField& f, std::uint64_t e, const Poly& g) {
  Poly result{1};
  Poly base = poly_divmod(f, Poly{0, 1}, g).second;
  while (e) {
    if (e & 1) result = poly_divmod(f, poly_mul(f, result, base), g).second;
    base = poly_divmod(f, poly_mul(f, base, base), g).second;
    e >>= 1;
  }
  return result;
}

}  // namespace detail

inline Residue evaluate(const PrimeField& f, const MonicCubic& g, Residue x) {
  std::uint64_t v = f.raw_add(x.value, g.g2.value);
  v = f.raw_add(f.raw_mul(v, x.value), g.g1.value);
  v = f.raw_add(f.raw_mul(v, x.value), g.g0.value);
  return Residue{v};
}

/// True iff g has a root in F_p, by evaluating at every element.
inline bool has_root_by_scan(const PrimeField& f, const MonicCubic& g) {
  for (std::uint64_t x = 0; x < f.modulus(); ++x) {
    if (evaluate(f, g, Residue{x}).value == 0) return true;
  }
  return false;
}

/// True iff gcd(x^p - x mod g, g) = 1, i.e. g has no root in F_p.
inline bool rootless_by_gcd(const PrimeField& f, const MonicCubic& g) {
  detail::Poly gp = detail::poly_from_cubic(g);
  detail::Poly h = detail::poly_sub(f, detail::poly_pow_x_mod(f, f.modulus(), gp), detail::Poly{0, 1});
  return detail::poly_gcd(f, gp, h).size() == 1;
}

/// A cubic is irreducible exactly when it has no root in F_p. Root scan
/// below 2^16, gcd test above.
inline bool is_irreducible_cubic(const PrimeField& f, const MonicCubic& g) {
  if (f.modulus() < (std::uint64_t{1} << 16)) return !has_root_by_scan(f, g);
  return rootless_by_gcd(f, g);
}

/// First monic cubic with no root in F_p, scanning (g2, g1, g0)
/// lexicographically from (0, 0, 0).
inline MonicCubic find_irreducible_cubic(const PrimeField& f) {
  const std::uint64_t p = f.modulus();
  for (std::uint64_t g2 = 0; g2 < p; ++g2)
    // For p = 2 (mod 3) cubing permutes F_p, so every x^3 + g0 has a root
    // and the (0, 0, *) row holds no candidate.
    for (std::uint64_t g1 = (g2 == 0 && p % 3 == 2) ? 1 : 0; g1 < p; ++g1)
      for (std::uint64_t g0 = 0; g0 < p; ++g0) {
        MonicCubic g{Residue{g0}, Residue{g1}, Residue{g2}};
        if (is_irreducible_cubic(f, g)) return g;
      }
  // Irreducible cubics exist over every finite field.
  throw std::logic_error("no irreducible cubic found");
}

// ---------------------------------------------------------------------------
// Cubic extension
// ---------------------------------------------------------------------------

class CubicField;

/// c0 + c1*gamma + c2*gamma^2, tagged with the (p, g) context that made it.
class ExtElem {
 public:
  ExtElem() = default;

  /// Basis coefficients (constant, gamma, gamma^2).
  const std::array<Residue, 3>& coefficients() const { return c_; }
  Residue c0() const { return c_[0]; }
  Residue c1() const { return c_[1]; }
  Residue c2() const { return c_[2]; }
  bool is_zero() const { return c_[0].value == 0 && c_[1].value == 0 && c_[2].value == 0; }
  std::uint64_t context() const { return tag_; }

  friend bool operator==(const ExtElem&, const ExtElem&) = default;

 private:
  friend class CubicField;
  ExtElem(std::array<Residue, 3> c, std::uint64_t tag) : c_(c), tag_(tag) {}

  std::array<Residue, 3> c_{};
  std::uint64_t tag_ = 0;
};

struct ExtElemHash {
  std::size_t operator()(const ExtElem& x) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (Residue r : x.coefficients()) {
      h ^= r.value + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

/// The field F_p[x]/(g). Cheap to copy; all operations are const.
class CubicField {
 public:
  /// Throws InvalidParameter when g has a root in F_p.
  CubicField(PrimeField base, MonicCubic g) : base_(base), g_(g) {
    const std::uint64_t p = base_.modulus();
    if (g.g0.value >= p || g.g1.value >= p || g.g2.value >= p) {
      throw InvalidParameter("cubic coefficients must be reduced modulo p");
    }
    if (!is_irreducible_cubic(base_, g_)) throw InvalidParameter("defining cubic is reducible over F_p");
    tag_ = fingerprint(p, g);
  }

  /// Uses find_irreducible_cubic(p).
  explicit CubicField(std::uint64_t p) : CubicField(PrimeField(p), find_irreducible_cubic(PrimeField(p))) {}

  const PrimeField& base() const { return base_; }
  const MonicCubic& modulus() const { return g_; }
  std::uint64_t context() const { return tag_; }

  ExtElem element(std::uint64_t c0, std::uint64_t c1, std::uint64_t c2) const {
    return make({base_(c0), base_(c1), base_(c2)});
  }
  ExtElem element(Residue c0, Residue c1, Residue c2) const { return element(c0.value, c1.value, c2.value); }
  ExtElem embed(Residue x) const { return make({base_(x.value), Residue{}, Residue{}}); }
  ExtElem zero() const { return make({}); }
  ExtElem one() const { return make({Residue{1}, Residue{}, Residue{}}); }
  ExtElem gamma() const { return make({Residue{}, Residue{1}, Residue{}}); }

  /// Coefficients (c0, c1, c2) in the basis {1, gamma, gamma^2}.
  std::array<Residue, 3> decompose(const ExtElem& x) const {
    check(x);
    return x.c_;
  }

  ExtElem add(const ExtElem& x, const ExtElem& y) const {
    check(x, y);
    return make({base_.add(x.c_[0], y.c_[0]), base_.add(x.c_[1], y.c_[1]), base_.add(x.c_[2], y.c_[2])});
  }
  ExtElem sub(const ExtElem& x, const ExtElem& y) const {
    check(x, y);
    return make({base_.sub(x.c_[0], y.c_[0]), base_.sub(x.c_[1], y.c_[1]), base_.sub(x.c_[2], y.c_[2])});
  }
  ExtElem neg(const ExtElem& x) const {
    check(x);
    return make({base_.neg(x.c_[0]), base_.neg(x.c_[1]), base_.neg(x.c_[2])});
  }
  ExtElem scale(const ExtElem& x, Residue k) const {
    check(x);
    return make({base_.mul(x.c_[0], k), base_.mul(x.c_[1], k), base_.mul(x.c_[2], k)});
  }

  /// Schoolbook product, then gamma^4 and gamma^3 folded back with
  /// gamma^3 = -g2 gamma^2 - g1 gamma - g0.
  ExtElem mul(const ExtElem& x, const ExtElem& y) const {
    check(x, y);
    const PrimeField& f = base_;
    std::array<std::uint64_t, 5> d{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) d[i + j] = f.raw_add(d[i + j], f.raw_mul(x.c_[i].value, y.c_[j].value));
    for (int k = 4; k >= 3; --k) {
      std::uint64_t top = d[k];
      d[k - 1] = f.raw_sub(d[k - 1], f.raw_mul(top, g_.g2.value));
      d[k - 2] = f.raw_sub(d[k - 2], f.raw_mul(top, g_.g1.value));
      d[k - 3] = f.raw_sub(d[k - 3], f.raw_mul(top, g_.g0.value));
    }
    detail::tally_mul(9 + 6);
    detail::tally_add_sub(9 + 6);
    return make({Residue{d[0]}, Residue{d[1]}, Residue{d[2]}});
  }

  /// Extended Euclid on (g, x) over F_p. Tallied as a single inversion.
  ExtElem inv(const ExtElem& x) const {
    check(x);
    if (x.is_zero()) throw DivisionByZero("inverse of zero in the cubic extension");
    detail::tally_inv();
    const PrimeField& f = base_;
    detail::Poly r0 = detail::poly_from_cubic(g_);
    detail::Poly r1{x.c_[0].value, x.c_[1].value, x.c_[2].value};
    detail::trim(r1);
    detail::Poly s0{}, s1{1};
    while (!r1.empty()) {
      auto [q, r] = detail::poly_divmod(f, r0, r1);
      detail::Poly s = detail::poly_sub(f, s0, detail::poly_mul(f, q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    // r0 is a nonzero constant because g is irreducible.
    const std::uint64_t k = f.raw_inv(r0.at(0));
    s0.resize(3, 0);
    return make({Residue{f.raw_mul(s0[0], k)}, Residue{f.raw_mul(s0[1], k)}, Residue{f.raw_mul(s0[2], k)}});
  }

  ExtElem div(const ExtElem& x, const ExtElem& y) const { return mul(x, inv(y)); }

  ExtElem random(std::mt19937_64& rng) const {
    return make({base_.random(rng), base_.random(rng), base_.random(rng)});
  }

  friend bool operator==(const CubicField& a, const CubicField& b) { return a.base_ == b.base_ && a.g_ == b.g_; }

 private:
  static std::uint64_t fingerprint(std::uint64_t p, const MonicCubic& g) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t v : {p, g.g0.value, g.g1.value, g.g2.value}) {
      h ^= v;
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return h == 0 ? 1 : h;
  }

  ExtElem make(std::array<Residue, 3> c) const { return ExtElem(c, tag_); }

  void check(const ExtElem& x) const {
    if (x.tag_ != tag_) throw ContextMismatch("element does not belong to this cubic extension");
  }
  void check(const ExtElem& x, const ExtElem& y) const {
    check(x);
    check(y);
  }

  PrimeField base_;
  MonicCubic g_;
  std::uint64_t tag_ = 0;
};

}  // namespace drs
