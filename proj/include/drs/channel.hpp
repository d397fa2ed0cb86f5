#pragma once

// Deletion channel: keeps a strictly increasing subset of positions.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "drs/errors.hpp"

namespace drs {

/// Surviving positions (0-based), strictly increasing.
struct DeletionPattern {
  std::vector<std::size_t> kept;

  std::size_t size() const { return kept.size(); }
  bool empty() const { return kept.empty(); }

  /// Throws InvalidParameter unless kept is strictly increasing and < n.
  void validate(std::size_t n) const {
    for (std::size_t m = 0; m < kept.size(); ++m) {
      if (kept[m] >= n) {
        throw InvalidParameter("kept position " + std::to_string(kept[m]) + " out of range for length " +
                               std::to_string(n));
      }
      if (m > 0 && kept[m - 1] >= kept[m]) throw InvalidParameter("kept positions must be strictly increasing");
    }
  }

  friend bool operator==(const DeletionPattern&, const DeletionPattern&) = default;
};

template <typename T>
std::vector<T> apply_deletions(std::span<const T> word, const DeletionPattern& pattern) {
  pattern.validate(word.size());
  std::vector<T> out;
  out.reserve(pattern.size());
  for (std::size_t i : pattern.kept) out.push_back(word[i]);
  return out;
}

template <typename T>
std::vector<T> apply_deletions(const std::vector<T>& word, const DeletionPattern& pattern) {
  return apply_deletions(std::span<const T>(word), pattern);
}

/// Uniform `survivors`-subset of [0, n), reproducible for a given seed.
inline DeletionPattern random_pattern(std::size_t n, std::size_t survivors, std::uint64_t seed) {
  if (survivors > n) {
    throw InvalidParameter("cannot keep " + std::to_string(survivors) + " of " + std::to_string(n) + " symbols");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  DeletionPattern pat;
  pat.kept.reserve(survivors);
  std::sample(all.begin(), all.end(), std::back_inserter(pat.kept), survivors, rng);
  return pat;
}

using IndexTriple = std::array<std::size_t, 3>;

/// Lexicographic walk over all increasing triples of [0, n).
class IncreasingTriples {
 public:
  class iterator {
   public:
    using value_type = IndexTriple;
    using difference_type = std::ptrdiff_t;
    using reference = const IndexTriple&;
    using pointer = const IndexTriple*;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(std::size_t n, bool at_end) : n_(n), t_{0, 1, 2}, done_(at_end || n < 3) {}

    reference operator*() const { return t_; }
    pointer operator->() const { return &t_; }

    iterator& operator++() {
      if (++t_[2] < n_) return *this;
      if (++t_[1] < n_ - 1) {
        t_[2] = t_[1] + 1;
        return *this;
      }
      if (++t_[0] < n_ - 2) {
        t_[1] = t_[0] + 1;
        t_[2] = t_[1] + 1;
        return *this;
      }
      done_ = true;
      return *this;
    }
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }

    friend bool operator==(const iterator& a, const iterator& b) {
      if (a.done_ || b.done_) return a.done_ == b.done_;
      return a.t_ == b.t_;
    }

   private:
    std::size_t n_ = 0;
    IndexTriple t_{};
    bool done_ = true;
  };

  explicit IncreasingTriples(std::size_t n) : n_(n) {}

  iterator begin() const { return iterator(n_, false); }
  iterator end() const { return iterator(n_, true); }

  /// C(n, 3).
  std::uint64_t count() const {
    const std::uint64_t n = n_;
    return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6;
  }

 private:
  std::size_t n_;
};

/// All C(n, 3) kept-triples in lexicographic order; throws for n < 3.
inline IncreasingTriples enumerate_triples(std::size_t n) {
  if (n < 3) throw InvalidParameter("need n >= 3 to enumerate triples, got " + std::to_string(n));
  return IncreasingTriples(n);
}

inline DeletionPattern to_pattern(const IndexTriple& t) { return DeletionPattern{{t[0], t[1], t[2]}}; }

}  // namespace drs
