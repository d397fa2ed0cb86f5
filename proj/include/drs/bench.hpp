#pragma once

// Scaling benchmark for both decoders on the worst-case deletion pattern
// (the lexicographically last kept triple).

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "drs/channel.hpp"
#include "drs/code.hpp"
#include "drs/decoder.hpp"

namespace drs {

struct BenchRecord {
  std::uint64_t p = 0;
  std::size_t n = 0;
  Algorithm algo = Algorithm::linear;
  std::size_t trials = 0;
  double search_time = 0.0;  // seconds per decode
  double total_time = 0.0;   // seconds per decode
  std::uint64_t field_ops = 0;  // F_p operations per decode
};

struct BenchConfig {
  std::vector<std::uint64_t> primes{10007};
  std::vector<std::size_t> n_grid{64, 128, 256, 512};
  std::vector<Algorithm> algos{Algorithm::cubic, Algorithm::linear};
  std::size_t trials = 3;
  std::uint64_t seed = 1;
  double budget_seconds = 600.0;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  bool truncated = false;
};

inline const char* to_string(Algorithm a) { return a == Algorithm::cubic ? "cubic" : "linear"; }

/// Grid points with n > p - 1 are skipped. Stops early, marking the result
/// truncated, once the wall-clock budget is spent.
inline BenchResult run_bench(const BenchConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - start).count(); };

  BenchResult result;
  std::mt19937_64 rng(cfg.seed);
  for (std::uint64_t p : cfg.primes) {
    for (std::size_t n : cfg.n_grid) {
      if (n < 3 || n > p - 1) continue;
      CodeSpec spec = build_code(p, n);
      const DeletionPattern worst{{n - 3, n - 2, n - 1}};
      for (Algorithm algo : cfg.algos) {
        if (elapsed() > cfg.budget_seconds) {
          result.truncated = true;
          return result;
        }
        BenchRecord rec{p, n, algo, cfg.trials};
        std::uint64_t ops = 0;
        for (std::size_t t = 0; t < cfg.trials; ++t) {
          Message m = random_message(spec.field(), rng);
          while (m.m2.is_zero()) m.m2 = spec.field().random(rng);
          auto kept = apply_deletions(encode(spec, m).symbols, worst);
          DecodeStats stats;
          DecodeOutcome out = decode(spec, received_triple(kept), algo, &stats);
          if (out.message != m) throw std::logic_error("benchmark decode returned the wrong message");
          rec.search_time += stats.search_seconds;
          rec.total_time += stats.total_seconds;
          ops += stats.total_ops.total();
        }
        if (cfg.trials > 0) {
          rec.search_time /= static_cast<double>(cfg.trials);
          rec.total_time /= static_cast<double>(cfg.trials);
          rec.field_ops = ops / cfg.trials;
        }
        result.records.push_back(rec);
      }
    }
  }
  return result;
}

/// Columns: p,n,algo,trials,search_time,total_time,field_ops.
inline void write_csv(std::ostream& out, const BenchResult& result) {
  out << "p,n,algo,trials,search_time,total_time,field_ops\n";
  for (const BenchRecord& r : result.records) {
    out << r.p << ',' << r.n << ',' << to_string(r.algo) << ',' << r.trials << ',' << std::scientific
        << std::setprecision(6) << r.search_time << ',' << r.total_time << ',' << std::defaultfloat << r.field_ops
        << '\n';
  }
  if (result.truncated) out << "# truncated: time budget exhausted\n";
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope needs >= 2 paired samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace drs
