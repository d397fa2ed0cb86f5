#pragma once

// Subcommands of the `drs` tool. Kept in a header so the test suite can drive
// the same entry point as the binary.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "drs/drs.hpp"

namespace drs::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;      // roundtrip failure, violated condition, audit violation
inline constexpr int kUsage = 2;         // bad flags, bad parameters, unreadable files
inline constexpr int kInconsistent = 3;  // two of three received symbols equal
inline constexpr int kUnrecognized = 4;  // no triple explains the received word

namespace detail {

inline CodeSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open code spec '" + path + "'");
  return read_spec(in);
}

inline std::vector<ExtElem> load_symbols(const std::string& path, const CubicField& F) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open symbol file '" + path + "'");
  return read_symbols(in, F);
}

// Writes to `path`, or to `fallback` when the path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  write(out);
  if (!out) throw FormatError("write to '" + path + "' failed");
}

// 1-based user positions -> 0-based pattern.
inline DeletionPattern parse_keep(const std::vector<std::size_t>& keep) {
  DeletionPattern pat;
  for (std::size_t k : keep) {
    if (k == 0) throw InvalidParameter("--keep positions are 1-based");
    pat.kept.push_back(k - 1);
  }
  return pat;
}

inline std::string format_kappa(const DeletionPattern& kappa) {
  std::string s;
  for (std::size_t k : kappa.kept) s += (s.empty() ? "" : " ") + std::to_string(k + 1);
  return s;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deletion-correcting [n,2] Reed-Solomon codes over F_{p^3}", "drs"};
  app.require_subcommand(1);

  // gen-code
  std::uint64_t gen_p = 0;
  std::size_t gen_n = 0;
  std::vector<std::uint64_t> gen_delta;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-code", "Construct a code spec for (p, n)");
  gen->add_option("--p", gen_p, "odd prime")->required();
  gen->add_option("--n", gen_n, "blocklength, 3 <= n <= p-1")->required();
  gen->add_option("--delta", gen_delta, "explicit delta seeds (comma separated)")->delimiter(',');
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // encode
  std::string enc_spec, enc_message, enc_out;
  std::optional<std::uint64_t> enc_seed;
  auto* enc = app.add_subcommand("encode", "Encode a message (two symbols m1, m2)");
  enc->add_option("--spec", enc_spec)->required();
  auto* enc_msg_opt = enc->add_option("--message", enc_message, "symbol file holding m1 then m2");
  auto* enc_seed_opt = enc->add_option("--seed", enc_seed, "draw a random message instead");
  enc_msg_opt->excludes(enc_seed_opt);
  enc->add_option("--out", enc_out);

  // corrupt
  std::string cor_spec, cor_codeword, cor_out;
  std::vector<std::size_t> cor_keep;
  std::optional<std::size_t> cor_deletions;
  std::uint64_t cor_seed = 0;
  auto* cor = app.add_subcommand("corrupt", "Apply deletions to a codeword");
  cor->add_option("--spec", cor_spec)->required();
  cor->add_option("--codeword", cor_codeword)->required();
  auto* keep_opt = cor->add_option("--keep", cor_keep, "1-based surviving positions")->delimiter(',');
  auto* del_opt = cor->add_option("--deletions", cor_deletions, "number of random deletions");
  keep_opt->excludes(del_opt);
  cor->add_option("--seed", cor_seed);
  cor->add_option("--out", cor_out);

  // decode
  std::string dec_spec, dec_received, dec_out, dec_algo = "linear";
  bool dec_kappa = false, dec_truncate = false;
  auto* dec = app.add_subcommand("decode", "Recover the codeword from three surviving symbols");
  dec->add_option("--spec", dec_spec)->required();
  dec->add_option("--received", dec_received)->required();
  dec->add_option("--algo", dec_algo)->check(CLI::IsMember({"cubic", "linear"}));
  dec->add_flag("--emit-kappa", dec_kappa, "prefix the output with the recovered kept positions");
  dec->add_flag("--truncate", dec_truncate, "use the first three symbols of a longer received word");
  dec->add_option("--out", dec_out);

  // check-condition
  std::string chk_spec;
  std::uint64_t chk_budget = kDefaultTripleBudget;
  bool chk_base = false;
  auto* chk = app.add_subcommand("check-condition", "Certify injectivity of the triple-ratio map");
  chk->add_option("--spec", chk_spec)->required();
  chk->add_option("--budget", chk_budget, "maximum number of triples to enumerate");
  chk->add_flag("--base-field", chk_base, "use alpha_i = delta_i (no extension) instead of the code's points");

  // audit
  std::string aud_spec;
  std::size_t aud_pairs = 500;
  std::uint64_t aud_seed = 1;
  auto* aud = app.add_subcommand("audit", "Maximum LCS over sampled codeword pairs");
  aud->add_option("--spec", aud_spec)->required();
  aud->add_option("--pairs", aud_pairs);
  aud->add_option("--seed", aud_seed);

  // roundtrip
  std::string rt_spec, rt_algo = "both";
  std::size_t rt_trials = 1000;
  std::uint64_t rt_seed = 1;
  bool rt_exhaustive = false;
  auto* rt = app.add_subcommand("roundtrip", "Encode, delete n-3 symbols, decode, compare");
  rt->add_option("--spec", rt_spec)->required();
  rt->add_option("--trials", rt_trials, "number of random messages");
  rt->add_option("--seed", rt_seed);
  rt->add_option("--algo", rt_algo)->check(CLI::IsMember({"cubic", "linear", "both"}));
  rt->add_flag("--exhaustive", rt_exhaustive, "every kept triple for each message");

  // bench
  BenchConfig bench_cfg;
  std::string bench_out, bench_algo = "both";
  auto* bench = app.add_subcommand("bench", "Decoder scaling benchmark (CSV)");
  bench->add_option("--p", bench_cfg.primes, "primes (comma separated)")->delimiter(',');
  bench->add_option("--n", bench_cfg.n_grid, "blocklengths (comma separated)")->delimiter(',');
  bench->add_option("--trials", bench_cfg.trials);
  bench->add_option("--seed", bench_cfg.seed);
  bench->add_option("--budget-seconds", bench_cfg.budget_seconds);
  bench->add_option("--algo", bench_algo)->check(CLI::IsMember({"cubic", "linear", "both"}));
  bench->add_option("--out", bench_out);

  std::vector<const char*> argv{"drs"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*gen) {
      std::optional<std::vector<std::uint64_t>> delta;
      if (!gen_delta.empty()) delta = gen_delta;
      CodeSpec spec = build_code(gen_p, gen_n, delta);
      detail::emit(gen_out, out, [&](std::ostream& o) { write_spec(o, spec); });
      return kOk;
    }

    if (*enc) {
      CodeSpec spec = detail::load_spec(enc_spec);
      const CubicField& F = spec.field();
      Message m;
      if (!enc_message.empty()) {
        auto syms = detail::load_symbols(enc_message, F);
        if (syms.size() != 2) throw FormatError("message file must hold exactly two symbols (m1, m2)");
        m = {syms[0], syms[1]};
      } else {
        std::mt19937_64 rng(enc_seed.value_or(1));
        m = random_message(F, rng);
      }
      Codeword c = encode(spec, m);
      detail::emit(enc_out, out, [&](std::ostream& o) { write_symbols(o, c.symbols); });
      return kOk;
    }

    if (*cor) {
      CodeSpec spec = detail::load_spec(cor_spec);
      auto word = detail::load_symbols(cor_codeword, spec.field());
      DeletionPattern pat;
      if (!cor_keep.empty()) {
        pat = detail::parse_keep(cor_keep);
      } else {
        const std::size_t t = cor_deletions.value_or(word.size() >= 3 ? word.size() - 3 : 0);
        if (t > word.size()) throw InvalidParameter("more deletions than symbols");
        pat = random_pattern(word.size(), word.size() - t, cor_seed);
      }
      auto kept = apply_deletions(word, pat);
      detail::emit(cor_out, out, [&](std::ostream& o) { write_symbols(o, kept); });
      return kOk;
    }

    if (*dec) {
      CodeSpec spec = detail::load_spec(dec_spec);
      auto received = detail::load_symbols(dec_received, spec.field());
      Algorithm algo = dec_algo == "cubic" ? Algorithm::cubic : Algorithm::linear;
      DecodeOutcome res;
      try {
        res = decode(spec, received_triple(received, dec_truncate), algo);
      } catch (const InconsistentReceivedWord& e) {
        err << "inconsistent received word: " << e.what() << '\n';
        return kInconsistent;
      } catch (const UnrecognizedReceivedWord& e) {
        err << "unrecognized received word: " << e.what() << '\n';
        return kUnrecognized;
      }
      detail::emit(dec_out, out, [&](std::ostream& o) {
        if (dec_kappa) {
          o << "# kappa = " << detail::format_kappa(res.kappa) << '\n';
          o << "# path = " << to_string(res.path) << '\n';
        }
        write_symbols(o, res.codeword.symbols);
      });
      return kOk;
    }

    if (*chk) {
      CodeSpec spec = detail::load_spec(chk_spec);
      auto points = chk_base ? base_field_points(spec) : spec.points();
      InjectivityReport rep = check_injectivity(spec.field(), points, chk_budget);
      if (rep.passed()) {
        out << "pass: " << rep.triples_checked << " triples, all ratios distinct\n";
        return kOk;
      }
      const CollisionWitness& w = *rep.collision;
      out << "fail: triples (" << w.triple_a[0] + 1 << ',' << w.triple_a[1] + 1 << ',' << w.triple_a[2] + 1
          << ") and (" << w.triple_b[0] + 1 << ',' << w.triple_b[1] + 1 << ',' << w.triple_b[2] + 1
          << ") share ratio ";
      write_symbol(out, w.value);
      out << '\n';
      return kNegative;
    }

    if (*aud) {
      CodeSpec spec = detail::load_spec(aud_spec);
      AuditReport rep = audit_code(spec, sample_message_pairs(spec, aud_pairs, aud_seed));
      const std::size_t bound = 2;
      out << "pairs = " << rep.pairs << "\nmax_lcs = " << rep.max_lcs << "\nmin_fll = " << rep.min_fll << '\n';
      if (rep.max_lcs > bound) {
        out << "violation: LCS exceeds " << bound << " for messages\n";
        for (const Message* m : {&rep.witness->first, &rep.witness->second}) {
          write_symbol(out, m->m1);
          out << ' ';
          write_symbol(out, m->m2);
          out << '\n';
        }
        return kNegative;
      }
      return kOk;
    }

    if (*rt) {
      CodeSpec spec = detail::load_spec(rt_spec);
      const CubicField& F = spec.field();
      const std::size_t n = spec.length();
      std::mt19937_64 rng(rt_seed);
      std::uint64_t decodes = 0, failures = 0, fallbacks = 0, disagreements = 0;
      auto run_one = [&](const Message& m, const Codeword& c, const DeletionPattern& pat) {
        auto y = received_triple(apply_deletions(c.symbols, pat));
        std::optional<DecodeOutcome> lin, cub;
        auto attempt = [&](Algorithm a, std::optional<DecodeOutcome>& slot) {
          ++decodes;
          try {
            slot = decode(spec, y, a);
          } catch (const std::runtime_error&) {
            ++failures;
            return;
          }
          if (slot->codeword != c || slot->message != m) ++failures;
        };
        if (rt_algo != "cubic") attempt(Algorithm::linear, lin);
        if (rt_algo != "linear") attempt(Algorithm::cubic, cub);
        if (lin && lin->path == DecodePath::fallback_search) ++fallbacks;
        if (lin && cub && !same_result(*lin, *cub)) ++disagreements;
      };
      for (std::size_t trial = 0; trial < rt_trials; ++trial) {
        Message m = random_message(F, rng);
        Codeword c = encode(spec, m);
        if (rt_exhaustive) {
          for (const IndexTriple& t : enumerate_triples(n)) run_one(m, c, to_pattern(t));
        } else {
          run_one(m, c, random_pattern(n, 3, rng()));
        }
      }
      out << "messages = " << rt_trials << "\ndecodes = " << decodes << "\nsuccesses = " << decodes - failures
          << "\nfailures = " << failures << "\nfallbacks = " << fallbacks << "\ndisagreements = " << disagreements
          << '\n';
      return failures == 0 && disagreements == 0 ? kOk : kNegative;
    }

    if (*bench) {
      if (bench_algo == "cubic") bench_cfg.algos = {Algorithm::cubic};
      if (bench_algo == "linear") bench_cfg.algos = {Algorithm::linear};
      BenchResult res = run_bench(bench_cfg);
      detail::emit(bench_out, out, [&](std::ostream& o) { write_csv(o, res); });
      if (res.truncated) err << "warning: time budget exhausted, CSV is partial\n";
      return kOk;
    }
  } catch (const InvalidParameter& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace drs::cli
