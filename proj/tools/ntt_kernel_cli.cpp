#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nttk/analysis.hpp"
#include "nttk/bench.hpp"
#include "nttk/oracle.hpp"
#include "nttk/params.hpp"
#include "nttk/transform.hpp"
#include "nttk/verify.hpp"

// Exit codes: 0 all checks pass, 1 property violation found,
// 2 configuration or budget error. NTT_KERNEL_SEED overrides --seed.
// verify / counterexample / ntt output is byte-for-byte deterministic
// for a given configuration and seed; bench timing fields are not.

namespace {

using namespace nttk;

[[nodiscard]] uint64_t env_seed_override(uint64_t flag_value) {
  const char* env = std::getenv("NTT_KERNEL_SEED");
  if (env == nullptr) return flag_value;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || errno == ERANGE) {
    throw contract_violation("NTT_KERNEL_SEED is not a valid integer");
  }
  return v;
}

// --- verify ----------------------------------------------------------------

struct VerifyCfg {
  std::string alg = "all";
  std::string format = "text";
  VerifyOptions opt;
};

int run_verify(VerifyCfg cfg) {
  cfg.opt.seed = env_seed_override(cfg.opt.seed);

  std::vector<SuiteResult> suites;
  if (cfg.alg == "all") {
    suites = run_all_suites(cfg.opt);
  } else if (cfg.alg == "montgomery") {
    suites.push_back(verify_montgomery(cfg.opt));
  } else if (cfg.alg == "signed-montgomery") {
    suites.push_back(verify_signed_montgomery(cfg.opt));
  } else if (cfg.alg == "plantard") {
    suites.push_back(verify_plantard(cfg.opt));
  } else if (cfg.alg == "modified-plantard") {
    suites.push_back(verify_modified_plantard(cfg.opt));
  } else if (cfg.alg == "crt") {
    suites.push_back(verify_crt(cfg.opt));
  } else if (cfg.alg == "butterflies") {
    suites.push_back(verify_butterflies(cfg.opt));
  } else if (cfg.alg == "transform") {
    suites.push_back(verify_transform(cfg.opt));
  } else if (cfg.alg == "signed-plantard-defect") {
    suites.push_back(verify_signed_plantard_defect(cfg.opt));
  } else if (cfg.alg == "signed-plantard") {
    suites.push_back(verify_signed_plantard_contract(cfg.opt));
  }

  uint64_t cases = 0;
  uint64_t failures = 0;
  for (const auto& s : suites) {
    cases += s.cases;
    failures += s.failures;
  }

  if (cfg.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : suites) {
      arr.push_back({{"name", s.name},
                     {"cases", s.cases},
                     {"failures", s.failures},
                     {"notes", s.notes}});
    }
    const nlohmann::json out{{"schema", 1},
                             {"suites", arr},
                             {"cases", cases},
                             {"failures", failures}};
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    for (const auto& s : suites) {
      std::printf("%-26s %10llu cases  %llu failures\n", s.name.c_str(),
                  (unsigned long long)s.cases, (unsigned long long)s.failures);
      for (const auto& n : s.notes) std::printf("    %s\n", n.c_str());
    }
    std::printf("total: %llu cases, %llu failures\n",
                (unsigned long long)cases, (unsigned long long)failures);
  }
  return failures == 0 ? 0 : 1;
}

// --- counterexample ----------------------------------------------------------

struct CexCfg {
  uint64_t p = 31;
  unsigned n_bits = 6;
  unsigned alpha = 0;
  std::string semantics = "both";
  uint64_t random = 0;
  uint64_t seed = 12345;
  uint64_t limit = 10'000'000;
  bool expect_known = false;
};

[[nodiscard]] nlohmann::json case_json(const CaseReport& c) {
  return {{"W", c.W},
          {"T", c.T},
          {"A", c.A},
          {"h", c.h},
          {"K", c.K},
          {"alg_output", c.alg_output},
          {"semantics", to_string(c.semantics)},
          {"mismatch", c.mismatch}};
}

int run_counterexample(CexCfg cfg) {
  cfg.seed = env_seed_override(cfg.seed);
  if (cfg.limit == 0) {
    std::fprintf(stderr, "error: --limit 0 admits no cases\n");
    return 2;
  }

  std::vector<ShiftSemantics> sems;
  if (cfg.semantics == "arith") {
    sems = {ShiftSemantics::arithmetic_floor};
  } else if (cfg.semantics == "signed") {
    sems = {ShiftSemantics::signed_floor};
  } else {
    sems = {ShiftSemantics::arithmetic_floor, ShiftSemantics::signed_floor};
  }

  const auto ctx = make_reduction_context(cfg.p, cfg.n_bits, cfg.alpha);
  const SearchSpace space = cfg.random > 0
                                ? SearchSpace::random(cfg.random, cfg.seed)
                                : SearchSpace::all(cfg.limit);

  uint64_t total_mismatches = 0;
  bool known_ok = true;
  for (const auto sem : sems) {
    const SearchResult sr = search_counterexamples(ctx, sem, space);
    for (const auto& c : sr.mismatches) {
      std::printf("%s\n", case_json(c).dump().c_str());
    }
    std::printf("# %s: %zu mismatches in %llu cases\n", to_string(sem),
                sr.mismatches.size(), (unsigned long long)sr.cases_checked);
    total_mismatches += sr.mismatches.size();

    if (cfg.expect_known) {
      const int64_t expect_alg =
          sem == ShiftSemantics::arithmetic_floor ? -16 : -14;
      bool found = false;
      for (const auto& c : sr.mismatches) {
        if (c.W == 19 && c.T == -5 && c.alg_output == expect_alg &&
            c.K == -15) {
          found = true;
        }
      }
      known_ok = known_ok && found;
    }
  }
  if (cfg.expect_known) return known_ok ? 0 : 1;
  return total_mismatches > 0 ? 1 : 0;
}

// --- ntt ---------------------------------------------------------------------

struct NttCfg {
  std::string preset_name;
  uint64_t p = 0;
  uint64_t size = 0;
  unsigned n_bits = 0;
  std::string kind = "all";
  uint64_t trials = 100;
  uint64_t seed = 12345;
  bool exhaustive = false;
};

int run_ntt(NttCfg cfg) {
  cfg.seed = env_seed_override(cfg.seed);

  uint64_t p = cfg.p;
  uint32_t N = static_cast<uint32_t>(cfg.size);
  unsigned n_bits = cfg.n_bits;
  if (!cfg.preset_name.empty()) {
    const PresetSpec& spec = preset_spec(cfg.preset_name);
    if (p == 0) p = spec.p;
    if (N == 0) N = spec.size;
    if (n_bits == 0) n_bits = spec.n_bits;
  }
  if (p == 0 || N == 0 || n_bits == 0) {
    std::fprintf(stderr,
                 "error: need --preset or all of --p, --size, --n-bits\n");
    return 2;
  }

  const std::vector<ButterflyKind> kinds =
      cfg.kind == "all" ? all_butterfly_kinds()
                        : std::vector<ButterflyKind>{
                              butterfly_kind_from_string(cfg.kind)};
  const NttParams P = build_params(p, N, n_bits, kinds);

  Rng rng(cfg.seed);
  uint64_t checks = 0;
  uint64_t failures = 0;

  const auto run_poly = [&](const Polynomial& f) {
    const auto want = naive_dft(f, P.omega, P.p);
    for (const auto kind : kinds) {
      ++checks;
      const Spectrum s = ntt_forward(f, P, kind);
      auto nat = to_natural_order(s);
      canonicalize(nat, P.p);
      const Polynomial back = intt_inverse(s, P, kind);
      if (nat != want || back != f) ++failures;
    }
  };

  if (cfg.exhaustive) {
    u128 total = 1;
    for (uint32_t i = 0; i < N; ++i) {
      total *= p;
      if (total > 25'000'000) {
        std::fprintf(stderr,
                     "error: exhaustive input space p^N exceeds 25000000 "
                     "cases for p=%llu, N=%u; use --trials\n",
                     (unsigned long long)p, N);
        return 2;
      }
    }
    Polynomial f(N, 0);
    while (true) {
      run_poly(f);
      size_t i = 0;
      while (i < N && ++f[i] == p) f[i++] = 0;
      if (i == N) break;
    }
  } else {
    for (uint64_t t = 0; t < cfg.trials; ++t) {
      Polynomial f(N);
      for (auto& c : f) c = rng.below(P.p);
      run_poly(f);
    }
  }

  const uint64_t conv_pairs =
      cfg.exhaustive ? 25 : std::max<uint64_t>(uint64_t(1), cfg.trials / 10);
  for (uint64_t t = 0; t < conv_pairs; ++t) {
    Polynomial a(N), b(N);
    for (auto& c : a) c = rng.below(P.p);
    for (auto& c : b) c = rng.below(P.p);
    const auto want = schoolbook_cyclic_convolution(a, b, P.p);
    for (const auto kind : kinds) {
      ++checks;
      if (cyclic_convolution_via_ntt(a, b, P, kind) != want) ++failures;
    }
  }

  std::string kind_names;
  for (const auto kind : kinds) {
    kind_names += kind_names.empty() ? to_string(kind)
                                     : std::string(",") + to_string(kind);
  }
  std::printf(
      "p=%llu N=%u n=%u kinds=%s mode=%s: %llu checks, %llu failures\n",
      (unsigned long long)p, N, n_bits, kind_names.c_str(),
      cfg.exhaustive ? "exhaustive" : "random", (unsigned long long)checks,
      (unsigned long long)failures);
  return failures == 0 ? 0 : 1;
}

// --- bench ---------------------------------------------------------------

struct BenchCliCfg {
  std::vector<std::string> presets;
  uint64_t iters = 100'000;
  uint64_t seed = 12345;
  std::string format = "text";
  bool micro = false;
};

int run_bench_cmd(BenchCliCfg cfg) {
  cfg.seed = env_seed_override(cfg.seed);
  BenchOptions opt;
  if (!cfg.presets.empty()) opt.presets = cfg.presets;
  opt.iters = cfg.iters;
  opt.seed = cfg.seed;
  opt.micro = cfg.micro;

  const BenchReport rep = run_bench(opt);
  if (cfg.format == "json") {
    const nlohmann::json j = rep;
    std::printf("%s\n", j.dump(2).c_str());
  } else if (cfg.format == "csv") {
    std::fputs(to_csv(rep).c_str(), stdout);
  } else {
    std::fputs(to_text(rep).c_str(), stdout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Montgomery/Plantard reduction and NTT kernel toolbox.\n"
      "Exit codes: 0 checks pass, 1 property violation, 2 config/budget "
      "error."};
  app.require_subcommand(1);

  VerifyCfg vc;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "replay the per-algorithm verification suites");
  verify_cmd->add_option("--alg", vc.alg, "algorithm family, or 'all'")
      ->check(CLI::IsMember({"all", "montgomery", "signed-montgomery",
                             "plantard", "modified-plantard", "crt",
                             "butterflies", "transform",
                             "signed-plantard-defect", "signed-plantard"}));
  verify_cmd->add_option("--exhaustive-max-p", vc.opt.exhaustive_max_p,
                         "ceiling for the exhaustive small-p sweeps");
  verify_cmd->add_option("--preset", vc.opt.preset_name,
                         "transform suite preset");
  verify_cmd->add_option("--seed", vc.opt.seed, "seed for random sampling");
  verify_cmd->add_option("--random-cases", vc.opt.random_cases,
                         "samples per production-scale context");
  verify_cmd->add_option("--p", vc.opt.sp_p, "signed-plantard modulus");
  verify_cmd->add_option("--n,--n-bits", vc.opt.sp_n_bits,
                         "signed-plantard radix exponent");
  verify_cmd->add_option("--alpha", vc.opt.sp_alpha,
                         "signed-plantard input slack exponent");
  verify_cmd->add_option("--budget", vc.opt.sp_budget,
                         "max cases for the signed-plantard sweep");
  verify_cmd->add_option("--format", vc.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  CexCfg cc;
  CLI::App* cex_cmd = app.add_subcommand(
      "counterexample",
      "enumerate inputs where the published signed reduction is wrong");
  cex_cmd->add_option("--p", cc.p, "modulus");
  cex_cmd->add_option("--n,--n-bits", cc.n_bits, "radix exponent");
  cex_cmd->add_option("--alpha", cc.alpha, "input slack exponent");
  cex_cmd->add_option("--semantics", cc.semantics,
                      "shift reading(s) to test")
      ->check(CLI::IsMember({"arith", "signed", "both"}));
  cex_cmd->add_option("--random", cc.random,
                      "draw this many seeded samples instead of the "
                      "exhaustive box");
  cex_cmd->add_option("--seed", cc.seed, "seed for --random");
  cex_cmd->add_option("--limit", cc.limit,
                      "max exhaustive cases (0 admits nothing)");
  cex_cmd->add_flag("--expect-known-case", cc.expect_known,
                    "exit 0 only if (W=19, T=-5) shows the documented "
                    "failure under every selected reading");

  NttCfg nc;
  CLI::App* ntt_cmd = app.add_subcommand(
      "ntt", "round-trip, reference-DFT, and convolution checks");
  ntt_cmd->add_option("--preset", nc.preset_name, "named parameter set");
  ntt_cmd->add_option("--p", nc.p, "modulus (overrides preset)");
  ntt_cmd->add_option("--size", nc.size, "transform size N (overrides preset)");
  ntt_cmd->add_option("--n,--n-bits", nc.n_bits,
                      "radix exponent (overrides preset)");
  ntt_cmd->add_option("--kind", nc.kind, "butterfly kind, or 'all'")
      ->check(CLI::IsMember({"all", "ntl", "harvey", "scott", "improved"}));
  ntt_cmd->add_option("--trials", nc.trials, "random inputs to test");
  ntt_cmd->add_option("--seed", nc.seed, "input seed");
  ntt_cmd->add_flag("--exhaustive", nc.exhaustive,
                    "enumerate every input polynomial (tiny contexts only)");

  BenchCliCfg bc;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "time forward transforms per kind");
  bench_cmd->add_option("--preset", bc.presets,
                        "parameter set(s); repeatable (default kyber256, "
                        "falcon512, falcon1024)");
  bench_cmd->add_option("--iters", bc.iters, "timed iterations per point");
  bench_cmd->add_option("--seed", bc.seed, "input seed");
  bench_cmd->add_option("--format", bc.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  bench_cmd->add_flag("--micro", bc.micro,
                      "time batches of isolated butterfly calls instead of "
                      "whole transforms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify_cmd->parsed()) return run_verify(vc);
    if (cex_cmd->parsed()) return run_counterexample(cc);
    if (ntt_cmd->parsed()) return run_ntt(nc);
    if (bench_cmd->parsed()) return run_bench_cmd(bc);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
