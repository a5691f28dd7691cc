#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#if __has_include(<sys/utsname.h>)
#include <sys/utsname.h>
#endif

#include "json.hpp"
#include "nttk/butterfly.hpp"
#include "nttk/int_util.hpp"
#include "nttk/params.hpp"
#include "nttk/transform.hpp"

// Timing harness for the butterfly kernels. Two modes:
//
//   transform  per-iteration wall time of one in-place forward transform
//              over a rotating pool of precomputed canonical inputs; the
//              input copy happens outside the timed region
//   micro      wall time of a batch of straight-line kernel calls over
//              precomputed in-range operands, no feedback between calls;
//              mean_us is per batch, not per call
//
// Reports serialize to JSON (schema 1), CSV, and plain text. Timing
// fields are the only nondeterministic part of a report.

namespace nttk {

template <class T>
inline void do_not_optimize(T& value) {
#if defined(__clang__) || defined(__GNUC__)
  asm volatile("" : "+m,r"(value) : : "memory");
#else
  volatile T* sink = &value;
  (void)sink;
#endif
}

struct MachineInfo {
  std::string os;
  std::string cpu;
  std::string compiler;
  std::string flags;

  friend bool operator==(const MachineInfo&, const MachineInfo&) = default;
};

[[nodiscard]] inline MachineInfo detect_machine() {
  MachineInfo m;
#if __has_include(<sys/utsname.h>)
  utsname u{};
  if (uname(&u) == 0) {
    m.os = std::string(u.sysname) + " " + u.release + " " + u.machine;
  }
#endif
  if (m.os.empty()) m.os = "unknown";

  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        const auto start = line.find_first_not_of(" \t", colon + 1);
        if (start != std::string::npos) m.cpu = line.substr(start);
      }
      break;
    }
  }
  if (m.cpu.empty()) m.cpu = "unknown";

#if defined(__clang__)
  m.compiler = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  m.compiler = std::string("gcc ") + __VERSION__;
#else
  m.compiler = "unknown";
#endif

#ifdef NTTK_BUILD_FLAGS
  m.flags = NTTK_BUILD_FLAGS;
#else
  m.flags = "";
#endif
  return m;
}

struct BenchResult {
  std::string preset;
  ButterflyKind kind = ButterflyKind::ntl;
  uint64_t iters = 0;
  double mean_us = 0.0;
  double std_us = 0.0;

  friend bool operator==(const BenchResult&, const BenchResult&) = default;
};

// Percent reduction of `kind` mean time relative to `baseline`.
struct GainEntry {
  std::string preset;
  ButterflyKind kind = ButterflyKind::ntl;
  ButterflyKind baseline = ButterflyKind::ntl;
  double gain_percent = 0.0;

  friend bool operator==(const GainEntry&, const GainEntry&) = default;
};

struct BenchOptions {
  std::vector<std::string> presets{"kyber256", "falcon512", "falcon1024"};
  uint64_t iters = 100'000;
  uint64_t seed = 12345;
  bool micro = false;
  size_t pool_size = 64;  // transform mode: rotating input polynomials
  size_t batch = 4096;    // micro mode: kernel calls per timed sample
};

struct BenchReport {
  int schema = 1;
  std::string mode = "transform";
  uint64_t iters = 0;
  uint64_t seed = 0;
  MachineInfo machine;
  std::vector<BenchResult> results;
  std::vector<GainEntry> gains;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

[[nodiscard]] inline double gain_percent(double baseline_mean_us,
                                         double kind_mean_us) {
  NTTK_REQUIRE(baseline_mean_us > 0.0, "gain_percent: baseline must be > 0");
  return (baseline_mean_us - kind_mean_us) / baseline_mean_us * 100.0;
}

// All later-over-earlier pairs in the canonical kind order, per preset:
// six entries when all four kinds were measured.
[[nodiscard]] inline std::vector<GainEntry> pairwise_gains(
    const std::vector<BenchResult>& results) {
  std::vector<std::string> order;
  for (const auto& r : results) {
    if (std::find(order.begin(), order.end(), r.preset) == order.end()) {
      order.push_back(r.preset);
    }
  }
  const auto kinds = all_butterfly_kinds();
  std::vector<GainEntry> out;
  for (const auto& preset_name : order) {
    double mean[4] = {};
    bool have[4] = {};
    for (const auto& r : results) {
      if (r.preset == preset_name) {
        mean[static_cast<size_t>(r.kind)] = r.mean_us;
        have[static_cast<size_t>(r.kind)] = true;
      }
    }
    for (size_t b = 0; b < kinds.size(); ++b) {
      for (size_t k = b + 1; k < kinds.size(); ++k) {
        if (have[b] && have[k]) {
          out.push_back({preset_name, kinds[k], kinds[b],
                         gain_percent(mean[b], mean[k])});
        }
      }
    }
  }
  return out;
}

namespace detail {

struct SampleStats {
  double mean = 0.0;
  double std_dev = 0.0;
};

[[nodiscard]] inline SampleStats summarize(const std::vector<double>& xs) {
  SampleStats s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (const double x : xs) sum += x;
  s.mean = sum / double(xs.size());
  if (xs.size() > 1) {
    double sq = 0.0;
    for (const double x : xs) sq += (x - s.mean) * (x - s.mean);
    s.std_dev = std::sqrt(sq / double(xs.size() - 1));
  }
  return s;
}

[[nodiscard]] inline BenchResult bench_transform_point(
    const std::string& preset_name, const NttParams& P, ButterflyKind kind,
    uint64_t iters, uint64_t seed, size_t pool_size) {
  Rng rng(seed);
  std::vector<Polynomial> pool(pool_size, Polynomial(P.size));
  for (auto& f : pool) {
    for (auto& c : f) c = rng.below(P.p);
  }

  std::vector<uint64_t> work(P.size);
  const uint64_t warmup = std::min<uint64_t>(1024, iters / 10 + 16);
  for (uint64_t i = 0; i < warmup; ++i) {
    std::copy(pool[i % pool_size].begin(), pool[i % pool_size].end(),
              work.begin());
    ntt_forward_inplace(work, P, kind);
    do_not_optimize(work);
  }

  std::vector<double> samples;
  samples.reserve(iters);
  for (uint64_t i = 0; i < iters; ++i) {
    const Polynomial& src = pool[i % pool_size];
    std::copy(src.begin(), src.end(), work.begin());
    const auto t0 = std::chrono::steady_clock::now();
    ntt_forward_inplace(work, P, kind);
    do_not_optimize(work);
    const auto t1 = std::chrono::steady_clock::now();
    samples.push_back(
        std::chrono::duration<double, std::micro>(t1 - t0).count());
  }
  const SampleStats s = summarize(samples);
  return {preset_name, kind, iters, s.mean, s.std_dev};
}

[[nodiscard]] inline BenchResult bench_micro_point(
    const std::string& preset_name, const NttParams& P, ButterflyKind kind,
    uint64_t batches, uint64_t seed, size_t batch) {
  const ReductionContext& ctx = P.ctx;
  Rng rng(seed);

  constexpr size_t kTwiddles = 64;
  std::vector<uint64_t> tw(kTwiddles), tw_quot(kTwiddles);
  for (size_t i = 0; i < kTwiddles; ++i) {
    const uint64_t w = 1 + rng.below(ctx.p - 1);
    switch (kind) {
      case ButterflyKind::ntl:
        tw[i] = w;
        tw_quot[i] = static_cast<uint64_t>((u128(w) << ctx.n_bits) / ctx.p);
        break;
      case ButterflyKind::harvey:
      case ButterflyKind::scott:
        tw[i] = to_montgomery_domain(w, ctx);
        break;
      case ButterflyKind::improved:
        tw[i] = to_plantard_domain(w, ctx);
        break;
    }
  }

  const uint64_t in_bound =
      (kind == ButterflyKind::harvey || kind == ButterflyKind::scott)
          ? 2 * ctx.p
          : ctx.p;
  std::vector<uint64_t> xs(batch), ys(batch), ox(batch), oy(batch);
  for (size_t j = 0; j < batch; ++j) {
    xs[j] = rng.below(in_bound);
    ys[j] = rng.below(in_bound);
  }
  const uint64_t scott_offset =
      uint64_t(P.size / P.scott.lazy_level) * ctx.p;

  const auto run_batch = [&] {
    switch (kind) {
      case ButterflyKind::ntl:
        for (size_t j = 0; j < batch; ++j) {
          const auto out =
              ntl_core(xs[j], ys[j], tw[j % kTwiddles], tw_quot[j % kTwiddles],
                       ctx.p, ctx.n_bits, ctx.beta_mask);
          ox[j] = out.x;
          oy[j] = out.y;
        }
        break;
      case ButterflyKind::harvey:
        for (size_t j = 0; j < batch; ++j) {
          const auto out = harvey_core(xs[j], ys[j], tw[j % kTwiddles],
                                       ctx.p_inv_beta, ctx.p, ctx.n_bits,
                                       ctx.beta_mask);
          ox[j] = out.x;
          oy[j] = out.y;
        }
        break;
      case ButterflyKind::scott:
        for (size_t j = 0; j < batch; ++j) {
          const auto out = scott_core(xs[j], ys[j], tw[j % kTwiddles],
                                      scott_offset, ctx.neg_p_inv_beta, ctx.p,
                                      ctx.n_bits, ctx.beta_mask);
          ox[j] = out.x;
          oy[j] = out.y;
        }
        break;
      case ButterflyKind::improved:
        for (size_t j = 0; j < batch; ++j) {
          const auto out = improved_ct_core<uint64_t>(
              xs[j], ys[j], tw[j % kTwiddles], ctx.mu, ctx.p, ctx.n_bits,
              ctx.r2n_mask);
          ox[j] = out.x;
          oy[j] = out.y;
        }
        break;
    }
  };

  const uint64_t warmup = std::min<uint64_t>(64, batches / 10 + 4);
  for (uint64_t s = 0; s < warmup; ++s) {
    run_batch();
    do_not_optimize(ox);
    do_not_optimize(oy);
  }

  std::vector<double> samples;
  samples.reserve(batches);
  for (uint64_t s = 0; s < batches; ++s) {
    const auto t0 = std::chrono::steady_clock::now();
    run_batch();
    do_not_optimize(ox);
    do_not_optimize(oy);
    const auto t1 = std::chrono::steady_clock::now();
    samples.push_back(
        std::chrono::duration<double, std::micro>(t1 - t0).count());
  }
  const SampleStats st = summarize(samples);
  return {preset_name, kind, batches, st.mean, st.std_dev};
}

}  // namespace detail

[[nodiscard]] inline BenchReport run_bench(const BenchOptions& opt) {
  NTTK_REQUIRE(opt.iters >= 1, "bench: iters must be at least 1");
  NTTK_REQUIRE(!opt.presets.empty(), "bench: no presets selected");
  NTTK_REQUIRE(opt.pool_size >= 1 && opt.batch >= 1,
               "bench: pool and batch must be nonempty");

  BenchReport rep;
  rep.mode = opt.micro ? "micro" : "transform";
  rep.iters = opt.iters;
  rep.seed = opt.seed;
  rep.machine = detect_machine();

  uint64_t point = 0;
  for (const auto& name : opt.presets) {
    const NttParams P = preset(name);
    for (const auto kind : all_butterfly_kinds()) {
      const uint64_t point_seed = opt.seed + 0x9e3779b97f4a7c15ull * ++point;
      rep.results.push_back(
          opt.micro ? detail::bench_micro_point(name, P, kind, opt.iters,
                                                point_seed, opt.batch)
                    : detail::bench_transform_point(name, P, kind, opt.iters,
                                                    point_seed,
                                                    opt.pool_size));
    }
  }
  rep.gains = pairwise_gains(rep.results);
  return rep;
}

// --- serialization ---------------------------------------------------------

inline void to_json(nlohmann::json& j, const MachineInfo& m) {
  j = nlohmann::json{{"os", m.os},
                     {"cpu", m.cpu},
                     {"compiler", m.compiler},
                     {"flags", m.flags}};
}

inline void from_json(const nlohmann::json& j, MachineInfo& m) {
  j.at("os").get_to(m.os);
  j.at("cpu").get_to(m.cpu);
  j.at("compiler").get_to(m.compiler);
  j.at("flags").get_to(m.flags);
}

inline void to_json(nlohmann::json& j, const BenchResult& r) {
  j = nlohmann::json{{"preset", r.preset},
                     {"kind", to_string(r.kind)},
                     {"iters", r.iters},
                     {"mean_us", r.mean_us},
                     {"std_us", r.std_us}};
}

inline void from_json(const nlohmann::json& j, BenchResult& r) {
  j.at("preset").get_to(r.preset);
  r.kind = butterfly_kind_from_string(j.at("kind").get<std::string>());
  j.at("iters").get_to(r.iters);
  j.at("mean_us").get_to(r.mean_us);
  j.at("std_us").get_to(r.std_us);
}

inline void to_json(nlohmann::json& j, const GainEntry& g) {
  j = nlohmann::json{{"preset", g.preset},
                     {"kind", to_string(g.kind)},
                     {"baseline", to_string(g.baseline)},
                     {"gain_percent", g.gain_percent}};
}

inline void from_json(const nlohmann::json& j, GainEntry& g) {
  j.at("preset").get_to(g.preset);
  g.kind = butterfly_kind_from_string(j.at("kind").get<std::string>());
  g.baseline = butterfly_kind_from_string(j.at("baseline").get<std::string>());
  j.at("gain_percent").get_to(g.gain_percent);
}

inline void to_json(nlohmann::json& j, const BenchReport& r) {
  j = nlohmann::json{{"schema", r.schema},   {"mode", r.mode},
                     {"iters", r.iters},     {"seed", r.seed},
                     {"machine", r.machine}, {"results", r.results},
                     {"gains", r.gains}};
}

inline void from_json(const nlohmann::json& j, BenchReport& r) {
  j.at("schema").get_to(r.schema);
  j.at("mode").get_to(r.mode);
  j.at("iters").get_to(r.iters);
  j.at("seed").get_to(r.seed);
  j.at("machine").get_to(r.machine);
  j.at("results").get_to(r.results);
  j.at("gains").get_to(r.gains);
}

[[nodiscard]] inline std::string to_csv(const BenchReport& rep) {
  std::string out = "preset,kind,iters,mean_us,std_us\n";
  char buf[192];
  for (const auto& r : rep.results) {
    std::snprintf(buf, sizeof buf, "%s,%s,%llu,%.4f,%.4f\n", r.preset.c_str(),
                  to_string(r.kind),
                  static_cast<unsigned long long>(r.iters), r.mean_us,
                  r.std_us);
    out += buf;
  }
  return out;
}

[[nodiscard]] inline std::string to_text(const BenchReport& rep) {
  std::ostringstream os;
  os << "mode " << rep.mode << ", iters " << rep.iters << ", seed "
     << rep.seed << "\n"
     << rep.machine.os << "; " << rep.machine.cpu << "; "
     << rep.machine.compiler << "\n\n";
  os << std::left << std::setw(12) << "preset" << std::setw(10) << "kind"
     << std::right << std::setw(10) << "iters" << std::setw(12) << "mean_us"
     << std::setw(12) << "std_us" << "\n";
  os << std::fixed << std::setprecision(4);
  for (const auto& r : rep.results) {
    os << std::left << std::setw(12) << r.preset << std::setw(10)
       << to_string(r.kind) << std::right << std::setw(10) << r.iters
       << std::setw(12) << r.mean_us << std::setw(12) << r.std_us << "\n";
  }
  if (!rep.gains.empty()) {
    os << "\ngain in mean time, later kind vs earlier baseline:\n";
    os << std::setprecision(2);
    for (const auto& g : rep.gains) {
      os << "  " << std::left << std::setw(12) << g.preset
         << to_string(g.kind) << " vs " << to_string(g.baseline) << ": "
         << std::showpos << g.gain_percent << std::noshowpos << "%\n";
    }
  }
  return os.str();
}

}  // namespace nttk
