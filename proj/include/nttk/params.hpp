#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nttk/butterfly.hpp"
#include "nttk/int_util.hpp"
#include "nttk/reduction.hpp"

// Transform parameter bundles: primitive root search, validation with
// every violated bound reported, the named parameter presets, and the
// per-kind twiddle tables in driver access order.
//
// Twiddle schedules. The forward transform runs natural-order input to
// bit-reversed output. The ntl/harvey/scott kernels compute
// (X + Y, w*(X - Y)), which matches the decimation-in-frequency split, so
// their forward tables hold the per-index twiddles w^(j * N/(2*len)), j in
// [0, len), for len = N/2 down to 1. The improved CT kernel computes
// (X + w*Y, X - w*Y), which matches the evaluation-tree split, so its
// forward table holds one twiddle per block: w^(len * bitrev(b)) in the
// same layer order. Every inverse runs the merge tree bottom up
// (len = 1 up to N/2) with one twiddle per block, w^(-len * bitrev(b)),
// and a separate final N^{-1} pass.

namespace nttk {

// Smallest w (by value) of multiplicative order exactly N mod p.
// N must be a power of two dividing p - 1.
[[nodiscard]] inline uint64_t find_primitive_root(uint64_t p, uint32_t N) {
  NTTK_REQUIRE(p >= 3 && (p & 1) != 0, "find_primitive_root: p odd, >= 3");
  NTTK_REQUIRE(N >= 1 && is_power_of_two(N),
               "find_primitive_root: N must be a power of two");
  NTTK_REQUIRE((p - 1) % N == 0, "find_primitive_root: N must divide p - 1");
  if (N == 1) return 1;
  for (uint64_t w = 2; w < p; ++w) {
    if (pow_mod(w, N, p) == 1 && pow_mod(w, N / 2, p) != 1) {
      return w;
    }
  }
  throw contract_violation("find_primitive_root: no element of order " +
                           std::to_string(N) + " mod " + std::to_string(p));
}

// Plain twiddle sequences in driver access order. Exposed so tests can
// decode the encoded tables back against them.
[[nodiscard]] inline std::vector<uint64_t> dif_forward_plain_twiddles(
    uint32_t N, uint64_t omega, uint64_t p) {
  std::vector<uint64_t> out;
  out.reserve(N - 1);
  for (uint32_t len = N / 2; len >= 1; len /= 2) {
    const uint32_t step = N / (2 * len);
    for (uint32_t j = 0; j < len; ++j) {
      out.push_back(pow_mod(omega, uint64_t(j) * step, p));
    }
  }
  return out;
}

[[nodiscard]] inline std::vector<uint64_t> ct_forward_plain_twiddles(
    uint32_t N, uint64_t omega, uint64_t p) {
  std::vector<uint64_t> out;
  out.reserve(N - 1);
  for (uint32_t len = N / 2; len >= 1; len /= 2) {
    const uint32_t blocks = N / (2 * len);
    const unsigned lvl = floor_log2(blocks);
    for (uint32_t b = 0; b < blocks; ++b) {
      out.push_back(pow_mod(omega, uint64_t(len) * bit_reverse(b, lvl), p));
    }
  }
  return out;
}

[[nodiscard]] inline std::vector<uint64_t> gs_inverse_plain_twiddles(
    uint32_t N, uint64_t omega, uint64_t p) {
  std::vector<uint64_t> out;
  out.reserve(N - 1);
  for (uint32_t len = 1; len < N; len *= 2) {
    const uint32_t blocks = N / (2 * len);
    const unsigned lvl = floor_log2(blocks);
    for (uint32_t b = 0; b < blocks; ++b) {
      // w^{-e} computed as w^{N-e}; exponent 0 stays 0.
      const uint64_t e = uint64_t(len) * bit_reverse(b, lvl) % N;
      out.push_back(pow_mod(omega, e == 0 ? 0 : N - e, p));
    }
  }
  return out;
}

struct NtlTwiddle {
  uint64_t w = 0;       // plain twiddle in (0, p)
  uint64_t w_quot = 0;  // floor(w * 2^n / p)
};

struct ForwardTables {
  std::vector<NtlTwiddle> dif_ntl;     // per-index schedule
  std::vector<uint64_t> dif_mont;      // per-index schedule, w*2^n mod p
  std::vector<uint64_t> ct_plantard;   // per-block schedule, w*(-2^{2n}) mod p
};

struct InverseTables {
  std::vector<NtlTwiddle> gs_ntl;      // per-block schedule
  std::vector<uint64_t> gs_mont;
  std::vector<uint64_t> gs_plantard;
};

struct NttParams {
  uint32_t p = 0;
  uint32_t size = 0;      // N, power of two
  unsigned log2_size = 0; // ell
  unsigned n_bits = 0;    // radix exponent
  uint64_t omega = 0;     // order-N root, smallest by value
  uint64_t omega_inv = 0;
  uint64_t n_inv = 0;       // N^{-1} mod p
  uint64_t n_inv_hat = 0;   // N^{-1} in the Plantard encoding
  ReductionContext ctx;     // alpha = 0, ell = log2_size
  ScottConfig scott;
  ForwardTables fwd;
  InverseTables inv;
  std::vector<ButterflyKind> kinds;

  [[nodiscard]] bool has(ButterflyKind k) const {
    for (const auto kind : kinds) {
      if (kind == k) return true;
    }
    return false;
  }
};

[[nodiscard]] inline std::vector<ButterflyKind> all_butterfly_kinds() {
  return {ButterflyKind::ntl, ButterflyKind::harvey, ButterflyKind::scott,
          ButterflyKind::improved};
}

// Builds a validated parameter bundle. Collects and reports every violated
// precondition at once rather than failing on the first.
[[nodiscard]] inline NttParams build_params(
    uint64_t p, uint32_t N, unsigned n_bits,
    std::vector<ButterflyKind> kinds = all_butterfly_kinds()) {
  std::vector<std::string> faults;
  const auto fault = [&faults](std::string msg) {
    faults.push_back(std::move(msg));
  };

  if (n_bits < 2 || n_bits > 32) fault("word size n must be in [2, 32]");
  if (p < 3 || (p & 1) == 0) fault("p must be odd and >= 3");
  else if (!is_probable_prime(p)) fault("p must be prime");
  if (N < 2 || !is_power_of_two(N) || N > (uint32_t(1) << 20)) {
    fault("N must be a power of two in [2, 2^20]");
  }
  if (kinds.empty()) fault("at least one butterfly kind must be requested");

  unsigned ell = 0;
  if (faults.empty()) {
    ell = floor_log2(N);
    if ((p - 1) % N != 0) {
      fault("N must divide p - 1 (p=" + std::to_string(p) +
            ", N=" + std::to_string(N) + ")");
    }
    if (ell >= n_bits) fault("word size n must exceed log2(N)");
    if (n_bits <= 32 && p >= (uint64_t(1) << n_bits)) {
      fault("p must be < 2^n");
    }
  }
  if (!faults.empty()) {
    std::string joined = "build_params:";
    for (const auto& f : faults) joined += "\n  - " + f;
    throw contract_violation(joined);
  }

  NttParams params;
  params.p = static_cast<uint32_t>(p);
  params.size = N;
  params.log2_size = ell;
  params.n_bits = n_bits;
  params.kinds = std::move(kinds);
  params.ctx = make_reduction_context(p, n_bits, /*alpha=*/0, /*ell=*/ell);
  params.omega = find_primitive_root(p, N);
  params.omega_inv = static_cast<uint64_t>(mod_inverse(params.omega, p));
  params.n_inv = static_cast<uint64_t>(mod_inverse(N % p, p));

  const auto& ctx = params.ctx;
  for (const auto kind : params.kinds) {
    switch (kind) {
      case ButterflyKind::ntl:
        if (uint64_t(2) * p >= ctx.beta) {
          fault("ntl: p=" + std::to_string(p) +
                " violates 2p < 2^n (n=" + std::to_string(n_bits) + ")");
        }
        break;
      case ButterflyKind::harvey:
        if (uint64_t(4) * p >= ctx.beta) {
          fault("harvey: p=" + std::to_string(p) +
                " violates 4p < 2^n (n=" + std::to_string(n_bits) + ")");
        }
        break;
      case ButterflyKind::scott:
        // Some L <= N with 4*N*p < 2^n * L exists iff L = N works.
        if (u128(4) * p >= ctx.beta) {
          fault("scott: p=" + std::to_string(p) +
                " violates 4*N*p < 2^n * L for every L <= N");
        }
        break;
      case ButterflyKind::improved:
        if (!ctx.fits_lazy_plantard_bound()) {
          fault("improved: p=" + std::to_string(p) +
                " violates p < 2^{n-ell-2} = " +
                std::to_string(
                    n_bits >= ell + 2
                        ? (uint64_t(1) << (n_bits - ell - 2))
                        : 0) +
                " (n=" + std::to_string(n_bits) +
                ", ell=" + std::to_string(ell) + ")");
        }
        break;
    }
  }
  if (!faults.empty()) {
    std::string joined = "build_params:";
    for (const auto& f : faults) joined += "\n  - " + f;
    throw contract_violation(joined);
  }

  if (params.has(ButterflyKind::scott)) {
    params.scott = make_scott_config(N, ctx);
  }

  const bool wants_dif = params.has(ButterflyKind::ntl) ||
                         params.has(ButterflyKind::harvey) ||
                         params.has(ButterflyKind::scott);

  if (wants_dif) {
    const auto fwd_plain = dif_forward_plain_twiddles(N, params.omega, p);
    for (const uint64_t w : fwd_plain) {
      if (params.has(ButterflyKind::ntl)) {
        params.fwd.dif_ntl.push_back(
            {w, static_cast<uint64_t>((u128(w) << n_bits) / p)});
      }
      if (params.has(ButterflyKind::harvey) ||
          params.has(ButterflyKind::scott)) {
        params.fwd.dif_mont.push_back(to_montgomery_domain(w, ctx));
      }
    }
  }
  if (params.has(ButterflyKind::improved)) {
    const auto fwd_plain = ct_forward_plain_twiddles(N, params.omega, p);
    for (const uint64_t w : fwd_plain) {
      params.fwd.ct_plantard.push_back(to_plantard_domain(w, ctx));
    }
    params.n_inv_hat = to_plantard_domain(params.n_inv, ctx);
  }

  const auto inv_plain = gs_inverse_plain_twiddles(N, params.omega, p);
  for (const uint64_t w : inv_plain) {
    if (params.has(ButterflyKind::ntl)) {
      params.inv.gs_ntl.push_back(
          {w, static_cast<uint64_t>((u128(w) << n_bits) / p)});
    }
    if (params.has(ButterflyKind::harvey) ||
        params.has(ButterflyKind::scott)) {
      params.inv.gs_mont.push_back(to_montgomery_domain(w, ctx));
    }
    if (params.has(ButterflyKind::improved)) {
      params.inv.gs_plantard.push_back(to_plantard_domain(w, ctx));
    }
  }
  return params;
}

// Named parameter points. The three production-scale pairs appear under
// every scheme name they serve; toy13 keeps every path exhaustively
// testable.
struct PresetSpec {
  const char* name;
  uint32_t p;
  uint32_t size;
  unsigned n_bits;
};

[[nodiscard]] inline const std::vector<PresetSpec>& preset_table() {
  static const std::vector<PresetSpec> table = {
      {"kyber256", 7681, 256, 32},    {"kcl256", 7681, 256, 32},
      {"newhope512", 12289, 512, 32}, {"falcon512", 12289, 512, 32},
      {"remblem512", 12289, 512, 32}, {"newhope1024", 12289, 1024, 32},
      {"falcon1024", 12289, 1024, 32}, {"hila5-1024", 12289, 1024, 32},
      {"toy13", 13, 4, 8},
  };
  return table;
}

[[nodiscard]] inline const PresetSpec& preset_spec(const std::string& name) {
  for (const auto& spec : preset_table()) {
    if (name == spec.name) return spec;
  }
  std::string known;
  for (const auto& spec : preset_table()) {
    known += known.empty() ? spec.name : std::string(", ") + spec.name;
  }
  throw contract_violation("unknown preset '" + name + "' (known: " + known +
                           ")");
}

[[nodiscard]] inline NttParams preset(const std::string& name) {
  const PresetSpec& spec = preset_spec(name);
  return build_params(spec.p, spec.size, spec.n_bits);
}

}  // namespace nttk
