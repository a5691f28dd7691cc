#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "nttk/int_util.hpp"
#include "nttk/reduction.hpp"

// The butterfly kernels the transform drivers are built from. Four
// families, distinguished by how the twiddle is pre-encoded and how much
// laziness the inputs may carry:
//
//   ntl       plain twiddle W plus the precomputed quotient floor(W*2^n/p);
//             canonical inputs and outputs, corrections built in
//   harvey    Montgomery twiddle W*2^n mod p; inputs/outputs lazy in
//             [0, 2p); the X correction is a branchless select here and a
//             branch in the _ref twin, which must agree bit for bit
//   scott     Montgomery twiddle; inputs lazy up to (N/L)*p, X output is
//             the raw sum, Y output lands in [0, 2p)
//   improved  Plantard twiddle w*(-2^{2n}) mod p; branch-free CT and GS
//             forms built on modified_plantard_core
//
// Each checked entry point validates its documented input ranges; the
// _core templates are the straight-line versions the drivers inline.

namespace nttk {

enum class ButterflyKind { ntl, harvey, scott, improved };

[[nodiscard]] constexpr const char* to_string(ButterflyKind k) {
  switch (k) {
    case ButterflyKind::ntl: return "ntl";
    case ButterflyKind::harvey: return "harvey";
    case ButterflyKind::scott: return "scott";
    case ButterflyKind::improved: return "improved";
  }
  return "?";
}

[[nodiscard]] inline ButterflyKind butterfly_kind_from_string(
    std::string_view name) {
  if (name == "ntl") return ButterflyKind::ntl;
  if (name == "harvey") return ButterflyKind::harvey;
  if (name == "scott") return ButterflyKind::scott;
  if (name == "improved") return ButterflyKind::improved;
  throw contract_violation("unknown butterfly kind \"" + std::string(name) +
                           "\" (ntl, harvey, scott, improved)");
}

struct ButterflyOut {
  uint64_t x = 0;
  uint64_t y = 0;
};

// --- ntl -----------------------------------------------------------------

// Straight-line body shared by the checked entry point and the drivers.
[[nodiscard]] constexpr ButterflyOut ntl_core(uint64_t X, uint64_t Y,
                                              uint64_t W, uint64_t W_quot,
                                              uint64_t p, unsigned n_bits,
                                              uint64_t beta_mask) {
  uint64_t x1 = X + Y;
  if (x1 >= p) x1 -= p;
  const uint64_t t = X >= Y ? X - Y : X + p - Y;
  const uint64_t q = (W_quot * t) >> n_bits;
  uint64_t y1 = (W * t - q * p) & beta_mask;
  if (y1 >= p) y1 -= p;
  return {x1, y1};
}

// Canonical butterfly with a floor-quotient twiddle:
//   X' = X + Y mod p,  Y' = W * (X - Y) mod p
// Requires p < 2^{n-1}, 0 < W < p, W_quot = floor(W * 2^n / p), X, Y < p.
[[nodiscard]] inline ButterflyOut ntl_butterfly(uint64_t X, uint64_t Y,
                                                uint64_t W, uint64_t W_quot,
                                                const ReductionContext& ctx) {
  const uint64_t p = ctx.p;
  NTTK_REQUIRE(uint64_t(p) * 2 < ctx.beta, "ntl_butterfly: requires 2p < 2^n");
  NTTK_REQUIRE(0 < W && W < p, "ntl_butterfly: W out of (0, p)");
  NTTK_REQUIRE(W_quot == (u128(W) << ctx.n_bits) / p,
               "ntl_butterfly: stale W_quot");
  NTTK_REQUIRE(X < p && Y < p, "ntl_butterfly: inputs must be canonical");
  return ntl_core(X, Y, W, W_quot, p, ctx.n_bits, ctx.beta_mask);
}

// --- harvey ----------------------------------------------------------------

// Straight-line body shared by the checked entry point and the drivers.
// The X correction is a masked subtract, not a branch.
[[nodiscard]] constexpr ButterflyOut harvey_core(uint64_t X, uint64_t Y,
                                                 uint64_t w_mont,
                                                 uint64_t mu_beta, uint64_t p,
                                                 unsigned n_bits,
                                                 uint64_t beta_mask) {
  const uint64_t two_p = p + p;
  uint64_t x1 = X + Y;
  x1 -= two_p & (uint64_t(0) - uint64_t(x1 >= two_p));  // branchless select
  const uint64_t t = X + two_p - Y;
  const uint64_t prod = w_mont * t;
  const uint64_t r1 = prod >> n_bits;
  const uint64_t q = (mu_beta * (prod & beta_mask)) & beta_mask;
  const uint64_t h = (q * p) >> n_bits;
  return {x1, r1 + p - h};
}

// Lazy butterfly, everything in [0, 2p):
//   X' = X + Y mod 2p,  Y' = W * (X - Y) mod p + {0, p}
// Requires p < 2^{n-2} and the Montgomery twiddle W_mont = w*2^n mod p.
[[nodiscard]] inline ButterflyOut harvey_butterfly(
    uint64_t X, uint64_t Y, uint64_t W_mont, const ReductionContext& ctx) {
  const uint64_t p = ctx.p;
  NTTK_REQUIRE(uint64_t(p) * 4 < ctx.beta,
               "harvey_butterfly: requires 4p < 2^n");
  NTTK_REQUIRE(0 < W_mont && W_mont < p, "harvey_butterfly: W out of (0, p)");
  NTTK_REQUIRE(X < 2 * p && Y < 2 * p,
               "harvey_butterfly: inputs must be < 2p");
  return harvey_core(X, Y, W_mont, ctx.p_inv_beta, p, ctx.n_bits,
                     ctx.beta_mask);
}

// Branch-based twin of harvey_butterfly; must match it bit for bit.
[[nodiscard]] inline ButterflyOut harvey_butterfly_ref(
    uint64_t X, uint64_t Y, uint64_t W_mont, const ReductionContext& ctx) {
  const uint64_t p = ctx.p;
  NTTK_REQUIRE(uint64_t(p) * 4 < ctx.beta,
               "harvey_butterfly_ref: requires 4p < 2^n");
  NTTK_REQUIRE(0 < W_mont && W_mont < p,
               "harvey_butterfly_ref: W out of (0, p)");
  NTTK_REQUIRE(X < 2 * p && Y < 2 * p,
               "harvey_butterfly_ref: inputs must be < 2p");
  const uint64_t two_p = 2 * p;
  uint64_t x1 = X + Y;
  if (x1 >= two_p) x1 -= two_p;
  const uint64_t t = X + two_p - Y;
  const uint64_t prod = W_mont * t;
  const uint64_t r1 = prod >> ctx.n_bits;
  const uint64_t q = (ctx.p_inv_beta * (prod & ctx.beta_mask)) & ctx.beta_mask;
  const uint64_t h = (q * p) >> ctx.n_bits;
  return {x1, r1 + p - h};
}

// --- scott -----------------------------------------------------------------

// Lazy accumulation plan for the scott kernel. L is the smallest power of
// two with (2N/L)*p < 2^{n-1}; L = 1 means the guard can never be needed
// (the regime every shipped parameter set lives in). The guard predicate
// stands in for the periodic correction the kernel's description leaves
// open; a null guard means it is never applied.
struct ScottConfig {
  uint32_t transform_size = 0;  // N
  uint32_t lazy_level = 0;      // L
  std::function<bool(unsigned layer, size_t block, size_t index)> guard;
};

[[nodiscard]] inline ScottConfig make_scott_config(
    uint32_t N, const ReductionContext& ctx) {
  NTTK_REQUIRE(is_power_of_two(N), "scott config: N must be a power of two");
  for (uint32_t L = 1; L <= N; L *= 2) {
    if (u128(4) * N * ctx.p < u128(ctx.beta) * L) {
      return ScottConfig{N, L, nullptr};
    }
  }
  throw contract_violation(
      "scott config: no lazy level satisfies 4*N*p/L < 2^n for p=" +
      std::to_string(ctx.p));
}

// Straight-line body shared by the checked entry point and the drivers.
// offset must be a multiple of p no smaller than any input.
[[nodiscard]] constexpr ButterflyOut scott_core(uint64_t X, uint64_t Y,
                                                uint64_t W_mont,
                                                uint64_t offset,
                                                uint64_t neg_p_inv_beta,
                                                uint64_t p, unsigned n_bits,
                                                uint64_t beta_mask) {
  const uint64_t x1 = X + Y;
  const uint64_t t = X + offset - Y;
  const uint64_t wt = W_mont * t;
  const uint64_t q = (neg_p_inv_beta * (wt & beta_mask)) & beta_mask;
  const uint64_t sum = wt + q * p;
  return {x1, sum >> n_bits};
}

// Montgomery-twiddle butterfly with an unreduced sum:
//   X' = X + Y,  Y' = W * (X - Y) * 2^{-n} mod p + {0, p}
// Requires p < 2^n * L / (4N) and X, Y < (N/L) * p. When apply_guard is
// set the inputs are reduced mod p first (the injected periodic
// correction); results stay congruent either way.
[[nodiscard]] inline ButterflyOut scott_butterfly(
    uint64_t X, uint64_t Y, uint64_t W_mont, const ReductionContext& ctx,
    const ScottConfig& cfg, bool apply_guard = false) {
  const uint64_t p = ctx.p;
  NTTK_REQUIRE(cfg.lazy_level >= 1 && cfg.transform_size >= cfg.lazy_level,
               "scott_butterfly: malformed config");
  NTTK_REQUIRE(u128(4) * cfg.transform_size * p <
                   u128(ctx.beta) * cfg.lazy_level,
               "scott_butterfly: requires 4*N*p/L < 2^n");
  NTTK_REQUIRE(0 < W_mont && W_mont < p, "scott_butterfly: W out of (0, p)");
  const uint64_t offset =
      uint64_t(cfg.transform_size / cfg.lazy_level) * p;
  NTTK_REQUIRE(X < offset && Y < offset,
               "scott_butterfly: inputs must be < (N/L)*p");

  if (apply_guard) {
    X %= p;
    Y %= p;
  }
  return scott_core(X, Y, W_mont, offset, ctx.neg_p_inv_beta, p, ctx.n_bits,
                    ctx.beta_mask);
}

// --- improved ---------------------------------------------------------------

template <class U>
struct CorePair {
  U x;
  U y;
};

// CT form: X' = X + r, Y' = X - r + p with r = w*Y mod p decoded from the
// Plantard twiddle. Straight-line; no data-dependent control flow.
template <class U>
[[nodiscard]] constexpr CorePair<U> improved_ct_core(U x, U y, U w_hat, U mu,
                                                     U p, unsigned n_bits,
                                                     U r2n_mask) {
  const U r = modified_plantard_core(w_hat, y, mu, p, n_bits, r2n_mask);
  return {x + r, x + p - r};
}

// GS form: X' = X + Y, Y' = w*(X - Y + offset) * (-2^{-2n}) mod p where
// offset = 2^{layer-1} * p keeps the difference non-negative.
// Straight-line; no data-dependent control flow.
template <class U>
[[nodiscard]] constexpr CorePair<U> improved_gs_core(U x, U y, U offset,
                                                     U w_hat, U mu, U p,
                                                     unsigned n_bits,
                                                     U r2n_mask) {
  const U t = x + offset - y;
  return {x + y,
          modified_plantard_core(w_hat, t, mu, p, n_bits, r2n_mask)};
}

// Forward butterfly (X + w*Y, X - w*Y mod p, lazily). Inputs below
// 2^{ell-1} * p, so both outputs stay below input + p (additive-p growth).
[[nodiscard]] inline ButterflyOut improved_ct_butterfly(
    uint64_t X, uint64_t Y, uint64_t W_hat, const ReductionContext& ctx) {
  NTTK_REQUIRE(ctx.fits_lazy_plantard_bound(),
               "improved_ct_butterfly: requires p < 2^{n-ell-2}");
  NTTK_REQUIRE(W_hat < ctx.p, "improved_ct_butterfly: W_hat must be < p");
  const uint64_t input_bound = (uint64_t(ctx.p) << ctx.ell) / 2;
  NTTK_REQUIRE(X < input_bound && Y < input_bound,
               "improved_ct_butterfly: inputs must be < 2^ell * p / 2");
  const auto out = improved_ct_core<uint64_t>(X, Y, W_hat, ctx.mu, ctx.p,
                                              ctx.n_bits, ctx.r2n_mask);
  return {out.x, out.y};
}

// Inverse butterfly (X + Y, w*(X - Y)). At loop depth `layer` (1-based)
// the inputs are below 2^{layer-1} * p; X' stays below 2^layer * p and
// Y' is canonical.
[[nodiscard]] inline ButterflyOut improved_gs_butterfly(
    uint64_t X, uint64_t Y, uint64_t W_hat, const ReductionContext& ctx,
    unsigned layer) {
  NTTK_REQUIRE(ctx.fits_lazy_plantard_bound(),
               "improved_gs_butterfly: requires p < 2^{n-ell-2}");
  NTTK_REQUIRE(layer >= 1 && layer <= ctx.ell,
               "improved_gs_butterfly: layer out of [1, ell]");
  NTTK_REQUIRE(W_hat < ctx.p, "improved_gs_butterfly: W_hat must be < p");
  const uint64_t input_bound = uint64_t(ctx.p) << (layer - 1);
  NTTK_REQUIRE(X < input_bound && Y < input_bound,
               "improved_gs_butterfly: inputs must be < 2^{layer-1} * p");
  const uint64_t offset = uint64_t(ctx.p) << (layer - 1);
  const auto out = improved_gs_core<uint64_t>(X, Y, offset, W_hat, ctx.mu,
                                              ctx.p, ctx.n_bits,
                                              ctx.r2n_mask);
  return {out.x, out.y};
}

}  // namespace nttk
