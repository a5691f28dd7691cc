#pragma once

#include <atomic>
#include <cstdint>
#include <string>

#include "nttk/crt.hpp"
#include "nttk/int_util.hpp"

// Word-level modular reductions against a power-of-two radix 2^n:
//
//   mont_redc             T * 2^{-n} mod p, canonical output
//   signed_mont_redc      A * 2^{-n} mod p, output in (-p, p)
//   plantard_redc         W*T * (-2^{-2n}) mod p with a rarely taken
//                         equality correction
//   signed_plantard_redc  the signed variant exactly as published; it is
//                         wrong on some in-range inputs (see analysis.hpp)
//                         and is kept faithful for study, under both
//                         readings of its ambiguous signed shift
//   modified_plantard_mul W*T * (-2^{-2n}) mod p, branch-free, accepting
//                         lazy T < 2^ell * p
//
// The word size n is a runtime context parameter so that tiny radices stay
// exhaustively testable while n = 32 serves the production parameters.
// All products mod 2^{2n} are evaluated with wrapping 64-bit arithmetic
// and a mask; the high-half extraction is a shift.

namespace nttk {

// How the published signed variant's ambiguous shift is read.
enum class ShiftSemantics {
  arithmetic_floor,  // two's-complement shift, rounds toward -infinity
  signed_floor,      // sgn(x) * floor(|x|/2^s), rounds toward zero
};

[[nodiscard]] constexpr const char* to_string(ShiftSemantics sem) {
  return sem == ShiftSemantics::arithmetic_floor ? "arithmetic-floor"
                                                 : "signed-floor";
}

// Precomputed constants for one (p, n) pair plus the slack exponents used
// by the signed (alpha) and lazy (ell) variants. Construction validates
// the shared requirements; each operation checks its own bound on entry.
struct ReductionContext {
  uint32_t p = 0;
  unsigned n_bits = 0;  // radix exponent, 2 <= n <= 32
  unsigned alpha = 0;   // signed-variant input slack: |W|,|T| <= p * 2^alpha
  unsigned ell = 0;     // lazy-variant input slack: T < 2^ell * p

  uint64_t beta = 0;       // 2^n
  uint64_t beta_mask = 0;  // 2^n - 1
  uint64_t r2n_mask = 0;   // 2^{2n} - 1 (all ones when n = 32)

  uint64_t p_inv_beta = 0;      // p^{-1} mod 2^n
  uint64_t neg_p_inv_beta = 0;  // -p^{-1} mod 2^n; Montgomery's k
  uint64_t mu = 0;              // p^{-1} mod 2^{2n}
  int64_t mu_centered = 0;      // p^{-1} mod +-2^{2n}
  uint64_t beta_mod_p = 0;      // 2^n mod p
  uint64_t r2n_mod_p = 0;       // 2^{2n} mod p

  [[nodiscard]] unsigned two_n() const { return 2 * n_bits; }

  // p * phi < 2^n, checked exactly as 5p^2 < (2^{n+1} - p)^2.
  [[nodiscard]] bool fits_plantard_bound() const {
    const u128 lhs = u128(5) * p * p;
    const u128 d = (u128(1) << (n_bits + 1)) - p;
    return lhs < d * d;
  }
  [[nodiscard]] bool fits_signed_plantard_bound() const {
    return alpha + 1 < n_bits && u128(p) < (u128(1) << (n_bits - alpha - 1));
  }
  [[nodiscard]] bool fits_lazy_plantard_bound() const {
    return ell + 2 < n_bits && u128(p) < (u128(1) << (n_bits - ell - 2));
  }
  [[nodiscard]] bool fits_signed_montgomery_bound() const {
    return u128(2) * p < (u128(1) << n_bits);
  }
};

[[nodiscard]] inline ReductionContext make_reduction_context(
    uint64_t p, unsigned n_bits, unsigned alpha = 0, unsigned ell = 0) {
  NTTK_REQUIRE(n_bits >= 2 && n_bits <= 32,
               "reduction context: word size n must be in [2, 32]");
  NTTK_REQUIRE(p >= 3 && (p & 1) != 0,
               "reduction context: p must be odd and >= 3");
  NTTK_REQUIRE(p < (uint64_t(1) << n_bits),
               "reduction context: p must be < 2^n");
  NTTK_REQUIRE(alpha < n_bits, "reduction context: alpha must be < n");
  NTTK_REQUIRE(ell < n_bits, "reduction context: ell must be < n");

  ReductionContext ctx;
  ctx.p = static_cast<uint32_t>(p);
  ctx.n_bits = n_bits;
  ctx.alpha = alpha;
  ctx.ell = ell;
  ctx.beta = uint64_t(1) << n_bits;
  ctx.beta_mask = ctx.beta - 1;
  const unsigned two_n = 2 * n_bits;
  ctx.r2n_mask = (two_n == 64) ? ~uint64_t(0)
                               : (uint64_t(1) << two_n) - 1;
  ctx.p_inv_beta =
      static_cast<uint64_t>(mod_inverse(p, u128(1) << n_bits));
  ctx.neg_p_inv_beta = (ctx.beta - ctx.p_inv_beta) & ctx.beta_mask;
  ctx.mu = static_cast<uint64_t>(mod_inverse(p, u128(1) << two_n));
  if (two_n == 64) {
    ctx.mu_centered = static_cast<int64_t>(ctx.mu);
  } else {
    const uint64_t half = uint64_t(1) << (two_n - 1);
    ctx.mu_centered = ctx.mu >= half
                          ? static_cast<int64_t>(ctx.mu) -
                                static_cast<int64_t>(uint64_t(1) << two_n)
                          : static_cast<int64_t>(ctx.mu);
  }
  ctx.beta_mod_p = ctx.beta % p;
  ctx.r2n_mod_p = pow_mod(2, two_n, p);
  return ctx;
}

// --- classic Montgomery -----------------------------------------------

// T in [0, p^2) -> T * 2^{-n} mod p in [0, p).
// The exact division (T + m*p) / 2^n is asserted on every call. The final
// correction fires at t >= p: t = p is reachable (any T that is a multiple
// of p lands there), so a strict comparison would leak p itself.
[[nodiscard]] inline uint64_t mont_redc(uint64_t T,
                                        const ReductionContext& ctx) {
  NTTK_REQUIRE(T < uint64_t(ctx.p) * ctx.p, "mont_redc: T must be < p^2");
  const uint64_t m = ((T & ctx.beta_mask) * ctx.neg_p_inv_beta) &
                     ctx.beta_mask;
  const u128 sum = u128(T) + u128(m) * ctx.p;
  NTTK_REQUIRE((sum & ctx.beta_mask) == 0, "mont_redc: inexact division");
  uint64_t t = static_cast<uint64_t>(sum >> ctx.n_bits);
  if (t >= ctx.p) t -= ctx.p;
  return t;
}

// --- signed Montgomery --------------------------------------------------

// A in (-p*2^{n-1}, p*2^{n-1}) -> r = A * 2^{-n} mod p with r in (-p, p).
// Decomposition uses the floor quotient: a1 = floor(A / 2^n), 0 <= a0 < 2^n.
[[nodiscard]] inline int64_t signed_mont_redc(int64_t A,
                                              const ReductionContext& ctx) {
  NTTK_REQUIRE(ctx.fits_signed_montgomery_bound(),
               "signed_mont_redc: requires 2p < 2^n");
  const i128 limit = (i128(ctx.p) << ctx.n_bits) / 2;
  NTTK_REQUIRE(-limit < A && A < limit,
               "signed_mont_redc: A out of (-p*2^{n-1}, p*2^{n-1})");

  const int64_t a1 = A >> ctx.n_bits;
  const uint64_t a0 = static_cast<uint64_t>(A) & ctx.beta_mask;
  const uint64_t m_u = (a0 * ctx.p_inv_beta) & ctx.beta_mask;
  const int64_t m = m_u >= ctx.beta / 2
                        ? static_cast<int64_t>(m_u) -
                              static_cast<int64_t>(ctx.beta)
                        : static_cast<int64_t>(m_u);
  NTTK_REQUIRE(((static_cast<uint64_t>(A) -
                 static_cast<uint64_t>(m * int64_t(ctx.p))) &
                ctx.beta_mask) == 0,
               "signed_mont_redc: inexact low half");
  const int64_t t = (m * static_cast<int64_t>(ctx.p)) >> ctx.n_bits;
  const int64_t r = a1 - t;
  NTTK_REQUIRE(-int64_t(ctx.p) < r && r < int64_t(ctx.p),
               "signed_mont_redc: result escaped (-p, p)");
  return r;
}

// --- Plantard-style reductions ------------------------------------------

// Counts how often plantard_redc's r == p corner has actually fired; the
// branch has never been observed to trigger in exhaustive small-radix
// scans, so any nonzero count is worth reporting.
inline std::atomic<uint64_t>& plantard_correction_fires() {
  static std::atomic<uint64_t> count{0};
  return count;
}

// W, T in [0, p] -> W*T*(-2^{-2n}) mod p in [0, p). Requires p*phi < 2^n.
[[nodiscard]] inline uint64_t plantard_redc(uint64_t W, uint64_t T,
                                            const ReductionContext& ctx) {
  NTTK_REQUIRE(ctx.fits_plantard_bound(),
               "plantard_redc: requires p*phi < 2^n");
  NTTK_REQUIRE(W <= ctx.p && T <= ctx.p, "plantard_redc: inputs exceed p");
  const uint64_t h = ((W * T) * ctx.mu) & ctx.r2n_mask;
  const uint64_t r =
      (((h >> ctx.n_bits) + 1) * ctx.p) >> ctx.n_bits;
  if (r == ctx.p) {
    plantard_correction_fires().fetch_add(1, std::memory_order_relaxed);
    return 0;
  }
  return r;
}

// Shift rounding toward zero: sgn(x) * floor(|x| / 2^s).
[[nodiscard]] constexpr int64_t shift_toward_zero(int64_t x, unsigned s) {
  if (x >= 0) return static_cast<int64_t>(static_cast<uint64_t>(x) >> s);
  return -static_cast<int64_t>(static_cast<uint64_t>(-x) >> s);
}

// Shift rounding toward -infinity (two's-complement arithmetic shift).
[[nodiscard]] constexpr int64_t shift_toward_neg_inf(int64_t x, unsigned s) {
  return x >> s;
}

[[nodiscard]] constexpr int64_t apply_shift(int64_t x, unsigned s,
                                            ShiftSemantics sem) {
  return sem == ShiftSemantics::arithmetic_floor ? shift_toward_neg_inf(x, s)
                                                 : shift_toward_zero(x, s);
}

// The signed variant exactly as published, requiring |W|, |T| <= p * 2^alpha
// and p < 2^{n - alpha - 1}:
//
//   r = [([ (W*T*mu mod +-2^{2n}) / 2^n ] + 2^alpha) * p / 2^n]
//
// where [.] is the ambiguous signed shift, applied per `sem`. The intended
// value is W*T*(-2^{-2n}) mod p, but under BOTH readings the result
// disagrees with that value on some in-range inputs; analysis.hpp
// enumerates them. Kept verbatim so that the defect itself is testable.
[[nodiscard]] inline int64_t signed_plantard_redc(int64_t W, int64_t T,
                                                  const ReductionContext& ctx,
                                                  ShiftSemantics sem) {
  NTTK_REQUIRE(ctx.fits_signed_plantard_bound(),
               "signed_plantard_redc: requires p < 2^{n-alpha-1}");
  const int64_t in_limit = static_cast<int64_t>(ctx.p) << ctx.alpha;
  NTTK_REQUIRE(-in_limit <= W && W <= in_limit && -in_limit <= T &&
                   T <= in_limit,
               "signed_plantard_redc: inputs exceed p * 2^alpha");

  const unsigned two_n = ctx.two_n();
  const int64_t A = W * T;
  const uint64_t h_u =
      (static_cast<uint64_t>(A) * ctx.mu) & ctx.r2n_mask;
  int64_t h;
  if (two_n == 64) {
    h = static_cast<int64_t>(h_u);
  } else {
    const uint64_t half = uint64_t(1) << (two_n - 1);
    h = h_u >= half ? static_cast<int64_t>(h_u) -
                          static_cast<int64_t>(uint64_t(1) << two_n)
                    : static_cast<int64_t>(h_u);
  }
  const int64_t inner = apply_shift(h, ctx.n_bits, sem);
  const int64_t v = (inner + (int64_t(1) << ctx.alpha)) *
                    static_cast<int64_t>(ctx.p);
  return apply_shift(v, ctx.n_bits, sem);
}

// Branch-free core shared by modified_plantard_mul and the improved
// butterflies. Pure straight-line arithmetic over U: instantiating U with
// a probe type that defines no comparisons proves there is no
// data-dependent control flow.
template <class U>
[[nodiscard]] constexpr U modified_plantard_core(U w, U t, U mu, U p,
                                                 unsigned n_bits,
                                                 U r2n_mask) {
  const U h = ((w * t) * mu) & r2n_mask;
  return (((h >> n_bits) + U(1)) * p) >> n_bits;
}

// W in [0, p), T in [0, 2^ell * p) -> W*T*(-2^{-2n}) mod p in [0, p).
// Requires p < 2^{n-ell-2}. No correction branch: the output is canonical
// by construction, and (h*p - W*T) / 2^{2n} is exactly the result, which
// the tests assert case by case.
[[nodiscard]] inline uint64_t modified_plantard_mul(
    uint64_t W, uint64_t T, const ReductionContext& ctx) {
  NTTK_REQUIRE(ctx.fits_lazy_plantard_bound(),
               "modified_plantard_mul: requires p < 2^{n-ell-2}");
  NTTK_REQUIRE(W < ctx.p, "modified_plantard_mul: W must be < p");
  NTTK_REQUIRE(T < (uint64_t(ctx.p) << ctx.ell),
               "modified_plantard_mul: T must be < 2^ell * p");
  return modified_plantard_core<uint64_t>(W, T, ctx.mu, ctx.p, ctx.n_bits,
                                          ctx.r2n_mask);
}

// --- domain conversions ---------------------------------------------------

// w -> w * (-2^{2n}) mod p: the twiddle encoding consumed by
// modified_plantard_mul (which divides by -2^{2n} again).
[[nodiscard]] inline uint64_t to_plantard_domain(uint64_t w,
                                                 const ReductionContext& ctx) {
  NTTK_REQUIRE(w < ctx.p, "to_plantard_domain: w must be < p");
  return (ctx.p - mul_mod(w, ctx.r2n_mod_p, ctx.p)) % ctx.p;
}

// w -> w * 2^n mod p: the encoding consumed by the Montgomery-style
// butterflies (which divide by 2^n again).
[[nodiscard]] inline uint64_t to_montgomery_domain(
    uint64_t w, const ReductionContext& ctx) {
  NTTK_REQUIRE(w < ctx.p, "to_montgomery_domain: w must be < p");
  return mul_mod(w, ctx.beta_mod_p, ctx.p);
}

}  // namespace nttk
