#pragma once

#include <cstdint>
#include <string>

#include "nttk/int_util.hpp"

// Exact CRT machinery for the pair of moduli (p, R) with p odd and R a
// power of two. Everything is computed at 128-bit width so the identity
// p_inv*p + R_inv*R == 1 + p*R is checked without any wrap-around.

namespace nttk {

// Coprime modulus pair. p is odd and at least 3, R = 2^r_log2 with
// 1 <= r_log2 <= 64. gcd(p, R) = 1 holds by construction.
struct ModulusPair {
  uint32_t p = 0;
  unsigned r_log2 = 0;

  ModulusPair(uint64_t p_in, u128 r_in) {
    NTTK_REQUIRE(p_in >= 3 && (p_in & 1) != 0 && p_in < (uint64_t(1) << 32),
                 "ModulusPair: p must be odd, >= 3, and < 2^32");
    NTTK_REQUIRE(r_in >= 2 && (r_in & (r_in - 1)) == 0,
                 "ModulusPair: R must be a power of two >= 2");
    p = static_cast<uint32_t>(p_in);
    unsigned e = 0;
    while ((u128(1) << e) != r_in) ++e;
    r_log2 = e;
  }

  [[nodiscard]] u128 R() const { return u128(1) << r_log2; }
};

// Inverse of a modulo m as the positive representative in [1, m).
// m >= 2; a is reduced mod m first. Throws not_coprime_error when
// gcd(a, m) != 1.
[[nodiscard]] inline u128 mod_inverse(u128 a, u128 m) {
  NTTK_REQUIRE(m >= 2, "mod_inverse: modulus must be >= 2");
  a %= m;
  if (a == 0) throw not_coprime_error("mod_inverse: inputs share a factor");
  // Extended Euclid on (m, a); coefficients stay below m in magnitude.
  i128 old_r = static_cast<i128>(m), r = static_cast<i128>(a);
  i128 old_t = 0, t = 1;
  while (r != 0) {
    const i128 q = old_r / r;
    i128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r != 1) {
    throw not_coprime_error("mod_inverse: inputs share a factor");
  }
  return static_cast<u128>(euclid_mod(old_t, static_cast<i128>(m)));
}

// Inverse of odd a modulo 2^e via Newton lifting: x <- x * (2 - a*x).
// Matches mod_inverse on the same inputs; kept as an independent route
// for cross-checking.
[[nodiscard]] inline u128 mod_inverse_pow2_lifting(u128 a, unsigned e) {
  NTTK_REQUIRE(e >= 1 && e <= 64, "mod_inverse_pow2_lifting: e in [1, 64]");
  if ((a & 1) == 0) {
    throw not_coprime_error("mod_inverse_pow2_lifting: a must be odd");
  }
  const u128 mask = (u128(1) << e) - 1;
  a &= mask;
  u128 x = 1;  // inverse mod 2^1
  for (unsigned bits = 1; bits < e; bits *= 2) {
    x = (x * (2 - a * x)) & mask;  // doubles the number of correct low bits
  }
  return x;
}

// Positive witnesses for 1 = p_inv*p + R_inv*R - p*R (both inverses taken
// as representatives in [1, modulus)).
struct QinWitness {
  uint64_t p_inv = 0;  // p^{-1} mod R, in [1, R)
  uint64_t r_inv = 0;  // R^{-1} mod p, in [1, p)
};

[[nodiscard]] inline QinWitness qin_identity(const ModulusPair& pair) {
  const u128 R = pair.R();
  QinWitness w;
  w.p_inv = static_cast<uint64_t>(mod_inverse(u128(pair.p) % R, R));
  w.r_inv = static_cast<uint64_t>(mod_inverse(R % pair.p, pair.p));
  // The exact identity from the positive representatives; never wraps at
  // this width for p < 2^32, R <= 2^64.
  const u128 lhs = u128(w.p_inv) * pair.p + u128(w.r_inv) * R;
  const u128 rhs = u128(1) + u128(pair.p) * R;
  NTTK_REQUIRE(lhs == rhs, "qin_identity: witness identity failed");
  return w;
}

// Unique x in [0, p*R) with x = r_p (mod p) and x = r_R (mod R),
// recombined as r_R * p_inv * p + r_p * R_inv * R (mod p*R).
// Requires p*R < 2^64 so the 128-bit intermediates cannot wrap.
[[nodiscard]] inline u128 crt_recombine(uint64_t r_p, u128 r_R,
                                        const ModulusPair& pair) {
  const u128 R = pair.R();
  NTTK_REQUIRE(r_p < pair.p, "crt_recombine: r_p out of range");
  NTTK_REQUIRE(r_R < R, "crt_recombine: r_R out of range");
  const u128 M = u128(pair.p) * R;
  NTTK_REQUIRE(M < (u128(1) << 64), "crt_recombine: p*R must be < 2^64");
  const QinWitness w = qin_identity(pair);
  const u128 t1 = (u128(w.p_inv) * pair.p) % M;
  const u128 t2 = (u128(w.r_inv) * R) % M;
  return ((r_R * t1) % M + (u128(r_p) * t2) % M) % M;
}

// Representative of x mod m in [-m/2, m/2). m is even and >= 2.
[[nodiscard]] inline i128 centered_mod(i128 x, i128 m) {
  NTTK_REQUIRE(m >= 2 && (m & 1) == 0, "centered_mod: m must be even, >= 2");
  i128 r = euclid_mod(x, m);
  if (r >= m / 2) r -= m;
  return r;
}

}  // namespace nttk
