#pragma once

#include <cstdint>
#include <vector>

#include "nttk/crt.hpp"
#include "nttk/int_util.hpp"

// Reference implementations used to judge the production kernels. These
// deliberately avoid the wrapping word arithmetic of the fast paths: all
// residues come from 128-bit exact division, transforms are quadratic
// summations. Nothing in this header calls into reduction.hpp or
// butterfly.hpp.

namespace nttk {

enum class SignMode {
  canonical,  // result in [0, p)
  centered,   // result in [-p/2, p/2); for odd p this is [-(p-1)/2, (p-1)/2]
};

enum class ResidueFactor {
  r_inv,      // multiply by R^{-1} mod p
  neg_r_inv,  // multiply by -R^{-1} mod p
};

// Exact value of A * (+-R^{-1}) mod p, canonicalized per sign_mode.
// p odd >= 3, R a power of two. Works for any |A| < 2^126.
[[nodiscard]] inline i128 reference_residue(i128 A, uint64_t p, u128 R,
                                            SignMode sign_mode,
                                            ResidueFactor factor) {
  NTTK_REQUIRE(p >= 3 && (p & 1) != 0, "reference_residue: p odd, >= 3");
  NTTK_REQUIRE(R >= 2 && (R & (R - 1)) == 0,
               "reference_residue: R must be a power of two");
  const uint64_t r_inv = static_cast<uint64_t>(mod_inverse(R % p, p));
  uint64_t a_mod = static_cast<uint64_t>(euclid_mod(A, static_cast<i128>(p)));
  uint64_t res = mul_mod(a_mod, r_inv, p);
  if (factor == ResidueFactor::neg_r_inv) {
    res = (p - res) % p;
  }
  if (sign_mode == SignMode::centered && res > p / 2) {
    return static_cast<i128>(res) - static_cast<i128>(p);
  }
  return static_cast<i128>(res);
}

// f(omega^i) for i in [0, N) by Horner's rule, natural order. Quadratic
// on purpose; this is the yardstick for every transform.
[[nodiscard]] inline std::vector<uint64_t> naive_dft(
    const std::vector<uint64_t>& f, uint64_t omega, uint64_t p) {
  const size_t N = f.size();
  std::vector<uint64_t> out(N);
  uint64_t x = 1 % p;  // omega^i
  for (size_t i = 0; i < N; ++i) {
    uint64_t acc = 0;
    for (size_t j = N; j-- > 0;) {
      acc = (mul_mod(acc, x, p) + f[j] % p) % p;
    }
    out[i] = acc;
    x = mul_mod(x, omega, p);
  }
  return out;
}

// Same spectrum via a power table and direct summation; a second route
// kept independent of naive_dft for cross-checking.
[[nodiscard]] inline std::vector<uint64_t> naive_dft_powsum(
    const std::vector<uint64_t>& f, uint64_t omega, uint64_t p) {
  const size_t N = f.size();
  std::vector<uint64_t> pw(N);
  uint64_t x = 1 % p;
  for (size_t k = 0; k < N; ++k) {
    pw[k] = x;
    x = mul_mod(x, omega, p);
  }
  std::vector<uint64_t> out(N);
  for (size_t i = 0; i < N; ++i) {
    uint64_t acc = 0;
    for (size_t j = 0; j < N; ++j) {
      acc = (acc + mul_mod(f[j] % p, pw[(i * j) % N], p)) % p;
    }
    out[i] = acc;
  }
  return out;
}

// c_k = sum_{i+j == k (mod N)} a_i * b_j (mod p).
[[nodiscard]] inline std::vector<uint64_t> schoolbook_cyclic_convolution(
    const std::vector<uint64_t>& a, const std::vector<uint64_t>& b,
    uint64_t p) {
  NTTK_REQUIRE(a.size() == b.size() && !a.empty(),
               "schoolbook_cyclic_convolution: size mismatch");
  const size_t N = a.size();
  std::vector<uint64_t> c(N, 0);
  for (size_t i = 0; i < N; ++i) {
    for (size_t j = 0; j < N; ++j) {
      const size_t k = (i + j) % N;
      c[k] = (c[k] + mul_mod(a[i] % p, b[j] % p, p)) % p;
    }
  }
  return c;
}

}  // namespace nttk
