#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

// Shared integer plumbing: 128-bit aliases, non-negative remainders,
// modular exponentiation, bit reversal, and a small deterministic RNG.
// The algorithmic contracts live in the dedicated headers.

namespace nttk {

using i128 = __int128;
using u128 = unsigned __int128;

// Raised when a documented operation precondition is violated.
class contract_violation : public std::invalid_argument {
 public:
  explicit contract_violation(const std::string& what)
      : std::invalid_argument(what) {}
};

// Raised by modular inversion when gcd(a, m) != 1.
class not_coprime_error : public std::invalid_argument {
 public:
  explicit not_coprime_error(const std::string& what)
      : std::invalid_argument(what) {}
};

#define NTTK_REQUIRE(cond, msg)                  \
  do {                                           \
    if (!(cond)) {                               \
      throw ::nttk::contract_violation(msg);     \
    }                                            \
  } while (0)

// Remainder in [0, m). m > 0.
[[nodiscard]] constexpr i128 euclid_mod(i128 x, i128 m) {
  i128 r = x % m;
  return r < 0 ? r + m : r;
}

[[nodiscard]] constexpr uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((u128(a) * b) % m);
}

[[nodiscard]] constexpr uint64_t pow_mod(uint64_t base, uint64_t exp,
                                         uint64_t m) {
  uint64_t acc = 1 % m;
  uint64_t b = base % m;
  while (exp != 0) {
    if (exp & 1) acc = mul_mod(acc, b, m);
    b = mul_mod(b, b, m);
    exp >>= 1;
  }
  return acc;
}

[[nodiscard]] constexpr bool is_power_of_two(uint64_t x) {
  return x != 0 && (x & (x - 1)) == 0;
}

// floor(log2(x)) for x > 0.
[[nodiscard]] constexpr unsigned floor_log2(uint64_t x) {
  unsigned r = 0;
  while (x >>= 1) ++r;
  return r;
}

// Reverse the low `bits` bits of x. bits <= 32 covers every transform size
// used here.
[[nodiscard]] constexpr uint64_t bit_reverse(uint64_t x, unsigned bits) {
  uint64_t r = 0;
  for (unsigned i = 0; i < bits; ++i) {
    r = (r << 1) | ((x >> i) & 1);
  }
  return r;
}

[[nodiscard]] constexpr bool is_probable_prime(uint64_t x) {
  if (x < 2) return false;
  for (uint64_t d = 2; d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

// xoshiro256** seeded through splitmix64. Self-contained so that seeded
// streams are identical on every platform and standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t z = seed;
    for (auto& word : s_) {
      z += 0x9e3779b97f4a7c15ull;
      uint64_t w = z;
      w = (w ^ (w >> 30)) * 0xbf58476d1ce4e5b9ull;
      w = (w ^ (w >> 27)) * 0x94d049bb133111ebull;
      word = w ^ (w >> 31);
    }
  }

  uint64_t next() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform value in [0, bound). bound > 0. Masked rejection keeps the
  // distribution exact and the stream reproducible.
  uint64_t below(uint64_t bound) {
    if (bound <= 1) return 0;
    const unsigned bits = floor_log2(bound - 1) + 1;
    const uint64_t mask = bits >= 64 ? ~0ull : ((uint64_t(1) << bits) - 1);
    for (;;) {
      const uint64_t v = next() & mask;
      if (v < bound) return v;
    }
  }

  // Uniform value in [lo, hi], inclusive, for signed ranges.
  int64_t between(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(
                    below(static_cast<uint64_t>(hi - lo) + 1));
  }

 private:
  static constexpr uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  uint64_t s_[4];
};

}  // namespace nttk
