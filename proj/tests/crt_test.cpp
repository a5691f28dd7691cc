#include <gtest/gtest.h>

#include <numeric>

#include "nttk/crt.hpp"
#include "nttk/int_util.hpp"

using namespace nttk;

TEST(ModInverse, MatchesBruteForceForAllSmallModuli) {
  for (uint64_t m = 2; m <= 512; ++m) {
    for (uint64_t a = 0; a < m; ++a) {
      if (std::gcd(a, m) == 1) {
        const u128 inv = mod_inverse(a, m);
        ASSERT_GE(inv, u128(1));
        ASSERT_LT(inv, u128(m));
        ASSERT_EQ((u128(a) * inv) % m, u128(1)) << "a=" << a << " m=" << m;
      } else {
        ASSERT_THROW((void)mod_inverse(a, m), not_coprime_error);
      }
    }
  }
}

TEST(ModInverse, ReducesInputFirst) {
  ASSERT_EQ(mod_inverse(u128(17) + 5 * 32, 32), mod_inverse(17, 32));
}

TEST(ModInverse, RejectsDegenerateModulus) {
  ASSERT_THROW((void)mod_inverse(1, 1), contract_violation);
}

TEST(ModInversePow2Lifting, AgreesWithEuclidAcrossWidths) {
  Rng rng(7);
  for (unsigned e = 1; e <= 64; ++e) {
    for (int i = 0; i < 50; ++i) {
      const u128 a = (u128(rng.next()) | 1);
      const u128 m = u128(1) << e;
      ASSERT_EQ(mod_inverse_pow2_lifting(a, e), mod_inverse(a % m, m))
          << "e=" << e;
    }
  }
  ASSERT_THROW((void)mod_inverse_pow2_lifting(4, 8), not_coprime_error);
}

TEST(ModInversePow2Lifting, FrozenConstants) {
  ASSERT_EQ(mod_inverse_pow2_lifting(13, 16), u128(20165));
  ASSERT_EQ(mod_inverse_pow2_lifting(17, 5), u128(17));
}

TEST(ModulusPair, ValidatesShape) {
  ASSERT_NO_THROW(ModulusPair(31, 64));
  ASSERT_THROW(ModulusPair(4, 16), contract_violation);   // even p
  ASSERT_THROW(ModulusPair(1, 16), contract_violation);   // p < 3
  ASSERT_THROW(ModulusPair(31, 48), contract_violation);  // R not a power of 2
  const ModulusPair pair(31, 64);
  ASSERT_EQ(pair.p, 31u);
  ASSERT_EQ(pair.r_log2, 6u);
  ASSERT_EQ(pair.R(), u128(64));
}

TEST(QinIdentity, HoldsExactlyOnGrid) {
  for (uint64_t p = 3; p <= 255; p += 2) {
    for (unsigned e = 2; e <= 16; ++e) {
      const ModulusPair pair(p, u128(1) << e);
      const QinWitness w = qin_identity(pair);
      ASSERT_GE(w.p_inv, 1u);
      ASSERT_LT(u128(w.p_inv), pair.R());
      ASSERT_GE(w.r_inv, 1u);
      ASSERT_LT(w.r_inv, p);
      const u128 lhs = u128(w.p_inv) * p + u128(w.r_inv) * pair.R();
      ASSERT_EQ(lhs, u128(1) + u128(p) * pair.R()) << "p=" << p << " e=" << e;
    }
  }
}

TEST(CrtRecombine, InvertsResidueSplittingExhaustively) {
  const ModulusPair pair(31, 64);
  for (uint64_t t = 0; t < 31 * 64; ++t) {
    ASSERT_EQ(crt_recombine(t % 31, t % 64, pair), u128(t));
  }
}

TEST(CrtRecombine, RejectsOutOfRangeResidues) {
  const ModulusPair pair(31, 64);
  ASSERT_THROW((void)crt_recombine(31, 0, pair), contract_violation);
  ASSERT_THROW((void)crt_recombine(0, 64, pair), contract_violation);
}

TEST(CenteredMod, LandsInHalfOpenWindow) {
  for (int64_t x = -300; x <= 300; ++x) {
    for (const int64_t m : {2, 8, 64, 256}) {
      const i128 r = centered_mod(x, m);
      ASSERT_GE(r, i128(-m / 2));
      ASSERT_LT(r, i128(m / 2));
      ASSERT_EQ(euclid_mod(i128(x) - r, i128(m)), i128(0));
    }
  }
  ASSERT_EQ(centered_mod(5, 8), i128(-3));
  ASSERT_EQ(centered_mod(-5, 8), i128(3));
  ASSERT_EQ(centered_mod(4, 8), i128(-4));
  ASSERT_THROW((void)centered_mod(1, 7), contract_violation);
}
