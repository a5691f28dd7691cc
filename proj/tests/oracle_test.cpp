#include <gtest/gtest.h>

#include "nttk/int_util.hpp"
#include "nttk/oracle.hpp"
#include "nttk/params.hpp"

using namespace nttk;

TEST(ReferenceResidue, MatchesBruteForceSearch) {
  for (const uint64_t p : {13ull, 31ull}) {
    for (const unsigned e : {2u, 4u, 6u}) {
      const u128 R = u128(1) << e;
      for (int64_t A = -200; A <= 200; ++A) {
        // the unique x in [0, p) with x * R = +-A (mod p)
        uint64_t plus = p, minus = p;
        for (uint64_t x = 0; x < p; ++x) {
          if (euclid_mod(i128(x) * i128(R) - A, i128(p)) == 0) plus = x;
          if (euclid_mod(i128(x) * i128(R) + A, i128(p)) == 0) minus = x;
        }
        ASSERT_EQ(reference_residue(A, p, R, SignMode::canonical,
                                    ResidueFactor::r_inv),
                  i128(plus));
        ASSERT_EQ(reference_residue(A, p, R, SignMode::canonical,
                                    ResidueFactor::neg_r_inv),
                  i128(minus));
        const i128 cent = reference_residue(A, p, R, SignMode::centered,
                                            ResidueFactor::r_inv);
        ASSERT_GT(2 * cent, -i128(p));
        ASSERT_LT(2 * cent, i128(p));
        ASSERT_EQ(euclid_mod(cent - i128(plus), i128(p)), i128(0));
      }
    }
  }
}

TEST(ReferenceResidue, RejectsBadModuli) {
  ASSERT_THROW(
      (void)reference_residue(1, 4, 16, SignMode::canonical,
                              ResidueFactor::r_inv),
      contract_violation);
  ASSERT_THROW(
      (void)reference_residue(1, 13, 12, SignMode::canonical,
                              ResidueFactor::r_inv),
      contract_violation);
}

TEST(NaiveDft, FrozenSmallExample) {
  const std::vector<uint64_t> f{1, 2, 3, 4};
  const std::vector<uint64_t> want{10, 7, 15, 6};
  ASSERT_EQ(naive_dft(f, 4, 17), want);
  ASSERT_EQ(naive_dft_powsum(f, 4, 17), want);
}

TEST(NaiveDft, TwoRoutesAgreeOnRandomInputs) {
  Rng rng(11);
  for (const auto& [p, N] :
       {std::pair<uint64_t, size_t>{17, 4}, {7681, 256}}) {
    const uint64_t omega = find_primitive_root(p, static_cast<uint32_t>(N));
    for (int t = 0; t < 5; ++t) {
      std::vector<uint64_t> f(N);
      for (auto& c : f) c = rng.below(p);
      ASSERT_EQ(naive_dft(f, omega, p), naive_dft_powsum(f, omega, p));
    }
  }
}

TEST(NaiveDft, DeltaAndConstantInputs) {
  // delta at slot 0 -> flat spectrum; constant -> N at slot 0, zero elsewhere
  const uint64_t p = 13, omega = 5;
  ASSERT_EQ(naive_dft({1, 0, 0, 0}, omega, p),
            (std::vector<uint64_t>{1, 1, 1, 1}));
  ASSERT_EQ(naive_dft({1, 1, 1, 1}, omega, p),
            (std::vector<uint64_t>{4, 0, 0, 0}));
  // delta at slot 1 -> successive root powers
  ASSERT_EQ(naive_dft({0, 1, 0, 0}, omega, p),
            (std::vector<uint64_t>{1, 5, 12, 8}));
}

TEST(SchoolbookConvolution, HandComputedCase) {
  const std::vector<uint64_t> a{1, 2, 3, 4};
  const std::vector<uint64_t> b{1, 0, 0, 1};
  ASSERT_EQ(schoolbook_cyclic_convolution(a, b, 17),
            (std::vector<uint64_t>{3, 5, 7, 5}));
}

TEST(SchoolbookConvolution, DiagonalizedBySpectrum) {
  // dft(a conv b) equals dft(a) * dft(b) slotwise
  Rng rng(23);
  const uint64_t p = 13, omega = 5;
  for (int t = 0; t < 20; ++t) {
    std::vector<uint64_t> a(4), b(4);
    for (auto& c : a) c = rng.below(p);
    for (auto& c : b) c = rng.below(p);
    const auto sa = naive_dft(a, omega, p);
    const auto sb = naive_dft(b, omega, p);
    const auto sc = naive_dft(schoolbook_cyclic_convolution(a, b, p), omega, p);
    for (size_t i = 0; i < 4; ++i) {
      ASSERT_EQ(sc[i], mul_mod(sa[i], sb[i], p));
    }
  }
}

TEST(SchoolbookConvolution, RejectsSizeMismatch) {
  ASSERT_THROW(
      (void)schoolbook_cyclic_convolution({1, 2}, {1, 2, 3}, 13),
      contract_violation);
}
