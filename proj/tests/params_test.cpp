#include <gtest/gtest.h>

#include <string>

#include "nttk/int_util.hpp"
#include "nttk/params.hpp"

using namespace nttk;

TEST(PrimitiveRoot, FrozenValuesAndOrderContract) {
  ASSERT_EQ(find_primitive_root(17, 4), 4u);
  ASSERT_EQ(find_primitive_root(13, 4), 5u);
  ASSERT_EQ(find_primitive_root(7681, 256), 198u);
  ASSERT_EQ(find_primitive_root(12289, 512), 3u);
  ASSERT_EQ(find_primitive_root(12289, 1024), 49u);
  ASSERT_EQ(find_primitive_root(13, 1), 1u);

  for (const auto& [p, N] : std::vector<std::pair<uint64_t, uint32_t>>{
           {17, 4}, {13, 4}, {7681, 256}, {12289, 1024}}) {
    const uint64_t w = find_primitive_root(p, N);
    ASSERT_EQ(pow_mod(w, N, p), 1u);
    ASSERT_NE(pow_mod(w, N / 2, p), 1u);
  }

  ASSERT_THROW((void)find_primitive_root(13, 8), contract_violation);
  ASSERT_THROW((void)find_primitive_root(13, 3), contract_violation);
  ASSERT_THROW((void)find_primitive_root(16, 4), contract_violation);
}

TEST(Presets, TableAndLookup) {
  const auto& ky = preset_spec("kyber256");
  ASSERT_EQ(ky.p, 7681u);
  ASSERT_EQ(ky.size, 256u);
  ASSERT_EQ(ky.n_bits, 32u);

  const auto& hi = preset_spec("hila5-1024");
  ASSERT_EQ(hi.p, 12289u);
  ASSERT_EQ(hi.size, 1024u);

  const auto& toy = preset_spec("toy13");
  ASSERT_EQ(toy.p, 13u);
  ASSERT_EQ(toy.size, 4u);
  ASSERT_EQ(toy.n_bits, 8u);

  try {
    (void)preset_spec("nope");
    FAIL() << "accepted an unknown preset";
  } catch (const contract_violation& e) {
    const std::string msg = e.what();
    ASSERT_NE(msg.find("unknown preset"), std::string::npos);
    ASSERT_NE(msg.find("toy13"), std::string::npos);
    ASSERT_NE(msg.find("kyber256"), std::string::npos);
  }
}

TEST(BuildParams, ToyBundleHasTheFrozenScalars) {
  const auto P = preset("toy13");
  ASSERT_EQ(P.p, 13u);
  ASSERT_EQ(P.size, 4u);
  ASSERT_EQ(P.log2_size, 2u);
  ASSERT_EQ(P.omega, 5u);
  ASSERT_EQ(P.omega_inv, 8u);
  ASSERT_EQ(P.n_inv, 10u);  // 4 * 10 = 40 = 3*13 + 1
  ASSERT_EQ(P.n_inv_hat, to_plantard_domain(10, P.ctx));
  ASSERT_EQ(P.ctx.ell, 2u);
  ASSERT_EQ(P.ctx.alpha, 0u);
  ASSERT_EQ(P.scott.lazy_level, 1u);
  for (auto k : all_butterfly_kinds()) ASSERT_TRUE(P.has(k));
}

TEST(BuildParams, CollectsEveryFaultAtOnce) {
  try {
    (void)build_params(15, 4, 8);
    FAIL() << "accepted composite p";
  } catch (const contract_violation& e) {
    ASSERT_NE(std::string(e.what()).find("p must be prime"),
              std::string::npos);
  }

  try {
    (void)build_params(13, 8, 8);
    FAIL() << "accepted N that does not divide p - 1";
  } catch (const contract_violation& e) {
    ASSERT_NE(std::string(e.what()).find("N must divide p - 1"),
              std::string::npos);
  }

  try {
    (void)build_params(15, 6, 40);
    FAIL() << "accepted three faults";
  } catch (const contract_violation& e) {
    const std::string msg = e.what();
    ASSERT_NE(msg.find("p must be prime"), std::string::npos);
    ASSERT_NE(msg.find("power of two"), std::string::npos);
    ASSERT_NE(msg.find("[2, 32]"), std::string::npos);
  }

  ASSERT_THROW((void)build_params(13, 4, 8, {}), contract_violation);
}

TEST(BuildParams, ReportsTheLazyBoundByName) {
  try {
    (void)build_params(7681, 256, 16);
    FAIL() << "accepted a word size too small for the lazy bound";
  } catch (const contract_violation& e) {
    const std::string msg = e.what();
    ASSERT_NE(msg.find("p < 2^{n-ell-2}"), std::string::npos);
    ASSERT_NE(msg.find("7681"), std::string::npos);
  }
}

TEST(TwiddleTables, EncodedFormsDecodeToThePlainSchedules) {
  const auto P = preset("toy13");
  const auto& ctx = P.ctx;

  const auto dif_plain = dif_forward_plain_twiddles(4, 5, 13);
  const auto ct_plain = ct_forward_plain_twiddles(4, 5, 13);
  const auto gs_plain = gs_inverse_plain_twiddles(4, 5, 13);
  ASSERT_EQ(dif_plain.size(), 3u);
  ASSERT_EQ(ct_plain.size(), 3u);
  ASSERT_EQ(gs_plain.size(), 3u);

  ASSERT_EQ(P.fwd.dif_ntl.size(), dif_plain.size());
  ASSERT_EQ(P.fwd.dif_mont.size(), dif_plain.size());
  ASSERT_EQ(P.fwd.ct_plantard.size(), ct_plain.size());
  for (size_t i = 0; i < dif_plain.size(); ++i) {
    ASSERT_EQ(P.fwd.dif_ntl[i].w, dif_plain[i]);
    ASSERT_EQ(P.fwd.dif_ntl[i].w_quot,
              (u128(dif_plain[i]) << P.n_bits) / P.p);
    ASSERT_EQ(P.fwd.dif_mont[i], to_montgomery_domain(dif_plain[i], ctx));
    ASSERT_EQ(P.fwd.ct_plantard[i], to_plantard_domain(ct_plain[i], ctx));
  }

  ASSERT_EQ(P.inv.gs_ntl.size(), gs_plain.size());
  for (size_t i = 0; i < gs_plain.size(); ++i) {
    ASSERT_EQ(P.inv.gs_ntl[i].w, gs_plain[i]);
    ASSERT_EQ(P.inv.gs_mont[i], to_montgomery_domain(gs_plain[i], ctx));
    ASSERT_EQ(P.inv.gs_plantard[i], to_plantard_domain(gs_plain[i], ctx));
  }

  // forward DIF layer 0 of toy13: twiddles w^0, w^1 = 1, 5
  ASSERT_EQ(dif_plain[0], 1u);
  ASSERT_EQ(dif_plain[1], 5u);
  ASSERT_EQ(dif_plain[2], 1u);
  // inverse GS runs bottom up: len=1 has blocks {w^0, w^{-1}}, len=2 has w^0
  ASSERT_EQ(gs_plain[0], 1u);
  ASSERT_EQ(gs_plain[1], 8u);
  ASSERT_EQ(gs_plain[2], 1u);
}

TEST(TwiddleTables, ProductionPresetSpotChecks) {
  const auto P = preset("kyber256");
  ASSERT_EQ(P.omega, 198u);
  ASSERT_EQ(mul_mod(P.omega, P.omega_inv, P.p), 1u);
  ASSERT_EQ(mul_mod(P.size % P.p, P.n_inv, P.p), 1u);
  ASSERT_EQ(P.fwd.dif_ntl.size(), 255u);
  ASSERT_EQ(P.fwd.ct_plantard.size(), 255u);
  ASSERT_EQ(P.inv.gs_plantard.size(), 255u);
  ASSERT_EQ(P.scott.lazy_level, 1u);  // 4*256*7681 << 2^32

  // every encoded twiddle decodes below p
  for (const auto& t : P.fwd.dif_ntl) {
    ASSERT_GT(t.w, 0u);
    ASSERT_LT(t.w, P.p);
  }
  for (uint64_t w : P.fwd.ct_plantard) ASSERT_LT(w, P.p);
  for (uint64_t w : P.inv.gs_mont) ASSERT_LT(w, P.p);
}

TEST(BuildParams, KindSubsetBuildsOnlyItsTables) {
  const auto P = build_params(13, 4, 8, {ButterflyKind::ntl});
  ASSERT_TRUE(P.has(ButterflyKind::ntl));
  ASSERT_FALSE(P.has(ButterflyKind::harvey));
  ASSERT_FALSE(P.has(ButterflyKind::improved));
  ASSERT_FALSE(P.fwd.dif_ntl.empty());
  ASSERT_TRUE(P.fwd.dif_mont.empty());
  ASSERT_TRUE(P.fwd.ct_plantard.empty());
  ASSERT_TRUE(P.inv.gs_plantard.empty());
  ASSERT_EQ(P.n_inv_hat, 0u);

  const auto Q = build_params(13, 4, 8, {ButterflyKind::improved});
  ASSERT_TRUE(Q.fwd.dif_ntl.empty());
  ASSERT_TRUE(Q.fwd.dif_mont.empty());
  ASSERT_FALSE(Q.fwd.ct_plantard.empty());
  ASSERT_EQ(Q.n_inv_hat, to_plantard_domain(Q.n_inv, Q.ctx));
}
