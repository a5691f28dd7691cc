#include <gtest/gtest.h>

#include <cstdint>
#include <random>

#include "nttk/butterfly.hpp"
#include "nttk/reduction.hpp"

using namespace nttk;

namespace {

uint64_t mod_p(uint64_t x, uint64_t p) { return x % p; }

}  // namespace

TEST(KindNames, RoundTripAndReject) {
  for (auto k : {ButterflyKind::ntl, ButterflyKind::harvey,
                 ButterflyKind::scott, ButterflyKind::improved}) {
    ASSERT_EQ(butterfly_kind_from_string(to_string(k)), k);
  }
  try {
    (void)butterfly_kind_from_string("fancy");
    FAIL() << "accepted an unknown kind";
  } catch (const contract_violation& e) {
    ASSERT_NE(std::string(e.what()).find("unknown butterfly kind"),
              std::string::npos);
  }
}

TEST(NtlButterfly, HandExampleAndCanonicalSweep) {
  const auto ctx = make_reduction_context(13, 8);
  const auto out = ntl_butterfly(5, 9, 3, 59, ctx);
  ASSERT_EQ(out.x, 1u);
  ASSERT_EQ(out.y, 1u);

  for (uint64_t W = 1; W < 13; ++W) {
    const uint64_t W_quot = (W << 8) / 13;
    for (uint64_t X = 0; X < 13; ++X) {
      for (uint64_t Y = 0; Y < 13; ++Y) {
        const auto o = ntl_butterfly(X, Y, W, W_quot, ctx);
        ASSERT_LT(o.x, 13u);
        ASSERT_LT(o.y, 13u);
        ASSERT_EQ(o.x, (X + Y) % 13);
        ASSERT_EQ(o.y, W * (X + 13 - Y) % 13);
      }
    }
  }
}

TEST(NtlButterfly, RejectsBadArguments) {
  const auto ctx = make_reduction_context(13, 8);
  ASSERT_THROW((void)ntl_butterfly(5, 9, 0, 0, ctx), contract_violation);
  ASSERT_THROW((void)ntl_butterfly(5, 9, 3, 58, ctx), contract_violation);
  ASSERT_THROW((void)ntl_butterfly(13, 9, 3, 59, ctx), contract_violation);
  const auto tight = make_reduction_context(13, 4);
  ASSERT_THROW((void)ntl_butterfly(5, 9, 3, (3u << 4) / 13, tight),
               contract_violation);
}

TEST(HarveyButterfly, HandExample) {
  const auto ctx = make_reduction_context(7681, 16);
  const auto out = harvey_butterfly(100, 4000, 4583, ctx);
  ASSERT_EQ(out.x, 4100u);
  ASSERT_EQ(out.y, 3662u);
}

TEST(HarveyButterfly, BranchlessMatchesBranchTwinExhaustively) {
  const auto ctx = make_reduction_context(13, 8);
  for (uint64_t w = 1; w < 13; ++w) {
    const uint64_t decoded = mont_redc(w, ctx);  // w * 2^{-n} mod p
    for (uint64_t X = 0; X < 26; ++X) {
      for (uint64_t Y = 0; Y < 26; ++Y) {
        const auto a = harvey_butterfly(X, Y, w, ctx);
        const auto b = harvey_butterfly_ref(X, Y, w, ctx);
        ASSERT_EQ(a.x, b.x);
        ASSERT_EQ(a.y, b.y);
        ASSERT_LT(a.x, 26u);
        ASSERT_LT(a.y, 26u);
        ASSERT_EQ(mod_p(a.x, 13), (X + Y) % 13);
        ASSERT_EQ(mod_p(a.y, 13), decoded * (X + 26 - Y) % 13);
      }
    }
  }
}

TEST(HarveyButterfly, RejectsBadArguments) {
  const auto ctx = make_reduction_context(13, 8);
  ASSERT_THROW((void)harvey_butterfly(26, 0, 3, ctx), contract_violation);
  ASSERT_THROW((void)harvey_butterfly(0, 0, 0, ctx), contract_violation);
  ASSERT_THROW((void)harvey_butterfly(0, 0, 13, ctx), contract_violation);
  const auto tight = make_reduction_context(13, 5);  // 4p = 52 >= 32
  ASSERT_THROW((void)harvey_butterfly(0, 0, 3, tight), contract_violation);
}

TEST(ScottConfig, PicksSmallestLazyLevel) {
  const auto ctx = make_reduction_context(13, 8);
  const auto small = make_scott_config(4, ctx);
  ASSERT_EQ(small.transform_size, 4u);
  ASSERT_EQ(small.lazy_level, 1u);
  ASSERT_EQ(small.guard, nullptr);

  const auto big = make_scott_config(256, ctx);  // 4*256*13 needs L = 64
  ASSERT_EQ(big.lazy_level, 64u);

  const auto tight = make_reduction_context(13, 4);
  ASSERT_THROW((void)make_scott_config(4, tight), contract_violation);
  ASSERT_THROW((void)make_scott_config(3, ctx), contract_violation);
}

TEST(ScottButterfly, HandExampleAndGuardStaysCongruent) {
  const auto ctx = make_reduction_context(13, 8);
  const auto cfg = make_scott_config(4, ctx);
  const auto out = scott_butterfly(5, 9, 3, ctx, cfg);
  ASSERT_EQ(out.x, 14u);
  ASSERT_EQ(out.y, 3u);

  for (uint64_t w = 1; w < 13; ++w) {
    const uint64_t decoded = mont_redc(w, ctx);
    for (uint64_t X = 0; X < 52; X += 3) {
      for (uint64_t Y = 0; Y < 52; Y += 3) {
        const auto plain = scott_butterfly(X, Y, w, ctx, cfg, false);
        const auto guarded = scott_butterfly(X, Y, w, ctx, cfg, true);
        ASSERT_EQ(plain.x, X + Y);  // the raw, unreduced sum
        ASSERT_LT(plain.y, 26u);
        ASSERT_LT(guarded.y, 26u);
        ASSERT_EQ(mod_p(plain.y, 13), decoded * (X + 52 - Y) % 13);
        ASSERT_EQ(mod_p(guarded.x, 13), mod_p(plain.x, 13));
        ASSERT_EQ(mod_p(guarded.y, 13), mod_p(plain.y, 13));
      }
    }
  }
}

TEST(ScottButterfly, RejectsBadArguments) {
  const auto ctx = make_reduction_context(13, 8);
  const auto cfg = make_scott_config(4, ctx);
  ASSERT_THROW((void)scott_butterfly(52, 0, 3, ctx, cfg), contract_violation);
  ASSERT_THROW((void)scott_butterfly(0, 0, 0, ctx, cfg), contract_violation);
  ScottConfig broken{4, 0, nullptr};
  ASSERT_THROW((void)scott_butterfly(0, 0, 3, ctx, broken),
               contract_violation);
}

TEST(ImprovedCtButterfly, HandExampleAndAdditiveGrowth) {
  const auto ctx = make_reduction_context(13, 8, 0, 2);
  const auto out = improved_ct_butterfly(3, 20, 5, ctx);
  ASSERT_EQ(out.x, 13u);
  ASSERT_EQ(out.y, 6u);

  for (uint64_t w_hat = 0; w_hat < 13; ++w_hat) {
    const uint64_t decoded = modified_plantard_mul(w_hat, 1, ctx);
    for (uint64_t X = 0; X < 26; ++X) {
      for (uint64_t Y = 0; Y < 26; ++Y) {
        const auto o = improved_ct_butterfly(X, Y, w_hat, ctx);
        ASSERT_LT(o.x, 26u + 13u);  // input bound grows by at most p
        ASSERT_LT(o.y, 26u + 13u);
        ASSERT_EQ(mod_p(o.x, 13), (X + decoded * Y) % 13);
        ASSERT_EQ(mod_p(o.y, 13), (X + 13 * 13 - decoded * Y % 13) % 13);
      }
    }
  }
}

TEST(ImprovedCtButterfly, RejectsBadArguments) {
  const auto ctx = make_reduction_context(13, 8, 0, 2);
  ASSERT_THROW((void)improved_ct_butterfly(0, 0, 13, ctx),
               contract_violation);
  ASSERT_THROW((void)improved_ct_butterfly(26, 0, 5, ctx),
               contract_violation);
  const auto unfit = make_reduction_context(17, 8, 0, 2);
  ASSERT_THROW((void)improved_ct_butterfly(0, 0, 5, unfit),
               contract_violation);
}

TEST(ImprovedGsButterfly, HandExampleAndPerLayerWindows) {
  const auto ctx = make_reduction_context(13, 8, 0, 2);
  const auto out = improved_gs_butterfly(5, 9, 5, ctx, 1);
  ASSERT_EQ(out.x, 14u);
  ASSERT_EQ(out.y, 11u);

  for (unsigned layer = 1; layer <= 2; ++layer) {
    const uint64_t bound = uint64_t(13) << (layer - 1);
    for (uint64_t w_hat = 0; w_hat < 13; ++w_hat) {
      const uint64_t decoded = modified_plantard_mul(w_hat, 1, ctx);
      for (uint64_t X = 0; X < bound; ++X) {
        for (uint64_t Y = 0; Y < bound; ++Y) {
          const auto o = improved_gs_butterfly(X, Y, w_hat, ctx, layer);
          ASSERT_LT(o.x, bound * 2);  // X' < 2^layer * p
          ASSERT_LT(o.y, 13u);        // Y' comes out canonical
          ASSERT_EQ(mod_p(o.x, 13), (X + Y) % 13);
          ASSERT_EQ(o.y, decoded * ((X + bound - Y) % 13) % 13);
        }
      }
    }
  }
}

TEST(ImprovedGsButterfly, RejectsBadArguments) {
  const auto ctx = make_reduction_context(13, 8, 0, 2);
  ASSERT_THROW((void)improved_gs_butterfly(0, 0, 5, ctx, 0),
               contract_violation);
  ASSERT_THROW((void)improved_gs_butterfly(0, 0, 5, ctx, 3),
               contract_violation);
  ASSERT_THROW((void)improved_gs_butterfly(13, 0, 5, ctx, 1),
               contract_violation);
}

// Probe type for the branch census. It defines exactly the operators the
// straight-line cores use and deliberately no comparisons and no bool
// conversion, so any data-dependent branch in a core instantiated with it
// fails to compile. The per-operator counters then pin the instruction
// mix and show it does not vary with the input values.
struct OpCounter {
  uint64_t v;
  static inline uint64_t muls = 0;
  static inline uint64_t adds = 0;
  static inline uint64_t subs = 0;
  static inline uint64_t ands = 0;
  static inline uint64_t shifts = 0;

  OpCounter(uint64_t x) : v(x) {}  // NOLINT: implicit on purpose

  friend OpCounter operator*(OpCounter a, OpCounter b) {
    ++muls;
    return {a.v * b.v};
  }
  friend OpCounter operator+(OpCounter a, OpCounter b) {
    ++adds;
    return {a.v + b.v};
  }
  friend OpCounter operator-(OpCounter a, OpCounter b) {
    ++subs;
    return {a.v - b.v};
  }
  friend OpCounter operator&(OpCounter a, OpCounter b) {
    ++ands;
    return {a.v & b.v};
  }
  friend OpCounter operator>>(OpCounter a, unsigned s) {
    ++shifts;
    return {a.v >> s};
  }

  static void reset() { muls = adds = subs = ands = shifts = 0; }
};

struct OpProfile {
  uint64_t muls, adds, subs, ands, shifts;
  bool operator==(const OpProfile&) const = default;
};

static OpProfile snapshot() {
  return {OpCounter::muls, OpCounter::adds, OpCounter::subs, OpCounter::ands,
          OpCounter::shifts};
}

TEST(BranchCensus, CoresCompileWithoutComparisonsAndCountsAreInputFree) {
  const auto ctx = make_reduction_context(13, 8, 0, 2);
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<uint64_t> w_dist(0, 12);
  std::uniform_int_distribution<uint64_t> t_dist(0, 51);
  std::uniform_int_distribution<uint64_t> x_dist(0, 25);

  OpProfile mp_profile{}, ct_profile{}, gs_profile{};
  for (int i = 0; i < 1000; ++i) {
    const uint64_t w = w_dist(rng);
    const uint64_t t = t_dist(rng);
    const uint64_t x = x_dist(rng);
    const uint64_t y = x_dist(rng);

    OpCounter::reset();
    const OpCounter mp = modified_plantard_core<OpCounter>(
        w, t, ctx.mu, ctx.p, ctx.n_bits, ctx.r2n_mask);
    const auto mp_now = snapshot();
    ASSERT_EQ(mp.v, modified_plantard_core<uint64_t>(w, t, ctx.mu, ctx.p,
                                                     ctx.n_bits,
                                                     ctx.r2n_mask));

    OpCounter::reset();
    const auto ct = improved_ct_core<OpCounter>(x, y, w, ctx.mu, ctx.p,
                                                ctx.n_bits, ctx.r2n_mask);
    const auto ct_now = snapshot();
    const auto ct_ref = improved_ct_core<uint64_t>(x, y, w, ctx.mu, ctx.p,
                                                   ctx.n_bits, ctx.r2n_mask);
    ASSERT_EQ(ct.x.v, ct_ref.x);
    ASSERT_EQ(ct.y.v, ct_ref.y);

    OpCounter::reset();
    const auto gs = improved_gs_core<OpCounter>(x, y, 13, w, ctx.mu, ctx.p,
                                                ctx.n_bits, ctx.r2n_mask);
    const auto gs_now = snapshot();
    const auto gs_ref = improved_gs_core<uint64_t>(x, y, 13, w, ctx.mu,
                                                   ctx.p, ctx.n_bits,
                                                   ctx.r2n_mask);
    ASSERT_EQ(gs.x.v, gs_ref.x);
    ASSERT_EQ(gs.y.v, gs_ref.y);

    if (i == 0) {
      mp_profile = mp_now;
      ct_profile = ct_now;
      gs_profile = gs_now;
    } else {
      ASSERT_EQ(mp_now, mp_profile) << "op mix varied with input at i=" << i;
      ASSERT_EQ(ct_now, ct_profile) << "op mix varied with input at i=" << i;
      ASSERT_EQ(gs_now, gs_profile) << "op mix varied with input at i=" << i;
    }
  }

  const OpProfile mp_expected{3, 1, 0, 1, 2};
  ASSERT_EQ(mp_profile, mp_expected);
  const OpProfile ct_expected{3, 3, 1, 1, 2};
  ASSERT_EQ(ct_profile, ct_expected);
  const OpProfile gs_expected{3, 3, 1, 1, 2};
  ASSERT_EQ(gs_profile, gs_expected);
}
