#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "nttk/crt.hpp"
#include "nttk/int_util.hpp"
#include "nttk/reduction.hpp"

// Side-by-side evaluation of the published signed reduction against the
// value it is supposed to produce. The CRT identity pins that value
// exactly: with R = 2^{2n}, A = W*T and h = A*mu mod +-R, the quantity
// K = (h*p - A) / R is an exact integer in (-p/2, p/2) congruent to
// A * (-R^{-1}) mod p. Whenever signed_plantard_redc returns anything
// else, that input pair is a counterexample to the published algorithm;
// search_counterexamples enumerates them.

namespace nttk {

struct CaseReport {
  int64_t W = 0;
  int64_t T = 0;
  int64_t A = 0;           // W * T
  int64_t h = 0;           // A * mu mod +-2^{2n}
  int64_t K = 0;           // (h*p - A) / 2^{2n}, exact
  int64_t alg_output = 0;  // signed_plantard_redc under `semantics`
  ShiftSemantics semantics = ShiftSemantics::arithmetic_floor;
  bool mismatch = false;   // alg_output != K
};

namespace detail {

[[nodiscard]] inline int64_t centered_mul_residue(int64_t A,
                                                  const ReductionContext& ctx) {
  const uint64_t h_u = (static_cast<uint64_t>(A) * ctx.mu) & ctx.r2n_mask;
  if (ctx.two_n() == 64) return static_cast<int64_t>(h_u);
  const uint64_t half = uint64_t(1) << (ctx.two_n() - 1);
  return h_u >= half ? static_cast<int64_t>(h_u) -
                           static_cast<int64_t>(uint64_t(1) << ctx.two_n())
                     : static_cast<int64_t>(h_u);
}

inline void require_signed_inputs(int64_t W, int64_t T,
                                  const ReductionContext& ctx,
                                  const char* who) {
  NTTK_REQUIRE(ctx.fits_signed_plantard_bound(),
               std::string(who) + ": requires p < 2^{n-alpha-1}");
  const int64_t limit = static_cast<int64_t>(ctx.p) << ctx.alpha;
  NTTK_REQUIRE(-limit <= W && W <= limit && -limit <= T && T <= limit,
               std::string(who) + ": inputs exceed p * 2^alpha");
}

}  // namespace detail

// The exact value a correct signed reduction must return for (W, T).
[[nodiscard]] inline int64_t crt_predicted_value(int64_t W, int64_t T,
                                                 const ReductionContext& ctx) {
  detail::require_signed_inputs(W, T, ctx, "crt_predicted_value");
  const int64_t A = W * T;
  const i128 h = detail::centered_mul_residue(A, ctx);
  const i128 R = i128(1) << ctx.two_n();
  const i128 num = h * i128(ctx.p) - i128(A);
  NTTK_REQUIRE(num % R == 0, "crt_predicted_value: inexact division");
  const i128 K = num / R;
  NTTK_REQUIRE(2 * K > -i128(ctx.p) && 2 * K < i128(ctx.p),
               "crt_predicted_value: K escaped (-p/2, p/2)");
  return static_cast<int64_t>(K);
}

[[nodiscard]] inline CaseReport verify_alg6_case(int64_t W, int64_t T,
                                                 const ReductionContext& ctx,
                                                 ShiftSemantics sem) {
  CaseReport rep;
  rep.W = W;
  rep.T = T;
  rep.A = W * T;
  rep.h = detail::centered_mul_residue(rep.A, ctx);
  rep.K = crt_predicted_value(W, T, ctx);
  rep.alg_output = signed_plantard_redc(W, T, ctx, sem);
  rep.semantics = sem;
  rep.mismatch = rep.alg_output != rep.K;
  return rep;
}

struct SearchSpace {
  bool exhaustive = true;
  uint64_t budget = 10'000'000;  // exhaustive: max cases allowed
  uint64_t count = 0;            // random: samples to draw
  uint64_t seed = 0;

  [[nodiscard]] static SearchSpace all(uint64_t budget = 10'000'000) {
    SearchSpace s;
    s.exhaustive = true;
    s.budget = budget;
    return s;
  }
  [[nodiscard]] static SearchSpace random(uint64_t count, uint64_t seed) {
    SearchSpace s;
    s.exhaustive = false;
    s.count = count;
    s.seed = seed;
    return s;
  }
};

struct SearchResult {
  std::vector<CaseReport> mismatches;  // ordered by (W, T), deduplicated
  uint64_t cases_checked = 0;
};

// Enumerates inputs on which the published reduction disagrees with the
// CRT-predicted value. Exhaustive mode walks the full admissible box
// |W|, |T| <= p * 2^alpha in (W, T) ascending order and refuses to start
// if the box exceeds the budget. Random mode draws seeded samples from
// the same box; its output is sorted and deduplicated so a given
// (config, seed) always prints identically.
[[nodiscard]] inline SearchResult search_counterexamples(
    const ReductionContext& ctx, ShiftSemantics sem,
    const SearchSpace& space) {
  NTTK_REQUIRE(ctx.fits_signed_plantard_bound(),
               "search_counterexamples: requires p < 2^{n-alpha-1}");
  const int64_t bound = static_cast<int64_t>(ctx.p) << ctx.alpha;
  SearchResult out;

  if (space.exhaustive) {
    const uint64_t side = static_cast<uint64_t>(2 * bound + 1);
    const uint64_t total = side * side;
    NTTK_REQUIRE(total <= space.budget,
                 "search_counterexamples: case count " +
                     std::to_string(total) + " exceeds budget " +
                     std::to_string(space.budget));
    for (int64_t W = -bound; W <= bound; ++W) {
      for (int64_t T = -bound; T <= bound; ++T) {
        const CaseReport rep = verify_alg6_case(W, T, ctx, sem);
        ++out.cases_checked;
        if (rep.mismatch) out.mismatches.push_back(rep);
      }
    }
    return out;
  }

  Rng rng(space.seed);
  const uint64_t side = static_cast<uint64_t>(2 * bound + 1);
  for (uint64_t i = 0; i < space.count; ++i) {
    const int64_t W = static_cast<int64_t>(rng.below(side)) - bound;
    const int64_t T = static_cast<int64_t>(rng.below(side)) - bound;
    const CaseReport rep = verify_alg6_case(W, T, ctx, sem);
    ++out.cases_checked;
    if (rep.mismatch) out.mismatches.push_back(rep);
  }
  std::sort(out.mismatches.begin(), out.mismatches.end(),
            [](const CaseReport& a, const CaseReport& b) {
              return a.W != b.W ? a.W < b.W : a.T < b.T;
            });
  out.mismatches.erase(
      std::unique(out.mismatches.begin(), out.mismatches.end(),
                  [](const CaseReport& a, const CaseReport& b) {
                    return a.W == b.W && a.T == b.T;
                  }),
      out.mismatches.end());
  return out;
}

}  // namespace nttk
