#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "nttk/butterfly.hpp"
#include "nttk/int_util.hpp"
#include "nttk/params.hpp"
#include "nttk/reduction.hpp"

// In-place iterative transforms over Z_p, one driver pair per butterfly
// kind. Forward: natural-order coefficients in, bit-reversed evaluations
// out (slot i holds f(w^bitrev(i))). Inverse: bit-reversed evaluations in,
// natural-order canonical coefficients out, with a dedicated N^{-1} pass
// at the end. The inverse canonicalizes its input first so lazy spectra
// from any forward kind can be fed straight back in.
//
// The observer hooks exist for bound audits: after each completed layer
// the whole working vector is handed over, so a test can assert the
// documented growth envelope layer by layer.

namespace nttk {

enum class Ordering { natural, bit_reversed };

using Polynomial = std::vector<uint64_t>;  // natural order, canonical

struct Spectrum {
  std::vector<uint64_t> values;
  Ordering ordering = Ordering::bit_reversed;
};

using LayerObserver =
    std::function<void(unsigned layer, const std::vector<uint64_t>& state)>;

inline void canonicalize(std::vector<uint64_t>& v, uint64_t p) {
  for (auto& x : v) x %= p;
}

[[nodiscard]] inline std::vector<uint64_t> bit_reverse_permutation(
    const std::vector<uint64_t>& v) {
  NTTK_REQUIRE(!v.empty() && is_power_of_two(v.size()),
               "bit_reverse_permutation: size must be a power of two");
  const unsigned bits = floor_log2(v.size());
  std::vector<uint64_t> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    out[bit_reverse(i, bits)] = v[i];
  }
  return out;
}

[[nodiscard]] inline std::vector<uint64_t> to_natural_order(
    const Spectrum& s) {
  return s.ordering == Ordering::natural ? s.values
                                         : bit_reverse_permutation(s.values);
}

// Worst-case value the forward transform can leave in a spectrum slot.
[[nodiscard]] inline uint64_t spectrum_value_bound(const NttParams& P,
                                                   ButterflyKind kind) {
  switch (kind) {
    case ButterflyKind::ntl: return P.p;
    case ButterflyKind::harvey: return uint64_t(2) * P.p;
    case ButterflyKind::scott: return uint64_t(P.size) * P.p;
    case ButterflyKind::improved: return uint64_t(P.log2_size + 1) * P.p;
  }
  return 0;
}

namespace detail {

// Splitting pass, len = N/2 down to 1. Serves both twiddle layouts: the
// ntl/harvey/scott tables hold one entry per in-block index (shared across
// blocks), the improved table one entry per block.
template <class Body>
inline void run_split_layers(std::vector<uint64_t>& a, uint32_t N,
                             bool per_index_tables, const Body& body,
                             const LayerObserver& observer) {
  size_t cursor = 0;
  unsigned layer = 0;
  for (uint32_t len = N / 2; len >= 1; len /= 2) {
    ++layer;
    const uint32_t blocks = N / (2 * len);
    for (uint32_t b = 0; b < blocks; ++b) {
      const size_t base = size_t(b) * 2 * len;
      for (uint32_t j = 0; j < len; ++j) {
        const size_t ti = cursor + (per_index_tables ? j : b);
        body(layer, b, j, ti, a[base + j], a[base + j + len]);
      }
    }
    cursor += per_index_tables ? len : blocks;
    if (observer) observer(layer, a);
  }
}

// Merging pass, len = 1 up to N/2, one twiddle per block.
template <class Body>
inline void run_merge_layers(std::vector<uint64_t>& a, uint32_t N,
                             const Body& body, const LayerObserver& observer) {
  size_t cursor = 0;
  unsigned layer = 0;
  for (uint32_t len = 1; len < N; len *= 2) {
    ++layer;
    const uint32_t blocks = N / (2 * len);
    for (uint32_t b = 0; b < blocks; ++b) {
      const size_t base = size_t(b) * 2 * len;
      for (uint32_t j = 0; j < len; ++j) {
        body(layer, b, j, cursor + b, a[base + j], a[base + j + len]);
      }
    }
    cursor += blocks;
    if (observer) observer(layer, a);
  }
}

}  // namespace detail

namespace detail {

// Dispatches one forward pass over `a`, already length-checked and
// canonical. Shared by the checked entry points and the benchmark loop,
// which must not pay for validation inside the timed region.
inline void forward_kernel(std::vector<uint64_t>& a, const NttParams& P,
                           ButterflyKind kind, const LayerObserver& observer) {
  const ReductionContext& ctx = P.ctx;
  switch (kind) {
    case ButterflyKind::ntl: {
      NTTK_REQUIRE(P.fwd.dif_ntl.size() + 1 == P.size,
                   "ntt_forward: ntl tables missing");
      detail::run_split_layers(
          a, P.size, /*per_index_tables=*/true,
          [&](unsigned, uint32_t, uint32_t, size_t ti, uint64_t& x,
              uint64_t& y) {
            const NtlTwiddle& tw = P.fwd.dif_ntl[ti];
            const auto out = ntl_core(x, y, tw.w, tw.w_quot, ctx.p,
                                      ctx.n_bits, ctx.beta_mask);
            x = out.x;
            y = out.y;
          },
          observer);
      break;
    }
    case ButterflyKind::harvey: {
      NTTK_REQUIRE(P.fwd.dif_mont.size() + 1 == P.size,
                   "ntt_forward: montgomery tables missing");
      detail::run_split_layers(
          a, P.size, /*per_index_tables=*/true,
          [&](unsigned, uint32_t, uint32_t, size_t ti, uint64_t& x,
              uint64_t& y) {
            const auto out =
                harvey_core(x, y, P.fwd.dif_mont[ti], ctx.p_inv_beta, ctx.p,
                            ctx.n_bits, ctx.beta_mask);
            x = out.x;
            y = out.y;
          },
          observer);
      break;
    }
    case ButterflyKind::scott: {
      NTTK_REQUIRE(P.fwd.dif_mont.size() + 1 == P.size,
                   "ntt_forward: montgomery tables missing");
      NTTK_REQUIRE(P.scott.lazy_level >= 1, "ntt_forward: scott plan missing");
      const uint64_t offset =
          uint64_t(P.size / P.scott.lazy_level) * ctx.p;
      const auto& guard = P.scott.guard;
      detail::run_split_layers(
          a, P.size, /*per_index_tables=*/true,
          [&](unsigned layer, uint32_t b, uint32_t j, size_t ti, uint64_t& x,
              uint64_t& y) {
            if (guard && guard(layer, b, j)) {
              x %= ctx.p;
              y %= ctx.p;
            }
            const auto out =
                scott_core(x, y, P.fwd.dif_mont[ti], offset,
                           ctx.neg_p_inv_beta, ctx.p, ctx.n_bits,
                           ctx.beta_mask);
            x = out.x;
            y = out.y;
          },
          observer);
      break;
    }
    case ButterflyKind::improved: {
      NTTK_REQUIRE(P.fwd.ct_plantard.size() + 1 == P.size,
                   "ntt_forward: plantard tables missing");
      detail::run_split_layers(
          a, P.size, /*per_index_tables=*/false,
          [&](unsigned, uint32_t, uint32_t, size_t ti, uint64_t& x,
              uint64_t& y) {
            const auto out = improved_ct_core<uint64_t>(
                x, y, P.fwd.ct_plantard[ti], ctx.mu, ctx.p, ctx.n_bits,
                ctx.r2n_mask);
            x = out.x;
            y = out.y;
          },
          observer);
      break;
    }
  }
}

}  // namespace detail

[[nodiscard]] inline Spectrum ntt_forward_observed(
    const Polynomial& f, const NttParams& P, ButterflyKind kind,
    const LayerObserver& observer) {
  NTTK_REQUIRE(P.has(kind), "ntt_forward: kind not built into these params");
  NTTK_REQUIRE(f.size() == P.size, "ntt_forward: wrong input length");
  for (const uint64_t c : f) {
    NTTK_REQUIRE(c < P.p, "ntt_forward: coefficients must be canonical");
  }
  std::vector<uint64_t> a = f;
  detail::forward_kernel(a, P, kind, observer);
  return Spectrum{std::move(a), Ordering::bit_reversed};
}

[[nodiscard]] inline Spectrum ntt_forward(const Polynomial& f,
                                          const NttParams& P,
                                          ButterflyKind kind) {
  return ntt_forward_observed(f, P, kind, nullptr);
}

// In-place forward over a canonical buffer of length P.size. No
// validation, no allocation: the benchmark timing path.
inline void ntt_forward_inplace(std::vector<uint64_t>& a, const NttParams& P,
                                ButterflyKind kind) {
  detail::forward_kernel(a, P, kind, nullptr);
}

[[nodiscard]] inline Polynomial intt_inverse_observed(
    const Spectrum& s, const NttParams& P, ButterflyKind kind,
    const LayerObserver& observer) {
  NTTK_REQUIRE(P.has(kind), "intt_inverse: kind not built into these params");
  NTTK_REQUIRE(s.values.size() == P.size, "intt_inverse: wrong input length");
  NTTK_REQUIRE(s.ordering == Ordering::bit_reversed,
               "intt_inverse: spectrum must be in butterfly order");

  const ReductionContext& ctx = P.ctx;
  std::vector<uint64_t> a = s.values;
  canonicalize(a, ctx.p);

  switch (kind) {
    case ButterflyKind::ntl: {
      NTTK_REQUIRE(P.inv.gs_ntl.size() + 1 == P.size,
                   "intt_inverse: ntl tables missing");
      detail::run_merge_layers(
          a, P.size,
          [&](unsigned, uint32_t, uint32_t, size_t ti, uint64_t& x,
              uint64_t& y) {
            const NtlTwiddle& tw = P.inv.gs_ntl[ti];
            const auto out = ntl_core(x, y, tw.w, tw.w_quot, ctx.p,
                                      ctx.n_bits, ctx.beta_mask);
            x = out.x;
            y = out.y;
          },
          observer);
      break;
    }
    case ButterflyKind::harvey: {
      NTTK_REQUIRE(P.inv.gs_mont.size() + 1 == P.size,
                   "intt_inverse: montgomery tables missing");
      detail::run_merge_layers(
          a, P.size,
          [&](unsigned, uint32_t, uint32_t, size_t ti, uint64_t& x,
              uint64_t& y) {
            const auto out =
                harvey_core(x, y, P.inv.gs_mont[ti], ctx.p_inv_beta, ctx.p,
                            ctx.n_bits, ctx.beta_mask);
            x = out.x;
            y = out.y;
          },
          observer);
      break;
    }
    case ButterflyKind::scott: {
      NTTK_REQUIRE(P.inv.gs_mont.size() + 1 == P.size,
                   "intt_inverse: montgomery tables missing");
      NTTK_REQUIRE(P.scott.lazy_level >= 1,
                   "intt_inverse: scott plan missing");
      const uint64_t offset =
          uint64_t(P.size / P.scott.lazy_level) * ctx.p;
      const auto& guard = P.scott.guard;
      detail::run_merge_layers(
          a, P.size,
          [&](unsigned layer, uint32_t b, uint32_t j, size_t ti, uint64_t& x,
              uint64_t& y) {
            if (guard && guard(layer, b, j)) {
              x %= ctx.p;
              y %= ctx.p;
            }
            const auto out =
                scott_core(x, y, P.inv.gs_mont[ti], offset,
                           ctx.neg_p_inv_beta, ctx.p, ctx.n_bits,
                           ctx.beta_mask);
            x = out.x;
            y = out.y;
          },
          observer);
      break;
    }
    case ButterflyKind::improved: {
      NTTK_REQUIRE(P.inv.gs_plantard.size() + 1 == P.size,
                   "intt_inverse: plantard tables missing");
      detail::run_merge_layers(
          a, P.size,
          [&](unsigned layer, uint32_t, uint32_t, size_t ti, uint64_t& x,
              uint64_t& y) {
            const uint64_t off = uint64_t(ctx.p) << (layer - 1);
            const auto out = improved_gs_core<uint64_t>(
                x, y, off, P.inv.gs_plantard[ti], ctx.mu, ctx.p, ctx.n_bits,
                ctx.r2n_mask);
            x = out.x;
            y = out.y;
          },
          observer);
      break;
    }
  }

  if (kind == ButterflyKind::improved) {
    // One fused multiply per slot: scales by N^{-1} and lands canonical.
    // After the merge layers every slot is below 2^ell * p, exactly the
    // operand bound of the fused multiply.
    for (auto& v : a) {
      v = modified_plantard_core<uint64_t>(P.n_inv_hat, v, ctx.mu, ctx.p,
                                           ctx.n_bits, ctx.r2n_mask);
    }
  } else {
    for (auto& v : a) {
      v = mul_mod(v, P.n_inv, ctx.p);
    }
  }
  return a;
}

[[nodiscard]] inline Polynomial intt_inverse(const Spectrum& s,
                                             const NttParams& P,
                                             ButterflyKind kind) {
  return intt_inverse_observed(s, P, kind, nullptr);
}

// Slotwise product of two spectra in matching order. For the improved
// kind one operand is re-encoded so a single fused multiply handles both
// the product and the reduction; the other operand may stay lazy (any
// value below 2^ell * p, which every forward kind respects).
[[nodiscard]] inline Spectrum pointwise_multiply(const Spectrum& lhs,
                                                 const Spectrum& rhs,
                                                 const NttParams& P,
                                                 ButterflyKind kind) {
  NTTK_REQUIRE(lhs.values.size() == P.size && rhs.values.size() == P.size,
               "pointwise_multiply: wrong spectrum length");
  NTTK_REQUIRE(lhs.ordering == rhs.ordering,
               "pointwise_multiply: mixed orderings");
  const ReductionContext& ctx = P.ctx;
  std::vector<uint64_t> out(P.size);
  if (kind == ButterflyKind::improved) {
    for (size_t i = 0; i < out.size(); ++i) {
      out[i] = modified_plantard_mul(
          to_plantard_domain(lhs.values[i] % ctx.p, ctx), rhs.values[i], ctx);
    }
  } else {
    for (size_t i = 0; i < out.size(); ++i) {
      out[i] = mul_mod(lhs.values[i] % ctx.p, rhs.values[i] % ctx.p, ctx.p);
    }
  }
  return {std::move(out), lhs.ordering};
}

[[nodiscard]] inline Polynomial cyclic_convolution_via_ntt(
    const Polynomial& x, const Polynomial& y, const NttParams& P,
    ButterflyKind kind = ButterflyKind::improved) {
  const Spectrum xs = ntt_forward(x, P, kind);
  const Spectrum ys = ntt_forward(y, P, kind);
  const Spectrum cs = pointwise_multiply(xs, ys, P, kind);
  return intt_inverse(cs, P, kind);
}

// Recursive reference evaluators, plain modular arithmetic only. Both
// return natural order: slot k holds f(w^k).

// Even/odd coefficient split: f(x) = E(x^2) + x*O(x^2).
[[nodiscard]] inline std::vector<uint64_t> fft_recursive_even_odd(
    const std::vector<uint64_t>& f, uint64_t omega, uint64_t p) {
  const size_t N = f.size();
  NTTK_REQUIRE(N >= 1 && is_power_of_two(N),
               "fft_recursive_even_odd: size must be a power of two");
  if (N == 1) return {f[0] % p};
  std::vector<uint64_t> even(N / 2), odd(N / 2);
  for (size_t i = 0; i < N / 2; ++i) {
    even[i] = f[2 * i];
    odd[i] = f[2 * i + 1];
  }
  const uint64_t omega2 = mul_mod(omega, omega, p);
  const auto E = fft_recursive_even_odd(even, omega2, p);
  const auto O = fft_recursive_even_odd(odd, omega2, p);
  std::vector<uint64_t> out(N);
  uint64_t wk = 1;
  for (size_t k = 0; k < N / 2; ++k) {
    const uint64_t t = mul_mod(wk, O[k], p);
    out[k] = (E[k] + t) % p;
    out[k + N / 2] = (E[k] + p - t) % p;
    wk = mul_mod(wk, omega, p);
  }
  return out;
}

// Low/high coefficient split. The half-size results hold the even- and
// odd-indexed evaluations, so interleaving them directly restores natural
// order; no reordering pass is needed at any level.
[[nodiscard]] inline std::vector<uint64_t> fft_recursive_low_high(
    const std::vector<uint64_t>& f, uint64_t omega, uint64_t p) {
  const size_t N = f.size();
  NTTK_REQUIRE(N >= 1 && is_power_of_two(N),
               "fft_recursive_low_high: size must be a power of two");
  if (N == 1) return {f[0] % p};
  std::vector<uint64_t> sum(N / 2), diff(N / 2);
  uint64_t wj = 1;
  for (size_t j = 0; j < N / 2; ++j) {
    sum[j] = (f[j] + f[j + N / 2]) % p;
    diff[j] = mul_mod(wj, (f[j] + p - f[j + N / 2]) % p, p);
    wj = mul_mod(wj, omega, p);
  }
  const uint64_t omega2 = mul_mod(omega, omega, p);
  const auto S = fft_recursive_low_high(sum, omega2, p);
  const auto D = fft_recursive_low_high(diff, omega2, p);
  std::vector<uint64_t> out(N);
  for (size_t k = 0; k < N / 2; ++k) {
    out[2 * k] = S[k];
    out[2 * k + 1] = D[k];
  }
  return out;
}

}  // namespace nttk
