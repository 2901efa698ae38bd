// AVX2 + FMA variants. Compiled with -mavx2 -mfma; only reached after a
// runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "orbihear/kernels.hpp"

namespace orbihear::kernels {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Cephes double-precision exp: Pade approximant after reduction by ln 2.
inline __m256d exp_pd(__m256d x) {
  const __m256d lo = _mm256_set1_pd(-708.3964185322641);
  const __m256d hi = _mm256_set1_pd(709.782712893384);
  const __m256d underflow = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d fx = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634073599)),
                                     _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  x = _mm256_fnmadd_pd(fx, _mm256_set1_pd(6.93145751953125E-1), x);
  x = _mm256_fnmadd_pd(fx, _mm256_set1_pd(1.42860682030941723212E-6), x);

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d px = _mm256_fmadd_pd(_mm256_set1_pd(1.26177193074810590878E-4), xx,
                               _mm256_set1_pd(3.02994407707441961300E-2));
  px = _mm256_fmadd_pd(px, xx, _mm256_set1_pd(9.99999999999999999910E-1));
  px = _mm256_mul_pd(px, x);
  __m256d qx = _mm256_fmadd_pd(_mm256_set1_pd(3.00198505138664455042E-6), xx,
                               _mm256_set1_pd(2.52448340349684104192E-3));
  qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(2.27265548208155028766E-1));
  qx = _mm256_fmadd_pd(qx, xx, _mm256_set1_pd(2.00000000000000000009E0));

  __m256d r = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  r = _mm256_fmadd_pd(_mm256_set1_pd(2.0), r, _mm256_set1_pd(1.0));

  // Multiply by 2^fx through the exponent field.
  const __m128i n32 = _mm256_cvtpd_epi32(fx);
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  n64 = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
  const __m256d pow2 = _mm256_castsi256_pd(_mm256_slli_epi64(n64, 52));
  r = _mm256_mul_pd(r, pow2);
  return _mm256_blendv_pd(r, _mm256_setzero_pd(), underflow);
}

void rotation_sum(std::span<const double> sin_half_r, std::span<const double> cos_half_r,
                  std::span<const double> sin_half_phase, std::span<const double> cos_half_phase,
                  std::span<double> out) {
  const std::size_t count = out.size();
  const std::size_t phases = sin_half_phase.size();
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    const __m256d sr = _mm256_loadu_pd(sin_half_r.data() + j);
    const __m256d cr = _mm256_loadu_pd(cos_half_r.data() + j);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t l = 0; l < phases; ++l) {
      const __m256d s =
          _mm256_fmadd_pd(sr, _mm256_set1_pd(cos_half_phase[l]), _mm256_mul_pd(cr, _mm256_set1_pd(sin_half_phase[l])));
      acc = _mm256_add_pd(acc, _mm256_div_pd(one, _mm256_mul_pd(four, _mm256_mul_pd(s, s))));
    }
    _mm256_storeu_pd(out.data() + j, acc);
  }
  for (; j < count; ++j) {
    double acc = 0.0;
    for (std::size_t l = 0; l < phases; ++l) {
      const double s = std::fma(sin_half_r[j], cos_half_phase[l], cos_half_r[j] * sin_half_phase[l]);
      acc += 1.0 / (4.0 * s * s);
    }
    out[j] = acc;
  }
}

double weighted_exp_sum(std::span<const double> weights, std::span<const double> lambdas, double t) {
  const std::size_t count = weights.size();
  const __m256d minus_t = _mm256_set1_pd(-t);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t l = 0;
  for (; l + 8 <= count; l += 8) {
    const __m256d e0 = exp_pd(_mm256_mul_pd(minus_t, _mm256_loadu_pd(lambdas.data() + l)));
    const __m256d e1 = exp_pd(_mm256_mul_pd(minus_t, _mm256_loadu_pd(lambdas.data() + l + 4)));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(weights.data() + l), e0, acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(weights.data() + l + 4), e1, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; l < count; ++l) acc += weights[l] * std::exp(-t * lambdas[l]);
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t count = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc);
  }
  double s = hsum(acc);
  for (; i < count; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

const KernelTable* avx2_table() noexcept {
  static const KernelTable table{rotation_sum, weighted_exp_sum, dot};
  return &table;
}

}  // namespace orbihear::kernels
