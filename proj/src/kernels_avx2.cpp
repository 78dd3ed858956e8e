// AVX2 kernel variants. This translation unit is compiled with -mavx2 on
// x86-64 only; dispatch guards it behind a runtime CPU check. Elementwise
// kernels use plain mul/add (no FMA) so results stay bit-identical to the
// scalar reference.

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "herglotz/errors.hpp"
#include "herglotz/kernels.hpp"

namespace herglotz::kernels {
namespace {

constexpr std::size_t kLanes = 4;

void v_fill(double* out, double c, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) _mm256_storeu_pd(out + i, vc);
  for (; i < n; ++i) out[i] = c;
}

void v_copy(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_loadu_pd(x + i));
  for (; i < n; ++i) out[i] = x[i];
}

void v_neg(const double* x, double* out, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_xor_pd(_mm256_loadu_pd(x + i), sign));
  for (; i < n; ++i) out[i] = -x[i];
}

void v_add(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i,
                     _mm256_add_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) out[i] = x[i] + y[i];
}

void v_sub(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i,
                     _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) out[i] = x[i] - y[i];
}

void v_mul(const double* x, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i,
                     _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) out[i] = x[i] * y[i];
}

void v_div(const double* x, const double* y, double* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vy = _mm256_loadu_pd(y + i);
    if (_mm256_movemask_pd(_mm256_cmp_pd(vy, zero, _CMP_EQ_OQ)))
      throw DomainError("division by zero");
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(x + i), vy));
  }
  for (; i < n; ++i) {
    if (y[i] == 0.0) throw DomainError("division by zero");
    out[i] = x[i] / y[i];
  }
}

void v_sqrt(const double* x, double* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    if (_mm256_movemask_pd(_mm256_cmp_pd(vx, zero, _CMP_LT_OQ)))
      throw DomainError("sqrt of negative value");
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(vx));
  }
  for (; i < n; ++i) {
    if (x[i] < 0.0) throw DomainError("sqrt of negative value");
    out[i] = std::sqrt(x[i]);
  }
}

void v_scale(const double* x, double c, double* out, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(vc, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = c * x[i];
}

void v_axpby(double a, const double* x, double b, const double* y, double* out,
             std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d t1 = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    const __m256d t2 = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(t1, t2));
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

double hadd(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double v_sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double r = hadd(acc);
  for (; i < n; ++i) r += x[i];
  return r;
}

double v_dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    acc = _mm256_add_pd(acc,
                        _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  double r = hadd(acc);
  for (; i < n; ++i) r += x[i] * y[i];
  return r;
}

double v_max_abs(const double* x, std::size_t n) {
  const __m256d mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(mask, _mm256_loadu_pd(x + i)));
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d m2 = _mm_max_pd(lo, hi);
  double m = _mm_cvtsd_f64(_mm_max_sd(m2, _mm_unpackhi_pd(m2, m2)));
  for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

double v_min_val(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  __m256d acc = _mm256_set1_pd(x[0]);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + i));
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d m2 = _mm_min_pd(lo, hi);
  double m = _mm_cvtsd_f64(_mm_min_sd(m2, _mm_unpackhi_pd(m2, m2)));
  for (; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

}  // namespace

namespace detail {
const Ops& avx2_table() {
  static const Ops table = {v_fill, v_copy, v_neg,   v_add, v_sub,
                            v_mul,  v_div,  v_sqrt,  v_scale, v_axpby,
                            v_sum,  v_dot,  v_max_abs, v_min_val};
  return table;
}
}  // namespace detail

}  // namespace herglotz::kernels

#endif  // x86
