// AVX2 + FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here runs unless dispatch confirmed CPU support.

#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <limits>

#include "exp_coefficients.hpp"
#include "kernel_variants.hpp"

namespace recsim::simd {

namespace {

using detail::kLanes;

inline __m256d exp4(__m256d x) noexcept {
    const __m256d keep = _mm256_cmp_pd(x, _mm256_set1_pd(detail::kExpFlushBelow), _CMP_GE_OQ);
    // Clamp so masked-out lanes still build a valid exponent.
    x = _mm256_max_pd(x, _mm256_set1_pd(detail::kExpFlushBelow));
    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(detail::kLog2e)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(detail::kLn2Hi), x);
    r = _mm256_fnmadd_pd(n, _mm256_set1_pd(detail::kLn2Lo), r);
    __m256d p = _mm256_set1_pd(detail::kExpTaylor[0]);
    for (int i = 1; i <= detail::kExpDegree; ++i) {
        p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(detail::kExpTaylor[i]));
    }
    // n is integral with |n| < 2^51: adding 1.5 * 2^52 leaves it in the low mantissa bits.
    const __m256d magic = _mm256_set1_pd(0x1.8p52);
    __m256i bits = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)), _mm256_castpd_si256(magic));
    bits = _mm256_slli_epi64(_mm256_add_epi64(bits, _mm256_set1_epi64x(1023)), 52);
    const __m256d result = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
    return _mm256_and_pd(result, keep);
}

inline double finish_lanes(__m256d acc_vec, const double* tail, std::size_t tail_len,
                           double (*term)(double, double), double center) noexcept {
    alignas(32) double acc[kLanes];
    _mm256_store_pd(acc, acc_vec);
    for (std::size_t i = 0; i < tail_len; ++i) {
        acc[i] += term(tail[i], center);
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

inline double identity_term(double x, double) noexcept { return x; }
inline double square_term(double x, double) noexcept { return x * x; }
inline double abs_dev_term(double x, double c) noexcept { return std::fabs(x - c); }

void fuse_payoffs(const double* score, const double* virality, double omega, double* out, std::size_t k) {
    const double content_weight = 1.0 - omega;
    const __m256d cw = _mm256_set1_pd(content_weight);
    const __m256d vw = _mm256_set1_pd(omega);
    std::size_t j = 0;
    for (; j + kLanes <= k; j += kLanes) {
        const __m256d a = _mm256_mul_pd(cw, _mm256_loadu_pd(score + j));
        const __m256d b = _mm256_mul_pd(vw, _mm256_loadu_pd(virality + j));
        _mm256_storeu_pd(out + j, _mm256_add_pd(a, b));
    }
    for (; j < k; ++j) {
        out[j] = content_weight * score[j] + omega * virality[j];
    }
}

void exp_nonpositive(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(x + i)));
    }
    if (i < n) {
        alignas(32) double buf[kLanes] = {0.0, 0.0, 0.0, 0.0};
        for (std::size_t t = i; t < n; ++t) buf[t - i] = x[t];
        _mm256_store_pd(buf, exp4(_mm256_load_pd(buf)));
        for (std::size_t t = i; t < n; ++t) out[t] = buf[t - i];
    }
}

void softmax(const double* payoffs, double alpha, double* out, std::size_t k) {
    const __m256d a = _mm256_set1_pd(alpha);
    __m256d top4 = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    std::size_t j = 0;
    for (; j + kLanes <= k; j += kLanes) {
        const __m256d s = _mm256_mul_pd(a, _mm256_loadu_pd(payoffs + j));
        _mm256_storeu_pd(out + j, s);
        top4 = _mm256_max_pd(top4, s);
    }
    alignas(32) double lanes[kLanes];
    _mm256_store_pd(lanes, top4);
    double top = lanes[0];
    for (int l = 1; l < kLanes; ++l) top = lanes[l] > top ? lanes[l] : top;
    for (std::size_t t = j; t < k; ++t) {
        out[t] = alpha * payoffs[t];
        top = out[t] > top ? out[t] : top;
    }

    const __m256d shift = _mm256_set1_pd(top);
    __m256d acc = _mm256_setzero_pd();
    j = 0;
    for (; j + kLanes <= k; j += kLanes) {
        const __m256d e = exp4(_mm256_sub_pd(_mm256_loadu_pd(out + j), shift));
        _mm256_storeu_pd(out + j, e);
        acc = _mm256_add_pd(acc, e);
    }
    if (j < k) {
        alignas(32) double buf[kLanes] = {0.0, 0.0, 0.0, 0.0};
        for (std::size_t t = j; t < k; ++t) buf[t - j] = out[t] - top;
        _mm256_store_pd(buf, exp4(_mm256_load_pd(buf)));
        for (std::size_t t = j; t < k; ++t) out[t] = buf[t - j];
    }
    const double total = finish_lanes(acc, out + j, k - j, identity_term, 0.0);

    const __m256d denom = _mm256_set1_pd(total);
    j = 0;
    for (; j + kLanes <= k; j += kLanes) {
        _mm256_storeu_pd(out + j, _mm256_div_pd(_mm256_loadu_pd(out + j), denom));
    }
    for (; j < k; ++j) {
        out[j] = out[j] / total;
    }
}

double sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    }
    return finish_lanes(acc, x + i, n - i, identity_term, 0.0);
}

double sum_squares(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    return finish_lanes(acc, x + i, n - i, square_term, 0.0);
}

double sum_abs_deviation(const double* x, std::size_t n, double center) {
    const __m256d c = _mm256_set1_pd(center);
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, d));
    }
    return finish_lanes(acc, x + i, n - i, abs_dev_term, center);
}

constexpr KernelTable kAvx2{
    "avx2", fuse_payoffs, softmax, exp_nonpositive, sum, sum_squares, sum_abs_deviation,
};

}  // namespace

namespace detail {
const KernelTable& avx2_table() noexcept { return kAvx2; }
}  // namespace detail

}  // namespace recsim::simd
