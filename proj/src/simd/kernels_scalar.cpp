#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "exp_coefficients.hpp"
#include "kernel_variants.hpp"

namespace recsim::simd {

namespace {

using detail::kLanes;

double exp_one(double x) noexcept {
    if (!(x >= detail::kExpFlushBelow)) {
        return 0.0;
    }
    const double n = std::nearbyint(x * detail::kLog2e);
    double r = std::fma(-n, detail::kLn2Hi, x);
    r = std::fma(-n, detail::kLn2Lo, r);
    double p = detail::kExpTaylor[0];
    for (int i = 1; i <= detail::kExpDegree; ++i) {
        p = std::fma(p, r, detail::kExpTaylor[i]);
    }
    const auto biased = static_cast<std::uint64_t>(static_cast<std::int64_t>(n) + 1023);
    return p * std::bit_cast<double>(biased << 52);
}

// Lane-blocked reduction matching the four-wide vector accumulators.
template <class Term>
double blocked_sum(std::size_t n, Term term) noexcept {
    double acc[kLanes] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        acc[i % kLanes] += term(i);
    }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void fuse_payoffs(const double* score, const double* virality, double omega, double* out, std::size_t k) {
    const double content_weight = 1.0 - omega;
    for (std::size_t j = 0; j < k; ++j) {
        out[j] = content_weight * score[j] + omega * virality[j];
    }
}

void exp_nonpositive(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = exp_one(x[i]);
    }
}

void softmax(const double* payoffs, double alpha, double* out, std::size_t k) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
        out[j] = alpha * payoffs[j];
        top = std::max(top, out[j]);
    }
    for (std::size_t j = 0; j < k; ++j) {
        out[j] = exp_one(out[j] - top);
    }
    const double total = blocked_sum(k, [out](std::size_t j) { return out[j]; });
    for (std::size_t j = 0; j < k; ++j) {
        out[j] = out[j] / total;
    }
}

double sum(const double* x, std::size_t n) {
    return blocked_sum(n, [x](std::size_t i) { return x[i]; });
}

double sum_squares(const double* x, std::size_t n) {
    return blocked_sum(n, [x](std::size_t i) { return x[i] * x[i]; });
}

double sum_abs_deviation(const double* x, std::size_t n, double center) {
    return blocked_sum(n, [x, center](std::size_t i) { return std::fabs(x[i] - center); });
}

constexpr KernelTable kScalar{
    "scalar", fuse_payoffs, softmax, exp_nonpositive, sum, sum_squares, sum_abs_deviation,
};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

}  // namespace recsim::simd
