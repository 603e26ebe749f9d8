#pragma once

// Shared constants for the range-reduced exponential used by every kernel
// variant: exp(x) = 2^n * p(r), n = nearest(x / ln 2), r = x - n ln 2,
// p = degree-13 Taylor polynomial evaluated by Horner's rule with FMA.

namespace recsim::simd::detail {

inline constexpr double kLog2e = 1.4426950408889634;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;  // 0x3FE62E42FEE00000
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kExpFlushBelow = -708.0;

inline constexpr int kExpDegree = 13;
// 1/i! for i = 13 down to 0.
inline constexpr double kExpTaylor[kExpDegree + 1] = {
    1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0, 1.0 / 362880.0,
    1.0 / 40320.0,      1.0 / 5040.0,      1.0 / 720.0,      1.0 / 120.0,     1.0 / 24.0,
    1.0 / 6.0,          0.5,               1.0,              1.0,
};

inline constexpr int kLanes = 4;

}  // namespace recsim::simd::detail
