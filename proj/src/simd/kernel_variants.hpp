#pragma once

#include "recsim/simd/kernels.hpp"

namespace recsim::simd::detail {

#if defined(RECSIM_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

}  // namespace recsim::simd::detail
