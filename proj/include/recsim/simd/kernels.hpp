#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace recsim::simd {

/**
 * Data-parallel inner loops of the simulator.
 *
 * Every variant follows the same operation sequence, including a four-lane
 * blocked order for reductions and explicit fused multiply-adds in the
 * exponential, so the scalar reference and each vector variant produce
 * bit-identical results. Reductions treat the tail of a length that is not a
 * multiple of four as zero-padded lanes.
 */
struct KernelTable {
    const char* name;

    /// out[j] = (1 - omega) * score[j] + omega * virality[j]
    void (*fuse_payoffs)(const double* score, const double* virality, double omega, double* out, std::size_t k);

    /// out = softmax(alpha * payoffs) with max subtraction.
    void (*softmax)(const double* payoffs, double alpha, double* out, std::size_t k);

    /// out[i] = exp(x[i]) for x[i] <= 0; arguments below -708 flush to 0.
    void (*exp_nonpositive)(const double* x, double* out, std::size_t n);

    double (*sum)(const double* x, std::size_t n);
    double (*sum_squares)(const double* x, std::size_t n);
    double (*sum_abs_deviation)(const double* x, std::size_t n, double center);
};

enum class Isa { scalar, avx2 };

const KernelTable& scalar_kernels() noexcept;

/// nullptr when the variant is not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels() noexcept;

bool isa_available(Isa isa) noexcept;
std::optional<Isa> parse_isa(std::string_view name) noexcept;  // "scalar" | "avx2"

/// Widest supported variant unless RECSIM_KERNEL or select_isa() says otherwise.
const KernelTable& active() noexcept;

/// Throws ConfigError when the variant is unavailable on this machine.
void select_isa(Isa isa);
void select_best_isa() noexcept;

// Span conveniences over the active table.
void fuse_payoffs(std::span<const double> score, std::span<const double> virality, double omega,
                  std::span<double> out);
void softmax(std::span<const double> payoffs, double alpha, std::span<double> out);
double sum(std::span<const double> x);
double sum_squares(std::span<const double> x);
double sum_abs_deviation(std::span<const double> x, double center);

}  // namespace recsim::simd
