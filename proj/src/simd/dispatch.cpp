#include <atomic>
#include <cstdlib>
#include <string>

#include "kernel_variants.hpp"
#include "recsim/errors.hpp"

namespace recsim::simd {

namespace {

[[maybe_unused]] bool cpu_has_avx2() noexcept {
#if defined(RECSIM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* table_for(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return &scalar_kernels();
        case Isa::avx2:
            return avx2_kernels();
    }
    return nullptr;
}

const KernelTable* initial_table() noexcept {
    if (const char* env = std::getenv("RECSIM_KERNEL")) {
        if (auto isa = parse_isa(env)) {
            if (const KernelTable* t = table_for(*isa)) return t;
        }
    }
    if (const KernelTable* t = avx2_kernels()) return t;
    return &scalar_kernels();
}

std::atomic<const KernelTable*>& current() noexcept {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

const KernelTable* avx2_kernels() noexcept {
#if defined(RECSIM_HAVE_AVX2)
    static const bool supported = cpu_has_avx2();
    return supported ? &detail::avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

bool isa_available(Isa isa) noexcept { return table_for(isa) != nullptr; }

std::optional<Isa> parse_isa(std::string_view name) noexcept {
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2") return Isa::avx2;
    return std::nullopt;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

void select_isa(Isa isa) {
    const KernelTable* t = table_for(isa);
    if (t == nullptr) {
        throw ConfigError(std::string("kernel variant not available on this machine: ") +
                          (isa == Isa::avx2 ? "avx2" : "scalar"));
    }
    current().store(t, std::memory_order_release);
}

void select_best_isa() noexcept {
    const KernelTable* t = avx2_kernels();
    current().store(t != nullptr ? t : &scalar_kernels(), std::memory_order_release);
}

void fuse_payoffs(std::span<const double> score, std::span<const double> virality, double omega,
                  std::span<double> out) {
    active().fuse_payoffs(score.data(), virality.data(), omega, out.data(), out.size());
}

void softmax(std::span<const double> payoffs, double alpha, std::span<double> out) {
    active().softmax(payoffs.data(), alpha, out.data(), out.size());
}

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

double sum_squares(std::span<const double> x) { return active().sum_squares(x.data(), x.size()); }

double sum_abs_deviation(std::span<const double> x, double center) {
    return active().sum_abs_deviation(x.data(), x.size(), center);
}

}  // namespace recsim::simd
