#include <atomic>

#include "polyreg/errors.hpp"
#include "polyreg/kernels.hpp"

namespace polyreg::kernels {

namespace {

constexpr Table kScalar{scalar::or_shifted, scalar::andnot, scalar::popcount};
#if defined(__x86_64__)
constexpr Table kAvx2{avx2::or_shifted, avx2::andnot, avx2::popcount};
#endif

std::atomic<int> g_override{-1};

} // namespace

bool available(Isa isa)
{
    if (isa == Isa::scalar) return true;
#if defined(__x86_64__)
    static const bool has_avx2 = __builtin_cpu_supports("avx2");
    return has_avx2;
#else
    return false;
#endif
}

const Table& table(Isa isa)
{
    if (!available(isa)) throw DomainError("requested instruction set is not available on this CPU");
#if defined(__x86_64__)
    if (isa == Isa::avx2) return kAvx2;
#endif
    return kScalar;
}

Isa best_isa() { return available(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

const char* name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa active_isa()
{
    int o = g_override.load(std::memory_order_relaxed);
    return o < 0 ? best_isa() : static_cast<Isa>(o);
}

const Table& active() { return table(active_isa()); }

void set_isa(Isa isa)
{
    table(isa);
    g_override.store(static_cast<int>(isa), std::memory_order_relaxed);
}

} // namespace polyreg::kernels
