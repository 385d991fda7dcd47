#pragma once

#include <cstddef>
#include <cstdint>

// Word-level bitset kernels. Each has a portable scalar version and an AVX2
// version; the AVX2 one is picked at runtime when the CPU supports it.
namespace polyreg::kernels {

using Word = std::uint64_t;

enum class Isa { scalar, avx2 };

struct Table {
    // dst |= src << shift, over nwords words of both arrays. Safe when dst == src.
    void (*or_shifted)(Word* dst, const Word* src, std::size_t nwords, std::size_t shift);
    // dst = a & ~b
    void (*andnot)(Word* dst, const Word* a, const Word* b, std::size_t nwords);
    std::size_t (*popcount)(const Word* a, std::size_t nwords);
};

bool available(Isa isa);
const Table& table(Isa isa);
Isa best_isa();
const char* name(Isa isa);

// Kernels used by Bitset. Defaults to best_isa(); set_isa() overrides it
// process-wide (used by tests).
const Table& active();
Isa active_isa();
void set_isa(Isa isa);

namespace scalar {
void or_shifted(Word* dst, const Word* src, std::size_t nwords, std::size_t shift);
void andnot(Word* dst, const Word* a, const Word* b, std::size_t nwords);
std::size_t popcount(const Word* a, std::size_t nwords);
} // namespace scalar

#if defined(__x86_64__)
namespace avx2 {
void or_shifted(Word* dst, const Word* src, std::size_t nwords, std::size_t shift);
void andnot(Word* dst, const Word* a, const Word* b, std::size_t nwords);
std::size_t popcount(const Word* a, std::size_t nwords);
} // namespace avx2
#endif

} // namespace polyreg::kernels
