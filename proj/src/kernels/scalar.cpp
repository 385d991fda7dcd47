#include "polyreg/kernels.hpp"

namespace polyreg::kernels::scalar {

void or_shifted(Word* dst, const Word* src, std::size_t nwords, std::size_t shift)
{
    const std::size_t ws = shift / 64;
    const unsigned bs = shift % 64;
    if (ws >= nwords) return;
    // Descending, so an aliased src is read before it is overwritten.
    for (std::size_t w = nwords; w-- > ws;) {
        Word v = src[w - ws] << bs;
        if (bs != 0 && w > ws) v |= src[w - ws - 1] >> (64 - bs);
        dst[w] |= v;
    }
}

void andnot(Word* dst, const Word* a, const Word* b, std::size_t nwords)
{
    for (std::size_t i = 0; i < nwords; ++i) dst[i] = a[i] & ~b[i];
}

std::size_t popcount(const Word* a, std::size_t nwords)
{
    std::size_t c = 0;
    for (std::size_t i = 0; i < nwords; ++i) c += static_cast<std::size_t>(__builtin_popcountll(a[i]));
    return c;
}

} // namespace polyreg::kernels::scalar
