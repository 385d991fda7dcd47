#if defined(__x86_64__)

#include <immintrin.h>

#include "polyreg/kernels.hpp"

#define AVX2_FN __attribute__((target("avx2")))

namespace polyreg::kernels::avx2 {

AVX2_FN void or_shifted(Word* dst, const Word* src, std::size_t nwords, std::size_t shift)
{
    const std::size_t ws = shift / 64;
    const unsigned bs = shift % 64;
    if (ws >= nwords) return;
    const __m128i left = _mm_cvtsi32_si128(static_cast<int>(bs));
    // a count of 64 makes _mm256_srl_epi64 yield zero, which is what bs == 0 needs
    const __m128i right = _mm_cvtsi32_si128(static_cast<int>(64 - bs));
    std::size_t w = nwords;
    while (w >= ws + 5) {
        w -= 4;
        const __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + (w - ws)));
        const __m256i prev = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + (w - ws - 1)));
        const __m256i v = _mm256_or_si256(_mm256_sll_epi64(cur, left), _mm256_srl_epi64(prev, right));
        __m256i* out = reinterpret_cast<__m256i*>(dst + w);
        _mm256_storeu_si256(out, _mm256_or_si256(_mm256_loadu_si256(out), v));
    }
    while (w-- > ws) {
        Word v = src[w - ws] << bs;
        if (bs != 0 && w > ws) v |= src[w - ws - 1] >> (64 - bs);
        dst[w] |= v;
    }
}

AVX2_FN void andnot(Word* dst, const Word* a, const Word* b, std::size_t nwords)
{
    std::size_t i = 0;
    for (; i + 4 <= nwords; i += 4) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_andnot_si256(vb, va));
    }
    for (; i < nwords; ++i) dst[i] = a[i] & ~b[i];
}

// Nibble-table popcount with per-64-bit horizontal sums.
AVX2_FN std::size_t popcount(const Word* a, std::size_t nwords)
{
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= nwords; i += 4) {
        const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i lo = _mm256_shuffle_epi8(lut, _mm256_and_si256(v, low));
        const __m256i hi = _mm256_shuffle_epi8(lut, _mm256_and_si256(_mm256_srli_epi16(v, 4), low));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(_mm256_add_epi8(lo, hi), _mm256_setzero_si256()));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::size_t c = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < nwords; ++i) c += static_cast<std::size_t>(__builtin_popcountll(a[i]));
    return c;
}

} // namespace polyreg::kernels::avx2

#endif
