#include "polyreg/bitset.hpp"

#include "polyreg/errors.hpp"

namespace polyreg {

void Bitset::trim()
{
    if (nbits_ % 64 != 0) words_.back() &= (Word(1) << (nbits_ % 64)) - 1;
}

void Bitset::or_shifted(const Bitset& other, std::size_t shift)
{
    require(other.nbits_ == nbits_, "Bitset::or_shifted: size mismatch");
    if (shift >= nbits_) return;
    kernels::active().or_shifted(words_.data(), other.words_.data(), words_.size(), shift);
    trim();
}

void Bitset::andnot(const Bitset& other)
{
    require(other.nbits_ == nbits_, "Bitset::andnot: size mismatch");
    kernels::active().andnot(words_.data(), words_.data(), other.words_.data(), words_.size());
}

std::size_t Bitset::count() const { return kernels::active().popcount(words_.data(), words_.size()); }

std::size_t Bitset::find_next(std::size_t from) const
{
    if (from >= nbits_) return nbits_;
    std::size_t w = from / 64;
    Word cur = words_[w] & (~Word(0) << (from % 64));
    while (true) {
        if (cur != 0) {
            std::size_t i = w * 64 + static_cast<std::size_t>(__builtin_ctzll(cur));
            return i < nbits_ ? i : nbits_;
        }
        if (++w >= words_.size()) return nbits_;
        cur = words_[w];
    }
}

std::size_t Bitset::find_next_clear(std::size_t from) const
{
    if (from >= nbits_) return nbits_;
    std::size_t w = from / 64;
    Word cur = ~words_[w] & (~Word(0) << (from % 64));
    while (true) {
        if (cur != 0) {
            std::size_t i = w * 64 + static_cast<std::size_t>(__builtin_ctzll(cur));
            return i < nbits_ ? i : nbits_;
        }
        if (++w >= words_.size()) return nbits_;
        cur = ~words_[w];
    }
}

std::vector<std::size_t> Bitset::ones() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = find_next(0); i < nbits_; i = find_next(i + 1)) out.push_back(i);
    return out;
}

} // namespace polyreg
