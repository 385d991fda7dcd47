#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "polyreg/kernels.hpp"

namespace polyreg {

/// Fixed-size bitset over [0, size) driven by the dispatched kernels. Bits
/// past size() are kept clear.
class Bitset {
public:
    using Word = kernels::Word;

    Bitset() = default;
    explicit Bitset(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }
    bool test(std::size_t i) const { return words_[i / 64] >> (i % 64) & 1u; }
    void set(std::size_t i) { words_[i / 64] |= Word(1) << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(Word(1) << (i % 64)); }

    /// this |= other << shift (other must have the same size).
    void or_shifted(const Bitset& other, std::size_t shift);
    /// this &= ~other
    void andnot(const Bitset& other);
    std::size_t count() const;
    /// Smallest set index >= from, or size() when none.
    std::size_t find_next(std::size_t from) const;
    std::size_t find_next_clear(std::size_t from) const;
    std::vector<std::size_t> ones() const;

    const std::vector<Word>& words() const { return words_; }
    friend bool operator==(const Bitset&, const Bitset&) = default;

private:
    void trim();
    std::size_t nbits_ = 0;
    std::vector<Word> words_;
};

} // namespace polyreg
