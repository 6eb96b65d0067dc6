#pragma once

#include <bit>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace expdomain {

/// Fixed-width bit vector used for truth sets, admissibility masks and
/// possibility subsets. Widths up to 64 bits are stored inline; larger
/// vectors spill to the heap. Bits beyond size() are kept zero.
class Bitset {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;

    explicit Bitset(std::size_t nbits, bool fill = false) : nbits_(nbits) {
        if (word_count() > 1) heap_.resize(word_count(), 0);
        if (fill) {
            for (std::size_t w = 0; w < word_count(); ++w) words()[w] = ~std::uint64_t{0};
            trim();
        }
    }

    static Bitset zeros(std::size_t nbits) { return Bitset(nbits, false); }
    static Bitset ones(std::size_t nbits) { return Bitset(nbits, true); }

    std::size_t size() const { return nbits_; }

    bool test(std::size_t i) const {
        assert(i < nbits_);
        return (words()[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool value = true) {
        assert(i < nbits_);
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words()[i >> 6] |= mask;
        else
            words()[i >> 6] &= ~mask;
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (std::size_t w = 0; w < word_count(); ++w) n += std::popcount(words()[w]);
        return n;
    }

    bool any() const {
        for (std::size_t w = 0; w < word_count(); ++w)
            if (words()[w]) return true;
        return false;
    }
    bool none() const { return !any(); }

    bool intersects(const Bitset& other) const {
        assert(nbits_ == other.nbits_);
        for (std::size_t w = 0; w < word_count(); ++w)
            if (words()[w] & other.words()[w]) return true;
        return false;
    }

    bool is_subset_of(const Bitset& other) const {
        assert(nbits_ == other.nbits_);
        for (std::size_t w = 0; w < word_count(); ++w)
            if (words()[w] & ~other.words()[w]) return false;
        return true;
    }

    Bitset operator&(const Bitset& other) const { return apply(other, [](std::uint64_t a, std::uint64_t b) { return a & b; }); }
    Bitset operator|(const Bitset& other) const { return apply(other, [](std::uint64_t a, std::uint64_t b) { return a | b; }); }
    Bitset operator^(const Bitset& other) const { return apply(other, [](std::uint64_t a, std::uint64_t b) { return a ^ b; }); }

    /// Bits of *this not in `other`.
    Bitset difference(const Bitset& other) const { return apply(other, [](std::uint64_t a, std::uint64_t b) { return a & ~b; }); }

    /// Complement relative to a universe mask: universe & ~*this.
    Bitset complement_in(const Bitset& universe) const { return universe.difference(*this); }

    Bitset& operator&=(const Bitset& o) { return assign(o, [](std::uint64_t a, std::uint64_t b) { return a & b; }); }
    Bitset& operator|=(const Bitset& o) { return assign(o, [](std::uint64_t a, std::uint64_t b) { return a | b; }); }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        if (a.nbits_ != b.nbits_) return false;
        for (std::size_t w = 0; w < a.word_count(); ++w)
            if (a.words()[w] != b.words()[w]) return false;
        return true;
    }

    /// Numeric order: the set interpreted as an unsigned integer with bit 0
    /// least significant. Used for canonical sorting of set families.
    friend std::strong_ordering operator<=>(const Bitset& a, const Bitset& b) {
        assert(a.nbits_ == b.nbits_);
        for (std::size_t w = a.word_count(); w-- > 0;) {
            if (a.words()[w] != b.words()[w]) return a.words()[w] <=> b.words()[w];
        }
        return std::strong_ordering::equal;
    }

    std::size_t find_first() const {
        for (std::size_t w = 0; w < word_count(); ++w)
            if (words()[w]) return (w << 6) + std::countr_zero(words()[w]);
        return npos;
    }

    template <typename Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t w = 0; w < word_count(); ++w) {
            std::uint64_t bits = words()[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                fn((w << 6) + static_cast<std::size_t>(b));
                bits &= bits - 1;
            }
        }
    }

    /// Overwrite one 64-bit word; bits beyond size() are discarded.
    void set_word(std::size_t w, std::uint64_t value) {
        assert(w < word_count());
        words()[w] = value;
        if (w + 1 == word_count()) trim();
    }

    std::size_t hash() const {
        std::size_t h = nbits_;
        for (std::size_t w = 0; w < word_count(); ++w)
            h = h * 1099511628211ull + words()[w];
        return h;
    }

    /// "0110..." with index 0 first; mainly for diagnostics.
    std::string to_string() const {
        std::string out(nbits_, '0');
        for_each_set([&](std::size_t i) { out[i] = '1'; });
        return out;
    }

private:
    std::size_t word_count() const { return (nbits_ + 63) >> 6; }
    std::uint64_t* words() { return heap_.empty() ? &inline_ : heap_.data(); }
    const std::uint64_t* words() const { return heap_.empty() ? &inline_ : heap_.data(); }

    void trim() {
        if (nbits_ & 63) words()[word_count() - 1] &= (std::uint64_t{1} << (nbits_ & 63)) - 1;
    }

    template <typename Op>
    Bitset apply(const Bitset& other, Op op) const {
        assert(nbits_ == other.nbits_);
        Bitset out(nbits_);
        for (std::size_t w = 0; w < word_count(); ++w) out.words()[w] = op(words()[w], other.words()[w]);
        return out;
    }

    template <typename Op>
    Bitset& assign(const Bitset& other, Op op) {
        assert(nbits_ == other.nbits_);
        for (std::size_t w = 0; w < word_count(); ++w) words()[w] = op(words()[w], other.words()[w]);
        return *this;
    }

    std::size_t nbits_ = 0;
    std::uint64_t inline_ = 0;
    std::vector<std::uint64_t> heap_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

}  // namespace expdomain
