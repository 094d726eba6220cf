#pragma once

#include <cstdint>
#include <vector>

#include "seclab/errors.hpp"

namespace seclab {

// ---------------------------------------------------------------------------
// Seed derivation (pinned, documented in the README)
//
//   mix(z)                     splitmix64 finalizer
//   stream word j of seed s    mix(s + (j+1) * 0x9E3779B97F4A7C15)
//   tape bit i                 bit (i mod 64) of stream word (i / 64)
//   trial seed (master, b, i)  mix(mix(master ^ ARM[b]) + i)
//
// Reports produced from the same master seed are reproducible across
// platforms because nothing here depends on library RNGs.
// ---------------------------------------------------------------------------

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline uint64_t mix64(uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline uint64_t stream_word(uint64_t seed, uint64_t index) {
    return mix64(seed + (index + 1) * kGolden);
}

/// Per-trial seeds; the two challenge-bit arms use disjoint streams.
inline uint64_t derive_trial_seed(uint64_t master_seed, int arm_bit, uint64_t trial_index) {
    constexpr uint64_t kArm[2] = {0x243F6A8885A308D3ULL, 0x452821E638D01377ULL};
    return mix64(mix64(master_seed ^ kArm[arm_bit & 1]) + trial_index);
}

/// A finite tape of coin bits with a read cursor. Every probabilistic
/// algorithm in the framework draws from a tape segment whose length is
/// its declared budget, never from an ambient RNG.
class CoinTape {
public:
    CoinTape() = default;

    /// Tape holding the low `nbits` of `value`, bit i of the tape = bit i
    /// of value. This is the enumeration order: tape values 0..2^n-1
    /// cover every possible tape exactly once.
    static CoinTape from_value(uint64_t value, int nbits) {
        CoinTape t;
        t.bits_.resize(static_cast<size_t>(nbits));
        for (int i = 0; i < nbits; ++i) t.bits_[static_cast<size_t>(i)] = (value >> i) & 1u;
        return t;
    }

    static CoinTape from_seed(uint64_t seed, int nbits) {
        CoinTape t;
        t.bits_.resize(static_cast<size_t>(nbits));
        uint64_t word = 0;
        for (int i = 0; i < nbits; ++i) {
            if (i % 64 == 0) word = stream_word(seed, static_cast<uint64_t>(i) / 64);
            t.bits_[static_cast<size_t>(i)] = (word >> (i % 64)) & 1u;
        }
        return t;
    }

    /// Consume n bits, LSB-first, as an unsigned value (n <= 63).
    uint64_t draw_bits(int n) {
        if (n < 0 || n > 63) throw Error("draw_bits width out of range");
        if (pos_ + static_cast<size_t>(n) > bits_.size())
            throw TapeExhausted("coin tape segment over budget");
        uint64_t v = 0;
        for (int i = 0; i < n; ++i) v |= static_cast<uint64_t>(bits_[pos_ + static_cast<size_t>(i)]) << i;
        pos_ += static_cast<size_t>(n);
        return v;
    }

    int draw_bit() { return static_cast<int>(draw_bits(1)); }

    /// Split off the next `nbits` as an independent segment tape and
    /// advance past them. Segments keep component draws disjoint.
    CoinTape segment(int nbits) {
        if (pos_ + static_cast<size_t>(nbits) > bits_.size())
            throw TapeExhausted("coin tape too short for segment");
        CoinTape t;
        t.bits_.assign(bits_.begin() + static_cast<long>(pos_),
                       bits_.begin() + static_cast<long>(pos_ + static_cast<size_t>(nbits)));
        pos_ += static_cast<size_t>(nbits);
        return t;
    }

    int size() const { return static_cast<int>(bits_.size()); }
    int remaining() const { return static_cast<int>(bits_.size() - pos_); }

private:
    std::vector<uint8_t> bits_;
    size_t pos_ = 0;
};

/// ceil(log2(n)) for n >= 1; the coin width of a uniform index draw.
inline int bits_for_count(uint64_t n) {
    int b = 0;
    while ((1ULL << b) < n) ++b;
    return b;
}

} // namespace seclab
