#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seclab/errors.hpp"

namespace seclab {

/// Finite bit string. Index 0 is the least significant bit, so
/// from_uint(0b1011, 4).bit(0) == 1 and to_string() renders "1011"
/// (most significant bit first).
///
/// Messages, ciphertexts, keys and partial-information values are all
/// BitStrings; they stay small at desk scale, so one byte per bit.
class BitString {
public:
    BitString() = default;

    explicit BitString(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
        for (auto& b : bits_) b &= 1u;
    }

    static BitString from_uint(uint64_t value, int width) {
        if (width < 0 || width > 64) throw Error("from_uint width out of range");
        BitString s;
        s.bits_.resize(static_cast<size_t>(width));
        for (int i = 0; i < width; ++i) s.bits_[static_cast<size_t>(i)] = (value >> i) & 1u;
        return s;
    }

    static BitString from_string(const std::string& msb_first) {
        BitString s;
        s.bits_.reserve(msb_first.size());
        for (auto it = msb_first.rbegin(); it != msb_first.rend(); ++it) {
            if (*it != '0' && *it != '1') throw Error("bad bit character in \"" + msb_first + "\"");
            s.bits_.push_back(static_cast<uint8_t>(*it - '0'));
        }
        return s;
    }

    static BitString zeros(int width) { return from_uint(0, width); }
    static BitString ones(int width) {
        BitString s;
        s.bits_.assign(static_cast<size_t>(width), 1u);
        return s;
    }

    int size() const { return static_cast<int>(bits_.size()); }
    bool empty() const { return bits_.empty(); }

    uint8_t bit(int i) const { return bits_.at(static_cast<size_t>(i)); }
    void set_bit(int i, uint8_t v) { bits_.at(static_cast<size_t>(i)) = v & 1u; }

    uint64_t to_uint() const {
        uint64_t v = 0;
        for (size_t i = 0; i < bits_.size(); ++i) v |= static_cast<uint64_t>(bits_[i]) << i;
        return v;
    }

    std::string to_string() const {
        std::string out;
        out.reserve(bits_.size());
        for (auto it = bits_.rbegin(); it != bits_.rend(); ++it) out.push_back(char('0' + *it));
        return out;
    }

    BitString flipped(int i) const {
        BitString s = *this;
        s.bits_.at(static_cast<size_t>(i)) ^= 1u;
        return s;
    }

    /// Bitwise XOR; widths must match.
    friend BitString operator^(const BitString& a, const BitString& b) {
        if (a.size() != b.size()) throw Error("xor width mismatch");
        BitString s = a;
        for (size_t i = 0; i < s.bits_.size(); ++i) s.bits_[i] ^= b.bits_[i];
        return s;
    }

    /// Concatenation: result bits 0..a.size() are a, the rest b.
    friend BitString operator+(const BitString& a, const BitString& b) {
        BitString s = a;
        s.bits_.insert(s.bits_.end(), b.bits_.begin(), b.bits_.end());
        return s;
    }

    BitString slice(int from, int count) const {
        if (from < 0 || count < 0 || from + count > size()) throw Error("slice out of range");
        return BitString(std::vector<uint8_t>(bits_.begin() + from, bits_.begin() + from + count));
    }

    friend bool operator==(const BitString& a, const BitString& b) { return a.bits_ == b.bits_; }
    friend bool operator!=(const BitString& a, const BitString& b) { return !(a == b); }
    friend bool operator<(const BitString& a, const BitString& b) {
        if (a.bits_.size() != b.bits_.size()) return a.bits_.size() < b.bits_.size();
        for (size_t i = a.bits_.size(); i-- > 0;)
            if (a.bits_[i] != b.bits_[i]) return a.bits_[i] < b.bits_[i];
        return false;
    }

    const std::vector<uint8_t>& raw() const { return bits_; }

private:
    std::vector<uint8_t> bits_;
};

} // namespace seclab
