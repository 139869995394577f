// bitstring.hpp
// Packed binary sequence used for measurement records, templates,
// complexity analysis, and machine programs/outputs.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qrlab {

// Bit sequence packed MSB-first within each byte. Padding bits in the
// final byte are kept zero so byte-level equality equals bit equality.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t n, bool fill = false);

    // Parses '0'/'1' characters; whitespace is ignored, anything else throws.
    static BitString from_ascii(std::string_view text);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    // Unchecked access (hot paths); callers guarantee i < size().
    int bit(std::size_t i) const noexcept {
        return (data_[i >> 3] >> (7 - (i & 7))) & 1;
    }
    // Checked access.
    int at(std::size_t i) const;

    void set_bit(std::size_t i, bool v);
    void push_back(bool v);
    void append(const BitString& other);

    std::size_t count_ones() const noexcept;
    double one_frequency() const;  // throws on empty string
    std::size_t hamming_distance(const BitString& other) const;
    BitString substr(std::size_t pos, std::size_t len) const;

    std::string to_ascii() const;
    const std::vector<std::uint8_t>& bytes() const noexcept { return data_; }

    bool operator==(const BitString&) const = default;

    // Packed file format: 8-byte little-endian bit count, then ceil(n/8)
    // payload bytes, most significant bit first.
    void write_packed(std::ostream& os) const;
    static BitString read_packed(std::istream& is);

private:
    std::vector<std::uint8_t> data_;
    std::size_t size_ = 0;
};

}  // namespace qrlab
