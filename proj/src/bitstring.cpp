#include "qrlab/bitstring.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace qrlab {

BitString::BitString(std::size_t n, bool fill) : data_((n + 7) / 8, 0), size_(n) {
    if (fill) {
        for (auto& b : data_) b = 0xFF;
        // keep padding bits zero
        if (n % 8 != 0) data_.back() &= static_cast<std::uint8_t>(0xFF << (8 - n % 8));
    }
}

BitString BitString::from_ascii(std::string_view text) {
    BitString s;
    for (char ch : text) {
        if (ch == '0') {
            s.push_back(false);
        } else if (ch == '1') {
            s.push_back(true);
        } else if (ch == ' ' || ch == '\n' || ch == '\r' || ch == '\t') {
            continue;
        } else {
            throw std::invalid_argument(std::string("BitString::from_ascii: unexpected character '") + ch + "'");
        }
    }
    return s;
}

int BitString::at(std::size_t i) const {
    if (i >= size_) throw std::out_of_range("BitString::at: index " + std::to_string(i) + " >= size " + std::to_string(size_));
    return bit(i);
}

void BitString::set_bit(std::size_t i, bool v) {
    if (i >= size_) throw std::out_of_range("BitString::set_bit: index out of range");
    const std::uint8_t mask = static_cast<std::uint8_t>(1u << (7 - (i & 7)));
    if (v)
        data_[i >> 3] |= mask;
    else
        data_[i >> 3] &= static_cast<std::uint8_t>(~mask);
}

void BitString::push_back(bool v) {
    if (size_ % 8 == 0) data_.push_back(0);
    if (v) data_[size_ >> 3] |= static_cast<std::uint8_t>(1u << (7 - (size_ & 7)));
    ++size_;
}

void BitString::append(const BitString& other) {
    if (size_ % 8 == 0) {
        // byte-aligned fast path
        data_.insert(data_.end(), other.data_.begin(), other.data_.end());
        size_ += other.size_;
        return;
    }
    for (std::size_t i = 0; i < other.size_; ++i) push_back(other.bit(i) != 0);
}

std::size_t BitString::count_ones() const noexcept {
    std::size_t total = 0;
    for (std::uint8_t b : data_) total += static_cast<std::size_t>(std::popcount(b));
    return total;
}

double BitString::one_frequency() const {
    if (size_ == 0) throw std::invalid_argument("BitString::one_frequency: empty string");
    return static_cast<double>(count_ones()) / static_cast<double>(size_);
}

std::size_t BitString::hamming_distance(const BitString& other) const {
    if (size_ != other.size_)
        throw std::invalid_argument("BitString::hamming_distance: length mismatch");
    std::size_t total = 0;
    for (std::size_t i = 0; i < data_.size(); ++i)
        total += static_cast<std::size_t>(std::popcount(static_cast<std::uint8_t>(data_[i] ^ other.data_[i])));
    return total;
}

BitString BitString::substr(std::size_t pos, std::size_t len) const {
    if (pos > size_ || len > size_ - pos)
        throw std::out_of_range("BitString::substr: range out of bounds");
    BitString out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(bit(pos + i) != 0);
    return out;
}

std::string BitString::to_ascii() const {
    std::string s;
    s.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) s.push_back(bit(i) ? '1' : '0');
    return s;
}

void BitString::write_packed(std::ostream& os) const {
    std::uint8_t header[8];
    std::uint64_t n = size_;
    for (int i = 0; i < 8; ++i) header[i] = static_cast<std::uint8_t>((n >> (8 * i)) & 0xFF);
    os.write(reinterpret_cast<const char*>(header), 8);
    os.write(reinterpret_cast<const char*>(data_.data()), static_cast<std::streamsize>(data_.size()));
}

BitString BitString::read_packed(std::istream& is) {
    std::uint8_t header[8];
    is.read(reinterpret_cast<char*>(header), 8);
    if (!is) throw std::runtime_error("BitString::read_packed: truncated header");
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) n |= static_cast<std::uint64_t>(header[i]) << (8 * i);
    BitString s;
    s.size_ = static_cast<std::size_t>(n);
    s.data_.resize((s.size_ + 7) / 8);
    is.read(reinterpret_cast<char*>(s.data_.data()), static_cast<std::streamsize>(s.data_.size()));
    if (!is) throw std::runtime_error("BitString::read_packed: truncated payload");
    if (s.size_ % 8 != 0) s.data_.back() &= static_cast<std::uint8_t>(0xFF << (8 - s.size_ % 8));
    return s;
}

}  // namespace qrlab
