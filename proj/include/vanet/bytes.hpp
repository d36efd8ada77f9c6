#ifndef VANET_BYTES_HPP
#define VANET_BYTES_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vanet {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

template <std::size_t N>
using ByteArray = std::array<std::uint8_t, N>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

template <std::size_t N>
Bytes to_bytes(const ByteArray<N>& a) {
    return Bytes(a.begin(), a.end());
}

inline void append(Bytes& out, ByteView more) {
    out.insert(out.end(), more.begin(), more.end());
}

std::string hex_encode(ByteView data);

// Throws vanet::Error(Errc::config_error) on odd length or non-hex input.
Bytes hex_decode(std::string_view hex);

template <std::size_t N>
ByteArray<N> hex_decode_fixed(std::string_view hex) {
    Bytes raw = hex_decode(hex);
    ByteArray<N> out{};
    if (raw.size() != N) throw std::length_error("hex string has wrong length");
    std::copy(raw.begin(), raw.end(), out.begin());
    return out;
}

// Big-endian helpers for the wire codec.
inline void put_u16_be(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

inline std::uint16_t get_u16_be(ByteView in, std::size_t at) {
    return static_cast<std::uint16_t>((in[at] << 8) | in[at + 1]);
}

}  // namespace vanet

#endif  // VANET_BYTES_HPP
