#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace enso {

using Bytes = std::vector<std::uint8_t>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline std::string to_string(const Bytes& b) {
    return std::string(b.begin(), b.end());
}

/// Lowercase hex, no prefix.
std::string to_hex(const std::uint8_t* data, std::size_t len);
std::string to_hex(const Bytes& b);

/// "0x"-prefixed lowercase hex (the CLI-facing convention).
std::string to_hex0x(const Bytes& b);
std::string to_hex0x(const std::uint8_t* data, std::size_t len);

/// Accepts upper or lower case, with or without "0x"; even length required.
std::optional<Bytes> from_hex(std::string_view s);

void append_u32_be(Bytes& out, std::uint32_t v);
void append_u64_be(Bytes& out, std::uint64_t v);
void append_i64_be(Bytes& out, std::int64_t v);

/// Sequential big-endian reader; every take reports success so decoders can
/// reject truncated input without exceptions.
struct ByteReader {
    const std::uint8_t* data = nullptr;
    std::size_t size = 0;
    std::size_t pos = 0;

    explicit ByteReader(const Bytes& b) : data(b.data()), size(b.size()) {}
    ByteReader(const std::uint8_t* d, std::size_t n) : data(d), size(n) {}

    std::size_t remaining() const { return size - pos; }
    bool done() const { return pos == size; }

    bool take_u8(std::uint8_t& out);
    bool take_u32(std::uint32_t& out);
    bool take_u64(std::uint64_t& out);
    bool take_i64(std::int64_t& out);
    bool take_bytes(std::size_t n, Bytes& out);
    bool skip(std::size_t n);
};

} // namespace enso
