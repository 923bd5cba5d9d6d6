#include "enso/bytes.hpp"

#include <cstring>

namespace enso {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

std::string to_hex(const std::uint8_t* data, std::size_t len) {
    std::string out;
    out.resize(len * 2);
    for (std::size_t i = 0; i < len; ++i) {
        out[2 * i] = kHexDigits[data[i] >> 4];
        out[2 * i + 1] = kHexDigits[data[i] & 0x0F];
    }
    return out;
}

std::string to_hex(const Bytes& b) {
    return to_hex(b.data(), b.size());
}

std::string to_hex0x(const std::uint8_t* data, std::size_t len) {
    return "0x" + to_hex(data, len);
}

std::string to_hex0x(const Bytes& b) {
    return to_hex0x(b.data(), b.size());
}

std::optional<Bytes> from_hex(std::string_view s) {
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        s.remove_prefix(2);
    }
    if (s.size() % 2 != 0) return std::nullopt;
    Bytes out;
    out.reserve(s.size() / 2);
    for (std::size_t i = 0; i < s.size(); i += 2) {
        int hi = hex_nibble(s[i]);
        int lo = hex_nibble(s[i + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

void append_u32_be(Bytes& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void append_u64_be(Bytes& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) {
        out.push_back(static_cast<std::uint8_t>(v >> shift));
    }
}

void append_i64_be(Bytes& out, std::int64_t v) {
    append_u64_be(out, static_cast<std::uint64_t>(v));
}

bool ByteReader::take_u8(std::uint8_t& out) {
    if (remaining() < 1) return false;
    out = data[pos++];
    return true;
}

bool ByteReader::take_u32(std::uint32_t& out) {
    if (remaining() < 4) return false;
    out = (static_cast<std::uint32_t>(data[pos]) << 24) |
          (static_cast<std::uint32_t>(data[pos + 1]) << 16) |
          (static_cast<std::uint32_t>(data[pos + 2]) << 8) |
          static_cast<std::uint32_t>(data[pos + 3]);
    pos += 4;
    return true;
}

bool ByteReader::take_u64(std::uint64_t& out) {
    if (remaining() < 8) return false;
    out = 0;
    for (int i = 0; i < 8; ++i) {
        out = (out << 8) | data[pos + i];
    }
    pos += 8;
    return true;
}

bool ByteReader::take_i64(std::int64_t& out) {
    std::uint64_t u = 0;
    if (!take_u64(u)) return false;
    std::memcpy(&out, &u, sizeof(out));
    return true;
}

bool ByteReader::take_bytes(std::size_t n, Bytes& out) {
    if (remaining() < n) return false;
    out.assign(data + pos, data + pos + n);
    pos += n;
    return true;
}

bool ByteReader::skip(std::size_t n) {
    if (remaining() < n) return false;
    pos += n;
    return true;
}

} // namespace enso
