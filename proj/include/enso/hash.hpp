#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "enso/bytes.hpp"

namespace enso {

struct Hash256 {
    std::array<std::uint8_t, 32> digest{};

    auto operator<=>(const Hash256&) const = default;

    std::string hex() const { return to_hex(digest.data(), digest.size()); }
    std::string hex0x() const { return "0x" + hex(); }
    Bytes to_bytes() const { return Bytes(digest.begin(), digest.end()); }
};

Hash256 sha256(const std::uint8_t* data, std::size_t len);
Hash256 sha256(const Bytes& data);
Hash256 sha256(std::string_view data);

} // namespace enso
