#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <variant>

#include "enso/bytes.hpp"

namespace enso {

/// Parameter and stack cell type: a signed 64-bit integer or a bounded byte
/// string. Immutable once constructed.
class Value {
public:
    static constexpr std::size_t kMaxBytesLen = 65536;

    Value() : v_(std::int64_t{0}) {}
    explicit Value(std::int64_t i) : v_(i) {}
    explicit Value(Bytes b) : v_(std::move(b)) {
        if (std::get<Bytes>(v_).size() > kMaxBytesLen) {
            throw std::length_error("Value: byte string exceeds 65536 bytes");
        }
    }

    static Value of_int(std::int64_t i) { return Value(i); }
    static Value of_bytes(Bytes b) { return Value(std::move(b)); }

    bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
    bool is_bytes() const { return std::holds_alternative<Bytes>(v_); }

    std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
    const Bytes& as_bytes() const { return std::get<Bytes>(v_); }

    bool operator==(const Value& other) const = default;

private:
    std::variant<std::int64_t, Bytes> v_;
};

} // namespace enso
