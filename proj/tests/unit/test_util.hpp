#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "enso/state.hpp"

namespace enso::test {

inline ActorId id_from_byte(std::uint8_t b) {
    ActorId id;
    id.raw.fill(b);
    return id;
}

inline ActorId random_id(std::mt19937_64& rng) {
    ActorId id;
    for (auto& b : id.raw) {
        b = static_cast<std::uint8_t>(rng());
    }
    return id;
}

inline Bytes random_bytes(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len_dist(min_len, max_len);
    Bytes out(len_dist(rng));
    for (auto& b : out) {
        b = static_cast<std::uint8_t>(rng());
    }
    return out;
}

inline Message simple_message(const ActorId& to, const std::string& fn,
                              std::vector<Value> params = {}) {
    Message m;
    m.id_to = to;
    m.function_call = to_bytes(fn);
    m.parameters = std::move(params);
    m.origin = ExtrinsicOrigin{0};
    return m;
}

} // namespace enso::test
