#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "enso/bytes.hpp"
#include "enso/hash.hpp"
#include "enso/value.hpp"

namespace enso {

/// 32-byte actor identity. Ordering and equality are bytewise.
struct ActorId {
    std::array<std::uint8_t, 32> raw{};

    auto operator<=>(const ActorId&) const = default;

    static ActorId from_hash(const Hash256& h) { return ActorId{h.digest}; }
    static std::optional<ActorId> from_bytes(const Bytes& b);
    static std::optional<ActorId> from_hex(std::string_view s);

    Bytes to_bytes() const { return Bytes(raw.begin(), raw.end()); }
    std::string hex() const { return to_hex(raw.data(), raw.size()); }
    std::string hex0x() const { return "0x" + hex(); }
};

/// Key/value storage of one actor. Keys iterate in bytewise-ascending order.
class StorageMap {
public:
    static constexpr std::size_t kMaxKeyLen = 1024;
    static constexpr std::size_t kMaxValueLen = 65536;

    static bool key_ok(const Bytes& key) {
        return !key.empty() && key.size() <= kMaxKeyLen;
    }
    static bool value_ok(const Bytes& value) { return value.size() <= kMaxValueLen; }

    /// Throws std::invalid_argument on key/value size violations.
    void set(Bytes key, Bytes value);
    bool erase(const Bytes& key) { return entries_.erase(key) > 0; }
    std::optional<Bytes> get(const Bytes& key) const;
    bool contains(const Bytes& key) const { return entries_.count(key) > 0; }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    bool operator==(const StorageMap&) const = default;

private:
    std::map<Bytes, Bytes> entries_;
};

using CodeBlob = Bytes;

struct Actor {
    ActorId id;
    CodeBlob code;
    StorageMap storage;

    bool operator==(const Actor&) const = default;
};

struct ExtrinsicOrigin {
    std::uint64_t block_index = 0;
    bool operator==(const ExtrinsicOrigin&) const = default;
};

struct InternalOrigin {
    ActorId sender;
    bool operator==(const InternalOrigin&) const = default;
};

using Origin = std::variant<ExtrinsicOrigin, InternalOrigin>;

/// Asynchronous function call: target actor, function name, parameter list.
/// Execution never looks at origin; it exists for receipts and tests.
struct Message {
    static constexpr std::size_t kMaxParams = 32;
    static constexpr std::size_t kMaxFunctionNameLen = 256;

    ActorId id_to;
    Bytes function_call;
    std::vector<Value> parameters;
    Origin origin = ExtrinsicOrigin{0};

    bool operator==(const Message&) const = default;
};

/// Single global FIFO queue ordering every message of a block's execution.
class MessageQueue {
public:
    void push(Message m) { items_.push_back(std::move(m)); }

    /// Head message, or nullopt when empty.
    std::optional<Message> pop();

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

private:
    std::deque<Message> items_;
};

/// The world: every actor keyed by id, plus the counter that drives
/// deterministic id derivation for created actors.
struct WorldState {
    std::map<ActorId, Actor> actors;
    std::uint64_t creation_counter = 0;

    /// nullptr when absent. Never mutates the state.
    const Actor* get(const ActorId& id) const;

    /// Inserts or replaces, keyed by a.id.
    void put(Actor a);

    bool operator==(const WorldState&) const = default;
};

} // namespace enso
