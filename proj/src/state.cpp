#include "enso/state.hpp"

#include <algorithm>
#include <stdexcept>

namespace enso {

std::optional<ActorId> ActorId::from_bytes(const Bytes& b) {
    if (b.size() != 32) return std::nullopt;
    ActorId id;
    std::copy(b.begin(), b.end(), id.raw.begin());
    return id;
}

std::optional<ActorId> ActorId::from_hex(std::string_view s) {
    auto bytes = enso::from_hex(s);
    if (!bytes) return std::nullopt;
    return from_bytes(*bytes);
}

void StorageMap::set(Bytes key, Bytes value) {
    if (!key_ok(key)) {
        throw std::invalid_argument("StorageMap: key length must be 1..=1024");
    }
    if (!value_ok(value)) {
        throw std::invalid_argument("StorageMap: value exceeds 65536 bytes");
    }
    entries_[std::move(key)] = std::move(value);
}

std::optional<Bytes> StorageMap::get(const Bytes& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::optional<Message> MessageQueue::pop() {
    if (items_.empty()) return std::nullopt;
    Message m = std::move(items_.front());
    items_.pop_front();
    return m;
}

const Actor* WorldState::get(const ActorId& id) const {
    auto it = actors.find(id);
    if (it == actors.end()) return nullptr;
    return &it->second;
}

void WorldState::put(Actor a) {
    ActorId id = a.id;
    actors.insert_or_assign(id, std::move(a));
}

} // namespace enso
