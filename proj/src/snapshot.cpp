#include "enso/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <string>
#include <system_error>

#include "enso/program.hpp"

namespace enso {

namespace {

constexpr std::uint8_t kMagic[4] = {0x45, 0x4E, 0x53, 0x53}; // "ENSS"
constexpr std::uint8_t kVersion = 0x01;

[[noreturn]] void fail(const std::string& what) {
    throw SnapshotError("snapshot: " + what);
}

} // namespace

Bytes encode_state(const WorldState& s) {
    Bytes out;
    out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
    out.push_back(kVersion);
    append_u64_be(out, s.creation_counter);
    append_u32_be(out, static_cast<std::uint32_t>(s.actors.size()));
    for (const auto& [id, actor] : s.actors) {
        out.insert(out.end(), id.raw.begin(), id.raw.end());
        append_u32_be(out, static_cast<std::uint32_t>(actor.code.size()));
        out.insert(out.end(), actor.code.begin(), actor.code.end());
        append_u32_be(out, static_cast<std::uint32_t>(actor.storage.size()));
        for (const auto& [key, value] : actor.storage) {
            append_u32_be(out, static_cast<std::uint32_t>(key.size()));
            out.insert(out.end(), key.begin(), key.end());
            append_u32_be(out, static_cast<std::uint32_t>(value.size()));
            out.insert(out.end(), value.begin(), value.end());
        }
    }
    return out;
}

WorldState decode_state(const Bytes& raw) {
    ByteReader r(raw);

    Bytes magic;
    if (!r.take_bytes(4, magic)) fail("truncated header");
    if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) fail("bad magic");
    std::uint8_t version = 0;
    if (!r.take_u8(version)) fail("truncated header");
    if (version != kVersion) fail("unsupported version " + std::to_string(version));

    WorldState s;
    if (!r.take_u64(s.creation_counter)) fail("truncated creation counter");

    std::uint32_t actor_count = 0;
    if (!r.take_u32(actor_count)) fail("truncated actor count");

    const ActorId* prev_id = nullptr;
    for (std::uint32_t i = 0; i < actor_count; ++i) {
        Bytes id_bytes;
        if (!r.take_bytes(32, id_bytes)) fail("truncated actor id");
        Actor actor;
        actor.id = *ActorId::from_bytes(id_bytes);
        if (prev_id != nullptr && !(*prev_id < actor.id)) fail("actor ids not strictly ascending");

        std::uint32_t code_len = 0;
        if (!r.take_u32(code_len)) fail("truncated code length");
        if (code_len > kMaxProgramEncodedSize) fail("code blob exceeds 262144 bytes");
        if (!r.take_bytes(code_len, actor.code)) fail("truncated code blob");

        std::uint32_t entry_count = 0;
        if (!r.take_u32(entry_count)) fail("truncated storage entry count");
        Bytes prev_key;
        for (std::uint32_t e = 0; e < entry_count; ++e) {
            std::uint32_t key_len = 0;
            if (!r.take_u32(key_len)) fail("truncated storage key length");
            if (key_len == 0 || key_len > StorageMap::kMaxKeyLen) fail("storage key length out of range");
            Bytes key;
            if (!r.take_bytes(key_len, key)) fail("truncated storage key");
            if (e > 0 && !(prev_key < key)) fail("storage keys not strictly ascending");

            std::uint32_t value_len = 0;
            if (!r.take_u32(value_len)) fail("truncated storage value length");
            if (value_len > StorageMap::kMaxValueLen) fail("storage value exceeds 65536 bytes");
            Bytes value;
            if (!r.take_bytes(value_len, value)) fail("truncated storage value");

            prev_key = key;
            actor.storage.set(std::move(key), std::move(value));
        }

        auto [it, ok] = s.actors.emplace(actor.id, std::move(actor));
        (void)ok; // ids are strictly ascending, duplicates impossible here
        prev_id = &it->second.id;
    }

    if (!r.done()) fail("trailing bytes after last actor");
    return s;
}

StateRoot state_root(const WorldState& s) {
    return sha256(encode_state(s));
}

void save_snapshot(const WorldState& s, const std::filesystem::path& path) {
    Bytes raw = encode_state(s);
    std::filesystem::path tmp = path;
    tmp += ".tmp";

    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw SnapshotError("snapshot: cannot open " + tmp.string() + " for writing");
        }
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw SnapshotError("snapshot: write to " + tmp.string() + " failed");
        }
    }

    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ec2;
        std::filesystem::remove(tmp, ec2);
        throw SnapshotError("snapshot: rename to " + path.string() + " failed: " + ec.message());
    }
}

WorldState load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SnapshotError("snapshot: cannot open " + path.string());
    }
    Bytes raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw SnapshotError("snapshot: read from " + path.string() + " failed");
    }
    return decode_state(raw);
}

} // namespace enso
