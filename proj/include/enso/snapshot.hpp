#pragma once

#include <filesystem>
#include <stdexcept>

#include "enso/hash.hpp"
#include "enso/state.hpp"

namespace enso {

using StateRoot = Hash256;

struct SnapshotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Canonical world-state encoding (all integers big-endian):
///   "ENSS" 0x01 | u64 creation_counter | u32 actor count |
///   per actor (ascending id): 32-byte id, u32 code length + code,
///   u32 storage entry count, per entry (ascending key):
///   u32 key length + key, u32 value length + value.
Bytes encode_state(const WorldState& s);

/// Strict inverse: rejects bad magic/version, truncation, trailing bytes,
/// non-ascending actor ids or storage keys, and out-of-bound lengths, so
/// encode_state is the identity on everything decode_state accepts.
/// Throws SnapshotError.
WorldState decode_state(const Bytes& raw);

/// SHA-256 of the canonical encoding.
StateRoot state_root(const WorldState& s);

/// Writes encode_state(s) atomically (temp file + rename). Throws
/// SnapshotError on I/O failure and leaves no partial file behind.
void save_snapshot(const WorldState& s, const std::filesystem::path& path);

/// Throws SnapshotError on I/O or decode failure.
WorldState load_snapshot(const std::filesystem::path& path);

} // namespace enso
