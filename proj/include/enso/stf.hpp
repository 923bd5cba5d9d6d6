#pragma once

#include <cstdint>
#include <vector>

#include "enso/state.hpp"
#include "enso/vm.hpp"

namespace enso {

/// Ordered extrinsics; extrinsic i carries origin Extrinsic(i).
struct Block {
    std::vector<Message> extrinsics;
};

/// Stamps consecutive extrinsic origins onto the given messages.
Block make_block(std::vector<Message> extrinsics);

struct VmConfig {
    std::uint64_t fuel_per_message = 10000;
    std::uint64_t max_messages_per_block = 100000;
    std::uint64_t max_queue_len = 1000000;

    bool valid() const {
        return fuel_per_message >= 1 && max_messages_per_block >= 1 && max_queue_len >= 1;
    }
};

enum class Disposition : std::uint8_t {
    Processed,
    IgnoredNoActor,
    IgnoredNoFunction,
    IgnoredBadCode,
    Trapped,
    DroppedBudget,
};

const char* disposition_name(Disposition d);

/// Per-message outcome record. Processed means the message's effects were
/// committed; every other disposition means the message changed nothing.
struct Receipt {
    Message message;
    Disposition disposition = Disposition::Processed;
    TrapReason trap_reason = TrapReason::ExplicitTrap; // meaningful only when Trapped
    std::uint64_t fuel_used = 0;
    std::uint64_t messages_emitted = 0;
    std::uint64_t actors_created = 0;

    bool operator==(const Receipt&) const = default;
};

struct ProcessResult {
    WorldState state;
    std::vector<Message> emitted;
    Receipt receipt;
};

/// Delivers one message: ignore rule for undeliverable messages, execution
/// with fuel, atomic commit of the effect buffer or full rollback on trap.
/// Never fails; failures are receipts.
ProcessResult process_message(const WorldState& s, const Message& m, const VmConfig& cfg);

struct BlockResult {
    WorldState state;
    std::vector<Receipt> receipts;
};

/// The state transition function: enqueue all extrinsics in order, then drain
/// the global FIFO queue, appending each message's emissions to the tail.
/// Stops early when max_messages_per_block is reached (remaining messages get
/// DroppedBudget receipts, in queue order). One receipt per message that
/// entered the queue, in processing order.
BlockResult apply_block(const WorldState& s, const Block& b, const VmConfig& cfg);

} // namespace enso
