#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "enso/program.hpp"
#include "enso/state.hpp"
#include "enso/value.hpp"

namespace enso {

enum class TrapReason : std::uint8_t {
    StackUnderflow,
    StackOverflow,
    ArithmeticOverflow,
    DivByZero,
    TypeMismatch,
    BadJump,
    ParamOutOfRange,
    FuelExhausted,
    ValueTooLarge,
    UnknownTemplate,
    BadCodeBlob,
    IdCollision,
    ExplicitTrap,
    QueueOverflow, // raised by block application when emitted messages would overflow the queue
};

const char* trap_reason_name(TrapReason r);

struct Outcome {
    enum class Status { Halted, Trapped };

    Status status = Status::Halted;
    TrapReason reason = TrapReason::ExplicitTrap; // meaningful only when trapped
    std::uint64_t fuel_used = 0;

    bool halted() const { return status == Status::Halted; }
    bool trapped() const { return status == Status::Trapped; }

    static Outcome halt(std::uint64_t fuel) { return {Status::Halted, TrapReason::ExplicitTrap, fuel}; }
    static Outcome trap(TrapReason r, std::uint64_t fuel) { return {Status::Trapped, r, fuel}; }
};

/// One buffered storage mutation; nullopt value means delete.
struct StorageWrite {
    Bytes key;
    std::optional<Bytes> value;

    bool operator==(const StorageWrite&) const = default;
};

struct SendEffect {
    Message message;
    bool operator==(const SendEffect&) const = default;
};

struct CreateEffect {
    Bytes template_name;
    std::vector<Value> init_params;
    ActorId assigned_id;
    bool operator==(const CreateEffect&) const = default;
};

using OutgoingEffect = std::variant<SendEffect, CreateEffect>;

/// Everything one execution wants to change, in emission order. Nothing here
/// touches the world until the state transition commits it; a trapped
/// execution still returns its buffer but it must not be committed.
struct EffectBuffer {
    std::vector<StorageWrite> storage_writes;
    std::vector<OutgoingEffect> outgoing;
    std::optional<ActorId> new_id;
    std::optional<CodeBlob> new_code;

    bool operator==(const EffectBuffer&) const = default;
};

struct ExecResult {
    EffectBuffer effects;
    Outcome outcome;
    std::vector<Value> final_stack; // value stack at termination, bottom first
};

constexpr std::size_t kVmStackCapacity = 256;

/// Id assigned to the n-th actor ever created: sha256("enso/create" || n as u64 BE).
ActorId derive_create_id(std::uint64_t counter);

/// Runs `program[msg.function_call]` against a read view of the world,
/// charging 1 fuel per instruction. Pure: equal inputs give equal results;
/// neither view nor self is mutated.
///
/// Stack discipline (top of stack listed first, i.e. pop order):
///   SSet    pops value, key            SGet/SDel pop key
///   XGet    pops key, actor id         pushes value bytes, then flag (flag on top)
///   Send(n) pops params (last param on top), function name, target id
///   Create(n) pops params (last on top), template name; pushes assigned id
///   Slice   pops length, start, bytes  Sub/Div/Lt pop rhs, lhs
///   SetId   pops 32-byte id            SetCode pops code blob bytes
///
/// SGet sees this execution's own buffered writes (read-your-writes); XGet
/// sees only the committed view, even for self. Absent storage pushes empty
/// bytes and flag 0 rather than trapping.
///
/// Precondition: the function exists in `program` and `program` decodes from
/// `self.code` — the state transition layer checks both (ignore rule).
ExecResult execute(const WorldState& view, const Actor& self, const Program& program,
                   const Message& msg, std::uint64_t fuel_limit);

} // namespace enso
