#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "enso/bytes.hpp"
#include "enso/state.hpp"

namespace enso {

/// Opcode byte values are part of the canonical code format and never change.
/// 0x1E/0x1F are the int<->bytes conversions completing the base set.
enum class Opcode : std::uint8_t {
    PushInt = 0x00,   // operand: i64 BE
    PushBytes = 0x01, // operand: u32 BE length + bytes (length <= 1024)
    Pop = 0x02,
    Dup = 0x03, // operand: u32 BE depth (0 = top, <= 15)
    Swap = 0x04,
    Add = 0x05,
    Sub = 0x06,
    Mul = 0x07,
    Div = 0x08,
    Eq = 0x09,
    Lt = 0x0A,
    Not = 0x0B,
    Concat = 0x0C,
    Len = 0x0D,
    Slice = 0x0E,
    Jump = 0x0F,   // operand: u32 BE target (== function length means halt)
    JumpIf = 0x10, // operand: u32 BE target
    ParamCount = 0x11,
    Param = 0x12,
    SelfId = 0x13,
    SGet = 0x14,
    SSet = 0x15,
    SDel = 0x16,
    XGet = 0x17,
    Send = 0x18,   // operand: u32 BE n_params (<= 32)
    Create = 0x19, // operand: u32 BE n_params (<= 32)
    SetId = 0x1A,
    SetCode = 0x1B,
    Halt = 0x1C,
    Trap = 0x1D,
    I2B = 0x1E,
    B2I = 0x1F,
};

constexpr std::uint8_t kMaxOpcode = 0x1F;

const char* opcode_name(Opcode op);

struct Instruction {
    Opcode op = Opcode::Halt;
    std::int64_t ival = 0;  // PushInt
    std::uint32_t uval = 0; // Dup depth, jump target, Send/Create n_params
    Bytes bval;             // PushBytes

    bool operator==(const Instruction&) const = default;

    static Instruction push_int(std::int64_t v) { return {Opcode::PushInt, v, 0, {}}; }
    static Instruction push_bytes(Bytes b) { return {Opcode::PushBytes, 0, 0, std::move(b)}; }
    static Instruction pop() { return {Opcode::Pop, 0, 0, {}}; }
    static Instruction dup(std::uint32_t depth) { return {Opcode::Dup, 0, depth, {}}; }
    static Instruction swap() { return {Opcode::Swap, 0, 0, {}}; }
    static Instruction add() { return {Opcode::Add, 0, 0, {}}; }
    static Instruction sub() { return {Opcode::Sub, 0, 0, {}}; }
    static Instruction mul() { return {Opcode::Mul, 0, 0, {}}; }
    static Instruction div() { return {Opcode::Div, 0, 0, {}}; }
    static Instruction eq() { return {Opcode::Eq, 0, 0, {}}; }
    static Instruction lt() { return {Opcode::Lt, 0, 0, {}}; }
    static Instruction not_() { return {Opcode::Not, 0, 0, {}}; }
    static Instruction concat() { return {Opcode::Concat, 0, 0, {}}; }
    static Instruction len() { return {Opcode::Len, 0, 0, {}}; }
    static Instruction slice() { return {Opcode::Slice, 0, 0, {}}; }
    static Instruction jump(std::uint32_t target) { return {Opcode::Jump, 0, target, {}}; }
    static Instruction jump_if(std::uint32_t target) { return {Opcode::JumpIf, 0, target, {}}; }
    static Instruction param_count() { return {Opcode::ParamCount, 0, 0, {}}; }
    static Instruction param() { return {Opcode::Param, 0, 0, {}}; }
    static Instruction self_id() { return {Opcode::SelfId, 0, 0, {}}; }
    static Instruction sget() { return {Opcode::SGet, 0, 0, {}}; }
    static Instruction sset() { return {Opcode::SSet, 0, 0, {}}; }
    static Instruction sdel() { return {Opcode::SDel, 0, 0, {}}; }
    static Instruction xget() { return {Opcode::XGet, 0, 0, {}}; }
    static Instruction send(std::uint32_t n_params) { return {Opcode::Send, 0, n_params, {}}; }
    static Instruction create(std::uint32_t n_params) { return {Opcode::Create, 0, n_params, {}}; }
    static Instruction set_id() { return {Opcode::SetId, 0, 0, {}}; }
    static Instruction set_code() { return {Opcode::SetCode, 0, 0, {}}; }
    static Instruction halt() { return {Opcode::Halt, 0, 0, {}}; }
    static Instruction trap() { return {Opcode::Trap, 0, 0, {}}; }
    static Instruction i2b() { return {Opcode::I2B, 0, 0, {}}; }
    static Instruction b2i() { return {Opcode::B2I, 0, 0, {}}; }
};

constexpr std::size_t kMaxFunctionInstructions = 65536;
constexpr std::size_t kMaxProgramEncodedSize = 262144;
constexpr std::size_t kMaxPushBytesLen = 1024;
constexpr std::uint32_t kMaxDupDepth = 15;
constexpr std::uint32_t kMaxCallParams = 32; // Send/Create operand bound

/// Actor code: named functions, each a flat instruction list. Function names
/// are nonempty byte strings up to 256 bytes, iterated bytewise-ascending.
struct Program {
    std::map<Bytes, std::vector<Instruction>> functions;

    bool operator==(const Program&) const = default;
};

struct ProgramError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Throws ProgramError if any Program invariant is violated (name lengths,
/// instruction counts, operand ranges, jump targets).
void validate_program(const Program& p);

/// Canonical binary encoding:
///   "ENSO" 0x01 | u32 function count | per function (ascending by name):
///   u32 name length, name, u32 instruction count, instructions.
/// Each instruction is one opcode byte followed by its operands (i64 BE for
/// PushInt; u32 BE length + bytes for PushBytes; u32 BE for the rest).
/// Equal programs encode to identical bytes. Throws ProgramError on invalid
/// programs or if the encoding would exceed 262144 bytes.
CodeBlob encode_program(const Program& p);

/// Strict inverse of encode_program: rejects truncation, trailing bytes,
/// unknown opcodes, out-of-range operands and targets, and any non-canonical
/// function ordering. nullopt on any defect.
std::optional<Program> decode_program(const CodeBlob& blob);

} // namespace enso
