#include "enso/program.hpp"

#include <string>

namespace enso {

namespace {

constexpr std::uint8_t kMagic[4] = {0x45, 0x4E, 0x53, 0x4F}; // "ENSO"
constexpr std::uint8_t kVersion = 0x01;

enum class OperandKind { None, I64, BytesBlob, U32 };

OperandKind operand_kind(Opcode op) {
    switch (op) {
    case Opcode::PushInt:
        return OperandKind::I64;
    case Opcode::PushBytes:
        return OperandKind::BytesBlob;
    case Opcode::Dup:
    case Opcode::Jump:
    case Opcode::JumpIf:
    case Opcode::Send:
    case Opcode::Create:
        return OperandKind::U32;
    default:
        return OperandKind::None;
    }
}

std::string name_for_error(const Bytes& name) {
    return "\"" + to_string(name) + "\"";
}

void validate_instruction(const Instruction& ins, std::size_t fn_len, const Bytes& fn_name) {
    switch (ins.op) {
    case Opcode::PushBytes:
        if (ins.bval.size() > kMaxPushBytesLen) {
            throw ProgramError("function " + name_for_error(fn_name) +
                               ": PushBytes operand exceeds 1024 bytes");
        }
        break;
    case Opcode::Dup:
        if (ins.uval > kMaxDupDepth) {
            throw ProgramError("function " + name_for_error(fn_name) + ": Dup depth exceeds 15");
        }
        break;
    case Opcode::Jump:
    case Opcode::JumpIf:
        // target == fn_len is the explicit fall-through halt.
        if (ins.uval > fn_len) {
            throw ProgramError("function " + name_for_error(fn_name) + ": jump target " +
                               std::to_string(ins.uval) + " out of range (length " +
                               std::to_string(fn_len) + ")");
        }
        break;
    case Opcode::Send:
    case Opcode::Create:
        if (ins.uval > kMaxCallParams) {
            throw ProgramError("function " + name_for_error(fn_name) +
                               ": parameter count exceeds 32");
        }
        break;
    default:
        break;
    }
}

} // namespace

const char* opcode_name(Opcode op) {
    switch (op) {
    case Opcode::PushInt: return "push_int";
    case Opcode::PushBytes: return "push_bytes";
    case Opcode::Pop: return "pop";
    case Opcode::Dup: return "dup";
    case Opcode::Swap: return "swap";
    case Opcode::Add: return "add";
    case Opcode::Sub: return "sub";
    case Opcode::Mul: return "mul";
    case Opcode::Div: return "div";
    case Opcode::Eq: return "eq";
    case Opcode::Lt: return "lt";
    case Opcode::Not: return "not";
    case Opcode::Concat: return "concat";
    case Opcode::Len: return "len";
    case Opcode::Slice: return "slice";
    case Opcode::Jump: return "jump";
    case Opcode::JumpIf: return "jump_if";
    case Opcode::ParamCount: return "param_count";
    case Opcode::Param: return "param";
    case Opcode::SelfId: return "self_id";
    case Opcode::SGet: return "sget";
    case Opcode::SSet: return "sset";
    case Opcode::SDel: return "sdel";
    case Opcode::XGet: return "xget";
    case Opcode::Send: return "send";
    case Opcode::Create: return "create";
    case Opcode::SetId: return "set_id";
    case Opcode::SetCode: return "set_code";
    case Opcode::Halt: return "halt";
    case Opcode::Trap: return "trap";
    case Opcode::I2B: return "i2b";
    case Opcode::B2I: return "b2i";
    }
    return "?";
}

void validate_program(const Program& p) {
    for (const auto& [name, instrs] : p.functions) {
        if (name.empty() || name.size() > Message::kMaxFunctionNameLen) {
            throw ProgramError("function name length must be 1..=256");
        }
        if (instrs.size() > kMaxFunctionInstructions) {
            throw ProgramError("function " + name_for_error(name) +
                               ": instruction count exceeds 65536");
        }
        for (const Instruction& ins : instrs) {
            validate_instruction(ins, instrs.size(), name);
        }
    }
}

CodeBlob encode_program(const Program& p) {
    validate_program(p);

    Bytes out;
    out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
    out.push_back(kVersion);
    append_u32_be(out, static_cast<std::uint32_t>(p.functions.size()));

    for (const auto& [name, instrs] : p.functions) {
        append_u32_be(out, static_cast<std::uint32_t>(name.size()));
        out.insert(out.end(), name.begin(), name.end());
        append_u32_be(out, static_cast<std::uint32_t>(instrs.size()));
        for (const Instruction& ins : instrs) {
            out.push_back(static_cast<std::uint8_t>(ins.op));
            switch (operand_kind(ins.op)) {
            case OperandKind::I64:
                append_i64_be(out, ins.ival);
                break;
            case OperandKind::BytesBlob:
                append_u32_be(out, static_cast<std::uint32_t>(ins.bval.size()));
                out.insert(out.end(), ins.bval.begin(), ins.bval.end());
                break;
            case OperandKind::U32:
                append_u32_be(out, ins.uval);
                break;
            case OperandKind::None:
                break;
            }
            if (out.size() > kMaxProgramEncodedSize) {
                throw ProgramError("encoded program exceeds 262144 bytes");
            }
        }
        if (out.size() > kMaxProgramEncodedSize) {
            throw ProgramError("encoded program exceeds 262144 bytes");
        }
    }
    return out;
}

std::optional<Program> decode_program(const CodeBlob& blob) {
    if (blob.size() > kMaxProgramEncodedSize) return std::nullopt;

    ByteReader r(blob);
    Bytes magic;
    if (!r.take_bytes(4, magic)) return std::nullopt;
    if (!std::equal(magic.begin(), magic.end(), std::begin(kMagic))) return std::nullopt;
    std::uint8_t version = 0;
    if (!r.take_u8(version) || version != kVersion) return std::nullopt;

    std::uint32_t fn_count = 0;
    if (!r.take_u32(fn_count)) return std::nullopt;

    Program p;
    const Bytes* prev_name = nullptr;
    for (std::uint32_t f = 0; f < fn_count; ++f) {
        std::uint32_t name_len = 0;
        if (!r.take_u32(name_len)) return std::nullopt;
        if (name_len == 0 || name_len > Message::kMaxFunctionNameLen) return std::nullopt;
        Bytes name;
        if (!r.take_bytes(name_len, name)) return std::nullopt;
        if (prev_name != nullptr && !(*prev_name < name)) return std::nullopt; // canonical order

        std::uint32_t instr_count = 0;
        if (!r.take_u32(instr_count)) return std::nullopt;
        if (instr_count > kMaxFunctionInstructions) return std::nullopt;

        std::vector<Instruction> instrs;
        instrs.reserve(instr_count);
        for (std::uint32_t i = 0; i < instr_count; ++i) {
            std::uint8_t op_byte = 0;
            if (!r.take_u8(op_byte)) return std::nullopt;
            if (op_byte > kMaxOpcode) return std::nullopt;
            Instruction ins;
            ins.op = static_cast<Opcode>(op_byte);
            switch (operand_kind(ins.op)) {
            case OperandKind::I64:
                if (!r.take_i64(ins.ival)) return std::nullopt;
                break;
            case OperandKind::BytesBlob: {
                std::uint32_t len = 0;
                if (!r.take_u32(len)) return std::nullopt;
                if (len > kMaxPushBytesLen) return std::nullopt;
                if (!r.take_bytes(len, ins.bval)) return std::nullopt;
                break;
            }
            case OperandKind::U32:
                if (!r.take_u32(ins.uval)) return std::nullopt;
                break;
            case OperandKind::None:
                break;
            }
            switch (ins.op) {
            case Opcode::Dup:
                if (ins.uval > kMaxDupDepth) return std::nullopt;
                break;
            case Opcode::Jump:
            case Opcode::JumpIf:
                if (ins.uval > instr_count) return std::nullopt;
                break;
            case Opcode::Send:
            case Opcode::Create:
                if (ins.uval > kMaxCallParams) return std::nullopt;
                break;
            default:
                break;
            }
            instrs.push_back(std::move(ins));
        }

        auto [it, inserted] = p.functions.emplace(std::move(name), std::move(instrs));
        if (!inserted) return std::nullopt;
        prev_name = &it->first;
    }

    if (!r.done()) return std::nullopt; // trailing bytes are non-canonical
    return p;
}

} // namespace enso
