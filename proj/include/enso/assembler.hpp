#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "enso/program.hpp"

namespace enso {

struct AsmError : std::runtime_error {
    AsmError(std::size_t line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
    std::size_t line;
};

/// Assembles the text form of a program:
///
///   ; comment to end of line
///   .func transfer          ; starts a function (bare word, "quoted", or 0x-hex)
///   loop:                   ; label, resolves to the next instruction index
///     push_bytes "key"      ; byte operands: "quoted" (\\ and \" escapes) or 0x-hex
///     push_int -7
///     jump loop             ; targets: label or numeric index
///
/// One instruction per line. Mnemonics are the opcode names (push_int,
/// push_bytes, pop, dup, swap, add, sub, mul, div, eq, lt, not, concat, len,
/// slice, jump, jump_if, param_count, param, self_id, sget, sset, sdel, xget,
/// send, create, set_id, set_code, halt, trap, i2b, b2i). Labels are scoped
/// to their function. Throws AsmError with the offending line number;
/// `line_offset` shifts reported numbers when the source is embedded in a
/// larger file.
Program assemble_program(std::string_view source, std::size_t line_offset = 0);

/// Byte-string token: "quoted" or 0x-hex. nullopt if neither.
std::optional<Bytes> parse_bytes_token(std::string_view token);

/// Name token: bare identifier [A-Za-z_][A-Za-z0-9_]*, "quoted", or 0x-hex.
std::optional<Bytes> parse_name_token(std::string_view token);

} // namespace enso
