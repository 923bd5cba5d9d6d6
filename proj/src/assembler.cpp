#include "enso/assembler.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <vector>

namespace enso {

namespace {

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_bare_ident(std::string_view s) {
    if (s.empty() || !is_ident_start(s[0])) return false;
    for (char c : s) {
        if (!is_ident_char(c)) return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Strips a ';' comment, ignoring ';' inside string literals.
std::string_view strip_comment(std::string_view line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_string = false;
            }
        } else if (c == '"') {
            in_string = true;
        } else if (c == ';') {
            return line.substr(0, i);
        }
    }
    return line;
}

std::optional<Bytes> parse_quoted(std::string_view token) {
    if (token.size() < 2 || token.front() != '"' || token.back() != '"') return std::nullopt;
    Bytes out;
    const std::size_t last = token.size() - 1; // closing quote
    std::size_t i = 1;
    while (i < last) {
        char c = token[i];
        if (c == '"') return std::nullopt; // unescaped quote before the end
        if (c == '\\') {
            if (i + 1 >= last) return std::nullopt; // escape runs into the closing quote
            char esc = token[i + 1];
            if (esc != '\\' && esc != '"') return std::nullopt;
            out.push_back(static_cast<std::uint8_t>(esc));
            i += 2;
            continue;
        }
        out.push_back(static_cast<std::uint8_t>(c));
        ++i;
    }
    return out;
}

std::optional<std::int64_t> parse_i64(std::string_view token) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
    return v;
}

std::optional<std::uint32_t> parse_u32(std::string_view token) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
    return v;
}

std::optional<Opcode> mnemonic_to_opcode(std::string_view m) {
    for (int op = 0; op <= kMaxOpcode; ++op) {
        if (m == opcode_name(static_cast<Opcode>(op))) return static_cast<Opcode>(op);
    }
    return std::nullopt;
}

struct PendingJump {
    std::size_t instr_index;
    std::string label;
    std::size_t line;
};

struct FunctionBuilder {
    Bytes name;
    std::size_t decl_line = 0;
    std::vector<Instruction> instrs;
    std::vector<std::size_t> instr_lines;
    std::map<std::string, std::uint32_t> labels;
    std::vector<PendingJump> pending;

    void finish(Program& program) {
        for (const PendingJump& p : pending) {
            auto it = labels.find(p.label);
            if (it == labels.end()) {
                throw AsmError(p.line, "unknown label \"" + p.label + "\"");
            }
            instrs[p.instr_index].uval = it->second;
        }
        if (instrs.size() > kMaxFunctionInstructions) {
            throw AsmError(decl_line, "function exceeds 65536 instructions");
        }
        for (std::size_t i = 0; i < instrs.size(); ++i) {
            const Instruction& ins = instrs[i];
            if ((ins.op == Opcode::Jump || ins.op == Opcode::JumpIf) &&
                ins.uval > instrs.size()) {
                throw AsmError(instr_lines[i], "jump target " + std::to_string(ins.uval) +
                                                   " out of range (function length " +
                                                   std::to_string(instrs.size()) + ")");
            }
        }
        auto [it, inserted] = program.functions.emplace(std::move(name), std::move(instrs));
        if (!inserted) {
            throw AsmError(decl_line, "duplicate function \"" + to_string(it->first) + "\"");
        }
    }
};

} // namespace

std::optional<Bytes> parse_bytes_token(std::string_view token) {
    if (!token.empty() && token.front() == '"') return parse_quoted(token);
    if (token.size() >= 2 && token[0] == '0' && (token[1] == 'x' || token[1] == 'X')) {
        return from_hex(token);
    }
    return std::nullopt;
}

std::optional<Bytes> parse_name_token(std::string_view token) {
    if (is_bare_ident(token)) return to_bytes(token);
    return parse_bytes_token(token);
}

Program assemble_program(std::string_view source, std::size_t line_offset) {
    Program program;
    std::optional<FunctionBuilder> current;

    std::size_t line_no = line_offset;
    std::size_t start = 0;
    while (start <= source.size()) {
        std::size_t end = source.find('\n', start);
        std::string_view raw = (end == std::string_view::npos)
                                   ? source.substr(start)
                                   : source.substr(start, end - start);
        start = (end == std::string_view::npos) ? source.size() + 1 : end + 1;
        ++line_no;

        std::string_view line = trim(strip_comment(raw));
        if (line.empty()) continue;

        if (line.starts_with(".func")) {
            std::string_view rest = trim(line.substr(5));
            auto name = parse_name_token(rest);
            if (!name || name->empty()) {
                throw AsmError(line_no, ".func expects a function name");
            }
            if (name->size() > Message::kMaxFunctionNameLen) {
                throw AsmError(line_no, "function name exceeds 256 bytes");
            }
            if (current) current->finish(program);
            current = FunctionBuilder{};
            current->name = std::move(*name);
            current->decl_line = line_no;
            continue;
        }
        if (line.front() == '.') {
            throw AsmError(line_no, "unknown directive \"" + std::string(line) + "\"");
        }

        if (!current) {
            throw AsmError(line_no, "instruction outside of a .func block");
        }

        // Label line: single bare identifier followed by ':'.
        if (line.back() == ':') {
            std::string_view label = line.substr(0, line.size() - 1);
            if (!is_bare_ident(label)) {
                throw AsmError(line_no, "invalid label \"" + std::string(label) + "\"");
            }
            auto [it, inserted] =
                current->labels.emplace(std::string(label),
                                        static_cast<std::uint32_t>(current->instrs.size()));
            if (!inserted) {
                throw AsmError(line_no, "duplicate label \"" + std::string(label) + "\"");
            }
            continue;
        }

        std::size_t sp = line.find_first_of(" \t");
        std::string_view mnemonic = (sp == std::string_view::npos) ? line : line.substr(0, sp);
        std::string_view operand =
            (sp == std::string_view::npos) ? std::string_view{} : trim(line.substr(sp + 1));

        auto op = mnemonic_to_opcode(mnemonic);
        if (!op) {
            throw AsmError(line_no, "unknown instruction \"" + std::string(mnemonic) + "\"");
        }

        Instruction ins;
        ins.op = *op;
        switch (*op) {
        case Opcode::PushInt: {
            auto v = parse_i64(operand);
            if (!v) throw AsmError(line_no, "push_int expects a 64-bit integer");
            ins.ival = *v;
            break;
        }
        case Opcode::PushBytes: {
            auto b = parse_bytes_token(operand);
            if (!b) throw AsmError(line_no, "push_bytes expects \"string\" or 0x-hex");
            if (b->size() > kMaxPushBytesLen) {
                throw AsmError(line_no, "push_bytes operand exceeds 1024 bytes");
            }
            ins.bval = std::move(*b);
            break;
        }
        case Opcode::Dup: {
            auto v = parse_u32(operand);
            if (!v || *v > kMaxDupDepth) throw AsmError(line_no, "dup expects a depth 0..15");
            ins.uval = *v;
            break;
        }
        case Opcode::Send:
        case Opcode::Create: {
            auto v = parse_u32(operand);
            if (!v || *v > kMaxCallParams) {
                throw AsmError(line_no,
                               std::string(mnemonic) + " expects a parameter count 0..32");
            }
            ins.uval = *v;
            break;
        }
        case Opcode::Jump:
        case Opcode::JumpIf: {
            if (operand.empty()) throw AsmError(line_no, "jump expects a label or index");
            if (auto v = parse_u32(operand)) {
                ins.uval = *v;
            } else if (is_bare_ident(operand)) {
                current->pending.push_back(
                    {current->instrs.size(), std::string(operand), line_no});
            } else {
                throw AsmError(line_no, "invalid jump target \"" + std::string(operand) + "\"");
            }
            break;
        }
        default:
            if (!operand.empty()) {
                throw AsmError(line_no, std::string(mnemonic) + " takes no operand");
            }
            break;
        }
        current->instrs.push_back(std::move(ins));
        current->instr_lines.push_back(line_no);
    }

    if (current) current->finish(program);

    try {
        validate_program(program);
    } catch (const ProgramError& e) {
        throw AsmError(line_offset, e.what());
    }
    return program;
}

} // namespace enso
