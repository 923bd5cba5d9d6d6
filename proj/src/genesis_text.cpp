#include "enso/genesis_text.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "enso/assembler.hpp"

namespace enso {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw GenesisError("line " + std::to_string(line) + ": " + msg);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

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

std::optional<std::uint64_t> parse_u64(std::string_view token) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
    return v;
}

// "key = value" split on the first '=' outside quotes.
std::optional<std::pair<std::string_view, std::string_view>> split_assign(std::string_view s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (in_string) {
            if (c == '\\') {
                ++i;
            } else if (c == '"') {
                in_string = false;
            }
        } else if (c == '"') {
            in_string = true;
        } else if (c == '=') {
            return std::make_pair(trim(s.substr(0, i)), trim(s.substr(i + 1)));
        }
    }
    return std::nullopt;
}

struct Section {
    enum class Kind { Config, Template, Kernel, User };
    Kind kind = Kind::Config;
    Bytes name;  // template name
    ActorId id;  // kernel/user id
    std::size_t header_line = 0;

    // collected body
    std::string asm_source;
    std::size_t asm_first_line = 0; // offset passed to the assembler
    std::size_t asm_lines = 0;      // lines currently in asm_source
    bool asm_started = false;
    std::vector<std::pair<Bytes, Bytes>> storage;
    std::optional<Bytes> template_ref;
};

Section parse_header(std::string_view header, std::size_t line) {
    std::string_view body = trim(header.substr(1, header.size() - 2));
    Section sec;
    sec.header_line = line;
    if (body == "config") {
        sec.kind = Section::Kind::Config;
        return sec;
    }
    std::size_t sp = body.find_first_of(" \t");
    if (sp == std::string_view::npos) {
        fail(line, "expected [config], [template NAME], [kernel 0xID] or [user 0xID]");
    }
    std::string_view kind = body.substr(0, sp);
    std::string_view arg = trim(body.substr(sp + 1));
    if (kind == "template") {
        auto name = parse_name_token(arg);
        if (!name || name->empty() || name->size() > Message::kMaxFunctionNameLen) {
            fail(line, "invalid template name");
        }
        sec.kind = Section::Kind::Template;
        sec.name = std::move(*name);
        return sec;
    }
    if (kind == "kernel" || kind == "user") {
        auto id = ActorId::from_hex(arg);
        if (!id) fail(line, "expected a 32-byte 0x-hex actor id");
        sec.kind = kind == "kernel" ? Section::Kind::Kernel : Section::Kind::User;
        sec.id = *id;
        return sec;
    }
    fail(line, "unknown section kind \"" + std::string(kind) + "\"");
}

Program assemble_section(const Section& sec) {
    try {
        return assemble_program(sec.asm_source, sec.asm_first_line);
    } catch (const AsmError& e) {
        throw GenesisError(e.what());
    }
}

void flush_section(GenesisDoc& doc, Section& sec) {
    switch (sec.kind) {
    case Section::Kind::Config:
        break;
    case Section::Kind::Template: {
        Program p = assemble_section(sec);
        auto [it, inserted] = doc.templates.emplace(sec.name, std::move(p));
        if (!inserted) {
            fail(sec.header_line, "duplicate template \"" + to_string(sec.name) + "\"");
        }
        break;
    }
    case Section::Kind::Kernel: {
        Program p = assemble_section(sec);
        doc.kernel_actors.push_back({sec.id, std::move(p), std::move(sec.storage)});
        break;
    }
    case Section::Kind::User: {
        if (!sec.template_ref) {
            fail(sec.header_line, "user actor needs a `template = NAME` line");
        }
        if (sec.asm_started) {
            fail(sec.header_line, "user actor sections take no assembly");
        }
        doc.user_actors.push_back({std::move(*sec.template_ref), sec.id, std::move(sec.storage)});
        break;
    }
    }
}

} // namespace

GenesisDoc parse_genesis_text(std::string_view text) {
    GenesisDoc doc;
    std::optional<Section> section;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view raw = (end == std::string_view::npos) ? text.substr(start)
                                                               : text.substr(start, end - start);
        start = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
        ++line_no;

        std::string_view line = trim(strip_comment(raw));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            if (section) flush_section(doc, *section);
            section = parse_header(line, line_no);
            continue;
        }

        if (!section) fail(line_no, "content before the first section header");

        switch (section->kind) {
        case Section::Kind::Config: {
            auto kv = split_assign(line);
            if (!kv) fail(line_no, "expected `key = value`");
            auto v = parse_u64(kv->second);
            if (!v || *v == 0) fail(line_no, "config values are integers >= 1");
            if (kv->first == "fuel_per_message") {
                doc.config.fuel_per_message = *v;
            } else if (kv->first == "max_messages_per_block") {
                doc.config.max_messages_per_block = *v;
            } else if (kv->first == "max_queue_len") {
                doc.config.max_queue_len = *v;
            } else {
                fail(line_no, "unknown config key \"" + std::string(kv->first) + "\"");
            }
            break;
        }
        case Section::Kind::Template:
        case Section::Kind::Kernel: {
            if (section->kind == Section::Kind::Kernel && line.starts_with("storage")) {
                auto kv = split_assign(trim(line.substr(7)));
                if (!kv) fail(line_no, "expected `storage KEY = VALUE`");
                auto key = parse_bytes_token(kv->first);
                auto value = parse_bytes_token(kv->second);
                if (!key || !value) fail(line_no, "storage keys/values are \"quoted\" or 0x-hex");
                section->storage.emplace_back(std::move(*key), std::move(*value));
                break;
            }
            if (!section->asm_started) {
                section->asm_started = true;
                section->asm_first_line = line_no - 1;
                section->asm_lines = 1;
            }
            // Pad with blank lines so assembler errors report file line numbers.
            std::size_t want = line_no - section->asm_first_line;
            while (section->asm_lines < want) {
                section->asm_source.push_back('\n');
                ++section->asm_lines;
            }
            section->asm_source.append(line);
            break;
        }
        case Section::Kind::User: {
            if (line.starts_with("storage")) {
                auto kv = split_assign(trim(line.substr(7)));
                if (!kv) fail(line_no, "expected `storage KEY = VALUE`");
                auto key = parse_bytes_token(kv->first);
                auto value = parse_bytes_token(kv->second);
                if (!key || !value) fail(line_no, "storage keys/values are \"quoted\" or 0x-hex");
                section->storage.emplace_back(std::move(*key), std::move(*value));
                break;
            }
            auto kv = split_assign(line);
            if (kv && kv->first == "template") {
                auto name = parse_name_token(kv->second);
                if (!name) fail(line_no, "invalid template name");
                section->template_ref = std::move(*name);
                break;
            }
            fail(line_no, "user actor sections take `template = NAME` and `storage K = V` lines");
        }
        }
    }

    if (section) flush_section(doc, *section);
    return doc;
}

} // namespace enso
