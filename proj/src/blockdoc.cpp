#include "enso/blockdoc.hpp"

#include <charconv>

#include <json.hpp>

namespace enso {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
    throw BlockParseError("block: " + what);
}

Value parse_value(const json& j, std::size_t ext_index, std::size_t param_index) {
    const std::string where = "extrinsic " + std::to_string(ext_index) + " parameter " +
                              std::to_string(param_index);
    if (!j.is_object() || j.size() != 1) {
        fail(where + ": expected an object with exactly one key (\"int\" or \"bytes\")");
    }
    if (j.contains("int")) {
        const auto& v = j.at("int");
        if (!v.is_string()) fail(where + ": \"int\" takes a decimal string");
        const std::string& s = v.get_ref<const std::string&>();
        std::int64_t out = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            fail(where + ": \"" + s + "\" is not a 64-bit integer");
        }
        return Value(out);
    }
    if (j.contains("bytes")) {
        const auto& v = j.at("bytes");
        if (!v.is_string()) fail(where + ": \"bytes\" takes a 0x-hex string");
        auto b = from_hex(v.get_ref<const std::string&>());
        if (!b) fail(where + ": invalid hex");
        if (b->size() > Value::kMaxBytesLen) fail(where + ": byte string exceeds 65536 bytes");
        return Value(std::move(*b));
    }
    fail(where + ": expected key \"int\" or \"bytes\"");
}

} // namespace

Block parse_block_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }

    if (!doc.is_object() || !doc.contains("extrinsics") || !doc.at("extrinsics").is_array()) {
        fail("expected an object with an \"extrinsics\" array");
    }

    std::vector<Message> extrinsics;
    std::size_t index = 0;
    for (const json& ext : doc.at("extrinsics")) {
        const std::string where = "extrinsic " + std::to_string(index);
        if (!ext.is_object()) fail(where + ": expected an object");

        Message m;
        if (!ext.contains("id_to") || !ext.at("id_to").is_string()) {
            fail(where + ": missing \"id_to\"");
        }
        auto id = ActorId::from_hex(ext.at("id_to").get_ref<const std::string&>());
        if (!id) fail(where + ": \"id_to\" must be 32 bytes of 0x-hex");
        m.id_to = *id;

        if (!ext.contains("function_call") || !ext.at("function_call").is_string()) {
            fail(where + ": missing \"function_call\"");
        }
        const std::string& fn = ext.at("function_call").get_ref<const std::string&>();
        if (fn.starts_with("0x") || fn.starts_with("0X")) {
            auto b = from_hex(fn);
            if (!b) fail(where + ": invalid hex in \"function_call\"");
            m.function_call = std::move(*b);
        } else {
            m.function_call = to_bytes(fn);
        }
        if (m.function_call.empty() || m.function_call.size() > Message::kMaxFunctionNameLen) {
            fail(where + ": \"function_call\" length must be 1..=256");
        }

        if (ext.contains("parameters")) {
            if (!ext.at("parameters").is_array()) fail(where + ": \"parameters\" must be an array");
            const json& params = ext.at("parameters");
            if (params.size() > Message::kMaxParams) {
                fail(where + ": more than 32 parameters");
            }
            std::size_t p = 0;
            for (const json& param : params) {
                m.parameters.push_back(parse_value(param, index, p));
                ++p;
            }
        }

        m.origin = ExtrinsicOrigin{index};
        extrinsics.push_back(std::move(m));
        ++index;
    }

    return Block{std::move(extrinsics)};
}

std::string render_receipts_json(const std::vector<Receipt>& receipts) {
    json out;
    out["receipts"] = json::array();
    for (const Receipt& r : receipts) {
        json entry;
        entry["disposition"] = disposition_name(r.disposition);
        if (r.disposition == Disposition::Trapped) {
            entry["trap_reason"] = trap_reason_name(r.trap_reason);
        }
        entry["fuel_used"] = r.fuel_used;
        entry["messages_emitted"] = r.messages_emitted;
        entry["actors_created"] = r.actors_created;
        out["receipts"].push_back(std::move(entry));
    }
    return out.dump(2) + "\n";
}

} // namespace enso
