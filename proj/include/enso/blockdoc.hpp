#pragma once

#include <stdexcept>
#include <string>

#include "enso/stf.hpp"

namespace enso {

struct BlockParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Block document:
///   { "extrinsics": [ { "id_to": "0x<64 hex>",
///                       "function_call": "transfer",          // or 0x-hex
///                       "parameters": [ {"int": "30"},
///                                       {"bytes": "0x41"} ] } ] }
/// Values carry exactly one key: "int" (decimal string) or "bytes"
/// (0x-prefixed lowercase hex, even length). Extrinsic origins are assigned
/// from array position. Throws BlockParseError.
Block parse_block_json(const std::string& text);

/// One entry per receipt, in processing order: disposition, trap_reason
/// (trapped receipts only), fuel_used, messages_emitted, actors_created.
std::string render_receipts_json(const std::vector<Receipt>& receipts);

} // namespace enso
