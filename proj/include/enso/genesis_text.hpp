#pragma once

#include <string_view>

#include "enso/genesis.hpp"

namespace enso {

/// Parses the genesis document format:
///
///   [config]
///   fuel_per_message = 10000        ; max_messages_per_block, max_queue_len
///
///   [template counter]              ; body is text assembly
///   .func init
///     halt
///
///   [kernel 0x<64-hex id>]          ; storage lines plus text assembly
///   storage "A" = 0x0000000000000064
///   .func transfer
///     ...
///
///   [user 0x<64-hex id>]            ; instantiated from a template
///   template = counter
///   storage "k" = "v"
///
/// Storage keys/values are "quoted" or 0x-hex. `;` starts a comment.
/// Throws GenesisError with a line reference on malformed input.
GenesisDoc parse_genesis_text(std::string_view text);

} // namespace enso
