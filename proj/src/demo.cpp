#include "enso/demo.hpp"

#include <json.hpp>

#include "enso/assembler.hpp"
#include "enso/hash.hpp"
#include "enso/program.hpp"

namespace enso {

namespace {

using nlohmann::json;

// Balances live in the ledger actor's storage as 8-byte big-endian integers
// under single-byte account keys. transfer(from, to, amount) moves funds;
// upgrade(blob) swaps the actor's own code.
constexpr const char* kLedgerV1 = R"(.func transfer
  ; params: 0 = from key, 1 = to key, 2 = amount
  param_count
  push_int 3
  eq
  not
  jump_if abort
  push_int 0
  param
  push_int 1
  param
  eq
  jump_if abort           ; self-transfer
  push_int 2
  param
  push_int 0
  lt
  jump_if abort           ; negative amount
  push_int 0
  param
  sget
  not
  jump_if abort           ; unknown sender account
  b2i
  dup 0
  push_int 2
  param
  lt
  jump_if abort           ; insufficient funds
  push_int 1
  param
  sget
  not
  jump_if abort           ; unknown recipient account
  b2i
  push_int 2
  param
  add
  i2b
  push_int 1
  param
  swap
  sset                    ; recipient += amount
  push_int 2
  param
  sub
  i2b
  push_int 0
  param
  swap
  sset                    ; sender -= amount
  halt
abort:
  trap

.func upgrade
  ; params: 0 = replacement code blob
  param_count
  push_int 1
  eq
  not
  jump_if abort
  push_int 0
  param
  set_code
  halt
abort:
  trap
)";

// Same ledger, but every transfer burns a flat fee of 10: the recipient is
// credited amount - 10 while the sender pays the full amount.
constexpr const char* kLedgerV2 = R"(.func transfer
  ; params: 0 = from key, 1 = to key, 2 = amount
  param_count
  push_int 3
  eq
  not
  jump_if abort
  push_int 0
  param
  push_int 1
  param
  eq
  jump_if abort           ; self-transfer
  push_int 10
  push_int 2
  param
  lt
  not
  jump_if abort           ; amount must exceed the fee
  push_int 0
  param
  sget
  not
  jump_if abort           ; unknown sender account
  b2i
  dup 0
  push_int 2
  param
  lt
  jump_if abort           ; insufficient funds
  push_int 1
  param
  sget
  not
  jump_if abort           ; unknown recipient account
  b2i
  push_int 2
  param
  add
  push_int 10
  sub                     ; burn the fee
  i2b
  push_int 1
  param
  swap
  sset
  push_int 2
  param
  sub
  i2b
  push_int 0
  param
  swap
  sset
  halt
abort:
  trap

.func upgrade
  ; params: 0 = replacement code blob
  param_count
  push_int 1
  eq
  not
  jump_if abort
  push_int 0
  param
  set_code
  halt
abort:
  trap
)";

json transfer_extrinsic(const ActorId& ledger, const std::string& from, const std::string& to,
                        std::int64_t amount) {
    json ext;
    ext["id_to"] = ledger.hex0x();
    ext["function_call"] = "transfer";
    ext["parameters"] = json::array({
        json{{"bytes", to_hex0x(to_bytes(from))}},
        json{{"bytes", to_hex0x(to_bytes(to))}},
        json{{"int", std::to_string(amount)}},
    });
    return ext;
}

std::string block_doc(std::initializer_list<json> extrinsics) {
    json doc;
    doc["extrinsics"] = json::array();
    for (const json& e : extrinsics) {
        doc["extrinsics"].push_back(e);
    }
    return doc.dump(2) + "\n";
}

} // namespace

DemoFixtures make_demo_fixtures() {
    DemoFixtures fx;
    fx.ledger_id = ActorId::from_hash(sha256("demo/ledger"));

    fx.genesis_text = "; ledger demo chain: balances A=100 B=50 C=0\n"
                      "[config]\n"
                      "fuel_per_message = 10000\n"
                      "max_messages_per_block = 100000\n"
                      "max_queue_len = 1000000\n"
                      "\n"
                      "[kernel " +
                      fx.ledger_id.hex0x() +
                      "]\n"
                      "storage \"A\" = 0x0000000000000064\n"
                      "storage \"B\" = 0x0000000000000032\n"
                      "storage \"C\" = 0x0000000000000000\n" +
                      kLedgerV1;

    fx.block1_json = block_doc({
        transfer_extrinsic(fx.ledger_id, "A", "C", 30),
        transfer_extrinsic(fx.ledger_id, "B", "C", 20),
        transfer_extrinsic(fx.ledger_id, "C", "A", 1000), // over-spend, traps
    });

    CodeBlob v2 = encode_program(assemble_program(kLedgerV2));
    json upgrade;
    upgrade["id_to"] = fx.ledger_id.hex0x();
    upgrade["function_call"] = "upgrade";
    upgrade["parameters"] = json::array({json{{"bytes", to_hex0x(v2)}}});
    fx.block2_json = block_doc({upgrade});

    fx.block3_json = block_doc({
        transfer_extrinsic(fx.ledger_id, "C", "A", 25),
    });

    return fx;
}

} // namespace enso
