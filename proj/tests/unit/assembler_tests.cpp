#include <doctest.h>

#include "enso/assembler.hpp"
#include "enso/genesis_text.hpp"
#include "test_util.hpp"

using namespace enso;
using namespace enso::test;

TEST_CASE("asm: single halt function has the frozen encoding") {
    Program p = assemble_program(".func main\n  halt\n");
    // ENSO 01 | count 1 | name len 4 "main" | instr count 1 | 0x1C
    CHECK(to_hex(encode_program(p)) == "454e534f0100000001000000046d61696e000000011c");
}

TEST_CASE("asm: labels, comments and operands") {
    Program p = assemble_program(R"(; counter loop
.func spin
  push_int 3        ; the counter
top:
  push_int -1
  add
  dup 0
  jump_if top
  halt
)");
    REQUIRE(p.functions.count(to_bytes("spin")) == 1);
    const auto& f = p.functions[to_bytes("spin")];
    REQUIRE(f.size() == 6);
    CHECK(f[0] == Instruction::push_int(3));
    CHECK(f[1] == Instruction::push_int(-1));
    CHECK(f[4] == Instruction::jump_if(1)); // label "top" is index 1
}

TEST_CASE("asm: quoted and hex byte operands, quoted function names") {
    Program p = assemble_program(".func \"weird name\"\n  push_bytes \"a;b\\\"c\"\n"
                                 "  push_bytes 0x0a0b\n  halt\n");
    const auto& f = p.functions.at(to_bytes("weird name"));
    CHECK(f[0].bval == to_bytes("a;b\"c"));
    CHECK(f[1].bval == Bytes{0x0A, 0x0B});
}

TEST_CASE("asm: trailing label resolves to the fall-through index") {
    Program p = assemble_program(".func f\n  jump done\ndone:\n");
    CHECK(p.functions.at(to_bytes("f"))[0] == Instruction::jump(1));
}

TEST_CASE("asm: errors carry line numbers and name the offender") {
    SUBCASE("unknown label") {
        try {
            assemble_program(".func f\n  jump nowhere\n  halt\n");
            FAIL("expected AsmError");
        } catch (const AsmError& e) {
            CHECK(e.line == 2);
            CHECK(std::string(e.what()).find("nowhere") != std::string::npos);
        }
    }
    SUBCASE("numeric target out of range") {
        try {
            assemble_program(".func f\n  halt\n  jump 9\n");
            FAIL("expected AsmError");
        } catch (const AsmError& e) {
            CHECK(e.line == 3);
        }
    }
    SUBCASE("instruction outside a function") {
        CHECK_THROWS_AS(assemble_program("halt\n"), AsmError);
    }
    SUBCASE("duplicate label") {
        CHECK_THROWS_AS(assemble_program(".func f\nx:\nx:\n  halt\n"), AsmError);
    }
    SUBCASE("duplicate function") {
        CHECK_THROWS_AS(assemble_program(".func f\n  halt\n.func f\n  halt\n"), AsmError);
    }
    SUBCASE("unknown mnemonic") {
        CHECK_THROWS_AS(assemble_program(".func f\n  frobnicate\n"), AsmError);
    }
    SUBCASE("dup depth out of range") {
        CHECK_THROWS_AS(assemble_program(".func f\n  dup 16\n"), AsmError);
    }
    SUBCASE("push_int range") {
        CHECK_THROWS_AS(assemble_program(".func f\n  push_int 99999999999999999999\n"), AsmError);
    }
}

TEST_CASE("asm: line offset shifts reported numbers") {
    try {
        assemble_program("  junk_mnemonic\n", 10);
        FAIL("expected AsmError");
    } catch (const AsmError& e) {
        CHECK(e.line == 11);
    }
}

TEST_CASE("genesis text: full document parses") {
    GenesisDoc doc = parse_genesis_text(R"(; demo chain
[config]
fuel_per_message = 123
max_messages_per_block = 45
max_queue_len = 678

[template counter]
.func init
  halt

[kernel 0x0101010101010101010101010101010101010101010101010101010101010101]
storage "A" = 0x0000000000000064
storage 0x42 = "fifty"
.func f
  push_int 1
  halt

[user 0x0202020202020202020202020202020202020202020202020202020202020202]
template = counter
storage "x" = "y"
)");
    CHECK(doc.config.fuel_per_message == 123);
    CHECK(doc.config.max_messages_per_block == 45);
    CHECK(doc.config.max_queue_len == 678);
    CHECK(doc.templates.count(to_bytes("counter")) == 1);
    REQUIRE(doc.kernel_actors.size() == 1);
    CHECK(doc.kernel_actors[0].id == enso::test::id_from_byte(1));
    CHECK(doc.kernel_actors[0].storage.size() == 2);
    CHECK(doc.kernel_actors[0].program.functions.count(to_bytes("f")) == 1);
    REQUIRE(doc.user_actors.size() == 1);
    CHECK(doc.user_actors[0].template_name == to_bytes("counter"));
}

TEST_CASE("genesis text: errors carry line numbers") {
    SUBCASE("bad section") {
        CHECK_THROWS_WITH_AS(parse_genesis_text("[conf]\n"), doctest::Contains("line 1"),
                             GenesisError);
    }
    SUBCASE("bad id") {
        CHECK_THROWS_WITH_AS(parse_genesis_text("[kernel 0x1234]\n"),
                             doctest::Contains("line 1"), GenesisError);
    }
    SUBCASE("asm error inside a kernel section reports the file line") {
        CHECK_THROWS_WITH_AS(
            parse_genesis_text("[kernel "
                               "0x010101010101010101010101010101010101010101010101010101010101010"
                               "1]\n.func f\n  bogus\n"),
            doctest::Contains("line 3"), GenesisError);
    }
    SUBCASE("user actor without template") {
        CHECK_THROWS_AS(
            parse_genesis_text("[user "
                               "0x010101010101010101010101010101010101010101010101010101010101010"
                               "1]\nstorage \"a\" = \"b\"\n"),
            GenesisError);
    }
    SUBCASE("unknown config key") {
        CHECK_THROWS_WITH_AS(parse_genesis_text("[config]\nfoo = 1\n"),
                             doctest::Contains("line 2"), GenesisError);
    }
}
