#include <doctest.h>

#include <random>

#include "enso/program.hpp"
#include "program_gen.hpp"

using namespace enso;
using namespace enso::test;

TEST_CASE("program: empty program encodes to the 9-byte header") {
    CodeBlob blob = encode_program(Program{});
    CHECK(to_hex(blob) == "454e534f0100000000");
    auto back = decode_program(blob);
    REQUIRE(back.has_value());
    CHECK(back->functions.empty());
}

TEST_CASE("program: two-function round trip") {
    Program p;
    p.functions[to_bytes("get")] = {Instruction::push_int(1), Instruction::halt()};
    p.functions[to_bytes("set")] = {
        Instruction::push_bytes(to_bytes("k")),
        Instruction::push_bytes(to_bytes("v")),
        Instruction::sset(),
        Instruction::halt(),
    };
    auto back = decode_program(encode_program(p));
    REQUIRE(back.has_value());
    CHECK(*back == p);
}

TEST_CASE("program: insertion order does not matter (canonical bytes)") {
    Program p1;
    p1.functions[to_bytes("alpha")] = {Instruction::halt()};
    p1.functions[to_bytes("beta")] = {Instruction::trap()};

    Program p2;
    p2.functions[to_bytes("beta")] = {Instruction::trap()};
    p2.functions[to_bytes("alpha")] = {Instruction::halt()};

    CHECK(encode_program(p1) == encode_program(p2));
}

TEST_CASE("program: empty byte string fails to decode") {
    CHECK(!decode_program({}).has_value());
}

TEST_CASE("program: decode rejects malformed blobs") {
    Program p;
    p.functions[to_bytes("f")] = {Instruction::push_int(7), Instruction::halt()};
    CodeBlob good = encode_program(p);

    SUBCASE("truncation at every length") {
        for (std::size_t cut = 0; cut < good.size(); ++cut) {
            CodeBlob bad(good.begin(), good.begin() + static_cast<std::ptrdiff_t>(cut));
            CHECK(!decode_program(bad).has_value());
        }
    }
    SUBCASE("trailing garbage") {
        CodeBlob bad = good;
        bad.push_back(0x00);
        CHECK(!decode_program(bad).has_value());
    }
    SUBCASE("bad magic") {
        CodeBlob bad = good;
        bad[0] ^= 0xFF;
        CHECK(!decode_program(bad).has_value());
    }
    SUBCASE("bad version") {
        CodeBlob bad = good;
        bad[4] = 0x02;
        CHECK(!decode_program(bad).has_value());
    }
}

TEST_CASE("program: decode rejects out-of-range jump targets") {
    Program p;
    p.functions[to_bytes("f")] = {Instruction::jump(2), Instruction::halt()};
    CodeBlob good = encode_program(p); // target == length is the fall-through halt
    CHECK(decode_program(good).has_value());

    // Patch the jump target to length+1. Layout: header(9) + name len(4) +
    // name(1) + instr count(4) + opcode(1) + target(4).
    CodeBlob bad = good;
    bad[9 + 4 + 1 + 4 + 1 + 3] = 3;
    CHECK(!decode_program(bad).has_value());
}

TEST_CASE("program: decode rejects non-ascending function names") {
    Program p;
    p.functions[to_bytes("a")] = {};
    p.functions[to_bytes("b")] = {};
    CodeBlob good = encode_program(p);

    // Swap the two single-byte names in place.
    CodeBlob bad = good;
    std::size_t name_a = 9 + 4;
    std::size_t name_b = name_a + 1 + 4 + 4;
    REQUIRE(bad[name_a] == 'a');
    REQUIRE(bad[name_b] == 'b');
    std::swap(bad[name_a], bad[name_b]);
    CHECK(!decode_program(bad).has_value());
}

TEST_CASE("program: validate rejects invariant violations") {
    SUBCASE("jump past end") {
        Program p;
        p.functions[to_bytes("f")] = {Instruction::jump(5)};
        CHECK_THROWS_AS(validate_program(p), ProgramError);
    }
    SUBCASE("dup depth too large") {
        Program p;
        p.functions[to_bytes("f")] = {Instruction::dup(16)};
        CHECK_THROWS_AS(validate_program(p), ProgramError);
    }
    SUBCASE("oversized push_bytes") {
        Program p;
        p.functions[to_bytes("f")] = {Instruction::push_bytes(Bytes(1025, 0x00))};
        CHECK_THROWS_AS(validate_program(p), ProgramError);
    }
    SUBCASE("empty function name") {
        Program p;
        p.functions[Bytes{}] = {Instruction::halt()};
        CHECK_THROWS_AS(encode_program(p), ProgramError);
    }
    SUBCASE("send param count out of range") {
        Program p;
        p.functions[to_bytes("f")] = {Instruction::send(33)};
        CHECK_THROWS_AS(validate_program(p), ProgramError);
    }
}

TEST_CASE("program: fuzzed round trips and stable re-encode") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 300; ++i) {
        Program p = random_program(rng);
        CodeBlob blob = encode_program(p);
        auto back = decode_program(blob);
        REQUIRE(back.has_value());
        CHECK(*back == p);
        CHECK(encode_program(*back) == blob);
    }
}
