#include <doctest.h>

#include <random>

#include "enso/genesis.hpp"
#include "enso/vm.hpp"
#include "test_util.hpp"

using namespace enso;
using namespace enso::test;

namespace {

struct Harness {
    WorldState view;
    Actor self;
    Message msg;

    Harness() {
        self.id = id_from_byte(0xAA);
        msg = simple_message(self.id, "f");
    }

    ExecResult run(std::vector<Instruction> instrs, std::uint64_t fuel = 1000) {
        Program p;
        p.functions[to_bytes("f")] = std::move(instrs);
        return execute(view, self, p, msg, fuel);
    }
};

} // namespace

TEST_CASE("vm: arithmetic program halts with fuel accounting") {
    Harness h;
    auto r = h.run({Instruction::push_int(2), Instruction::push_int(3), Instruction::add(),
                    Instruction::halt()},
                   100);
    CHECK(r.outcome.halted());
    CHECK(r.outcome.fuel_used == 4);
    CHECK(r.effects == EffectBuffer{});
    REQUIRE(r.final_stack.size() == 1);
    CHECK(r.final_stack[0] == Value(std::int64_t(5)));
}

TEST_CASE("vm: division by zero traps") {
    Harness h;
    auto r = h.run({Instruction::push_int(1), Instruction::push_int(0), Instruction::div()});
    CHECK(r.outcome.trapped());
    CHECK(r.outcome.reason == TrapReason::DivByZero);
}

TEST_CASE("vm: infinite loop is cut at the fuel limit") {
    Harness h;
    auto r = h.run({Instruction::jump(0)}, 10);
    CHECK(r.outcome.trapped());
    CHECK(r.outcome.reason == TrapReason::FuelExhausted);
    CHECK(r.outcome.fuel_used == 10);
}

TEST_CASE("vm: fuel bound honours halting just in time") {
    Harness h;
    // 4 instructions, limit 4: halts with all fuel burned.
    auto exact = h.run({Instruction::push_int(1), Instruction::pop(), Instruction::push_int(2),
                        Instruction::halt()},
                       4);
    CHECK(exact.outcome.halted());
    CHECK(exact.outcome.fuel_used == 4);

    // Limit 3: the halt itself would be the 4th instruction.
    auto starved = h.run({Instruction::push_int(1), Instruction::pop(), Instruction::push_int(2),
                          Instruction::halt()},
                         3);
    CHECK(starved.outcome.trapped());
    CHECK(starved.outcome.reason == TrapReason::FuelExhausted);
    CHECK(starved.outcome.fuel_used == 3);

    // Falling off the end needs no extra fuel.
    auto fall = h.run({Instruction::push_int(1), Instruction::pop()}, 2);
    CHECK(fall.outcome.halted());
    CHECK(fall.outcome.fuel_used == 2);
}

TEST_CASE("vm: storage write buffering (pops value, then key)") {
    Harness h;
    auto r = h.run({Instruction::push_bytes(to_bytes("k")), Instruction::push_bytes(to_bytes("v")),
                    Instruction::sset(), Instruction::halt()});
    CHECK(r.outcome.halted());
    REQUIRE(r.effects.storage_writes.size() == 1);
    CHECK(r.effects.storage_writes[0].key == to_bytes("k"));
    REQUIRE(r.effects.storage_writes[0].value.has_value());
    CHECK(*r.effects.storage_writes[0].value == to_bytes("v"));
}

TEST_CASE("vm: read-your-writes on own storage, committed view via xget") {
    Harness h;
    h.self.storage.set(to_bytes("k"), to_bytes("old"));

    // Write k=new, then SGet k and XGet(self, k); leave both values on the stack.
    auto r = h.run({
        Instruction::push_bytes(to_bytes("k")),
        Instruction::push_bytes(to_bytes("new")),
        Instruction::sset(),
        Instruction::push_bytes(to_bytes("k")),
        Instruction::sget(), // -> value, flag
        Instruction::pop(),  // drop flag
        Instruction::self_id(),
        Instruction::push_bytes(to_bytes("k")),
        Instruction::xget(), // -> value, flag
        Instruction::pop(),
        Instruction::halt(),
    });
    // xget sees committed state: self is absent from the (empty) view.
    REQUIRE(r.final_stack.size() == 2);
    CHECK(r.final_stack[0] == Value(to_bytes("new")));
    CHECK(r.final_stack[1] == Value(Bytes{}));

    // With self in the view, xget returns the committed value, not the buffered one.
    h.view.put(h.self);
    auto r2 = h.run({
        Instruction::push_bytes(to_bytes("k")),
        Instruction::push_bytes(to_bytes("new")),
        Instruction::sset(),
        Instruction::self_id(),
        Instruction::push_bytes(to_bytes("k")),
        Instruction::xget(),
        Instruction::pop(),
        Instruction::halt(),
    });
    REQUIRE(r2.final_stack.size() == 1);
    CHECK(r2.final_stack[0] == Value(to_bytes("old")));
}

TEST_CASE("vm: sdel is visible to later sget in the same execution") {
    Harness h;
    h.self.storage.set(to_bytes("k"), to_bytes("v"));
    auto r = h.run({
        Instruction::push_bytes(to_bytes("k")),
        Instruction::sdel(),
        Instruction::push_bytes(to_bytes("k")),
        Instruction::sget(),
        Instruction::halt(),
    });
    REQUIRE(r.final_stack.size() == 2);
    CHECK(r.final_stack[0] == Value(Bytes{}));              // empty bytes
    CHECK(r.final_stack[1] == Value(std::int64_t(0)));      // flag 0
}

TEST_CASE("vm: absent storage pushes empty bytes and flag 0") {
    Harness h;
    auto r = h.run({Instruction::push_bytes(to_bytes("nope")), Instruction::sget(),
                    Instruction::halt()});
    REQUIRE(r.final_stack.size() == 2);
    CHECK(r.final_stack[0] == Value(Bytes{}));
    CHECK(r.final_stack[1] == Value(std::int64_t(0)));
}

TEST_CASE("vm: xget on absent actor pushes empty bytes and flag 0") {
    Harness h;
    Bytes other = id_from_byte(0x55).to_bytes();
    auto r = h.run({Instruction::push_bytes(other), Instruction::push_bytes(to_bytes("k")),
                    Instruction::xget(), Instruction::halt()});
    REQUIRE(r.final_stack.size() == 2);
    CHECK(r.final_stack[0] == Value(Bytes{}));
    CHECK(r.final_stack[1] == Value(std::int64_t(0)));
}

TEST_CASE("vm: send collects params, function name, target id") {
    Harness h;
    Bytes target = id_from_byte(0x22).to_bytes();
    auto r = h.run({
        Instruction::push_bytes(target),
        Instruction::push_bytes(to_bytes("hello")),
        Instruction::push_int(1),
        Instruction::push_int(2),
        Instruction::send(2),
        Instruction::halt(),
    });
    CHECK(r.outcome.halted());
    REQUIRE(r.effects.outgoing.size() == 1);
    const auto& send = std::get<SendEffect>(r.effects.outgoing[0]);
    CHECK(send.message.id_to == id_from_byte(0x22));
    CHECK(send.message.function_call == to_bytes("hello"));
    REQUIRE(send.message.parameters.size() == 2);
    CHECK(send.message.parameters[0] == Value(std::int64_t(1)));
    CHECK(send.message.parameters[1] == Value(std::int64_t(2)));
    CHECK(send.message.origin == Origin{InternalOrigin{h.self.id}});
}

TEST_CASE("vm: create resolves templates and derives ids from the counter") {
    Harness h;

    Program counter_prog;
    counter_prog.functions[to_bytes("init")] = {Instruction::halt()};
    Actor registry;
    registry.id = template_registry_id();
    registry.code = encode_program(Program{});
    registry.storage.set(to_bytes("counter"), encode_program(counter_prog));
    h.view.put(registry);
    h.view.creation_counter = 7;

    auto r = h.run({
        Instruction::push_bytes(to_bytes("counter")),
        Instruction::push_int(41),
        Instruction::create(1),
        Instruction::push_bytes(to_bytes("counter")),
        Instruction::create(0),
        Instruction::halt(),
    });
    CHECK(r.outcome.halted());
    REQUIRE(r.effects.outgoing.size() == 2);
    const auto& c0 = std::get<CreateEffect>(r.effects.outgoing[0]);
    const auto& c1 = std::get<CreateEffect>(r.effects.outgoing[1]);
    CHECK(c0.assigned_id == derive_create_id(7));
    CHECK(c1.assigned_id == derive_create_id(8));
    REQUIRE(c0.init_params.size() == 1);
    CHECK(c0.init_params[0] == Value(std::int64_t(41)));
    // assigned ids are pushed for immediate use
    REQUIRE(r.final_stack.size() == 2);
    CHECK(r.final_stack[0] == Value(derive_create_id(7).to_bytes()));
    CHECK(r.final_stack[1] == Value(derive_create_id(8).to_bytes()));
}

TEST_CASE("vm: create with unknown template traps") {
    Harness h;
    auto r = h.run({Instruction::push_bytes(to_bytes("ghost")), Instruction::create(0)});
    CHECK(r.outcome.trapped());
    CHECK(r.outcome.reason == TrapReason::UnknownTemplate);
}

TEST_CASE("vm: set_code validates the blob") {
    Harness h;
    auto bad = h.run({Instruction::push_bytes(to_bytes("junk")), Instruction::set_code()});
    CHECK(bad.outcome.trapped());
    CHECK(bad.outcome.reason == TrapReason::BadCodeBlob);

    CodeBlob empty_prog = encode_program(Program{});
    auto good = h.run({Instruction::push_bytes(empty_prog), Instruction::set_code(),
                       Instruction::halt()});
    CHECK(good.outcome.halted());
    REQUIRE(good.effects.new_code.has_value());
    CHECK(*good.effects.new_code == empty_prog);
}

TEST_CASE("vm: set_id records the last replacement") {
    Harness h;
    Bytes first = id_from_byte(0x01).to_bytes();
    Bytes second = id_from_byte(0x02).to_bytes();
    auto r = h.run({Instruction::push_bytes(first), Instruction::set_id(),
                    Instruction::push_bytes(second), Instruction::set_id(), Instruction::halt()});
    CHECK(r.outcome.halted());
    REQUIRE(r.effects.new_id.has_value());
    CHECK(*r.effects.new_id == id_from_byte(0x02));
}

TEST_CASE("vm: derive_create_id matches an independent sha256 computation") {
    // sha256("enso/create" || 0u64 be), frozen from an external tool
    CHECK(derive_create_id(0).hex() ==
          "35e5e2ca296161c0dbb03527820e3092e5bfa81b1f19d47d1147805d9dfbff2b");
    CHECK(derive_create_id(1).hex() ==
          "f84638395d183461b13c8cd2e9f24875073450dfa491836ec655b8a46eb9d287");
}

TEST_CASE("vm: trap taxonomy") {
    Harness h;

    SUBCASE("stack underflow") {
        auto r = h.run({Instruction::pop()});
        CHECK(r.outcome.reason == TrapReason::StackUnderflow);
    }
    SUBCASE("stack overflow at capacity 256") {
        std::vector<Instruction> instrs;
        for (int i = 0; i < 257; ++i) {
            instrs.push_back(Instruction::push_int(i));
        }
        auto r = h.run(std::move(instrs), 1000);
        CHECK(r.outcome.trapped());
        CHECK(r.outcome.reason == TrapReason::StackOverflow);
        CHECK(r.outcome.fuel_used == 257);
    }
    SUBCASE("type mismatch: add on bytes") {
        auto r = h.run({Instruction::push_bytes(to_bytes("a")), Instruction::push_int(1),
                        Instruction::add()});
        CHECK(r.outcome.reason == TrapReason::TypeMismatch);
    }
    SUBCASE("type mismatch: mixed eq") {
        auto r = h.run({Instruction::push_bytes(to_bytes("a")), Instruction::push_int(1),
                        Instruction::eq()});
        CHECK(r.outcome.reason == TrapReason::TypeMismatch);
    }
    SUBCASE("explicit trap") {
        auto r = h.run({Instruction::trap()});
        CHECK(r.outcome.reason == TrapReason::ExplicitTrap);
        CHECK(r.outcome.fuel_used == 1);
    }
    SUBCASE("param out of range") {
        auto r = h.run({Instruction::push_int(0), Instruction::param()});
        CHECK(r.outcome.reason == TrapReason::ParamOutOfRange);
    }
    SUBCASE("slice out of range") {
        auto r = h.run({Instruction::push_bytes(to_bytes("abc")), Instruction::push_int(1),
                        Instruction::push_int(3), Instruction::slice()});
        CHECK(r.outcome.reason == TrapReason::ParamOutOfRange);
    }
    SUBCASE("concat overflow") {
        // 1024-byte pushes doubled via dup+concat until the 65536 cap breaks
        std::vector<Instruction> instrs;
        instrs.push_back(Instruction::push_bytes(Bytes(1024, 0xAB)));
        for (int i = 0; i < 6; ++i) { // 1024 -> 65536
            instrs.push_back(Instruction::dup(0));
            instrs.push_back(Instruction::concat());
        }
        instrs.push_back(Instruction::dup(0));
        instrs.push_back(Instruction::concat()); // 131072: too large
        auto r = h.run(std::move(instrs));
        CHECK(r.outcome.trapped());
        CHECK(r.outcome.reason == TrapReason::ValueTooLarge);
    }
    SUBCASE("b2i wants exactly 8 bytes") {
        auto r = h.run({Instruction::push_bytes(to_bytes("1234567")), Instruction::b2i()});
        CHECK(r.outcome.reason == TrapReason::TypeMismatch);
    }
    SUBCASE("storage key too long") {
        auto r = h.run({Instruction::push_bytes(Bytes(1025, 0x01)), Instruction::sget()});
        CHECK(r.outcome.reason == TrapReason::ValueTooLarge);
    }

    SUBCASE("jump_if on bytes") {
        auto r = h.run({Instruction::push_bytes(to_bytes("x")), Instruction::jump_if(0)});
        CHECK(r.outcome.reason == TrapReason::TypeMismatch);
    }
}

TEST_CASE("vm: i2b/b2i round trip and lexicographic lt") {
    Harness h;
    auto r = h.run({Instruction::push_int(-123456789), Instruction::i2b(), Instruction::b2i(),
                    Instruction::halt()});
    REQUIRE(r.final_stack.size() == 1);
    CHECK(r.final_stack[0] == Value(std::int64_t(-123456789)));

    auto lex = h.run({Instruction::push_bytes(to_bytes("abc")),
                      Instruction::push_bytes(to_bytes("abd")), Instruction::lt(),
                      Instruction::halt()});
    REQUIRE(lex.final_stack.size() == 1);
    CHECK(lex.final_stack[0] == Value(std::int64_t(1)));
}

TEST_CASE("vm: dup and swap and slice behave") {
    Harness h;
    auto r = h.run({
        Instruction::push_bytes(to_bytes("hello world")),
        Instruction::push_int(6),
        Instruction::push_int(5),
        Instruction::slice(), // "world"
        Instruction::dup(0),
        Instruction::len(),
        Instruction::halt(),
    });
    REQUIRE(r.final_stack.size() == 2);
    CHECK(r.final_stack[0] == Value(to_bytes("world")));
    CHECK(r.final_stack[1] == Value(std::int64_t(5)));

    auto s = h.run({Instruction::push_int(1), Instruction::push_int(2), Instruction::swap(),
                    Instruction::sub(), Instruction::halt()});
    REQUIRE(s.final_stack.size() == 1);
    CHECK(s.final_stack[0] == Value(std::int64_t(1))); // 2 - 1 after swap
}

TEST_CASE("vm: params and param_count") {
    Harness h;
    h.msg.parameters = {Value(std::int64_t(10)), Value(to_bytes("x"))};
    auto r = h.run({
        Instruction::param_count(),
        Instruction::push_int(1),
        Instruction::param(),
        Instruction::push_int(0),
        Instruction::param(),
        Instruction::halt(),
    });
    REQUIRE(r.final_stack.size() == 3);
    CHECK(r.final_stack[0] == Value(std::int64_t(2)));
    CHECK(r.final_stack[1] == Value(to_bytes("x")));
    CHECK(r.final_stack[2] == Value(std::int64_t(10)));
}

TEST_CASE("vm: execution is pure and isolated") {
    Harness h;
    h.self.storage.set(to_bytes("k"), to_bytes("v"));
    h.view.put(h.self);

    WorldState view_before = h.view;
    Actor self_before = h.self;

    auto instrs = std::vector<Instruction>{
        Instruction::push_bytes(to_bytes("k")),
        Instruction::push_bytes(to_bytes("changed")),
        Instruction::sset(),
        Instruction::push_bytes(id_from_byte(0x33).to_bytes()),
        Instruction::push_bytes(to_bytes("go")),
        Instruction::send(0),
        Instruction::halt(),
    };
    auto r1 = h.run(instrs);
    auto r2 = h.run(instrs);

    CHECK(h.view == view_before);
    CHECK(h.self == self_before);
    CHECK(r1.effects == r2.effects);
    CHECK(r1.outcome.fuel_used == r2.outcome.fuel_used);
    CHECK(r1.outcome.status == r2.outcome.status);
    CHECK(r1.final_stack == r2.final_stack);
}

TEST_CASE("vm: arithmetic matches a checked 128-bit oracle") {
    std::mt19937_64 rng(555);
    Harness h;

    auto check_pair = [&h](Opcode op, std::int64_t lhs, std::int64_t rhs) {
        Instruction ins;
        ins.op = op;
        auto r = h.run({Instruction::push_int(lhs), Instruction::push_int(rhs), ins,
                        Instruction::halt()});

        __int128 wide = 0;
        bool defined = true;
        switch (op) {
        case Opcode::Add: wide = static_cast<__int128>(lhs) + rhs; break;
        case Opcode::Sub: wide = static_cast<__int128>(lhs) - rhs; break;
        case Opcode::Mul: wide = static_cast<__int128>(lhs) * rhs; break;
        case Opcode::Div:
            if (rhs == 0) {
                defined = false;
            } else {
                wide = static_cast<__int128>(lhs) / rhs;
            }
            break;
        default: REQUIRE(false);
        }

        if (!defined) {
            CHECK(r.outcome.reason == TrapReason::DivByZero);
            return;
        }
        if (wide < INT64_MIN || wide > INT64_MAX) {
            CHECK(r.outcome.trapped());
            CHECK(r.outcome.reason == TrapReason::ArithmeticOverflow);
            return;
        }
        REQUIRE(r.outcome.halted());
        REQUIRE(r.final_stack.size() == 1);
        CHECK(r.final_stack[0] == Value(static_cast<std::int64_t>(wide)));
    };

    const Opcode ops[] = {Opcode::Add, Opcode::Sub, Opcode::Mul, Opcode::Div};
    // Edge cases first.
    check_pair(Opcode::Div, INT64_MIN, -1);
    check_pair(Opcode::Add, INT64_MAX, 1);
    check_pair(Opcode::Sub, INT64_MIN, 1);
    check_pair(Opcode::Mul, INT64_MIN, -1);
    check_pair(Opcode::Div, 7, -2);

    std::uniform_int_distribution<std::int64_t> full(INT64_MIN, INT64_MAX);
    std::uniform_int_distribution<std::int64_t> small(-1000, 1000);
    for (int i = 0; i < 500; ++i) {
        Opcode op = ops[rng() % 4];
        std::int64_t lhs = (rng() % 2 == 0) ? full(rng) : small(rng);
        std::int64_t rhs = (rng() % 2 == 0) ? full(rng) : small(rng);
        check_pair(op, lhs, rhs);
    }
}
