#include "enso/vm.hpp"

#include <stdexcept>

#include "enso/genesis.hpp"
#include "enso/hash.hpp"

namespace enso {

namespace {

struct TrapSignal {
    TrapReason reason;
};

[[noreturn]] void trap(TrapReason r) {
    throw TrapSignal{r};
}

class Interp {
public:
    Interp(const WorldState& view, const Actor& self, const Message& msg)
        : view_(view), self_(self), msg_(msg) {}

    Outcome run(const std::vector<Instruction>& code, std::uint64_t fuel_limit) {
        std::size_t ip = 0;
        std::uint64_t fuel = 0;
        try {
            while (true) {
                if (ip >= code.size()) return Outcome::halt(fuel); // fall-through
                if (fuel == fuel_limit) return Outcome::trap(TrapReason::FuelExhausted, fuel);
                ++fuel;
                const Instruction& ins = code[ip];
                ++ip;
                if (!step(ins, code.size(), ip)) return Outcome::halt(fuel);
            }
        } catch (const TrapSignal& t) {
            return Outcome::trap(t.reason, fuel);
        }
    }

    EffectBuffer take_effects() { return std::move(effects_); }
    std::vector<Value> take_stack() { return std::move(stack_); }

private:
    // Returns false on Halt; traps unwind via TrapSignal.
    bool step(const Instruction& ins, std::size_t fn_len, std::size_t& ip) {
        switch (ins.op) {
        case Opcode::PushInt:
            push(Value(ins.ival));
            break;
        case Opcode::PushBytes:
            push(Value(ins.bval));
            break;
        case Opcode::Pop:
            pop();
            break;
        case Opcode::Dup: {
            if (stack_.size() <= ins.uval) trap(TrapReason::StackUnderflow);
            push(stack_[stack_.size() - 1 - ins.uval]);
            break;
        }
        case Opcode::Swap: {
            if (stack_.size() < 2) trap(TrapReason::StackUnderflow);
            std::swap(stack_[stack_.size() - 1], stack_[stack_.size() - 2]);
            break;
        }
        case Opcode::Add:
        case Opcode::Sub:
        case Opcode::Mul:
        case Opcode::Div:
            arith(ins.op);
            break;
        case Opcode::Eq: {
            Value rhs = pop();
            Value lhs = pop();
            if (lhs.is_int() != rhs.is_int()) trap(TrapReason::TypeMismatch);
            push(Value(std::int64_t(lhs == rhs ? 1 : 0)));
            break;
        }
        case Opcode::Lt: {
            Value rhs = pop();
            Value lhs = pop();
            bool result = false;
            if (lhs.is_int() && rhs.is_int()) {
                result = lhs.as_int() < rhs.as_int();
            } else if (lhs.is_bytes() && rhs.is_bytes()) {
                result = lhs.as_bytes() < rhs.as_bytes(); // bytewise lexicographic
            } else {
                trap(TrapReason::TypeMismatch);
            }
            push(Value(std::int64_t(result ? 1 : 0)));
            break;
        }
        case Opcode::Not: {
            std::int64_t v = pop_int();
            push(Value(std::int64_t(v == 0 ? 1 : 0)));
            break;
        }
        case Opcode::Concat: {
            Bytes rhs = pop_bytes();
            Bytes lhs = pop_bytes();
            if (lhs.size() + rhs.size() > Value::kMaxBytesLen) trap(TrapReason::ValueTooLarge);
            lhs.insert(lhs.end(), rhs.begin(), rhs.end());
            push(Value(std::move(lhs)));
            break;
        }
        case Opcode::Len: {
            Bytes b = pop_bytes();
            push(Value(std::int64_t(b.size())));
            break;
        }
        case Opcode::Slice: {
            std::int64_t len = pop_int();
            std::int64_t start = pop_int();
            Bytes b = pop_bytes();
            if (start < 0 || len < 0) trap(TrapReason::ParamOutOfRange);
            auto ustart = static_cast<std::uint64_t>(start);
            auto ulen = static_cast<std::uint64_t>(len);
            if (ustart + ulen < ustart || ustart + ulen > b.size()) {
                trap(TrapReason::ParamOutOfRange);
            }
            Bytes out(b.begin() + static_cast<std::ptrdiff_t>(ustart),
                      b.begin() + static_cast<std::ptrdiff_t>(ustart + ulen));
            push(Value(std::move(out)));
            break;
        }
        case Opcode::Jump:
            jump_to(ins.uval, fn_len, ip);
            break;
        case Opcode::JumpIf: {
            std::int64_t cond = pop_int();
            if (cond != 0) jump_to(ins.uval, fn_len, ip);
            break;
        }
        case Opcode::ParamCount:
            push(Value(std::int64_t(msg_.parameters.size())));
            break;
        case Opcode::Param: {
            std::int64_t idx = pop_int();
            if (idx < 0 || static_cast<std::uint64_t>(idx) >= msg_.parameters.size()) {
                trap(TrapReason::ParamOutOfRange);
            }
            push(msg_.parameters[static_cast<std::size_t>(idx)]);
            break;
        }
        case Opcode::SelfId:
            push(Value(self_.id.to_bytes()));
            break;
        case Opcode::SGet: {
            Bytes key = pop_key();
            auto value = storage_read(key);
            if (value) {
                push(Value(std::move(*value)));
                push(Value(std::int64_t(1)));
            } else {
                push(Value(Bytes{}));
                push(Value(std::int64_t(0)));
            }
            break;
        }
        case Opcode::SSet: {
            Bytes value = pop_bytes();
            Bytes key = pop_key();
            effects_.storage_writes.push_back({std::move(key), std::move(value)});
            break;
        }
        case Opcode::SDel: {
            Bytes key = pop_key();
            effects_.storage_writes.push_back({std::move(key), std::nullopt});
            break;
        }
        case Opcode::XGet: {
            Bytes key = pop_key();
            ActorId id = pop_actor_id();
            const Actor* target = view_.get(id); // committed view only
            std::optional<Bytes> value;
            if (target != nullptr) value = target->storage.get(key);
            if (value) {
                push(Value(std::move(*value)));
                push(Value(std::int64_t(1)));
            } else {
                push(Value(Bytes{}));
                push(Value(std::int64_t(0)));
            }
            break;
        }
        case Opcode::Send: {
            std::vector<Value> params = pop_params(ins.uval);
            Bytes fn = pop_function_name();
            ActorId target = pop_actor_id();
            Message m;
            m.id_to = target;
            m.function_call = std::move(fn);
            m.parameters = std::move(params);
            m.origin = InternalOrigin{self_.id};
            effects_.outgoing.emplace_back(SendEffect{std::move(m)});
            break;
        }
        case Opcode::Create: {
            std::vector<Value> params = pop_params(ins.uval);
            Bytes name = pop_function_name(); // template names share the 1..=256 bound
            auto blob = resolve_template(view_, name);
            if (!blob) trap(TrapReason::UnknownTemplate);
            if (!decode_program(*blob)) trap(TrapReason::BadCodeBlob);
            std::uint64_t prior = 0;
            for (const auto& e : effects_.outgoing) {
                if (std::holds_alternative<CreateEffect>(e)) ++prior;
            }
            ActorId assigned = derive_create_id(view_.creation_counter + prior);
            push(Value(assigned.to_bytes()));
            effects_.outgoing.emplace_back(CreateEffect{std::move(name), std::move(params), assigned});
            break;
        }
        case Opcode::SetId:
            effects_.new_id = pop_actor_id(); // last one wins
            break;
        case Opcode::SetCode: {
            Bytes blob = pop_bytes();
            if (!decode_program(blob)) trap(TrapReason::BadCodeBlob);
            effects_.new_code = std::move(blob); // last one wins
            break;
        }
        case Opcode::Halt:
            return false;
        case Opcode::Trap:
            trap(TrapReason::ExplicitTrap);
        case Opcode::I2B: {
            std::int64_t v = pop_int();
            Bytes out;
            append_i64_be(out, v);
            push(Value(std::move(out)));
            break;
        }
        case Opcode::B2I: {
            Bytes b = pop_bytes();
            if (b.size() != 8) trap(TrapReason::TypeMismatch);
            std::int64_t v = 0;
            ByteReader r(b);
            r.take_i64(v);
            push(Value(v));
            break;
        }
        }
        return true;
    }

    void arith(Opcode op) {
        std::int64_t rhs = pop_int();
        std::int64_t lhs = pop_int();
        std::int64_t out = 0;
        switch (op) {
        case Opcode::Add:
            if (__builtin_add_overflow(lhs, rhs, &out)) trap(TrapReason::ArithmeticOverflow);
            break;
        case Opcode::Sub:
            if (__builtin_sub_overflow(lhs, rhs, &out)) trap(TrapReason::ArithmeticOverflow);
            break;
        case Opcode::Mul:
            if (__builtin_mul_overflow(lhs, rhs, &out)) trap(TrapReason::ArithmeticOverflow);
            break;
        case Opcode::Div:
            if (rhs == 0) trap(TrapReason::DivByZero);
            if (lhs == INT64_MIN && rhs == -1) trap(TrapReason::ArithmeticOverflow);
            out = lhs / rhs;
            break;
        default:
            trap(TrapReason::TypeMismatch);
        }
        push(Value(out));
    }

    void jump_to(std::uint32_t target, std::size_t fn_len, std::size_t& ip) {
        if (target > fn_len) trap(TrapReason::BadJump); // decode already rejects this
        ip = target;                                    // target == fn_len halts via fall-through
    }

    void push(Value v) {
        if (stack_.size() >= kVmStackCapacity) trap(TrapReason::StackOverflow);
        stack_.push_back(std::move(v));
    }

    Value pop() {
        if (stack_.empty()) trap(TrapReason::StackUnderflow);
        Value v = std::move(stack_.back());
        stack_.pop_back();
        return v;
    }

    std::int64_t pop_int() {
        Value v = pop();
        if (!v.is_int()) trap(TrapReason::TypeMismatch);
        return v.as_int();
    }

    Bytes pop_bytes() {
        Value v = pop();
        if (!v.is_bytes()) trap(TrapReason::TypeMismatch);
        return v.as_bytes();
    }

    Bytes pop_key() {
        Bytes key = pop_bytes();
        if (!StorageMap::key_ok(key)) trap(TrapReason::ValueTooLarge);
        return key;
    }

    Bytes pop_function_name() {
        Bytes name = pop_bytes();
        if (name.empty() || name.size() > Message::kMaxFunctionNameLen) {
            trap(TrapReason::ValueTooLarge);
        }
        return name;
    }

    ActorId pop_actor_id() {
        Bytes b = pop_bytes();
        auto id = ActorId::from_bytes(b);
        if (!id) trap(TrapReason::TypeMismatch);
        return *id;
    }

    // Last parameter sits on top of the stack.
    std::vector<Value> pop_params(std::uint32_t n) {
        std::vector<Value> params(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            params[n - 1 - i] = pop();
        }
        return params;
    }

    // Own storage overlaid with this execution's buffered writes.
    std::optional<Bytes> storage_read(const Bytes& key) const {
        for (auto it = effects_.storage_writes.rbegin(); it != effects_.storage_writes.rend(); ++it) {
            if (it->key == key) return it->value;
        }
        return self_.storage.get(key);
    }

    const WorldState& view_;
    const Actor& self_;
    const Message& msg_;
    std::vector<Value> stack_;
    EffectBuffer effects_;
};

} // namespace

const char* trap_reason_name(TrapReason r) {
    switch (r) {
    case TrapReason::StackUnderflow: return "stack_underflow";
    case TrapReason::StackOverflow: return "stack_overflow";
    case TrapReason::ArithmeticOverflow: return "arithmetic_overflow";
    case TrapReason::DivByZero: return "div_by_zero";
    case TrapReason::TypeMismatch: return "type_mismatch";
    case TrapReason::BadJump: return "bad_jump";
    case TrapReason::ParamOutOfRange: return "param_out_of_range";
    case TrapReason::FuelExhausted: return "fuel_exhausted";
    case TrapReason::ValueTooLarge: return "value_too_large";
    case TrapReason::UnknownTemplate: return "unknown_template";
    case TrapReason::BadCodeBlob: return "bad_code_blob";
    case TrapReason::IdCollision: return "id_collision";
    case TrapReason::ExplicitTrap: return "explicit_trap";
    case TrapReason::QueueOverflow: return "queue_overflow";
    }
    return "?";
}

ActorId derive_create_id(std::uint64_t counter) {
    Bytes preimage = to_bytes("enso/create");
    append_u64_be(preimage, counter);
    return ActorId::from_hash(sha256(preimage));
}

ExecResult execute(const WorldState& view, const Actor& self, const Program& program,
                   const Message& msg, std::uint64_t fuel_limit) {
    auto it = program.functions.find(msg.function_call);
    if (it == program.functions.end()) {
        throw std::logic_error("execute: function not present (caller must check)");
    }
    Interp interp(view, self, msg);
    Outcome outcome = interp.run(it->second, fuel_limit);
    return ExecResult{interp.take_effects(), outcome, interp.take_stack()};
}

} // namespace enso
