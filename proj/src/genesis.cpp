#include "enso/genesis.hpp"

#include <set>
#include <string>

#include "enso/hash.hpp"

namespace enso {

namespace {

std::string id_hex(const ActorId& id) {
    return id.hex0x();
}

void add_storage_entries(Actor& actor, const std::vector<std::pair<Bytes, Bytes>>& entries,
                         const std::string& who) {
    for (const auto& [key, value] : entries) {
        try {
            actor.storage.set(key, value);
        } catch (const std::invalid_argument& e) {
            throw GenesisError(who + ": " + e.what());
        }
    }
}

} // namespace

const ActorId& template_registry_id() {
    static const ActorId id = ActorId::from_hash(sha256("enso/template-registry"));
    return id;
}

namespace {

// The registry's steward program. Installing a template is an ordinary
// storage write to the registry actor, so the template list itself evolves
// through extrinsics. Deployments wanting access control send upgrade() with
// a guarded replacement.
Program registry_program() {
    Program p;
    // Each function: arity check jumping to the trailing trap, then the body.
    p.functions[to_bytes("set_template")] = {
        Instruction::param_count(), Instruction::push_int(2), Instruction::eq(),
        Instruction::not_(),        Instruction::jump_if(11),
        Instruction::push_int(0),   Instruction::param(), // name -> key
        Instruction::push_int(1),   Instruction::param(), // blob -> value
        Instruction::sset(),        Instruction::halt(),
        Instruction::trap(), // 11
    };
    p.functions[to_bytes("del_template")] = {
        Instruction::param_count(), Instruction::push_int(1), Instruction::eq(),
        Instruction::not_(),        Instruction::jump_if(9),
        Instruction::push_int(0),   Instruction::param(),
        Instruction::sdel(),        Instruction::halt(),
        Instruction::trap(), // 9
    };
    p.functions[to_bytes("upgrade")] = {
        Instruction::param_count(), Instruction::push_int(1), Instruction::eq(),
        Instruction::not_(),        Instruction::jump_if(9),
        Instruction::push_int(0),   Instruction::param(),
        Instruction::set_code(),    Instruction::halt(),
        Instruction::trap(), // 9
    };
    return p;
}

} // namespace

WorldState build_genesis(const GenesisDoc& doc) {
    if (!doc.config.valid()) {
        throw GenesisError("config: all limits must be >= 1");
    }

    WorldState state;

    Actor registry;
    registry.id = template_registry_id();
    registry.code = encode_program(registry_program());
    for (const auto& [name, program] : doc.templates) {
        if (name.empty() || name.size() > Message::kMaxFunctionNameLen) {
            throw GenesisError("template name length must be 1..=256");
        }
        CodeBlob blob;
        try {
            blob = encode_program(program);
        } catch (const ProgramError& e) {
            throw GenesisError("template \"" + to_string(name) + "\": " + e.what());
        }
        if (!StorageMap::value_ok(blob)) {
            throw GenesisError("template \"" + to_string(name) +
                               "\": encoded blob exceeds the 65536-byte storage value limit");
        }
        registry.storage.set(name, blob);
    }
    state.put(std::move(registry));

    std::set<ActorId> seen{template_registry_id()};
    auto claim_id = [&seen](const ActorId& id, const std::string& what) {
        if (id == template_registry_id()) {
            throw GenesisError(what + ": id " + id_hex(id) + " is reserved for the template registry");
        }
        if (!seen.insert(id).second) {
            throw GenesisError(what + ": duplicate actor id " + id_hex(id));
        }
    };

    for (const KernelActorDecl& decl : doc.kernel_actors) {
        claim_id(decl.id, "kernel actor");
        Actor actor;
        actor.id = decl.id;
        try {
            actor.code = encode_program(decl.program);
        } catch (const ProgramError& e) {
            throw GenesisError("kernel actor " + id_hex(decl.id) + ": " + e.what());
        }
        add_storage_entries(actor, decl.storage, "kernel actor " + id_hex(decl.id));
        state.put(std::move(actor));
    }

    for (const UserActorDecl& decl : doc.user_actors) {
        claim_id(decl.id, "user actor");
        auto it = doc.templates.find(decl.template_name);
        if (it == doc.templates.end()) {
            throw GenesisError("user actor " + id_hex(decl.id) + ": unknown template \"" +
                               to_string(decl.template_name) + "\"");
        }
        Actor actor;
        actor.id = decl.id;
        actor.code = encode_program(it->second);
        add_storage_entries(actor, decl.storage, "user actor " + id_hex(decl.id));
        state.put(std::move(actor));
    }

    state.creation_counter = 0;
    return state;
}

std::optional<CodeBlob> resolve_template(const WorldState& s, const Bytes& name) {
    const Actor* registry = s.get(template_registry_id());
    if (registry == nullptr) return std::nullopt;
    return registry->storage.get(name);
}

} // namespace enso
