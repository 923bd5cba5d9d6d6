#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "enso/program.hpp"
#include "enso/state.hpp"
#include "enso/stf.hpp"

namespace enso {

struct KernelActorDecl {
    ActorId id;
    Program program;
    std::vector<std::pair<Bytes, Bytes>> storage;
};

struct UserActorDecl {
    Bytes template_name;
    ActorId id;
    std::vector<std::pair<Bytes, Bytes>> storage;
};

/// Everything needed to bootstrap a chain: limits, the named templates users
/// can instantiate, the kernel actors carrying application logic, and any
/// pre-instantiated user actors.
struct GenesisDoc {
    VmConfig config;
    std::map<Bytes, Program> templates;
    std::vector<KernelActorDecl> kernel_actors;
    std::vector<UserActorDecl> user_actors;
};

struct GenesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reserved id of the template-registry actor: sha256("enso/template-registry").
const ActorId& template_registry_id();

/// Builds the initial world: the registry actor holding every template's
/// encoded blob, then kernel actors, then user actors instantiated from their
/// templates. creation_counter starts at 0. Throws GenesisError on duplicate
/// ids, reserved-id collisions, unknown template references, invalid programs
/// or oversize storage entries.
WorldState build_genesis(const GenesisDoc& doc);

/// Blob stored under `name` in the registry actor's storage, or nullopt. The
/// registry is plain state: messages that rewrite its storage change what
/// Create instantiates from then on.
std::optional<CodeBlob> resolve_template(const WorldState& s, const Bytes& name);

} // namespace enso
