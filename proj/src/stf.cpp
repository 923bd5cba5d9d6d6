#include "enso/stf.hpp"

#include <algorithm>
#include <deque>

#include "enso/genesis.hpp"

namespace enso {

namespace {

Receipt make_receipt(const Message& m, Disposition d) {
    Receipt r;
    r.message = m;
    r.disposition = d;
    return r;
}

struct CommitResult {
    WorldState state;
    std::vector<Message> emitted;
    std::uint64_t actors_created = 0;
};

/// Applies a halted execution's effects. Order: storage writes, code
/// replacement, id replacement, creations. Returns nullopt (and the trap
/// reason) if an id collides or a template fails at commit time; the caller
/// then discards everything.
std::optional<CommitResult> commit_effects(const WorldState& s, const Actor& self,
                                           const EffectBuffer& effects, TrapReason& reason) {
    CommitResult out;
    out.state = s;
    Actor actor = self;

    for (const StorageWrite& w : effects.storage_writes) {
        if (w.value) {
            actor.storage.set(w.key, *w.value);
        } else {
            actor.storage.erase(w.key);
        }
    }

    if (effects.new_code) {
        actor.code = *effects.new_code;
    }

    std::vector<ActorId> created_ids;
    for (const auto& e : effects.outgoing) {
        if (const auto* c = std::get_if<CreateEffect>(&e)) {
            created_ids.push_back(c->assigned_id);
        }
    }

    if (effects.new_id) {
        const ActorId& new_id = *effects.new_id;
        bool taken = out.state.actors.count(new_id) > 0 ||
                     std::find(created_ids.begin(), created_ids.end(), new_id) != created_ids.end();
        if (taken) {
            reason = TrapReason::IdCollision;
            return std::nullopt;
        }
        out.state.actors.erase(actor.id);
        actor.id = new_id;
    }
    out.state.put(actor);

    for (const auto& e : effects.outgoing) {
        if (const auto* send = std::get_if<SendEffect>(&e)) {
            out.emitted.push_back(send->message);
            continue;
        }
        const auto& create = std::get<CreateEffect>(e);
        // Template blob is read at commit time, so writes committed above
        // (e.g. a registry update in this very message) are visible.
        auto blob = resolve_template(out.state, create.template_name);
        if (!blob) {
            reason = TrapReason::UnknownTemplate;
            return std::nullopt;
        }
        if (!decode_program(*blob)) {
            reason = TrapReason::BadCodeBlob;
            return std::nullopt;
        }
        if (out.state.actors.count(create.assigned_id) > 0) {
            reason = TrapReason::IdCollision;
            return std::nullopt;
        }
        out.state.put(Actor{create.assigned_id, std::move(*blob), {}});
        out.state.creation_counter += 1;
        out.actors_created += 1;

        Message init;
        init.id_to = create.assigned_id;
        init.function_call = to_bytes("init");
        init.parameters = create.init_params;
        init.origin = InternalOrigin{self.id};
        out.emitted.push_back(std::move(init));
    }

    return out;
}

} // namespace

const char* disposition_name(Disposition d) {
    switch (d) {
    case Disposition::Processed: return "processed";
    case Disposition::IgnoredNoActor: return "ignored_no_actor";
    case Disposition::IgnoredNoFunction: return "ignored_no_function";
    case Disposition::IgnoredBadCode: return "ignored_bad_code";
    case Disposition::Trapped: return "trapped";
    case Disposition::DroppedBudget: return "dropped_budget";
    }
    return "?";
}

Block make_block(std::vector<Message> extrinsics) {
    for (std::size_t i = 0; i < extrinsics.size(); ++i) {
        extrinsics[i].origin = ExtrinsicOrigin{i};
    }
    return Block{std::move(extrinsics)};
}

ProcessResult process_message(const WorldState& s, const Message& m, const VmConfig& cfg) {
    const Actor* actor = s.get(m.id_to);
    if (actor == nullptr) {
        return {s, {}, make_receipt(m, Disposition::IgnoredNoActor)};
    }

    auto program = decode_program(actor->code);
    if (!program) {
        return {s, {}, make_receipt(m, Disposition::IgnoredBadCode)};
    }

    if (program->functions.find(m.function_call) == program->functions.end()) {
        return {s, {}, make_receipt(m, Disposition::IgnoredNoFunction)};
    }

    ExecResult exec = execute(s, *actor, *program, m, cfg.fuel_per_message);

    Receipt receipt = make_receipt(m, Disposition::Trapped);
    receipt.fuel_used = exec.outcome.fuel_used;

    if (exec.outcome.trapped()) {
        receipt.trap_reason = exec.outcome.reason;
        return {s, {}, receipt};
    }

    TrapReason commit_trap = TrapReason::IdCollision;
    auto committed = commit_effects(s, *actor, exec.effects, commit_trap);
    if (!committed) {
        receipt.trap_reason = commit_trap;
        return {s, {}, receipt};
    }

    receipt.disposition = Disposition::Processed;
    receipt.messages_emitted = committed->emitted.size();
    receipt.actors_created = committed->actors_created;
    return {std::move(committed->state), std::move(committed->emitted), std::move(receipt)};
}

BlockResult apply_block(const WorldState& s, const Block& b, const VmConfig& cfg) {
    WorldState state = s;
    std::vector<Receipt> receipts;

    std::deque<Message> queue(b.extrinsics.begin(), b.extrinsics.end());

    std::uint64_t processed = 0;
    while (!queue.empty()) {
        if (processed == cfg.max_messages_per_block) {
            for (const Message& m : queue) {
                receipts.push_back(make_receipt(m, Disposition::DroppedBudget));
            }
            break;
        }

        Message m = std::move(queue.front());
        queue.pop_front();

        ProcessResult result = process_message(state, m, cfg);

        if (queue.size() + result.emitted.size() > cfg.max_queue_len) {
            // The emitting message is retroactively trapped; its effects are
            // discarded and nothing it emitted enters the queue.
            Receipt r = make_receipt(m, Disposition::Trapped);
            r.trap_reason = TrapReason::QueueOverflow;
            r.fuel_used = result.receipt.fuel_used;
            receipts.push_back(std::move(r));
            ++processed;
            continue;
        }

        state = std::move(result.state);
        receipts.push_back(std::move(result.receipt));
        for (Message& emitted : result.emitted) {
            queue.push_back(std::move(emitted));
        }
        ++processed;
    }

    return {std::move(state), std::move(receipts)};
}

} // namespace enso
