#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "enso/assembler.hpp"
#include "enso/blockdoc.hpp"
#include "enso/demo.hpp"
#include "enso/genesis.hpp"
#include "enso/genesis_text.hpp"
#include "enso/snapshot.hpp"
#include "enso/stf.hpp"

namespace {

using namespace enso;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw std::runtime_error("read from " + path + " failed");
    }
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw std::runtime_error("write to " + path + " failed");
    }
}

int cmd_init(const std::string& genesis_path, const std::string& out_path) {
    GenesisDoc doc = parse_genesis_text(read_file(genesis_path));
    WorldState state = build_genesis(doc);
    save_snapshot(state, out_path);
    std::cout << state_root(state).hex0x() << "\n";
    return 0;
}

int cmd_apply(const std::string& state_path, const std::string& block_path,
              const std::string& receipts_path, const VmConfig& cfg) {
    WorldState state = load_snapshot(state_path);
    Block block = parse_block_json(read_file(block_path));
    BlockResult result = apply_block(state, block, cfg);
    save_snapshot(result.state, state_path);
    if (!receipts_path.empty()) {
        write_file(receipts_path, render_receipts_json(result.receipts));
    }
    std::cout << state_root(result.state).hex0x() << "\n";
    return 0;
}

int cmd_root(const std::string& state_path) {
    WorldState state = load_snapshot(state_path);
    std::cout << state_root(state).hex0x() << "\n";
    return 0;
}

int cmd_inspect(const std::string& state_path, const std::string& actor_hex,
                const std::string& key_hex) {
    WorldState state = load_snapshot(state_path);

    if (actor_hex.empty()) {
        for (const auto& [id, actor] : state.actors) {
            std::cout << id.hex0x() << " code=" << actor.code.size()
                      << " storage=" << actor.storage.size() << "\n";
        }
        return 0;
    }

    auto id = ActorId::from_hex(actor_hex);
    if (!id) {
        throw std::runtime_error("--actor must be 32 bytes of 0x-hex");
    }
    const Actor* actor = state.get(*id);
    if (actor == nullptr) {
        std::cout << "absent\n";
        return 0;
    }

    if (!key_hex.empty()) {
        auto key = from_hex(key_hex);
        if (!key) {
            throw std::runtime_error("--key must be 0x-hex");
        }
        auto value = actor->storage.get(*key);
        if (value) {
            std::cout << to_hex0x(*value) << "\n";
        } else {
            std::cout << "absent\n";
        }
        return 0;
    }

    std::cout << "code=" << actor->code.size() << "\n";
    for (const auto& [key, value] : actor->storage) {
        std::cout << to_hex0x(key) << " = " << to_hex0x(value) << "\n";
    }
    return 0;
}

int cmd_asm(const std::string& asm_path) {
    Program p = assemble_program(read_file(asm_path));
    std::cout << to_hex0x(encode_program(p)) << "\n";
    return 0;
}

int cmd_demo(const std::string& out_dir) {
    DemoFixtures fx = make_demo_fixtures();
    std::filesystem::create_directories(out_dir);
    auto path = [&out_dir](const char* name) {
        return (std::filesystem::path(out_dir) / name).string();
    };
    write_file(path("genesis.txt"), fx.genesis_text);
    write_file(path("block1.json"), fx.block1_json);
    write_file(path("block2.json"), fx.block2_json);
    write_file(path("block3.json"), fx.block3_json);
    std::cout << "wrote " << path("genesis.txt") << "\n"
              << "wrote " << path("block1.json") << " (transfers, one over-spend)\n"
              << "wrote " << path("block2.json") << " (installs fee-burning transfer logic)\n"
              << "wrote " << path("block3.json") << " (transfers under whichever logic is live)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"enso — deterministic actor-model state transition machine"};
    app.require_subcommand(1);

    std::string genesis_path, out_path, state_path, block_path, receipts_path;
    std::string actor_hex, key_hex, asm_path, out_dir;
    VmConfig cfg;

    auto* init = app.add_subcommand("init", "build a genesis snapshot");
    init->add_option("--genesis", genesis_path, "genesis document")->required();
    init->add_option("--out", out_path, "snapshot output path (.enss)")->required();

    auto* apply = app.add_subcommand("apply", "apply a block to a snapshot in place");
    apply->add_option("--state", state_path, "snapshot path (.enss)")->required();
    apply->add_option("--block", block_path, "block document (JSON)")->required();
    apply->add_option("--receipts", receipts_path, "write receipts JSON here");
    apply->add_option("--fuel-per-message", cfg.fuel_per_message, "instruction budget per message");
    apply->add_option("--max-messages", cfg.max_messages_per_block, "message budget per block");
    apply->add_option("--max-queue-len", cfg.max_queue_len, "queue length bound");

    auto* root = app.add_subcommand("root", "print the state root of a snapshot");
    root->add_option("--state", state_path, "snapshot path (.enss)")->required();

    auto* inspect = app.add_subcommand("inspect", "list actors or dump one actor's storage");
    inspect->add_option("--state", state_path, "snapshot path (.enss)")->required();
    inspect->add_option("--actor", actor_hex, "actor id (0x-hex)");
    inspect->add_option("--key", key_hex, "storage key (0x-hex), requires --actor");

    auto* asm_cmd = app.add_subcommand("asm", "assemble a program, print its code blob as hex");
    asm_cmd->add_option("file", asm_path, "assembly source")->required();

    auto* demo = app.add_subcommand("demo", "write the ledger demo fixture set");
    demo->add_option("--out", out_dir, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (init->parsed()) return cmd_init(genesis_path, out_path);
        if (apply->parsed()) {
            if (!cfg.valid()) throw std::runtime_error("all limits must be >= 1");
            return cmd_apply(state_path, block_path, receipts_path, cfg);
        }
        if (root->parsed()) return cmd_root(state_path);
        if (inspect->parsed()) {
            if (!key_hex.empty() && actor_hex.empty()) {
                throw std::runtime_error("--key requires --actor");
            }
            return cmd_inspect(state_path, actor_hex, key_hex);
        }
        if (asm_cmd->parsed()) return cmd_asm(asm_path);
        if (demo->parsed()) return cmd_demo(out_dir);
    } catch (const AsmError& e) {
        std::cerr << "enso: " << (asm_path.empty() ? genesis_path : asm_path) << ":" << e.what()
                  << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "enso: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
