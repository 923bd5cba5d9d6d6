#pragma once

#include <string>

#include "enso/state.hpp"

namespace enso {

/// Ready-to-run ledger fixture set. block1 moves funds under the genesis
/// transfer logic (and includes one over-spend that traps); block2 installs
/// fee-burning transfer logic through an ordinary extrinsic; block3 transfers
/// again, so running with and without block2 diverges.
struct DemoFixtures {
    ActorId ledger_id;
    std::string genesis_text;
    std::string block1_json;
    std::string block2_json;
    std::string block3_json;
};

DemoFixtures make_demo_fixtures();

} // namespace enso
