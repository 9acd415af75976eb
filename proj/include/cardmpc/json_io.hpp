#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cardmpc/audit.hpp"
#include "cardmpc/protocol.hpp"
#include "cardmpc/shuffle.hpp"

namespace cardmpc {

// ordered_json keeps keys in insertion order, so serialized records are
// byte-stable and match the documented layouts.
using json = nlohmann::ordered_json;

// [{"scramble":[4,6,1,3,5,2]},{"shift":2}]
json tape_to_json(const std::vector<ShuffleDecision>& decisions);
// k is required because a shift entry does not carry the column count.
std::vector<ShuffleDecision> tape_from_json(const json& j, int k);
RandomnessTape load_tape_file(const std::string& path, int k);

// Output in its JSON shape: a number for equality and set-size, a sorted
// array for set.
json output_to_json(Protocol p, const std::vector<int>& output);

json run_to_json(const ProtocolRun& run);
json report_to_json(const AuditReport& report);
json correctness_to_json(const CorrectnessReport& report);

}  // namespace cardmpc
