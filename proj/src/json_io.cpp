#include "cardmpc/json_io.hpp"

#include <fstream>

namespace cardmpc {

json tape_to_json(const std::vector<ShuffleDecision>& decisions) {
  json out = json::array();
  for (const ShuffleDecision& d : decisions) {
    if (d.kind == ShuffleKind::Scramble)
      out.push_back(json{{"scramble", d.column_map.dest()}});
    else
      out.push_back(json{{"shift", d.rotation}});
  }
  return out;
}

std::vector<ShuffleDecision> tape_from_json(const json& j, int k) {
  if (!j.is_array()) throw DomainError("tape JSON must be an array of decisions");
  std::vector<ShuffleDecision> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& entry = j[i];
    const std::string where = "tape entry " + std::to_string(i + 1);
    if (!entry.is_object() || entry.size() != 1)
      throw DomainError(where + " must be an object with exactly one of \"scramble\"/\"shift\"");
    if (entry.contains("scramble")) {
      const json& perm = entry["scramble"];
      if (!perm.is_array())
        throw DomainError(where + ": \"scramble\" must be an array of destinations");
      std::vector<int> dest;
      dest.reserve(perm.size());
      for (const json& v : perm) {
        if (!v.is_number_integer())
          throw DomainError(where + ": scramble destinations must be integers");
        dest.push_back(v.get<int>());
      }
      if (static_cast<int>(dest.size()) != k)
        throw DomainError(where + ": scramble has " + std::to_string(dest.size()) +
                          " entries, expected " + std::to_string(k));
      out.push_back(ShuffleDecision::scramble(Permutation(std::move(dest))));
    } else if (entry.contains("shift")) {
      const json& rot = entry["shift"];
      if (!rot.is_number_integer()) throw DomainError(where + ": \"shift\" must be an integer");
      const int r = rot.get<int>();
      if (r < 0 || r >= k)
        throw DomainError(where + ": shift " + std::to_string(r) + " outside {0.." +
                          std::to_string(k - 1) + "}");
      out.push_back(ShuffleDecision::shift(k, r));
    } else {
      throw DomainError(where + " must contain \"scramble\" or \"shift\"");
    }
  }
  return out;
}

RandomnessTape load_tape_file(const std::string& path, int k) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open tape file \"" + path + "\"");
  json j;
  try {
    j = json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("tape file \"" + path + "\" is not valid JSON: " + e.what());
  }
  return RandomnessTape(tape_from_json(j, k));
}

json output_to_json(Protocol p, const std::vector<int>& output) {
  if (p == Protocol::Set) return json(output);
  return json(output.at(0));
}

json run_to_json(const ProtocolRun& run) {
  json transcript = json::array();
  for (const RevealEvent& e : run.transcript.events)
    transcript.push_back(json{{"step", e.label}, {"row", e.row}, {"pattern", e.pattern}});
  return json{{"protocol", protocol_name(run.protocol)},
              {"k", run.k},
              {"n", run.n},
              {"inputs", run.inputs},
              {"tape", tape_to_json(run.tape)},
              {"output", output_to_json(run.protocol, run.output)},
              {"transcript", std::move(transcript)},
              {"shuffles_used", run.shuffles_used}};
}

json report_to_json(const AuditReport& report) {
  json classes = json::array();
  for (const OutputClass& cls : report.classes) {
    json dist = json::array();
    for (const auto& [t, count] : cls.distribution.counts)
      dist.push_back(json{{"transcript_hashless_canonical", t.canonical()}, {"count", count}});
    classes.push_back(json{{"output", output_to_json(report.protocol, cls.output)},
                           {"distribution", std::move(dist)}});
  }
  json counterexample;  // null on pass
  if (report.counterexample) {
    const Counterexample& ce = *report.counterexample;
    counterexample = json{{"input_a", ce.input_a},
                          {"input_b", ce.input_b},
                          {"transcript", ce.transcript.canonical()},
                          {"count_a", ce.count_a},
                          {"count_b", ce.count_b}};
  }
  return json{{"protocol", protocol_name(report.protocol)},
              {"k", report.k},
              {"n", report.n},
              {"mode", audit_mode_name(report.mode)},
              {"universe", report.universe},
              {"classes", std::move(classes)},
              {"verdict", report.pass ? "pass" : "fail"},
              {"counterexample", std::move(counterexample)}};
}

json correctness_to_json(const CorrectnessReport& report) {
  json mismatch;  // null when clean
  if (report.first_mismatch) {
    const Mismatch& m = *report.first_mismatch;
    mismatch = json{{"inputs", m.inputs},
                    {"tape", tape_to_json(m.tape)},
                    {"got", output_to_json(report.protocol, m.got)},
                    {"expected", output_to_json(report.protocol, m.expected)}};
  }
  return json{{"protocol", protocol_name(report.protocol)},
              {"k", report.k},
              {"n", report.n},
              {"runs", report.runs},
              {"mismatches", report.mismatches},
              {"first_mismatch", std::move(mismatch)}};
}

}  // namespace cardmpc
