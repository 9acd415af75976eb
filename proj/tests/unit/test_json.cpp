#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "cardmpc/audit.hpp"
#include "cardmpc/json_io.hpp"

using namespace cardmpc;

namespace {

std::vector<std::string> keys_of(const json& j) {
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
  return out;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("cardmpc_test_" + name) {
    std::ofstream(path) << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("tape serialization round-trips") {
  const std::vector<ShuffleDecision> tape = {
      ShuffleDecision::scramble(Permutation({4, 6, 1, 3, 5, 2})),
      ShuffleDecision::shift(6, 2)};
  const json j = tape_to_json(tape);
  CHECK(j.dump() == R"([{"scramble":[4,6,1,3,5,2]},{"shift":2}])");
  CHECK(tape_from_json(j, 6) == tape);
  CHECK(tape_from_json(json::parse("[]"), 3).empty());
}

TEST_CASE("tape parsing rejects malformed entries") {
  CHECK_THROWS_AS(tape_from_json(json::parse(R"({"shift":1})"), 3), DomainError);
  CHECK_THROWS_AS(tape_from_json(json::parse(R"([42])"), 3), DomainError);
  CHECK_THROWS_AS(tape_from_json(json::parse(R"([{"spin":1}])"), 3), DomainError);
  CHECK_THROWS_AS(tape_from_json(json::parse(R"([{"shift":1,"scramble":[1,2]}])"), 2),
                  DomainError);
  CHECK_THROWS_AS(tape_from_json(json::parse(R"([{"shift":3}])"), 3), DomainError);
  CHECK_THROWS_AS(tape_from_json(json::parse(R"([{"shift":-1}])"), 3), DomainError);
  CHECK_THROWS_AS(tape_from_json(json::parse(R"([{"scramble":[1,2]}])"), 3), DomainError);
  CHECK_THROWS_AS(tape_from_json(json::parse(R"([{"scramble":[1,1,2]}])"), 3), DomainError);
  CHECK_THROWS_AS(tape_from_json(json::parse(R"([{"scramble":"abc"}])"), 3), DomainError);
  CHECK_THROWS_WITH(tape_from_json(json::parse(R"([{"shift":0},{"spin":1}])"), 3),
                    doctest::Contains("tape entry 2"));
}

TEST_CASE("tape files load and fail loudly") {
  const TempFile good("tape_good.json", R"([{"shift":2},{"shift":0}])");
  RandomnessTape tape = load_tape_file(good.path, 3);
  CHECK(tape.next(ShuffleKind::Shift, 3) == ShuffleDecision::shift(3, 2));
  CHECK(tape.next(ShuffleKind::Shift, 3) == ShuffleDecision::shift(3, 0));
  CHECK(tape.exhausted());
  CHECK_THROWS_AS(load_tape_file("cardmpc_test_no_such_file.json", 3), DomainError);
  const TempFile bad("tape_bad.json", "not json at all");
  CHECK_THROWS_WITH(load_tape_file(bad.path, 3), doctest::Contains("not valid JSON"));
}

TEST_CASE("output serialization depends on the protocol") {
  CHECK(output_to_json(Protocol::Equality, {1}).dump() == "1");
  CHECK(output_to_json(Protocol::SetSize, {4}).dump() == "4");
  CHECK(output_to_json(Protocol::Set, {0, 2, 3, 5}).dump() == "[0,2,3,5]");
  CHECK(output_to_json(Protocol::Set, {2}).dump() == "[2]");
}

TEST_CASE("run records serialize with a stable layout") {
  SeededSource src(42);
  const ProtocolRun run = run_equality(InputVector({2, 3, 2, 0, 2}, 6), src);
  const json j = run_to_json(run);
  CHECK(keys_of(j) == std::vector<std::string>{"protocol", "k", "n", "inputs", "tape", "output",
                                               "transcript", "shuffles_used"});
  CHECK(j["protocol"] == "equality");
  CHECK(j["k"] == 6);
  CHECK(j["n"] == 5);
  CHECK(j["inputs"] == json::parse("[2,3,2,0,2]"));
  CHECK(j["output"] == 0);
  CHECK(j["shuffles_used"] == 5);
  REQUIRE(j["tape"].size() == 5);
  REQUIRE(j["transcript"].size() == 5);
  CHECK(keys_of(j["transcript"][0]) == std::vector<std::string>{"step", "row", "pattern"});
  CHECK(j["transcript"][0]["step"] == "step2b:i=2");
  CHECK(j["transcript"][4]["step"] == "step4");
  CHECK(j["transcript"][4]["row"] == 1);
  // Replaying the recorded tape reproduces the record byte for byte.
  RandomnessTape tape(run.tape);
  const ProtocolRun again = run_equality(InputVector({2, 3, 2, 0, 2}, 6), tape);
  CHECK(run_to_json(again).dump(2) == j.dump(2));
}

TEST_CASE("set runs serialize array outputs") {
  SeededSource src(11);
  const json j = run_to_json(run_set(InputVector({3, 2, 3, 0, 5, 0}, 6), src));
  CHECK(j["protocol"] == "set");
  CHECK(j["output"] == json::parse("[0,2,3,5]"));
  CHECK(j["transcript"].size() == 7);
  CHECK(j["tape"][0].contains("shift"));
}

TEST_CASE("audit reports serialize verdicts and witnesses") {
  SUBCASE("pass") {
    const json j = report_to_json(check_security(Protocol::Equality, 2, 2));
    CHECK(keys_of(j) == std::vector<std::string>{"protocol", "k", "n", "mode", "universe",
                                                 "classes", "verdict", "counterexample"});
    CHECK(j["mode"] == "exact");
    CHECK(j["universe"] == 4);
    CHECK(j["verdict"] == "pass");
    CHECK(j["counterexample"].is_null());
    REQUIRE(j["classes"].size() == 2);
    CHECK(keys_of(j["classes"][0]) == std::vector<std::string>{"output", "distribution"});
    CHECK(j["classes"][0]["output"] == 0);
    const json& dist = j["classes"][0]["distribution"];
    REQUIRE(dist.size() > 0);
    CHECK(keys_of(dist[0]) ==
          std::vector<std::string>{"transcript_hashless_canonical", "count"});
    std::uint64_t total = 0;
    for (const json& entry : dist) total += entry["count"].get<std::uint64_t>();
    CHECK(total == 4);
  }
  SUBCASE("fail") {
    const json j = report_to_json(check_security(Protocol::Set, 2, 2, kDefaultBudget, true));
    CHECK(j["verdict"] == "fail");
    REQUIRE(j["counterexample"].is_object());
    CHECK(keys_of(j["counterexample"]) ==
          std::vector<std::string>{"input_a", "input_b", "transcript", "count_a", "count_b"});
    CHECK(j["counterexample"]["transcript"].is_string());
    CHECK(j["counterexample"]["count_a"] != j["counterexample"]["count_b"]);
  }
  SUBCASE("recomputation is byte-stable") {
    const std::string a = report_to_json(check_security(Protocol::SetSize, 2, 2)).dump(2);
    const std::string b = report_to_json(check_security(Protocol::SetSize, 2, 2)).dump(2);
    CHECK(a == b);
  }
}

TEST_CASE("correctness reports serialize") {
  const json j = correctness_to_json(verify_correctness(Protocol::Equality, 2, 2));
  CHECK(keys_of(j) == std::vector<std::string>{"protocol", "k", "n", "runs", "mismatches",
                                               "first_mismatch"});
  CHECK(j["runs"] == 16);
  CHECK(j["mismatches"] == 0);
  CHECK(j["first_mismatch"].is_null());
}
