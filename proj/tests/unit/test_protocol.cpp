#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "cardmpc/cards.hpp"
#include "cardmpc/invariants.hpp"
#include "cardmpc/protocol.hpp"
#include "cardmpc/shuffle.hpp"

using namespace cardmpc;

TEST_CASE("protocol names round-trip") {
  for (Protocol p : {Protocol::Equality, Protocol::SetSize, Protocol::Set})
    CHECK(protocol_from_name(protocol_name(p)) == p);
  CHECK(std::string(protocol_name(Protocol::SetSize)) == "set-size");
  CHECK_THROWS_AS(protocol_from_name("majority"), DomainError);
}

TEST_CASE("transcript canonical form is flat and ordered") {
  Transcript t;
  t.events.push_back({"step2b:i=2", 2, "HCH"});
  t.events.push_back({"step4", 1, "HHH"});
  CHECK(t.canonical() == "step2b:i=2|2|HCH;step4|1|HHH");
  CHECK(Transcript{}.canonical() == "");
}

TEST_CASE("required_tape shapes") {
  const auto eq = required_tape(Protocol::Equality, 3, 4);
  REQUIRE(eq.size() == 4);
  for (const TapeSlot& s : eq) {
    CHECK(s.kind == ShuffleKind::Scramble);
    CHECK(s.k == 3);
  }
  const auto st = required_tape(Protocol::Set, 3, 4);
  REQUIRE(st.size() == 4);
  for (const TapeSlot& s : st) CHECK(s.kind == ShuffleKind::Shift);
  CHECK(required_tape(Protocol::SetSize, 2, 3, true).size() == 2);
  CHECK(required_tape(Protocol::Equality, 5, 1, true).empty());
  CHECK_THROWS_AS(required_tape(Protocol::Equality, 1, 3), DomainError);
  CHECK_THROWS_AS(required_tape(Protocol::Set, 3, 0), DomainError);
}

namespace {

CardMatrix two_rows(const std::string& r1, const std::string& r2) {
  CardMatrix m(2, static_cast<int>(r1.size()));
  for (int j = 1; j <= m.cols(); ++j) {
    m.at(1, j).suit = r1[static_cast<std::size_t>(j - 1)] == 'C' ? Suit::Club : Suit::Heart;
    m.at(2, j).suit = r2[static_cast<std::size_t>(j - 1)] == 'C' ? Suit::Club : Suit::Heart;
  }
  m.turn_row(2, Facing::FaceUp);
  return m;
}

}  // namespace

TEST_CASE("overwrite_step swaps exactly the target-suit columns") {
  SUBCASE("all Hearts with Heart target exchanges the rows") {
    CardMatrix m = two_rows("CHH", "HHH");
    overwrite_step(m, 2, Suit::Heart);
    CHECK(m.row_pattern(1) == "HHH");
    CHECK(m.row_pattern(2) == "CHH");
    // Facing travels with the cards: row 1 now holds the revealed ones.
    CHECK(m.row_all_facing(1, Facing::FaceUp));
    CHECK(m.row_all_facing(2, Facing::FaceDown));
  }
  SUBCASE("single Club target moves one column") {
    CardMatrix m = two_rows("CHH", "HCH");
    overwrite_step(m, 2, Suit::Club);
    CHECK(m.row_pattern(1) == "CCH");
    CHECK(m.row_pattern(2) == "HHH");
    CHECK(m.at(1, 2).facing == Facing::FaceUp);
    CHECK(m.at(1, 1).facing == Facing::FaceDown);
  }
  SUBCASE("aligned Clubs leave both patterns unchanged") {
    CardMatrix m = two_rows("CHH", "CHH");
    overwrite_step(m, 2, Suit::Club);
    CHECK(m.row_pattern(1) == "CHH");
    CHECK(m.row_pattern(2) == "CHH");
  }
  SUBCASE("facing and row bounds are enforced") {
    CardMatrix down = two_rows("CH", "HC");
    down.turn_row(2, Facing::FaceDown);
    CHECK_THROWS_AS(overwrite_step(down, 2, Suit::Club), ProtocolStateError);
    CardMatrix extra(3, 2);
    extra.turn_row(2, Facing::FaceUp);
    extra.turn_row(3, Facing::FaceUp);
    CHECK_THROWS_AS(overwrite_step(extra, 2, Suit::Club), ProtocolStateError);
    CardMatrix m = two_rows("CH", "HC");
    CHECK_THROWS_AS(overwrite_step(m, 1, Suit::Club), DomainError);
    CHECK_THROWS_AS(overwrite_step(m, 3, Suit::Club), DomainError);
  }
}

TEST_CASE("equality runs") {
  SUBCASE("mixed inputs come out unequal") {
    SeededSource src(42);
    const ProtocolRun run = run_equality(InputVector({2, 3, 2, 0, 2}, 6), src);
    CHECK(run.output == std::vector<int>{0});
    CHECK(run.output_string() == "0");
    CHECK(run.shuffles_used == 5);
    REQUIRE(run.transcript.events.size() == 5);
    CHECK(run.transcript.events[0].label == "step2b:i=2");
    CHECK(run.transcript.events[0].row == 2);
    CHECK(run.transcript.events[3].label == "step2b:i=5");
    CHECK(run.transcript.events[4].label == "step4");
    CHECK(run.transcript.events[4].row == 1);
  }
  SUBCASE("identical inputs come out equal") {
    SeededSource src(7);
    const ProtocolRun run = run_equality(InputVector({1, 1, 1}, 3), src);
    CHECK(run.output == std::vector<int>{1});
    CHECK(std::count(run.transcript.events.back().pattern.begin(),
                     run.transcript.events.back().pattern.end(), 'C') == 1);
  }
  SUBCASE("unequal pair is 0 under every tape") {
    TapeEnumerator en(required_tape(Protocol::Equality, 2, 2));
    REQUIRE(en.universe() == 4);
    do {
      RandomnessTape tape(en.decisions());
      const ProtocolRun run = run_equality(InputVector({0, 1}, 2), tape);
      CHECK(run.output == std::vector<int>{0});
      CHECK(run.transcript.events.size() == 2);
    } while (en.advance());
  }
}

TEST_CASE("set-size runs") {
  SeededSource src(3);
  CHECK(run_set_size(InputVector({3, 2, 3, 0, 5, 0}, 6), src).output == std::vector<int>{4});
  SeededSource same(9);
  CHECK(run_set_size(InputVector({1, 1, 1, 1}, 4), same).output == std::vector<int>{1});
  TapeEnumerator en(required_tape(Protocol::SetSize, 3, 2));
  REQUIRE(en.universe() == 36);
  do {
    RandomnessTape tape(en.decisions());
    CHECK(run_set_size(InputVector({0, 2}, 3), tape).output == std::vector<int>{2});
  } while (en.advance());
}

TEST_CASE("set runs") {
  SUBCASE("worked example") {
    SeededSource src(11);
    const ProtocolRun run = run_set(InputVector({3, 2, 3, 0, 5, 0}, 6), src);
    CHECK(run.output == std::vector<int>{0, 2, 3, 5});
    CHECK(run.output_string() == "{0,2,3,5}");
    CHECK(run.shuffles_used == 6);
    REQUIRE(run.transcript.events.size() == 7);
    // Marker reveal at the helper row, then the realigned first row.
    CHECK(run.transcript.events[5].label == "step4");
    CHECK(run.transcript.events[5].row == 7);
    CHECK(run.transcript.events[6].label == "step5");
    CHECK(run.transcript.events[6].row == 1);
    CHECK(run.transcript.events[6].pattern == "CHCCHC");
  }
  SUBCASE("all-equal inputs give a singleton") {
    SeededSource src(5);
    CHECK(run_set(InputVector({1, 1, 1}, 4), src).output == std::vector<int>{1});
  }
  SUBCASE("output is input-determined under every tape") {
    TapeEnumerator en(required_tape(Protocol::Set, 3, 2));
    REQUIRE(en.universe() == 9);
    do {
      RandomnessTape tape(en.decisions());
      CHECK(run_set(InputVector({1, 2}, 3), tape).output == std::vector<int>{1, 2});
    } while (en.advance());
  }
}

TEST_CASE("single-input runs shuffle once and echo the input") {
  SeededSource a(1), b(1), c(1);
  const ProtocolRun eq = run_equality(InputVector({3}, 5), a);
  CHECK(eq.output == std::vector<int>{1});
  CHECK(eq.shuffles_used == 1);
  CHECK(eq.transcript.events.size() == 1);
  CHECK(eq.transcript.events[0].label == "step4");
  const ProtocolRun ss = run_set_size(InputVector({3}, 5), b);
  CHECK(ss.output == std::vector<int>{1});
  const ProtocolRun st = run_set(InputVector({3}, 5), c);
  CHECK(st.output == std::vector<int>{3});
  CHECK(st.shuffles_used == 1);
  CHECK(st.transcript.events.size() == 2);
}

TEST_CASE("a recorded tape replays to the identical run") {
  SeededSource src(20240815);
  const ProtocolRun first = run_set(InputVector({0, 3, 3}, 4), src);
  RandomnessTape tape(first.tape);
  const ProtocolRun again = run_set(InputVector({0, 3, 3}, 4), tape);
  CHECK(again.transcript == first.transcript);
  CHECK(again.output == first.output);
  CHECK(again.tape == first.tape);
  CHECK(tape.exhausted());
}

TEST_CASE("tape misuse surfaces as TapeError") {
  RandomnessTape short_tape({ShuffleDecision::scramble(Permutation::identity(2))});
  CHECK_THROWS_AS(run_equality(InputVector({0, 1}, 2), short_tape), TapeError);
  RandomnessTape wrong_kind({ShuffleDecision::scramble(Permutation::identity(3)),
                             ShuffleDecision::scramble(Permutation::identity(3))});
  CHECK_THROWS_AS(run_set(InputVector({0, 1}, 3), wrong_kind), TapeError);
}

TEST_CASE("skipping the only shuffle makes a single input fully public") {
  RandomnessTape empty(std::vector<ShuffleDecision>{});
  RunOptions opts;
  opts.skip_final_shuffle = true;
  const ProtocolRun run = run_equality(InputVector({3}, 5), empty, opts);
  CHECK(run.shuffles_used == 0);
  CHECK(run.output == std::vector<int>{1});
  REQUIRE(run.transcript.events.size() == 1);
  // Without the shuffle the reveal is the raw encoding of the input.
  CHECK(run.transcript.events[0].pattern == encode(3, 5).pattern());
}

TEST_CASE("invariant monitor accepts honest runs") {
  struct Case {
    Protocol p;
    InputVector in;
  };
  const std::vector<Case> cases = {
      {Protocol::Equality, InputVector({2, 3, 2, 0, 2}, 6)},
      {Protocol::Equality, InputVector({1, 1, 1}, 3)},
      {Protocol::SetSize, InputVector({3, 2, 3, 0, 5, 0}, 6)},
      {Protocol::Set, InputVector({3, 2, 3, 0, 5, 0}, 6)},
      {Protocol::Set, InputVector({2}, 4)},
  };
  for (const Case& c : cases) {
    InvariantMonitor monitor(c.p, c.in);
    SeededSource src(99);
    RunOptions opts;
    opts.observer = &monitor;
    const ProtocolRun run = run_protocol(c.p, c.in, src, opts);
    monitor.finish(run);
    CHECK(monitor.checks() > 20);
  }
}

TEST_CASE("invariant monitor rejects tampered state") {
  SUBCASE("suit conservation") {
    InvariantMonitor monitor(Protocol::Equality, InputVector({0, 0}, 2));
    CardMatrix m(2, 2);
    m.at(1, 1).suit = Suit::Club;
    m.at(2, 1).suit = Suit::Club;
    m.at(2, 2).suit = Suit::Club;
    CHECK_THROWS_AS(monitor.on_build(m), InvariantViolation);
  }
  SUBCASE("sticky first-row Clubs") {
    InvariantMonitor monitor(Protocol::SetSize, InputVector({0, 1}, 2));
    monitor.on_build(build_matrix(InputVector({0, 1}, 2), false));
    CardMatrix moved(2, 2);
    moved.at(1, 2).suit = Suit::Club;
    moved.at(2, 1).suit = Suit::Club;
    CHECK_THROWS_AS(monitor.on_flip_down(moved), InvariantViolation);
  }
  SUBCASE("monotone first-row Hearts") {
    InvariantMonitor monitor(Protocol::Equality, InputVector({0, 0}, 2));
    monitor.on_build(build_matrix(InputVector({0, 0}, 2), false));
    CardMatrix worse(2, 2);
    worse.at(1, 1).suit = Suit::Club;
    worse.at(1, 2).suit = Suit::Club;
    CHECK_THROWS_AS(monitor.on_flip_down(worse), InvariantViolation);
  }
  SUBCASE("reveal purity") {
    InvariantMonitor monitor(Protocol::SetSize, InputVector({0, 1}, 2));
    monitor.on_build(build_matrix(InputVector({0, 1}, 2), false));
    CardMatrix impure(2, 2);
    impure.at(2, 1).suit = Suit::Club;
    impure.at(2, 2).suit = Suit::Club;
    impure.turn_row(2, Facing::FaceUp);
    CHECK_THROWS_AS(monitor.on_reveal(impure, RevealEvent{"step2b:i=2", 2, "CC"}),
                    InvariantViolation);
  }
  SUBCASE("realignment outside the set protocol") {
    InvariantMonitor monitor(Protocol::Equality, InputVector({0, 0}, 2));
    monitor.on_build(build_matrix(InputVector({0, 0}, 2), false));
    CHECK_THROWS_AS(monitor.on_realign(build_matrix(InputVector({0, 0}, 2), false), 0),
                    InvariantViolation);
  }
}

TEST_CASE("cost model") {
  CHECK(cost_model(CostScheme::Equality, 6, 5) == Costs{30, 5});
  CHECK(cost_model(CostScheme::SetSize, 4, 2) == Costs{8, 2});
  CHECK(cost_model(CostScheme::Set, 3, 2) == Costs{9, 2});
  CHECK(cost_model(CostScheme::Set, 6, 6) == Costs{42, 6});
  CHECK(cost_model(CostScheme::BaselineRI, 5, 3) == Costs{18, 8});
  CHECK(cost_model(CostScheme::BaselineRI, 2, 4) == Costs{8, 3});
  CHECK_THROWS_AS(cost_model(CostScheme::Equality, 1, 3), DomainError);
  CHECK_THROWS_AS(cost_model(CostScheme::Set, 4, 0), DomainError);
}

TEST_CASE("ceil_log2") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(4) == 2);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log2(8) == 3);
  CHECK(ceil_log2(9) == 4);
  CHECK(ceil_log2(1024) == 10);
  CHECK_THROWS_AS(ceil_log2(0), DomainError);
}
