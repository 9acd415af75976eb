#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "cardmpc/cards.hpp"
#include "cardmpc/shuffle.hpp"

namespace cardmpc {

enum class Protocol : std::uint8_t { Equality, SetSize, Set };

const char* protocol_name(Protocol p);          // "equality" / "set-size" / "set"
Protocol protocol_from_name(const std::string& name);

// One public reveal: which step turned a row face-up and what it showed.
struct RevealEvent {
  std::string label;  // "step2b:i=<i>", "step4", "step5"
  int row = 0;
  std::string pattern;  // suits left to right, e.g. "HCHH"

  friend auto operator<=>(const RevealEvent&, const RevealEvent&) = default;
};

// Everything an observer sees during a run, in order. This is the object the
// security audit compares; nothing outside it is public.
struct Transcript {
  std::vector<RevealEvent> events;

  // "label|row|pattern" entries joined with ";". Injective: labels never
  // contain the separators and patterns are suit letters only.
  std::string canonical() const;

  friend auto operator<=>(const Transcript&, const Transcript&) = default;
};

// Hooks into a run as it executes, used by the trace printer and the
// invariant monitor. Matrices arrive after the named action took effect.
class StepObserver {
 public:
  virtual ~StepObserver() = default;
  virtual void on_build(const CardMatrix&) {}
  virtual void on_shuffle(const CardMatrix&, const ShuffleDecision&) {}
  virtual void on_reveal(const CardMatrix&, const RevealEvent&) {}
  virtual void on_overwrite(const CardMatrix&, int /*row*/, Suit /*target*/) {}
  virtual void on_flip_down(const CardMatrix&) {}
  virtual void on_realign(const CardMatrix&, int /*rotation*/) {}
};

struct RunOptions {
  // Drops the shuffle between the overwrite loop and the first output
  // reveal. Deliberately broken variant for exercising the security audit.
  bool skip_final_shuffle = false;
  StepObserver* observer = nullptr;
};

struct ProtocolRun {
  Protocol protocol = Protocol::Equality;
  int k = 0;
  int n = 0;
  std::vector<int> inputs;
  std::vector<ShuffleDecision> tape;  // decisions consumed, in order
  // Equality: {0} or {1}. Set-size: {count}. Set: the sorted member list.
  std::vector<int> output;
  Transcript transcript;
  int shuffles_used = 0;
  CardMatrix final_matrix;

  std::string output_string() const;  // "1", "4", "{0,2,3,5}"
};

// The shuffle plan a run will consume: n scrambles (equality, set-size) or
// n shifts (set), one fewer when the final shuffle is skipped.
std::vector<TapeSlot> required_tape(Protocol p, int k, int n, bool skip_final_shuffle = false);

// Swaps M(row,j) with M(1,j) in every column j where M(row,j) has the target
// suit; facing travels with the cards. Requires row fully face-up and every
// other row fully face-down.
void overwrite_step(CardMatrix& m, int row, Suit target);

ProtocolRun run_protocol(Protocol p, const InputVector& inputs, DecisionSource& source,
                         const RunOptions& opts = {});
ProtocolRun run_equality(const InputVector& inputs, DecisionSource& source,
                         const RunOptions& opts = {});
ProtocolRun run_set_size(const InputVector& inputs, DecisionSource& source,
                         const RunOptions& opts = {});
ProtocolRun run_set(const InputVector& inputs, DecisionSource& source,
                    const RunOptions& opts = {});

enum class CostScheme : std::uint8_t { Equality, SetSize, Set, BaselineRI };

struct Costs {
  std::uint64_t cards = 0;
  std::uint64_t shuffles = 0;

  friend bool operator==(const Costs&, const Costs&) = default;
};

// Smallest t with 2^t >= k.
int ceil_log2(int k);

// Deck and shuffle counts: (kn, n) for equality and set-size, (k(n+1), n)
// for set, (2ceil(lg k)n, ceil(lg k)n - 1) for the binary-encoding baseline.
Costs cost_model(CostScheme scheme, int k, int n);

}  // namespace cardmpc
