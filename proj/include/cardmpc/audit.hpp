#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cardmpc/protocol.hpp"

namespace cardmpc {

// Cap on protocol runs per exact enumeration. Chosen so the exact audits in
// the test grid (k <= 4, n <= 3) finish in seconds.
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Exact tally of transcripts across a randomness universe. Probabilities are
// the rationals count/universe; verdicts never touch floating point in exact
// mode.
struct TranscriptDistribution {
  std::map<Transcript, std::uint64_t> counts;
  std::uint64_t universe = 0;

  friend bool operator==(const TranscriptDistribution&,
                         const TranscriptDistribution&) = default;
};

enum class AuditMode : std::uint8_t { Exact, Sampled };

const char* audit_mode_name(AuditMode mode);  // "exact" / "sampled"

// Two same-output inputs whose transcript tallies differ, plus one transcript
// exhibiting the difference.
struct Counterexample {
  std::vector<int> input_a;
  std::vector<int> input_b;
  Transcript transcript;
  std::uint64_t count_a = 0;
  std::uint64_t count_b = 0;
};

struct OutputClass {
  std::vector<int> output;                 // same shape as ProtocolRun::output
  std::vector<std::vector<int>> members;   // inputs, lexicographic
  TranscriptDistribution distribution;     // the class representative's tally
};

// Security is checked as transcript indistinguishability: for every pair of
// inputs with the same function output, the transcript distributions must
// coincide. This is the standard formalization for card-based protocols; the
// source arguments are step-local, but with independent shuffles they imply
// exactly this joint-transcript statement, and the joint transcript is what
// an observer actually sees.
struct AuditReport {
  Protocol protocol = Protocol::Equality;
  int k = 0;
  int n = 0;
  AuditMode mode = AuditMode::Exact;
  // Tapes per input in exact mode; samples per input in sampled mode.
  std::uint64_t universe = 0;
  std::vector<OutputClass> classes;  // sorted by output value
  bool pass = false;
  std::optional<Counterexample> counterexample;
  // Sampled mode only: worst within-class total-variation distance and the
  // largest threshold it was held against.
  double max_tv = 0.0;
  double effective_threshold = 0.0;
};

struct Mismatch {
  std::vector<int> inputs;
  std::vector<ShuffleDecision> tape;
  std::vector<int> got;
  std::vector<int> expected;
};

struct CorrectnessReport {
  Protocol protocol = Protocol::Equality;
  int k = 0;
  int n = 0;
  std::uint64_t runs = 0;
  std::uint64_t mismatches = 0;
  std::optional<Mismatch> first_mismatch;
};

// Oracle value in the uniform vector shape used by ProtocolRun::output.
std::vector<int> oracle_output(Protocol p, const InputVector& inputs);

// Runs the protocol once per tape in the full randomness universe and tallies
// canonical transcripts. Throws BudgetError when the universe exceeds the
// budget (a sampled audit is the fallback).
TranscriptDistribution transcript_distribution(Protocol p, const InputVector& inputs,
                                               std::uint64_t budget = kDefaultBudget,
                                               bool skip_final_shuffle = false);

// Exhaustive check: partitions all k^n inputs by oracle output and demands
// identical transcript tallies inside every class. skip_final_shuffle audits
// the deliberately broken engine variant instead.
AuditReport check_security(Protocol p, int k, int n, std::uint64_t budget = kDefaultBudget,
                           bool skip_final_shuffle = false);

// Statistical variant for universes beyond the exact budget: per input,
// `samples` seeded runs. A class fails when some member's empirical
// distribution sits further from the representative's (in total variation)
// than max(threshold, sampling noise floor). The verdict is evidence, not
// proof.
AuditReport check_security_sampled(Protocol p, int k, int n, std::uint64_t samples,
                                   std::uint64_t seed, bool skip_final_shuffle = false,
                                   double threshold = 0.01);

// Every input, every tape: protocol output must equal the oracle.
CorrectnessReport verify_correctness(Protocol p, int k, int n,
                                     std::uint64_t budget = kDefaultBudget);

// How often the reveal with this label showed each pattern, weighted by
// transcript multiplicity. Backs the reveal-law checks (uniform Club column,
// uniform column combinations).
std::map<std::string, std::uint64_t> label_pattern_counts(const TranscriptDistribution& d,
                                                          const std::string& label);

}  // namespace cardmpc
