#include "cardmpc/audit.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "cardmpc/oracles.hpp"

namespace cardmpc {

const char* audit_mode_name(AuditMode mode) {
  return mode == AuditMode::Exact ? "exact" : "sampled";
}

std::vector<int> oracle_output(Protocol p, const InputVector& inputs) {
  switch (p) {
    case Protocol::Equality: return {oracle_equality(inputs)};
    case Protocol::SetSize: return {oracle_set_size(inputs)};
    case Protocol::Set: return oracle_set(inputs);
  }
  throw DomainError("unknown protocol enumerator");
}

namespace {

void check_budget(std::uint64_t required, std::uint64_t budget, const char* what) {
  if (required > budget)
    throw BudgetError(std::string(what) + " needs " + std::to_string(required) +
                          " protocol runs but the budget is " + std::to_string(budget) +
                          "; raise the budget or switch to a sampled audit",
                      required, budget);
}

TranscriptDistribution tally_universe(Protocol p, const InputVector& inputs,
                                      bool skip_final_shuffle) {
  TranscriptDistribution dist;
  TapeEnumerator en(required_tape(p, inputs.k(), inputs.n(), skip_final_shuffle));
  dist.universe = en.universe();
  RunOptions opts;
  opts.skip_final_shuffle = skip_final_shuffle;
  do {
    RandomnessTape tape = en.tape();
    ProtocolRun run = run_protocol(p, inputs, tape, opts);
    ++dist.counts[std::move(run.transcript)];
  } while (en.advance());
  return dist;
}

// First transcript whose tallies differ between the two distributions, in
// transcript order. Callers only invoke this on distributions known unequal.
Counterexample first_difference(const InputVector& a, const InputVector& b,
                                const TranscriptDistribution& da,
                                const TranscriptDistribution& db) {
  Counterexample ce;
  ce.input_a = a.values();
  ce.input_b = b.values();
  auto ia = da.counts.begin();
  auto ib = db.counts.begin();
  while (ia != da.counts.end() || ib != db.counts.end()) {
    if (ib == db.counts.end() || (ia != da.counts.end() && ia->first < ib->first)) {
      ce.transcript = ia->first;
      ce.count_a = ia->second;
      ce.count_b = 0;
      return ce;
    }
    if (ia == da.counts.end() || ib->first < ia->first) {
      ce.transcript = ib->first;
      ce.count_a = 0;
      ce.count_b = ib->second;
      return ce;
    }
    if (ia->second != ib->second) {
      ce.transcript = ia->first;
      ce.count_a = ia->second;
      ce.count_b = ib->second;
      return ce;
    }
    ++ia;
    ++ib;
  }
  return ce;
}

// Total variation distance between two tallies with equal universes, plus the
// transcript with the largest count gap (first such in transcript order).
struct TvResult {
  double tv = 0.0;
  std::size_t union_support = 0;
  Transcript worst;
  std::uint64_t count_a = 0;
  std::uint64_t count_b = 0;
};

TvResult tv_distance(const TranscriptDistribution& da, const TranscriptDistribution& db) {
  TvResult r;
  std::uint64_t abs_sum = 0;
  std::uint64_t worst_gap = 0;
  auto ia = da.counts.begin();
  auto ib = db.counts.begin();
  const auto visit = [&](const Transcript& t, std::uint64_t ca, std::uint64_t cb) {
    ++r.union_support;
    const std::uint64_t gap = ca > cb ? ca - cb : cb - ca;
    abs_sum += gap;
    if (gap > worst_gap) {
      worst_gap = gap;
      r.worst = t;
      r.count_a = ca;
      r.count_b = cb;
    }
  };
  while (ia != da.counts.end() || ib != db.counts.end()) {
    if (ib == db.counts.end() || (ia != da.counts.end() && ia->first < ib->first)) {
      visit(ia->first, ia->second, 0);
      ++ia;
    } else if (ia == da.counts.end() || ib->first < ia->first) {
      visit(ib->first, 0, ib->second);
      ++ib;
    } else {
      visit(ia->first, ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  r.tv = static_cast<double>(abs_sum) / (2.0 * static_cast<double>(da.universe));
  return r;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

// Output class skeletons in deterministic order: sorted by output value,
// members lexicographic. dists[i] belongs to inputs[i].
std::vector<OutputClass> build_classes(Protocol p, const std::vector<InputVector>& inputs,
                                       const std::vector<TranscriptDistribution>& dists,
                                       std::map<std::vector<int>, std::vector<std::size_t>>& index) {
  for (std::size_t i = 0; i < inputs.size(); ++i)
    index[oracle_output(p, inputs[i])].push_back(i);
  std::vector<OutputClass> classes;
  classes.reserve(index.size());
  for (const auto& [output, idxs] : index) {
    OutputClass cls;
    cls.output = output;
    for (std::size_t i : idxs) cls.members.push_back(inputs[i].values());
    cls.distribution = dists[idxs.front()];
    classes.push_back(std::move(cls));
  }
  return classes;
}

}  // namespace

TranscriptDistribution transcript_distribution(Protocol p, const InputVector& inputs,
                                               std::uint64_t budget, bool skip_final_shuffle) {
  const std::uint64_t universe =
      universe_size(required_tape(p, inputs.k(), inputs.n(), skip_final_shuffle));
  check_budget(universe, budget, "exact transcript tally");
  return tally_universe(p, inputs, skip_final_shuffle);
}

AuditReport check_security(Protocol p, int k, int n, std::uint64_t budget,
                           bool skip_final_shuffle) {
  const std::uint64_t universe = universe_size(required_tape(p, k, n, skip_final_shuffle));
  const std::uint64_t input_count = saturating_pow(static_cast<std::uint64_t>(k),
                                                   static_cast<std::uint64_t>(n));
  check_budget(saturating_mul(input_count, universe), budget, "exact security audit");

  const std::vector<InputVector> inputs = all_input_vectors(k, n);
  std::vector<TranscriptDistribution> dists;
  dists.reserve(inputs.size());
  for (const InputVector& in : inputs) dists.push_back(tally_universe(p, in, skip_final_shuffle));

  AuditReport report;
  report.protocol = p;
  report.k = k;
  report.n = n;
  report.mode = AuditMode::Exact;
  report.universe = universe;
  report.pass = true;

  std::map<std::vector<int>, std::vector<std::size_t>> index;
  report.classes = build_classes(p, inputs, dists, index);

  for (const auto& [output, idxs] : index) {
    const TranscriptDistribution& ref = dists[idxs.front()];
    for (std::size_t m = 1; m < idxs.size(); ++m) {
      if (dists[idxs[m]] == ref) continue;
      report.pass = false;
      report.counterexample =
          first_difference(inputs[idxs.front()], inputs[idxs[m]], ref, dists[idxs[m]]);
      return report;
    }
  }
  return report;
}

AuditReport check_security_sampled(Protocol p, int k, int n, std::uint64_t samples,
                                   std::uint64_t seed, bool skip_final_shuffle,
                                   double threshold) {
  if (samples < 10'000)
    throw DomainError("sampled audit needs at least 10000 samples per input, got " +
                      std::to_string(samples));
  if (!(threshold > 0.0)) throw DomainError("threshold must be positive");
  required_tape(p, k, n, skip_final_shuffle);  // validates k and n
  const std::uint64_t input_count = saturating_pow(static_cast<std::uint64_t>(k),
                                                   static_cast<std::uint64_t>(n));
  check_budget(input_count, kDefaultBudget, "per-input tabulation for the sampled audit");

  const std::vector<InputVector> inputs = all_input_vectors(k, n);
  std::vector<TranscriptDistribution> dists(inputs.size());
  RunOptions opts;
  opts.skip_final_shuffle = skip_final_shuffle;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    SeededSource src(derive_seed(seed, i));
    TranscriptDistribution& d = dists[i];
    d.universe = samples;
    for (std::uint64_t s = 0; s < samples; ++s) {
      ProtocolRun run = run_protocol(p, inputs[i], src, opts);
      ++d.counts[std::move(run.transcript)];
    }
  }

  AuditReport report;
  report.protocol = p;
  report.k = k;
  report.n = n;
  report.mode = AuditMode::Sampled;
  report.universe = samples;
  report.pass = true;

  std::map<std::vector<int>, std::vector<std::size_t>> index;
  report.classes = build_classes(p, inputs, dists, index);

  // Two same-law empirical tallies sit at expected total-variation distance
  // about sqrt(C/s)/sqrt(pi) (C = union support, s = samples), so the fail
  // line is max(threshold, that floor plus a 3/sqrt(s) margin). Without the
  // floor, large transcript spaces would flunk healthy protocols on pure
  // sampling noise.
  for (const auto& [output, idxs] : index) {
    const TranscriptDistribution& ref = dists[idxs.front()];
    for (std::size_t m = 1; m < idxs.size(); ++m) {
      const TvResult r = tv_distance(ref, dists[idxs[m]]);
      const double noise_floor =
          0.5642 * std::sqrt(static_cast<double>(r.union_support) /
                             static_cast<double>(samples)) +
          3.0 / std::sqrt(static_cast<double>(samples));
      const double line = std::max(threshold, noise_floor);
      report.max_tv = std::max(report.max_tv, r.tv);
      report.effective_threshold = std::max(report.effective_threshold, line);
      if (r.tv > line && report.pass) {
        report.pass = false;
        Counterexample ce;
        ce.input_a = inputs[idxs.front()].values();
        ce.input_b = inputs[idxs[m]].values();
        ce.transcript = r.worst;
        ce.count_a = r.count_a;
        ce.count_b = r.count_b;
        report.counterexample = std::move(ce);
      }
    }
  }
  return report;
}

CorrectnessReport verify_correctness(Protocol p, int k, int n, std::uint64_t budget) {
  const std::uint64_t universe = universe_size(required_tape(p, k, n, false));
  const std::uint64_t input_count = saturating_pow(static_cast<std::uint64_t>(k),
                                                   static_cast<std::uint64_t>(n));
  check_budget(saturating_mul(input_count, universe), budget, "exhaustive verification");

  CorrectnessReport rep;
  rep.protocol = p;
  rep.k = k;
  rep.n = n;
  for (const InputVector& in : all_input_vectors(k, n)) {
    const std::vector<int> expected = oracle_output(p, in);
    TapeEnumerator en(required_tape(p, k, n, false));
    do {
      RandomnessTape tape = en.tape();
      ProtocolRun run = run_protocol(p, in, tape);
      ++rep.runs;
      if (run.output != expected) {
        ++rep.mismatches;
        if (!rep.first_mismatch)
          rep.first_mismatch = Mismatch{in.values(), run.tape, run.output, expected};
      }
    } while (en.advance());
  }
  return rep;
}

std::map<std::string, std::uint64_t> label_pattern_counts(const TranscriptDistribution& d,
                                                          const std::string& label) {
  std::map<std::string, std::uint64_t> out;
  for (const auto& [t, count] : d.counts)
    for (const RevealEvent& e : t.events)
      if (e.label == label) out[e.pattern] += count;
  return out;
}

}  // namespace cardmpc
