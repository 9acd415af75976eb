#include "cardmpc/protocol.hpp"

#include <utility>

namespace cardmpc {

const char* protocol_name(Protocol p) {
  switch (p) {
    case Protocol::Equality: return "equality";
    case Protocol::SetSize: return "set-size";
    case Protocol::Set: return "set";
  }
  throw DomainError("unknown protocol enumerator");
}

Protocol protocol_from_name(const std::string& name) {
  if (name == "equality") return Protocol::Equality;
  if (name == "set-size") return Protocol::SetSize;
  if (name == "set") return Protocol::Set;
  throw DomainError("unknown protocol \"" + name + "\", expected equality, set-size, or set");
}

std::string Transcript::canonical() const {
  std::string out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i) out.push_back(';');
    out += events[i].label;
    out.push_back('|');
    out += std::to_string(events[i].row);
    out.push_back('|');
    out += events[i].pattern;
  }
  return out;
}

std::string ProtocolRun::output_string() const {
  if (protocol != Protocol::Set) return std::to_string(output.at(0));
  std::string out = "{";
  for (std::size_t i = 0; i < output.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(output[i]);
  }
  out.push_back('}');
  return out;
}

std::vector<TapeSlot> required_tape(Protocol p, int k, int n, bool skip_final_shuffle) {
  if (k < 2) throw DomainError("k must be at least 2, got " + std::to_string(k));
  if (n < 1) throw DomainError("n must be at least 1, got " + std::to_string(n));
  const ShuffleKind kind = p == Protocol::Set ? ShuffleKind::Shift : ShuffleKind::Scramble;
  const int count = skip_final_shuffle ? n - 1 : n;
  return std::vector<TapeSlot>(static_cast<std::size_t>(count), TapeSlot{kind, k});
}

void overwrite_step(CardMatrix& m, int row, Suit target) {
  if (row < 2 || row > m.rows())
    throw DomainError("overwrite row " + std::to_string(row) + " outside {2.." +
                      std::to_string(m.rows()) + "}");
  if (!m.row_all_facing(row, Facing::FaceUp))
    throw ProtocolStateError("overwrite requires row " + std::to_string(row) +
                             " fully face-up");
  for (int r = 1; r <= m.rows(); ++r)
    if (r != row && !m.row_all_facing(r, Facing::FaceDown))
      throw ProtocolStateError("overwrite requires row " + std::to_string(r) + " face-down");
  for (int j = 1; j <= m.cols(); ++j)
    if (m.at(row, j).suit == target) std::swap(m.at(row, j), m.at(1, j));
}

namespace {

// Club column (1-based) read off a revealed pattern with exactly one Club.
int club_column(const std::string& pattern) {
  return decode(sequence_from_pattern(pattern)) + 1;
}

}  // namespace

ProtocolRun run_protocol(Protocol p, const InputVector& inputs, DecisionSource& source,
                         const RunOptions& opts) {
  const int k = inputs.k();
  const int n = inputs.n();
  const bool is_set = p == Protocol::Set;
  const ShuffleKind kind = is_set ? ShuffleKind::Shift : ShuffleKind::Scramble;
  const Suit target = p == Protocol::Equality ? Suit::Heart : Suit::Club;

  ProtocolRun run;
  run.protocol = p;
  run.k = k;
  run.n = n;
  run.inputs = inputs.values();

  CardMatrix m = build_matrix(inputs, is_set);
  if (opts.observer) opts.observer->on_build(m);

  const auto shuffle = [&] {
    const ShuffleDecision d = source.next(kind, k);
    apply_shuffle(m, d);
    run.tape.push_back(d);
    ++run.shuffles_used;
    if (opts.observer) opts.observer->on_shuffle(m, d);
  };
  const auto reveal = [&](int row, std::string label) -> const RevealEvent& {
    m.turn_row(row, Facing::FaceUp);
    run.transcript.events.push_back(RevealEvent{std::move(label), row, m.row_pattern(row)});
    const RevealEvent& e = run.transcript.events.back();
    if (opts.observer) opts.observer->on_reveal(m, e);
    return e;
  };

  for (int i = 2; i <= n; ++i) {
    shuffle();
    reveal(i, "step2b:i=" + std::to_string(i));
    overwrite_step(m, i, target);
    if (opts.observer) opts.observer->on_overwrite(m, i, target);
    m.turn_all_face_down();
    if (opts.observer) opts.observer->on_flip_down(m);
  }

  if (!opts.skip_final_shuffle) shuffle();

  if (!is_set) {
    const RevealEvent& final_reveal = reveal(1, "step4");
    int clubs = 0;
    for (char c : final_reveal.pattern) clubs += c == 'C';
    run.output = {p == Protocol::Equality ? (clubs == 1 ? 1 : 0) : clubs};
  } else {
    // The realignment rotation comes from the revealed pattern alone: the
    // Club seen at column c must land on column 1.
    const RevealEvent& marker = reveal(n + 1, "step4");
    const int c = club_column(marker.pattern);
    const int rot = ((1 - c) % k + k) % k;
    m.rearrange_columns(Permutation::cyclic(k, rot).dest());
    if (opts.observer) opts.observer->on_realign(m, rot);

    const RevealEvent& final_reveal = reveal(1, "step5");
    run.output.clear();
    for (int j = 0; j < k; ++j)
      if (final_reveal.pattern[static_cast<std::size_t>(j)] == 'C') run.output.push_back(j);
  }

  run.final_matrix = std::move(m);
  return run;
}

ProtocolRun run_equality(const InputVector& inputs, DecisionSource& source,
                         const RunOptions& opts) {
  return run_protocol(Protocol::Equality, inputs, source, opts);
}

ProtocolRun run_set_size(const InputVector& inputs, DecisionSource& source,
                         const RunOptions& opts) {
  return run_protocol(Protocol::SetSize, inputs, source, opts);
}

ProtocolRun run_set(const InputVector& inputs, DecisionSource& source, const RunOptions& opts) {
  return run_protocol(Protocol::Set, inputs, source, opts);
}

int ceil_log2(int k) {
  if (k < 1) throw DomainError("ceil_log2 requires a positive argument, got " + std::to_string(k));
  int t = 0;
  while ((1LL << t) < k) ++t;
  return t;
}

Costs cost_model(CostScheme scheme, int k, int n) {
  if (k < 2) throw DomainError("k must be at least 2, got " + std::to_string(k));
  if (n < 1) throw DomainError("n must be at least 1, got " + std::to_string(n));
  const auto ku = static_cast<std::uint64_t>(k);
  const auto nu = static_cast<std::uint64_t>(n);
  switch (scheme) {
    case CostScheme::Equality:
    case CostScheme::SetSize: return Costs{ku * nu, nu};
    case CostScheme::Set: return Costs{ku * (nu + 1), nu};
    case CostScheme::BaselineRI: {
      const auto lg = static_cast<std::uint64_t>(ceil_log2(k));
      return Costs{2 * lg * nu, lg * nu - 1};
    }
  }
  throw DomainError("unknown cost scheme enumerator");
}

}  // namespace cardmpc
