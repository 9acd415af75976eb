#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cardmpc/audit.hpp"
#include "cardmpc/invariants.hpp"
#include "cardmpc/json_io.hpp"
#include "cardmpc/oracles.hpp"
#include "cardmpc/protocol.hpp"

namespace {

using namespace cardmpc;

// Wording of the security notion the audit verdict is based on. The source
// arguments are step-local; the audit checks the joint-transcript statement
// they imply, because the joint transcript is what an observer sees.
constexpr const char* kSecurityDefinition =
    "definition: pass iff every pair of inputs with equal function output has "
    "identical transcript distributions (transcript indistinguishability)";

// Hidden cards render as "?"; a suit is shown only while its card is face-up,
// so the trace never says more than the transcript does.
void print_matrix(std::ostream& os, const CardMatrix& m) {
  for (int r = 1; r <= m.rows(); ++r) {
    os << "  " << r << "  ";
    for (int c = 1; c <= m.cols(); ++c) {
      if (c > 1) os << ' ';
      const Card& card = m.at(r, c);
      os << (card.facing == Facing::FaceUp ? suit_char(card.suit) : '?');
    }
    os << '\n';
  }
}

class TracePrinter final : public StepObserver {
 public:
  TracePrinter(std::ostream& os, int n) : os_(os), n_(n) {}

  void on_build(const CardMatrix& m) override {
    os_ << "step 1: build " << m.rows() << "x" << m.cols() << " matrix, all cards face-down\n";
    print_matrix(os_, m);
  }
  void on_shuffle(const CardMatrix& m, const ShuffleDecision& d) override {
    ++shuffles_;
    const char* what = d.kind == ShuffleKind::Scramble ? "pile-scramble" : "pile-shifting";
    if (shuffles_ == n_)
      os_ << "step 3: " << what << " shuffle\n";
    else
      os_ << "step 2(a) i=" << shuffles_ + 1 << ": " << what << " shuffle\n";
    print_matrix(os_, m);
  }
  void on_reveal(const CardMatrix& m, const RevealEvent& e) override {
    os_ << "step " << pretty_label(e.label) << ": reveal row " << e.row << ": " << e.pattern
        << '\n';
    print_matrix(os_, m);
  }
  void on_overwrite(const CardMatrix& m, int row, Suit target) override {
    os_ << "step 2(c): swap the " << (target == Suit::Heart ? "Hearts" : "Clubs") << " of row "
        << row << " into row 1\n";
    print_matrix(os_, m);
  }
  void on_flip_down(const CardMatrix& m) override {
    os_ << "step 2(d): turn all face-up cards down\n";
    print_matrix(os_, m);
  }
  void on_realign(const CardMatrix& m, int rotation) override {
    os_ << "step 4: rotate columns by " << rotation << " to bring the revealed Club to column 1\n";
    print_matrix(os_, m);
  }

 private:
  static std::string pretty_label(const std::string& label) {
    if (label.rfind("step2b:", 0) == 0) return "2(b) " + label.substr(7);
    if (label == "step4") return "4";
    if (label == "step5") return "5";
    return label;
  }

  std::ostream& os_;
  int n_;
  int shuffles_ = 0;
};

std::string join_ints(const std::vector<int>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out.push_back(sep);
    out += std::to_string(v[i]);
  }
  return out;
}

int do_run(const std::string& protocol, int k, int n, bool n_given,
           const std::vector<int>& input_values, std::uint64_t seed,
           const std::string& tape_path, const std::string& format) {
  const Protocol p = protocol_from_name(protocol);
  if (n_given && n != static_cast<int>(input_values.size()))
    throw DomainError("--n is " + std::to_string(n) + " but --inputs has " +
                      std::to_string(input_values.size()) + " values");
  const InputVector inputs(input_values, k);

  RandomnessTape tape;
  SeededSource seeded(seed);
  DecisionSource* source = &seeded;
  if (!tape_path.empty()) {
    tape = load_tape_file(tape_path, k);
    source = &tape;
  }

  RunOptions opts;
  TracePrinter printer(std::cout, inputs.n());
  if (format == "text") {
    std::cout << "protocol: " << protocol << ", k=" << k << ", n=" << inputs.n()
              << ", inputs: " << join_ints(input_values, ',') << '\n';
    opts.observer = &printer;
  }
  const ProtocolRun run = run_protocol(p, inputs, *source, opts);
  if (format == "json")
    std::cout << run_to_json(run).dump(2) << '\n';
  else
    std::cout << "output: " << run.output_string() << '\n';
  return 0;
}

int do_verify(const std::string& protocol, int k, int n, std::uint64_t budget,
              const std::string& format) {
  const Protocol p = protocol_from_name(protocol);
  const CorrectnessReport report = verify_correctness(p, k, n, budget);
  if (format == "json") {
    std::cout << correctness_to_json(report).dump(2) << '\n';
  } else {
    std::cout << "verify " << protocol << " k=" << k << " n=" << n << ": " << report.runs
              << " runs, " << report.mismatches << " mismatches\n";
    if (report.first_mismatch) {
      const Mismatch& m = *report.first_mismatch;
      std::cout << "first mismatch: inputs (" << join_ints(m.inputs, ',') << ") gave "
                << output_to_json(p, m.got).dump() << ", oracle says "
                << output_to_json(p, m.expected).dump() << '\n';
    }
  }
  return report.mismatches == 0 ? 0 : 1;
}

int do_audit(const std::string& protocol, int k, int n, std::uint64_t budget, bool sampled,
             std::uint64_t samples, std::uint64_t seed, double threshold,
             bool skip_final_shuffle, const std::string& format) {
  const Protocol p = protocol_from_name(protocol);
  const AuditReport report =
      sampled ? check_security_sampled(p, k, n, samples, seed, skip_final_shuffle, threshold)
              : check_security(p, k, n, budget, skip_final_shuffle);
  if (format == "json") {
    std::cout << report_to_json(report).dump(2) << '\n';
  } else {
    std::cout << "security audit: " << protocol << " k=" << k << " n=" << n << " ("
              << audit_mode_name(report.mode) << " mode)\n"
              << kSecurityDefinition << '\n';
    if (skip_final_shuffle)
      std::cout << "engine variant: final shuffle removed (deliberately broken)\n";
    std::cout << (report.mode == AuditMode::Exact ? "tapes per input: " : "samples per input: ")
              << report.universe << '\n';
    for (const OutputClass& cls : report.classes)
      std::cout << "class output=" << output_to_json(p, cls.output).dump() << ": "
                << cls.members.size() << " inputs, " << cls.distribution.counts.size()
                << " distinct transcripts\n";
    if (report.mode == AuditMode::Sampled)
      std::cout << "statistical verdict, not a proof: max total-variation distance "
                << report.max_tv << ", fail line " << report.effective_threshold << '\n';
    std::cout << "verdict: " << (report.pass ? "pass" : "fail") << '\n';
    if (report.counterexample) {
      const Counterexample& ce = *report.counterexample;
      std::cout << "counterexample: inputs (" << join_ints(ce.input_a, ',') << ") vs ("
                << join_ints(ce.input_b, ',') << ")\n"
                << "  transcript " << ce.transcript.canonical() << " seen " << ce.count_a
                << " vs " << ce.count_b << " times\n";
    }
  }
  return report.pass ? 0 : 1;
}

int do_costs(int k, int n, const std::string& format) {
  const struct {
    const char* name;
    CostScheme scheme;
  } rows[] = {{"equality", CostScheme::Equality},
              {"set-size", CostScheme::SetSize},
              {"set", CostScheme::Set},
              {"baseline-ri", CostScheme::BaselineRI}};
  if (format == "json") {
    json schemes = json::array();
    for (const auto& row : rows) {
      const Costs c = cost_model(row.scheme, k, n);
      schemes.push_back(json{{"scheme", row.name}, {"cards", c.cards}, {"shuffles", c.shuffles}});
    }
    std::cout << json{{"k", k}, {"n", n}, {"schemes", std::move(schemes)}}.dump(2) << '\n';
  } else {
    std::cout << "costs for k=" << k << ", n=" << n << '\n';
    for (const auto& row : rows) {
      const Costs c = cost_model(row.scheme, k, n);
      std::cout << "  " << row.name;
      for (std::size_t pad = std::string(row.name).size(); pad < 12; ++pad) std::cout << ' ';
      std::cout << "cards " << c.cards << "  shuffles " << c.shuffles << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"card-based multi-party computation: protocol runs, exhaustive verification, "
               "security audits, cost tables"};
  app.require_subcommand(1);

  const std::vector<std::string> protocols = {"equality", "set-size", "set"};
  const std::vector<std::string> formats = {"text", "json"};

  std::string protocol;
  int k = 0;
  int n = 0;
  std::vector<int> inputs;
  std::uint64_t seed = 0;
  std::string tape_path;
  std::string format = "text";
  std::uint64_t budget = kDefaultBudget;
  bool sampled = false;
  std::uint64_t samples = 100'000;
  double threshold = 0.01;
  bool skip_final_shuffle = false;

  CLI::App* cmd_run = app.add_subcommand("run", "execute one protocol run with a step trace");
  cmd_run->add_option("--protocol", protocol, "protocol to run")
      ->required()
      ->check(CLI::IsMember(protocols));
  cmd_run->add_option("--k", k, "number of candidate values")->required();
  CLI::Option* n_opt = cmd_run->add_option("--n", n, "number of players (defaults to the input count)");
  cmd_run->add_option("--inputs", inputs, "comma-separated player values a_1..a_n")
      ->required()
      ->delimiter(',');
  CLI::Option* seed_opt = cmd_run->add_option("--seed", seed, "64-bit seed for shuffle decisions");
  cmd_run->add_option("--tape", tape_path, "JSON tape file to replay instead of a seed")
      ->excludes(seed_opt);
  cmd_run->add_option("--format", format, "text or json")->check(CLI::IsMember(formats));

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "run every input against every tape and compare to the oracle");
  cmd_verify->add_option("--protocol", protocol, "protocol to verify")
      ->required()
      ->check(CLI::IsMember(protocols));
  cmd_verify->add_option("--k", k, "number of candidate values")->required();
  cmd_verify->add_option("--n", n, "number of players")->required();
  cmd_verify->add_option("--budget", budget, "max protocol runs for exact enumeration")
      ->envname("CARDMPC_BUDGET");
  cmd_verify->add_option("--format", format, "text or json")->check(CLI::IsMember(formats));

  CLI::App* cmd_audit =
      app.add_subcommand("audit", "check transcript indistinguishability across same-output inputs");
  cmd_audit->add_option("--protocol", protocol, "protocol to audit")
      ->required()
      ->check(CLI::IsMember(protocols));
  cmd_audit->add_option("--k", k, "number of candidate values")->required();
  cmd_audit->add_option("--n", n, "number of players")->required();
  cmd_audit->add_option("--budget", budget, "max protocol runs for exact enumeration")
      ->envname("CARDMPC_BUDGET");
  cmd_audit->add_flag("--sampled", sampled, "estimate distributions by sampling instead of exact enumeration");
  cmd_audit->add_option("--samples", samples, "samples per input in sampled mode (min 10000)");
  cmd_audit->add_option("--seed", seed, "base seed for sampled mode");
  cmd_audit->add_option("--threshold", threshold, "total-variation fail threshold in sampled mode");
  cmd_audit->add_flag("--skip-final-shuffle", skip_final_shuffle,
                      "audit the deliberately broken variant that drops the final shuffle");
  cmd_audit->add_option("--format", format, "text or json")->check(CLI::IsMember(formats));

  CLI::App* cmd_costs = app.add_subcommand("costs", "card and shuffle counts for all schemes");
  cmd_costs->add_option("--k", k, "number of candidate values")->required();
  cmd_costs->add_option("--n", n, "number of players")->required();
  cmd_costs->add_option("--format", format, "text or json")->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_run->parsed())
      return do_run(protocol, k, n, n_opt->count() > 0, inputs, seed, tape_path, format);
    if (cmd_verify->parsed()) return do_verify(protocol, k, n, budget, format);
    if (cmd_audit->parsed())
      return do_audit(protocol, k, n, budget, sampled, samples, seed, threshold,
                      skip_final_shuffle, format);
    if (cmd_costs->parsed()) return do_costs(k, n, format);
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
