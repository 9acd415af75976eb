#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "cardmpc/audit.hpp"
#include "cardmpc/json_io.hpp"
#include "cardmpc/oracles.hpp"
#include "cardmpc/protocol.hpp"

namespace py = pybind11;
using namespace cardmpc;
using namespace pybind11::literals;

namespace {

json py_to_json(const py::handle& obj) {
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<std::int64_t>();
  if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
    json a = json::array();
    for (const auto& item : obj) a.push_back(py_to_json(item));
    return a;
  }
  if (py::isinstance<py::dict>(obj)) {
    json o = json::object();
    for (const auto& item : obj.cast<py::dict>())
      o[item.first.cast<std::string>()] = py_to_json(item.second);
    return o;
  }
  throw DomainError("unsupported Python value where JSON data was expected");
}

py::object json_to_py(const json& j) {
  using value_t = nlohmann::detail::value_t;
  switch (j.type()) {
    case value_t::boolean: return py::bool_(j.get<bool>());
    case value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case value_t::number_float: return py::float_(j.get<double>());
    case value_t::string: return py::str(j.get<std::string>());
    case value_t::array: {
      py::list out;
      for (const json& e : j) out.append(json_to_py(e));
      return out;
    }
    case value_t::object: {
      py::dict out;
      for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
      return out;
    }
    default: return py::none();
  }
}

Protocol parse_protocol(const std::string& name) { return protocol_from_name(name); }

CostScheme scheme_from_name(const std::string& name) {
  if (name == "equality") return CostScheme::Equality;
  if (name == "set-size") return CostScheme::SetSize;
  if (name == "set") return CostScheme::Set;
  if (name == "baseline-ri") return CostScheme::BaselineRI;
  throw DomainError("unknown cost scheme \"" + name +
                    "\", expected equality, set-size, set, or baseline-ri");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Card-based multi-party computation: protocol runs, oracles, exhaustive "
            "verification, and transcript-distribution security audits.";

  // Translators run newest-first, so the generic mapping goes in before the
  // dedicated BudgetExceeded type grabs its subclass.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });
  py::register_exception<BudgetError>(m, "BudgetExceeded", PyExc_RuntimeError);

  m.attr("DEFAULT_BUDGET") = kDefaultBudget;
  m.attr("PROTOCOLS") = py::make_tuple("equality", "set-size", "set");

  m.def(
      "encode", [](int value, int k) { return encode(value, k).pattern(); }, "value"_a, "k"_a,
      "Pattern string of the k-card encoding of value, e.g. encode(1, 4) == 'HCHH'.");
  m.def(
      "decode", [](const std::string& pattern) { return decode(sequence_from_pattern(pattern)); },
      "pattern"_a, "Value committed by a one-Club pattern string.");

  m.def(
      "oracle_equality",
      [](const std::vector<int>& values, int k) { return oracle_equality(InputVector(values, k)); },
      "inputs"_a, "k"_a, "1 when all inputs are equal, else 0.");
  m.def(
      "oracle_set",
      [](const std::vector<int>& values, int k) { return oracle_set(InputVector(values, k)); },
      "inputs"_a, "k"_a, "Distinct input values, ascending.");
  m.def(
      "oracle_set_size",
      [](const std::vector<int>& values, int k) { return oracle_set_size(InputVector(values, k)); },
      "inputs"_a, "k"_a, "Number of distinct input values.");

  m.def(
      "run",
      [](const std::string& protocol, const std::vector<int>& values, int k, std::uint64_t seed,
         const py::object& tape) {
        const Protocol p = parse_protocol(protocol);
        const InputVector inputs(values, k);
        ProtocolRun result = [&] {
          if (!tape.is_none()) {
            RandomnessTape replay(tape_from_json(py_to_json(tape), k));
            return run_protocol(p, inputs, replay);
          }
          SeededSource source(seed);
          return run_protocol(p, inputs, source);
        }();
        return json_to_py(run_to_json(result));
      },
      "protocol"_a, "inputs"_a, "k"_a, "seed"_a = 0,
      "tape"_a = py::none(),
      "One protocol run; returns the run record (inputs, tape, output, transcript). A tape "
      "is a list like [{'scramble': [2, 1]}, {'shift': 1}] and overrides the seed.");

  m.def(
      "transcript_distribution",
      [](const std::string& protocol, const std::vector<int>& values, int k, std::uint64_t budget,
         bool skip_final_shuffle) {
        const TranscriptDistribution d = transcript_distribution(
            parse_protocol(protocol), InputVector(values, k), budget, skip_final_shuffle);
        py::dict counts;
        for (const auto& [t, count] : d.counts) counts[py::str(t.canonical())] = count;
        return py::dict("universe"_a = d.universe, "counts"_a = counts);
      },
      "protocol"_a, "inputs"_a, "k"_a, "budget"_a = kDefaultBudget,
      "skip_final_shuffle"_a = false,
      "Exact transcript tally over every tape in the randomness universe.");

  m.def(
      "check_security",
      [](const std::string& protocol, int k, int n, std::uint64_t budget,
         bool skip_final_shuffle) {
        return json_to_py(
            report_to_json(check_security(parse_protocol(protocol), k, n, budget,
                                          skip_final_shuffle)));
      },
      "protocol"_a, "k"_a, "n"_a, "budget"_a = kDefaultBudget, "skip_final_shuffle"_a = false,
      "Exact transcript-indistinguishability audit over all k^n inputs.");

  m.def(
      "check_security_sampled",
      [](const std::string& protocol, int k, int n, std::uint64_t samples, std::uint64_t seed,
         bool skip_final_shuffle, double threshold) {
        return json_to_py(report_to_json(check_security_sampled(
            parse_protocol(protocol), k, n, samples, seed, skip_final_shuffle, threshold)));
      },
      "protocol"_a, "k"_a, "n"_a, "samples"_a, "seed"_a, "skip_final_shuffle"_a = false,
      "threshold"_a = 0.01, "Statistical audit for universes beyond the exact budget.");

  m.def(
      "verify_correctness",
      [](const std::string& protocol, int k, int n, std::uint64_t budget) {
        return json_to_py(
            correctness_to_json(verify_correctness(parse_protocol(protocol), k, n, budget)));
      },
      "protocol"_a, "k"_a, "n"_a, "budget"_a = kDefaultBudget,
      "Every input against every tape, outputs compared to the oracle.");

  m.def(
      "cost_model",
      [](const std::string& scheme, int k, int n) {
        const Costs c = cost_model(scheme_from_name(scheme), k, n);
        return py::make_tuple(c.cards, c.shuffles);
      },
      "scheme"_a, "k"_a, "n"_a,
      "(cards, shuffles) for equality, set-size, set, or baseline-ri.");
}
