// Copyright 2026 The QRAC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qrac command line: verify, encode, circuit, simulate, analyze, export.
//
// Exit status is 0 on success, 1 when a check or computation fails, 2 on
// usage errors. Failures print a single stderr line
//   error: <usage|check-failed|runtime>: <reason>

#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrac/qrac.hpp"

namespace qrac::cli {

enum class Command { Verify, Encode, Circuit, Simulate, Analyze, Export };

struct CliConfig {
  Command command = Command::Verify;
  std::optional<int> n;
  std::optional<std::string> n_range;
  std::optional<int> k;
  std::optional<std::string> y;
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
  double noise = 0.0;
  std::optional<std::string> output_path;
  std::optional<std::string> format;
  int dense_limit = kDefaultDenseLimit;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// "a..b" inclusive.
inline std::vector<int> parse_n_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("--n-range must look like a..b");
  int lo = 0;
  int hi = 0;
  try {
    std::size_t used = 0;
    lo = std::stoi(text.substr(0, dots), &used);
    if (used != dots) throw UsageError("bad --n-range start");
    const std::string tail = text.substr(dots + 2);
    hi = std::stoi(tail, &used);
    if (used != tail.size()) throw UsageError("bad --n-range end");
  } catch (const std::logic_error&) {
    throw UsageError("--n-range must look like a..b with integers");
  }
  if (lo < 2 || hi < lo) throw UsageError("--n-range needs 2 <= a <= b");
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

namespace detail {

inline std::string resolve_format(const CliConfig& c, const std::vector<std::string>& allowed) {
  const std::string f = c.format.value_or(allowed.front());
  for (const auto& a : allowed)
    if (a == f) return f;
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : "|") + a;
  throw UsageError("--format " + f + " not valid here (expected " + list + ")");
}

inline void validate(const CliConfig& c) {
  if (c.dense_limit < 2 || c.dense_limit > kDefaultDenseLimit) {
    throw UsageError("--dense-limit must lie in [2, " + std::to_string(kDefaultDenseLimit) + "]");
  }
  if (c.command == Command::Analyze) {
    if (c.n.has_value() == c.n_range.has_value()) throw UsageError("analyze requires exactly one of --n or --n-range");
  } else if (!c.n) {
    throw UsageError("--n is required");
  }
  if (c.n && *c.n < 2) throw UsageError("--n must be at least 2");
  if (c.n && *c.n > kMaxSites) throw UsageError("--n must be at most 64");
  if (c.k && c.n && (*c.k < 1 || *c.k > *c.n)) throw UsageError("--k must lie in [1, n]");
  if (c.y) {
    for (char ch : *c.y)
      if (ch != '0' && ch != '1') throw UsageError("--y must be a bitstring");
    if (c.n && static_cast<int>(c.y->size()) != *c.n) throw UsageError("--y must have exactly n bits");
  }
  if (c.command == Command::Circuit && c.k.has_value() == c.y.has_value()) {
    throw UsageError("circuit requires exactly one of --k or --y");
  }
  if (c.command == Command::Simulate && !c.shots) throw UsageError("simulate requires --shots");
  if (c.shots && *c.shots < 1) throw UsageError("--shots must be at least 1");
  if (!(c.noise >= 0.0 && c.noise < 1.0)) throw UsageError("--noise must lie in [0, 1)");
}

inline void emit(const CliConfig& c, const std::string& text, std::ostream& out) {
  if (c.output_path) {
    write_file_atomic(*c.output_path, text);
  } else {
    out << text;
  }
}

inline int run_verify(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const auto fmt = resolve_format(c, {"text", "json"});
  const auto results = run_checks(*c.n, c.dense_limit);
  std::vector<std::string> failed;
  for (const auto& r : results)
    if (!r.ok()) failed.push_back(r.name);

  std::string text;
  if (fmt == "json") {
    ordered_json checks = ordered_json::array();
    for (const auto& r : results) {
      checks.push_back(
          {{"name", r.name}, {"status", status_text(r.status)}, {"worst", r.worst}, {"detail", r.detail}});
    }
    text = dump_json({{"n", *c.n}, {"passed", failed.empty()}, {"checks", checks}}) + "\n";
  } else {
    for (const auto& r : results) {
      text += std::string(status_text(r.status)) + " " + r.name + " worst=" + format_double(r.worst);
      if (!r.detail.empty()) text += " (" + r.detail + ")";
      text += "\n";
    }
    text += "n=" + std::to_string(*c.n) + " checks=" + std::to_string(results.size()) +
            " failed=" + std::to_string(failed.size()) + "\n";
  }
  emit(c, text, out);
  if (!failed.empty()) {
    std::string names;
    for (const auto& f : failed) names += (names.empty() ? "" : ",") + f;
    err << "error: check-failed: " << names << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

inline int run_encode(const CliConfig& c, std::ostream& out) {
  resolve_format(c, {"json"});
  const QracInstance inst(*c.n);
  inst.require_dense(c.dense_limit);
  std::optional<Bits> only;
  if (c.y) only = Bits::from_string(*c.y);
  emit(c, dump_json(codebook_json(inst, only)) + "\n", out);
  return kExitOk;
}

inline int run_circuit(const CliConfig& c, std::ostream& out) {
  const auto fmt = resolve_format(c, {"native", "qasm"});
  const QracInstance inst(*c.n);
  const Circuit circ = c.k ? decoding_circuit(inst, *c.k) : encoding_circuit(Bits::from_string(*c.y), inst);
  emit(c, fmt == "qasm" ? to_qasm(circ) : to_native(circ), out);
  return kExitOk;
}

inline int run_simulate(const CliConfig& c, std::ostream& out) {
  const auto fmt = resolve_format(c, {"text", "json"});
  const QracInstance inst(*c.n);
  const auto r = simulate_shots(inst, *c.shots, c.seed, c.noise, c.dense_limit);
  const double exact = closed_forms(inst).p_q;
  std::string text;
  if (fmt == "json") {
    text = dump_json({{"n", *c.n},
                      {"shots", r.count},
                      {"seed", r.seed},
                      {"noise", r.noise},
                      {"successes", r.successes},
                      {"empirical_p", r.empirical_p},
                      {"std_error", r.std_error},
                      {"p_quantum_closed", exact}}) +
           "\n";
  } else {
    text = "n=" + std::to_string(*c.n) + " shots=" + std::to_string(r.count) + " seed=" + std::to_string(r.seed) +
           " noise=" + format_double(r.noise) + " successes=" + std::to_string(r.successes) +
           " empirical_p=" + format_double(r.empirical_p) + " std_error=" + format_double(r.std_error) +
           " p_quantum_closed=" + format_double(exact) + "\n";
  }
  emit(c, text, out);
  return kExitOk;
}

inline int run_analyze(const CliConfig& c, std::ostream& out) {
  const auto fmt = resolve_format(c, {"json", "csv"});
  const std::vector<int> ns = c.n_range ? parse_n_range(*c.n_range) : std::vector<int>{*c.n};
  for (int n : ns)
    if (n > c.dense_limit) throw UsageError("n = " + std::to_string(n) + " exceeds --dense-limit");
  std::optional<ShotOptions> shots;
  if (c.shots) shots = ShotOptions{*c.shots, c.seed, c.noise};
  const auto reports = make_reports(ns, c.dense_limit, shots);
  emit(c, fmt == "csv" ? reports_csv(reports) : dump_json(reports_json(reports)) + "\n", out);
  return kExitOk;
}

inline int run_export(const CliConfig& c, std::ostream& out) {
  resolve_format(c, {"json"});
  emit(c, dump_json(w_decompositions_json(QracInstance(*c.n))) + "\n", out);
  return kExitOk;
}

}  // namespace detail

inline int run(const CliConfig& c, std::ostream& out, std::ostream& err) {
  try {
    detail::validate(c);
    switch (c.command) {
      case Command::Verify:
        return detail::run_verify(c, out, err);
      case Command::Encode:
        return detail::run_encode(c, out);
      case Command::Circuit:
        return detail::run_circuit(c, out);
      case Command::Simulate:
        return detail::run_simulate(c, out);
      case Command::Analyze:
        return detail::run_analyze(c, out);
      case Command::Export:
        return detail::run_export(c, out);
    }
  } catch (const UsageError& e) {
    err << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: runtime: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

/// Parses argv and runs. Help goes to `out` with status 0.
inline int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construction, verification and export tools for (n, n-1) quantum random access codes", "qrac"};
  app.require_subcommand(1);
  CliConfig cfg;

  struct Sub {
    Command cmd;
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {Command::Verify, "verify", "Run every named check for one n"},
      {Command::Encode, "encode", "Print the codebook (or one state with --y) as JSON"},
      {Command::Circuit, "circuit", "Write the decoding (--k) or encoding (--y) circuit"},
      {Command::Simulate, "simulate", "Sample the average success probability"},
      {Command::Analyze, "analyze", "Write the figures-of-merit report"},
      {Command::Export, "export", "Print the Pauli decompositions of all decoding observables as JSON"},
  };
  std::vector<std::pair<CLI::App*, Command>> registered;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--n", cfg.n, "Number of classical bits (n - 1 qubits)");
    if (s.cmd == Command::Analyze) sub->add_option("--n-range", cfg.n_range, "Inclusive range a..b");
    if (s.cmd == Command::Circuit) sub->add_option("--k", cfg.k, "Bit index for the decoding circuit");
    if (s.cmd == Command::Circuit || s.cmd == Command::Encode) {
      sub->add_option("--y", cfg.y, "Input bitstring, bit 1 first");
    }
    if (s.cmd == Command::Simulate || s.cmd == Command::Analyze) {
      sub->add_option("--shots", cfg.shots, "Number of sampled rounds");
      sub->add_option("--seed", cfg.seed, "Generator seed");
      sub->add_option("--noise", cfg.noise, "Depolarizing rate in [0, 1)");
    }
    sub->add_option("--output", cfg.output_path, "Write here instead of stdout");
    sub->add_option("--format", cfg.format, "native|qasm|json|csv|text, depending on the command");
    sub->add_option("--dense-limit", cfg.dense_limit, "Largest n for dense matrices");
    registered.emplace_back(sub, s.cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::string what = e.what();
    for (auto& ch : what)
      if (ch == '\n') ch = ' ';
    err << "error: usage: " << what << "\n";
    return kExitUsage;
  }
  for (const auto& [sub, cmd] : registered)
    if (sub->parsed()) cfg.command = cmd;
  return run(cfg, out, err);
}

}  // namespace qrac::cli
