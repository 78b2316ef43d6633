#pragma once

// Command-line surface: check, closure, predict, lattice, oracle.
//
// Exit codes are shared by every command: 0 success or property holds,
// 2 parse/validation error, 3 property check came out negative.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "supervene/closure.hpp"
#include "supervene/kb.hpp"
#include "supervene/oracle.hpp"
#include "supervene/report.hpp"
#include "supervene/selection_task.hpp"
#include "supervene/supervenience.hpp"

namespace supervene::cli {

enum ExitCode : int { exit_ok = 0, exit_invalid = 2, exit_negative = 3 };

namespace detail {

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(Errc::parse_error, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

inline Report::List literal_list(const LiteralSet& literals) {
  Report::List out;
  for (const auto& literal : literals) out.push_back(literal.to_string());
  return out;
}

inline Report::List entity_pair(const DomainModel& domain, const EntityPair& pair) {
  return {domain.entities()[pair.first].id, domain.entities()[pair.second].id};
}

inline std::string description(const LiteralSet& literals, const World& values) {
  std::string out;
  for (std::size_t i = 0; i < literals.size(); ++i) {
    if (i) out += ' ';
    out += literals[i].to_string() + '=' + (values[i] ? 'T' : 'F');
  }
  return out;
}

inline void emit(const Report& report, bool json, std::ostream& out) {
  if (json) out << report.json().dump(2) << '\n';
  else out << report.text();
}

inline int check(const KbDocument& doc, const LiteralSet& base, const LiteralSet& super, bool json,
                 std::ostream& out) {
  const auto& domain = doc.domain;
  Report report;
  report.add("base", literal_list(base));
  report.add("super", literal_list(super));
  report.add("entities", domain.entities().size());

  auto supervenience = supervenience_counterexample(domain, super, base);
  report.add("weak_supervenience", !supervenience);
  if (supervenience) report.add("supervenience_witness", entity_pair(domain, *supervenience));

  auto determined = determination_counterexample(domain, base, super);
  report.add("determination", !determined);
  if (determined) report.add("determination_witness", entity_pair(domain, *determined));

  auto dependence = dependence_counterexample(domain, super, base);
  report.add("ontological_dependence", !dependence);
  if (dependence) report.add("dependence_witness", domain.entities()[*dependence].id);

  const auto rho = build_rho(domain, base, super);
  const auto compression = compression_report(rho);
  report.add("functional", compression.functional);
  report.add("base_codes", compression.base_codes);
  report.add("super_codes", compression.super_codes);
  report.add("raw_gain_bits", compression.raw_gain_bits);
  if (compression.functional) {
    report.add("lossy", compression.lossy);
    report.add("gain_bits", *compression.gain_bits);
    Report::List mapping;
    for (const auto& [from, to] : compression.mapping)
      mapping.push_back(description(rho.base, from) + " -> " + description(rho.super, to));
    report.add("mapping", mapping);
  }
  emit(report, json, out);
  return supervenience ? exit_negative : exit_ok;
}

inline int closure(const KbDocument& doc, const std::string& rule_id, const std::string& mode,
                   bool unconstrained_value, std::ostream& out) {
  const auto& rule = doc.domain.conditional(rule_id);
  auto result = mode == "antecedent" ? close_antecedent(doc.domain, rule, unconstrained_value)
                                     : close_consequent(doc.domain, rule, unconstrained_value);
  KbDocument extended{result.extended_domain, doc.cards, doc.tasks};
  out << "# " << mode << " closure of rule " << rule.id << ": {"
      << supervene::detail::join(result.supervenient, ", ") << "} supervenes {"
      << supervene::detail::join(result.closed_set, ", ") << "}\n";
  out << render_kb(extended);
  return exit_ok;
}

inline Report prediction_report(const SelectionTask& task) {
  const auto comparison = compare(task);
  Report report;
  report.add("task", task.id);
  if (task.label) report.add("label", *task.label);
  report.add("rule", task.rule.id + ": " + task.rule.to_string());
  report.add("ca1", task.ca1_applies);
  report.add("ca2", task.ca2_applies);
  report.add("reading", std::string(to_string(comparison.prediction.reading)));
  report.add("predicted", comparison.prediction.selected);
  report.add("normative", comparison.normative);
  report.add("agreement", comparison.agreement);
  report.add("hits", comparison.hits);
  report.add("omissions", comparison.omissions);
  report.add("commissions", comparison.commissions);
  for (std::size_t i = 0; i < task.cards.size(); ++i) {
    const auto& card = task.cards[i];
    report.add("card." + card.id, std::string(to_string(classify(task.rule, card))) + " (" +
                                      card.visible.to_string() + ") " +
                                      comparison.prediction.rationale[i].second);
  }
  return report;
}

inline int predict(const KbDocument& doc, const std::string& task_id, bool json, std::ostream& out) {
  if (!task_id.empty()) {
    emit(prediction_report(doc.task(task_id)), json, out);
    return exit_ok;
  }
  if (json) {
    auto all = nlohmann::ordered_json::array();
    for (const auto& task : doc.tasks) all.push_back(prediction_report(task).json());
    out << all.dump(2) << '\n';
    return exit_ok;
  }
  for (std::size_t i = 0; i < doc.tasks.size(); ++i) {
    if (i) out << '\n';
    out << prediction_report(doc.tasks[i]).text();
  }
  return exit_ok;
}

inline void render_dot(const Vocabulary& vocabulary, const Lattice& lattice, std::ostream& out) {
  auto label = [&](std::size_t node) { return '"' + literal_string(vocabulary, lattice.nodes[node]) + '"'; };
  out << "graph lattice {\n";
  out << "  node [shape=plaintext];\n";
  for (std::size_t i = 0; i < lattice.nodes.size(); ++i) out << "  " << label(i) << ";\n";
  for (const auto& [from, to] : lattice.edges) out << "  " << label(from) << " -- " << label(to) << ";\n";
  out << "}\n";
}

inline void render_truth_table(const Vocabulary& vocabulary, const Lattice& lattice,
                               const std::optional<Formula>& constraint, std::ostream& out) {
  std::vector<std::size_t> widths;
  std::string header;
  for (std::size_t i = 0; i < vocabulary.size(); ++i) {
    widths.push_back(vocabulary.name(i).size());
    if (i) header += ' ';
    header += vocabulary.name(i);
  }
  if (constraint) header += " | " + constraint->to_string();
  out << header << '\n';
  for (const auto& world : lattice.nodes) {
    std::string row;
    for (std::size_t i = 0; i < world.size(); ++i) {
      if (i) row += ' ';
      row += world[i] ? 'T' : 'F';
      if (i + 1 < world.size() || constraint) row.append(widths[i] - 1, ' ');
    }
    if (constraint) row += " | T";
    out << row << '\n';
  }
}

inline int lattice(const KbDocument& doc, const std::string& rule_id, const std::string& formula,
                   const std::string& format, std::ostream& out) {
  if (!rule_id.empty() && !formula.empty())
    throw Error(Errc::parse_error, "--constraint and --formula are exclusive");
  std::optional<Formula> constraint;
  if (!rule_id.empty()) constraint = Formula::from(doc.domain.conditional(rule_id));
  if (!formula.empty()) constraint = parse_formula(formula);
  const auto& vocabulary = doc.domain.vocabulary();
  const auto lattice = build_lattice(vocabulary, constraint.value_or(Formula::tautology()));
  if (format == "ascii") render_truth_table(vocabulary, lattice, constraint, out);
  else render_dot(vocabulary, lattice, out);
  return exit_ok;
}

inline int oracle(const OracleOptions& options, bool json, std::ostream& out) {
  const auto summary = run_oracle(options);
  Report report;
  report.add("max_props", options.max_props);
  report.add("max_entities", options.max_entities);
  report.add("mutation", std::string(options.invert_differs ? "inverted-differs" : "none"));
  report.add("domains", static_cast<long long>(summary.domains));
  for (const auto& check : summary.checks) {
    report.add(check.name + ".cases", static_cast<long long>(check.cases));
    report.add(check.name + ".failures", static_cast<long long>(check.failures));
  }
  report.add("passed", summary.passed());
  emit(report, json, out);
  return summary.passed() ? exit_ok : exit_negative;
}

}  // namespace detail

/// Runs one command line (without the program name).
inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supervenience, closure and selection-task analysis over finite propositional domains",
               "supervene"};
  app.require_subcommand(1);

  std::string file, base, super, rule_id, mode = "antecedent", free_value = "F", task_id, formula,
                                     format = "dot";
  bool json = false;
  OracleOptions oracle_options;

  auto* check = app.add_subcommand("check", "supervenience, determination, dependence and compression");
  check->add_option("file", file, "KB file, '-' for standard input")->required();
  check->add_option("--base", base, "base set A, comma separated literals")->required();
  check->add_option("--super", super, "supervenient set B, comma separated literals")->required();
  check->add_flag("--json", json, "structured output");

  auto* closure = app.add_subcommand("closure", "add the star property closing a rule");
  closure->add_option("file", file, "KB file, '-' for standard input")->required();
  closure->add_option("--rule", rule_id, "rule id")->required();
  closure->add_option("--mode", mode, "antecedent or consequent")
      ->check(CLI::IsMember({"antecedent", "consequent"}));
  closure->add_option("--free-value", free_value, "value on the unconstrained row")
      ->check(CLI::IsMember({"F", "T"}));

  auto* predict = app.add_subcommand("predict", "predicted and normative selection-task answers");
  predict->add_option("file", file, "KB file, '-' for standard input")->required();
  predict->add_option("--task", task_id, "task id (default: every task)");
  predict->add_flag("--json", json, "structured output");

  auto* lattice = app.add_subcommand("lattice", "render the admissible configurations");
  lattice->add_option("file", file, "KB file, '-' for standard input")->required();
  lattice->add_option("--constraint", rule_id, "prune by this rule");
  lattice->add_option("--formula", formula, "prune by an expression: p, p -> q, p <-> q, p & q, p | q");
  lattice->add_option("--format", format, "dot or ascii")->check(CLI::IsMember({"dot", "ascii"}));

  auto* oracle = app.add_subcommand("oracle", "exhaustive verification over small domains");
  oracle->add_option("--max-props", oracle_options.max_props, "largest vocabulary size");
  oracle->add_option("--max-entities", oracle_options.max_entities, "largest domain size");
  oracle->add_flag("--mutate", oracle_options.invert_differs, "enable the inverted-differs mutation");
  oracle->add_flag("--json", json, "structured output");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid;
  }

  try {
    if (oracle->parsed()) return detail::oracle(oracle_options, json, out);
    const auto doc = parse_kb(detail::read_input(file, in));
    if (check->parsed())
      return detail::check(doc, parse_literal_list(base), parse_literal_list(super), json, out);
    if (closure->parsed()) return detail::closure(doc, rule_id, mode, free_value == "T", out);
    if (predict->parsed()) return detail::predict(doc, task_id, json, out);
    if (lattice->parsed()) return detail::lattice(doc, rule_id, formula, format, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::rule_violated ? exit_negative : exit_invalid;
  }
  return exit_invalid;
}

}  // namespace supervene::cli
