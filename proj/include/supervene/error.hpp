#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace supervene {

enum class Errc {
  vocabulary_too_large,
  unknown_property,
  empty_subset,
  invalid_name,
  duplicate_id,
  world_mismatch,
  invalid_conditional,
  rule_violated,
  negative_literal_unsupported,
  name_collision,
  missing_closure_declaration,
  ca1_not_satisfied,
  sufficiency_violated,
  ca2_not_satisfied,
  necessity_violated,
  malformed_card,
  parse_error,
  unresolved_reference,
  unknown_rule,
  unknown_task,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::vocabulary_too_large: return "vocabulary-too-large";
    case Errc::unknown_property: return "unknown-property";
    case Errc::empty_subset: return "empty-subset";
    case Errc::invalid_name: return "invalid-name";
    case Errc::duplicate_id: return "duplicate-id";
    case Errc::world_mismatch: return "world-mismatch";
    case Errc::invalid_conditional: return "invalid-conditional";
    case Errc::rule_violated: return "rule-violated";
    case Errc::negative_literal_unsupported: return "negative-literal-unsupported";
    case Errc::name_collision: return "name-collision";
    case Errc::missing_closure_declaration: return "missing-closure-declaration";
    case Errc::ca1_not_satisfied: return "ca1-not-satisfied";
    case Errc::sufficiency_violated: return "sufficiency-violated";
    case Errc::ca2_not_satisfied: return "ca2-not-satisfied";
    case Errc::necessity_violated: return "necessity-violated";
    case Errc::malformed_card: return "malformed-card";
    case Errc::parse_error: return "parse-error";
    case Errc::unresolved_reference: return "unresolved-reference";
    case Errc::unknown_rule: return "unknown-rule";
    case Errc::unknown_task: return "unknown-task";
  }
  return "unknown-error";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// A KB diagnostic addressed by 1-based line and column (columns count bytes).
class ParseError : public Error {
 public:
  ParseError(Errc code, std::size_t line, std::size_t column,
             const std::string& message)
      : Error(code, "line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace supervene
