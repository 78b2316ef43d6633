#pragma once

// Line-oriented knowledge-base format.
//
//   props <name> <name> ...
//   entity <id>: <name>=T|F ...          (total over the declared props)
//   rule <id>: [!]<name> -> [!]<name>
//   ca1 <rule-id>: [!]<name>, [!]<name>, ...
//   ca2 <rule-id>: [!]<name>, ...
//   card <id>: [!]<name>
//   task <id>: rule=<rule-id> cards=<id>,<id>,... ca1=yes|no ca2=yes|no [label="..."]
//
// '#' starts a comment. Declarations must precede their uses. Negation may also
// be written with a leading U+00AC, a trailing combining macron/overline, or a
// precomposed macron vowel; output always uses '!'.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supervene/property_model.hpp"
#include "supervene/selection_task.hpp"

namespace supervene {

struct KbDocument {
  DomainModel domain;
  std::vector<Card> cards;
  std::vector<SelectionTask> tasks;

  const SelectionTask& task(std::string_view id) const {
    for (const auto& task : tasks)
      if (task.id == id) return task;
    throw Error(Errc::unknown_task, "unknown task '" + std::string(id) + "'");
  }

  bool empty() const {
    return domain.vocabulary().empty() && domain.entities().empty() &&
           domain.conditionals().empty() && cards.empty() && tasks.empty();
  }

  friend bool operator==(const KbDocument&, const KbDocument&) = default;
};

namespace detail {

inline bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; }

/// Cursor over one line; columns are 1-based byte offsets.
class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return pos_ + 1; }
  bool done() { skip_space(); return pos_ >= text_.size(); }

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool consume(std::string_view token) {
    skip_space();
    if (text_.substr(pos_).starts_with(token)) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!consume(token)) fail(Errc::parse_error, "expected '" + std::string(token) + "'");
  }

  /// Next run of characters not in `stops` and not whitespace.
  std::string_view word(std::string_view stops = "") {
    skip_space();
    auto start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) &&
           stops.find(text_[pos_]) == std::string_view::npos)
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::string_view rest() {
    skip_space();
    auto out = text_.substr(pos_);
    pos_ = text_.size();
    return out;
  }

  std::string_view until(char stop) {
    auto start = pos_;
    while (pos_ < text_.size() && text_[pos_] != stop) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void set_mark() { skip_space(); mark_ = pos_; }
  std::size_t mark_column() const { return mark_ + 1; }

  [[noreturn]] void fail(Errc code, const std::string& message) const {
    throw ParseError(code, line_, column(), message);
  }
  [[noreturn]] void fail_at_mark(Errc code, const std::string& message) const {
    throw ParseError(code, line_, mark_column(), message);
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
  std::size_t mark_ = 0;
};

/// Parses "[!]name" with the accepted unicode negation spellings.
inline std::optional<Literal> parse_literal_token(std::string_view token) {
  bool negative = false;
  auto strip_prefix = [&](std::string_view prefix) {
    if (!token.starts_with(prefix)) return false;
    token.remove_prefix(prefix.size());
    return true;
  };
  while (strip_prefix("!") || strip_prefix("\xC2\xAC")) negative = !negative;

  static const std::pair<std::string_view, char> precomposed[] = {
      {"\xC4\x81", 'a'}, {"\xC4\x93", 'e'}, {"\xC4\xAB", 'i'}, {"\xC5\x8D", 'o'},
      {"\xC5\xAB", 'u'}, {"\xC4\x80", 'A'}, {"\xC4\x92", 'E'}, {"\xC4\xAA", 'I'},
      {"\xC5\x8C", 'O'}, {"\xC5\xAA", 'U'}};
  for (const auto& [spelling, letter] : precomposed)
    if (token == spelling) return Literal{std::string(1, letter), negative ? Polarity::positive : Polarity::negative};

  while (token.ends_with("\xCC\x84") || token.ends_with("\xCC\x85")) {
    token.remove_suffix(2);
    negative = !negative;
  }
  if (!is_valid_identifier(token)) return std::nullopt;
  return Literal{std::string(token), negative ? Polarity::negative : Polarity::positive};
}

inline Literal literal_at(LineCursor& cursor, std::string_view stops = ",") {
  cursor.set_mark();
  auto token = cursor.word(stops);
  if (token.empty()) cursor.fail(Errc::parse_error, "expected a literal");
  auto literal = parse_literal_token(token);
  if (!literal) cursor.fail_at_mark(Errc::parse_error, "invalid literal '" + std::string(token) + "'");
  return *literal;
}

inline std::string identifier_at(LineCursor& cursor, std::string_view what,
                                 std::string_view stops = ":") {
  cursor.set_mark();
  auto token = cursor.word(stops);
  if (!is_valid_identifier(token))
    cursor.fail_at_mark(Errc::parse_error,
                        "expected " + std::string(what) + " identifier, found '" +
                            std::string(token) + "'");
  return std::string(token);
}

class KbParser {
 public:
  KbDocument parse(std::string_view text) {
    std::size_t line_number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_number;
      parse_line(strip_comment(text.substr(start, end - start)), line_number);
      start = end + 1;
    }
    return finish();
  }

 private:
  struct PendingTask {
    SelectionTask task;
    std::string rule_id;
  };

  static std::string_view strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      else if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
  }

  void parse_line(std::string_view text, std::size_t line_number) {
    LineCursor cursor(text, line_number);
    if (cursor.done()) return;
    cursor.set_mark();
    auto keyword = cursor.word(":");
    if (keyword == "props") return parse_props(cursor);
    seen_other_ = true;
    if (keyword == "entity") return parse_entity(cursor);
    if (keyword == "rule") return parse_rule(cursor);
    if (keyword == "ca1") return parse_closure(cursor, true);
    if (keyword == "ca2") return parse_closure(cursor, false);
    if (keyword == "card") return parse_card(cursor);
    if (keyword == "task") return parse_task(cursor);
    cursor.fail_at_mark(Errc::parse_error, "unknown declaration '" + std::string(keyword) + "'");
  }

  std::size_t property_index(LineCursor& cursor, const Literal& literal) {
    auto index = vocabulary_.find(literal.property);
    if (!index)
      cursor.fail_at_mark(Errc::unresolved_reference,
                          "undeclared property '" + literal.property + "'");
    return *index;
  }

  void parse_props(LineCursor& cursor) {
    if (props_seen_) cursor.fail_at_mark(Errc::duplicate_id, "props declared twice");
    if (seen_other_) cursor.fail_at_mark(Errc::parse_error, "props must precede other declarations");
    props_seen_ = true;
    std::vector<std::string> names;
    std::set<std::string> seen;
    while (!cursor.done()) {
      auto name = identifier_at(cursor, "property", "");
      if (!seen.insert(name).second)
        cursor.fail_at_mark(Errc::duplicate_id, "duplicate property '" + name + "'");
      names.push_back(std::move(name));
    }
    vocabulary_ = Vocabulary(std::move(names));
  }

  void parse_entity(LineCursor& cursor) {
    auto id = identifier_at(cursor, "entity");
    if (!entity_ids_.insert(id).second)
      cursor.fail_at_mark(Errc::duplicate_id, "duplicate entity '" + id + "'");
    cursor.expect(":");
    std::vector<std::optional<bool>> slots(vocabulary_.size());
    while (!cursor.done()) {
      cursor.set_mark();
      auto name = cursor.word("=");
      if (!is_valid_identifier(name))
        cursor.fail_at_mark(Errc::parse_error, "expected <name>=T|F");
      auto index = vocabulary_.find(name);
      if (!index)
        cursor.fail_at_mark(Errc::unresolved_reference,
                            "undeclared property '" + std::string(name) + "'");
      if (slots[*index])
        cursor.fail_at_mark(Errc::parse_error, "property '" + std::string(name) + "' assigned twice");
      cursor.expect("=");
      auto value = cursor.word();
      if (value == "T") slots[*index] = true;
      else if (value == "F") slots[*index] = false;
      else cursor.fail(Errc::parse_error, "expected T or F for '" + std::string(name) + "'");
    }
    std::vector<bool> bits;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (!slots[i])
        cursor.fail(Errc::parse_error,
                    "entity '" + id + "' does not assign '" + vocabulary_.name(i) + "'");
      bits.push_back(*slots[i]);
    }
    entities_.push_back({std::move(id), World(std::move(bits))});
  }

  void parse_rule(LineCursor& cursor) {
    auto id = identifier_at(cursor, "rule");
    if (rule_index_.count(id)) cursor.fail_at_mark(Errc::duplicate_id, "duplicate rule '" + id + "'");
    cursor.expect(":");
    Conditional rule;
    rule.id = id;
    rule.antecedent = literal_at(cursor, "-");
    property_index(cursor, rule.antecedent);
    cursor.expect("->");
    rule.consequent = literal_at(cursor, "");
    property_index(cursor, rule.consequent);
    if (!cursor.done()) cursor.fail(Errc::parse_error, "unexpected text after rule");
    if (rule.antecedent == rule.consequent)
      cursor.fail(Errc::invalid_conditional, "rule '" + id + "': antecedent equals consequent");
    rule_index_.emplace(id, rules_.size());
    rules_.push_back(std::move(rule));
  }

  void parse_closure(LineCursor& cursor, bool first) {
    const char* which = first ? "ca1" : "ca2";
    auto id = identifier_at(cursor, "rule");
    auto it = rule_index_.find(id);
    if (it == rule_index_.end())
      cursor.fail_at_mark(Errc::unresolved_reference, "unknown rule '" + id + "'");
    auto& rule = rules_[it->second];
    auto& slot = first ? rule.ca1_set : rule.ca2_set;
    if (slot)
      cursor.fail_at_mark(Errc::duplicate_id, std::string(which) + " declared twice for '" + id + "'");
    cursor.expect(":");
    LiteralSet literals;
    do {
      auto literal = literal_at(cursor);
      property_index(cursor, literal);
      if (std::find(literals.begin(), literals.end(), literal) != literals.end())
        cursor.fail_at_mark(Errc::duplicate_id, "literal '" + literal.to_string() + "' listed twice");
      literals.push_back(std::move(literal));
    } while (cursor.consume(","));
    if (!cursor.done()) cursor.fail(Errc::parse_error, "expected ',' between literals");
    const auto& required = first ? rule.antecedent : rule.consequent;
    if (std::find(literals.begin(), literals.end(), required) == literals.end())
      cursor.fail(Errc::invalid_conditional, std::string(which) + " set of '" + id +
                                                 "' must contain " + required.to_string());
    slot = std::move(literals);
  }

  void parse_card(LineCursor& cursor) {
    auto id = identifier_at(cursor, "card");
    if (card_index_.count(id)) cursor.fail_at_mark(Errc::duplicate_id, "duplicate card '" + id + "'");
    cursor.expect(":");
    auto literal = literal_at(cursor, "");
    property_index(cursor, literal);
    if (!cursor.done()) cursor.fail(Errc::parse_error, "a card shows exactly one literal");
    card_index_.emplace(id, cards_.size());
    cards_.push_back({std::move(id), std::move(literal)});
  }

  static bool flag_value(LineCursor& cursor, std::string_view value) {
    if (value == "yes") return true;
    if (value == "no") return false;
    cursor.fail_at_mark(Errc::parse_error, "expected yes or no");
  }

  void parse_task(LineCursor& cursor) {
    PendingTask pending;
    auto& task = pending.task;
    task.id = identifier_at(cursor, "task");
    if (!task_ids_.insert(task.id).second)
      cursor.fail_at_mark(Errc::duplicate_id, "duplicate task '" + task.id + "'");
    cursor.expect(":");
    std::set<std::string, std::less<>> keys;
    while (!cursor.done()) {
      cursor.set_mark();
      auto key = std::string(cursor.word("="));
      if (!keys.insert(key).second) cursor.fail_at_mark(Errc::parse_error, "repeated key '" + key + "'");
      cursor.expect("=");
      if (key == "label") {
        cursor.expect("\"");
        task.label = std::string(cursor.until('"'));
        cursor.expect("\"");
        continue;
      }
      cursor.set_mark();
      if (key == "rule") {
        pending.rule_id = identifier_at(cursor, "rule", "");
        if (!rule_index_.count(pending.rule_id))
          cursor.fail_at_mark(Errc::unresolved_reference, "unknown rule '" + pending.rule_id + "'");
      } else if (key == "cards") {
        do {
          auto card_id = identifier_at(cursor, "card", ",");
          auto it = card_index_.find(card_id);
          if (it == card_index_.end())
            cursor.fail_at_mark(Errc::unresolved_reference, "unknown card '" + card_id + "'");
          for (const auto& card : task.cards)
            if (card.id == card_id)
              cursor.fail_at_mark(Errc::duplicate_id, "card '" + card_id + "' listed twice");
          task.cards.push_back(cards_[it->second]);
        } while (cursor.consume(","));
      } else if (key == "ca1") {
        task.ca1_applies = flag_value(cursor, cursor.word());
      } else if (key == "ca2") {
        task.ca2_applies = flag_value(cursor, cursor.word());
      } else {
        cursor.fail_at_mark(Errc::parse_error, "unknown task key '" + key + "'");
      }
    }
    for (const char* required : {"rule", "cards", "ca1", "ca2"})
      if (!keys.count(required))
        cursor.fail(Errc::parse_error, "task '" + task.id + "' lacks " + required + "=");
    Conditional rule = rules_[rule_index_.at(pending.rule_id)];
    for (const auto& card : task.cards) {
      try {
        classify(rule, card);
      } catch (const Error& error) {
        cursor.fail(Errc::malformed_card, error.what());
      }
    }
    pending_tasks_.push_back(std::move(pending));
  }

  KbDocument finish() {
    KbDocument doc;
    doc.domain = DomainModel(vocabulary_, std::move(entities_), rules_);
    doc.cards = std::move(cards_);
    for (auto& pending : pending_tasks_) {
      pending.task.rule = rules_[rule_index_.at(pending.rule_id)];
      doc.tasks.push_back(std::move(pending.task));
    }
    return doc;
  }

  Vocabulary vocabulary_;
  bool props_seen_ = false;
  bool seen_other_ = false;
  std::vector<Entity> entities_;
  std::set<std::string> entity_ids_;
  std::vector<Conditional> rules_;
  std::map<std::string, std::size_t> rule_index_;
  std::vector<Card> cards_;
  std::map<std::string, std::size_t> card_index_;
  std::set<std::string> task_ids_;
  std::vector<PendingTask> pending_tasks_;
};

inline std::string join(const std::vector<std::string>& items, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += separator;
    out += items[i];
  }
  return out;
}

inline std::string join(const LiteralSet& literals, std::string_view separator) {
  std::vector<std::string> items;
  for (const auto& literal : literals) items.push_back(literal.to_string());
  return join(items, separator);
}

}  // namespace detail

inline KbDocument parse_kb(std::string_view text) { return detail::KbParser{}.parse(text); }

/// Canonical text form; parse_kb(render_kb(doc)) == doc.
inline std::string render_kb(const KbDocument& doc) {
  if (doc.empty()) return {};
  std::ostringstream out;
  const auto& domain = doc.domain;
  const auto& vocabulary = domain.vocabulary();
  out << "props";
  for (const auto& name : vocabulary.names()) out << ' ' << name;
  out << '\n';

  if (!domain.entities().empty()) out << '\n';
  for (const auto& entity : domain.entities()) {
    out << "entity " << entity.id << ':';
    for (std::size_t i = 0; i < vocabulary.size(); ++i)
      out << ' ' << vocabulary.name(i) << '=' << (entity.world[i] ? 'T' : 'F');
    out << '\n';
  }

  if (!domain.conditionals().empty()) out << '\n';
  for (const auto& rule : domain.conditionals()) {
    out << "rule " << rule.id << ": " << rule.to_string() << '\n';
    if (rule.ca1_set) out << "ca1 " << rule.id << ": " << detail::join(*rule.ca1_set, ", ") << '\n';
    if (rule.ca2_set) out << "ca2 " << rule.id << ": " << detail::join(*rule.ca2_set, ", ") << '\n';
  }

  if (!doc.cards.empty()) out << '\n';
  for (const auto& card : doc.cards) out << "card " << card.id << ": " << card.visible.to_string() << '\n';

  if (!doc.tasks.empty()) out << '\n';
  for (const auto& task : doc.tasks) {
    std::vector<std::string> ids;
    for (const auto& card : task.cards) ids.push_back(card.id);
    out << "task " << task.id << ": rule=" << task.rule.id << " cards=" << detail::join(ids, ",")
        << " ca1=" << (task.ca1_applies ? "yes" : "no") << " ca2=" << (task.ca2_applies ? "yes" : "no");
    if (task.label) out << " label=\"" << *task.label << '"';
    out << '\n';
  }
  return out.str();
}

/// "a,!b" style list, as used on the command line.
inline LiteralSet parse_literal_list(std::string_view text) {
  LiteralSet out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto token = text.substr(start, end - start);
    while (!token.empty() && detail::is_space(token.front())) token.remove_prefix(1);
    while (!token.empty() && detail::is_space(token.back())) token.remove_suffix(1);
    if (!token.empty()) {
      auto literal = detail::parse_literal_token(token);
      if (!literal) throw Error(Errc::parse_error, "invalid literal '" + std::string(token) + "'");
      out.push_back(std::move(*literal));
    }
    start = end + 1;
  }
  return out;
}

/// Constraint expressions: "true", "p", "p -> q", "p <-> q", "p & q & ...", "p | q | ...".
inline Formula parse_formula(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && detail::is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && detail::is_space(s.back())) s.remove_suffix(1);
    return s;
  };
  auto literal = [&](std::string_view token) {
    auto parsed = detail::parse_literal_token(trim(token));
    if (!parsed) throw Error(Errc::parse_error, "invalid literal '" + std::string(trim(token)) + "'");
    return *parsed;
  };
  auto split = [&](std::string_view s, std::string_view op) {
    LiteralSet parts;
    std::size_t start = 0;
    while (true) {
      auto at = s.find(op, start);
      parts.push_back(literal(s.substr(start, at == std::string_view::npos ? s.npos : at - start)));
      if (at == std::string_view::npos) break;
      start = at + op.size();
    }
    return parts;
  };

  text = trim(text);
  if (text == "true") return Formula::tautology();
  if (text.find("<->") != std::string_view::npos) {
    auto parts = split(text, "<->");
    if (parts.size() != 2) throw Error(Errc::parse_error, "'<->' takes two literals");
    return Formula::biconditional(parts[0], parts[1]);
  }
  if (text.find("->") != std::string_view::npos) {
    auto parts = split(text, "->");
    if (parts.size() != 2) throw Error(Errc::parse_error, "'->' takes two literals");
    return Formula::implication(parts[0], parts[1]);
  }
  if (text.find('&') != std::string_view::npos) return Formula::conjunction(split(text, "&"));
  if (text.find('|') != std::string_view::npos) return Formula::disjunction(split(text, "|"));
  return Formula::of(literal(text));
}

}  // namespace supervene
