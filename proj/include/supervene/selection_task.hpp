#pragma once

// Selection-task predictions. A reasoner is modeled as testing the compression
// capacity that the assumed closures give the rule, not its logical validity.

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supervene/property_model.hpp"

namespace supervene {

struct Card {
  std::string id;
  Literal visible;

  friend bool operator==(const Card&, const Card&) = default;
};

/// The four card kinds P, !P, Q, !Q relative to the rule's literals.
enum class CardKind { antecedent_true, antecedent_false, consequent_true, consequent_false };

constexpr std::string_view to_string(CardKind kind) {
  switch (kind) {
    case CardKind::antecedent_true: return "P";
    case CardKind::antecedent_false: return "!P";
    case CardKind::consequent_true: return "Q";
    case CardKind::consequent_false: return "!Q";
  }
  return "?";
}

struct SelectionTask {
  std::string id;
  Conditional rule;
  std::vector<Card> cards;
  bool ca1_applies = false;
  bool ca2_applies = false;
  std::optional<std::string> label;

  friend bool operator==(const SelectionTask&, const SelectionTask&) = default;
};

inline CardKind classify(const Conditional& rule, const Card& card) {
  if (rule.antecedent.property == rule.consequent.property)
    throw Error(Errc::malformed_card,
                "rule '" + rule.id + "' uses one property on both sides; cards are ambiguous");
  const auto& visible = card.visible;
  if (visible.property == rule.antecedent.property)
    return visible.polarity == rule.antecedent.polarity ? CardKind::antecedent_true
                                                        : CardKind::antecedent_false;
  if (visible.property == rule.consequent.property)
    return visible.polarity == rule.consequent.polarity ? CardKind::consequent_true
                                                        : CardKind::consequent_false;
  throw Error(Errc::malformed_card, "card '" + card.id + "' shows '" + visible.property +
                                        "', which rule '" + rule.id + "' does not mention");
}

inline void validate(const SelectionTask& task) {
  if (task.cards.empty())
    throw Error(Errc::malformed_card, "task '" + task.id + "' has no cards");
  std::set<std::string_view> ids;
  for (const auto& card : task.cards) {
    if (!ids.insert(card.id).second)
      throw Error(Errc::duplicate_id, "task '" + task.id + "' lists card '" + card.id + "' twice");
    classify(task.rule, card);
  }
}

namespace detail {

/// Card ids of the requested kinds, grouped in the order the kinds are given,
/// declaration order within a kind.
inline std::vector<std::string> cards_of(const SelectionTask& task,
                                         std::initializer_list<CardKind> kinds) {
  std::vector<std::string> out;
  for (auto kind : kinds)
    for (const auto& card : task.cards)
      if (classify(task.rule, card) == kind) out.push_back(card.id);
  return out;
}

}  // namespace detail

/// Classical answer: the P cards (modus ponens) and the !Q cards (modus tollens).
inline std::vector<std::string> normative_selection(const SelectionTask& task) {
  validate(task);
  return detail::cards_of(task, {CardKind::antecedent_true, CardKind::consequent_false});
}

enum class Reading { antecedent_compression, double_compression, biconditional, extrapolated_dual };

constexpr std::string_view to_string(Reading reading) {
  switch (reading) {
    case Reading::antecedent_compression: return "antecedent-compression";
    case Reading::double_compression: return "double-compression";
    case Reading::biconditional: return "biconditional";
    case Reading::extrapolated_dual: return "extrapolated-dual";
  }
  return "?";
}

inline Reading reading_for(bool ca1_applies, bool ca2_applies) {
  if (ca1_applies && ca2_applies) return Reading::double_compression;
  if (ca2_applies) return Reading::antecedent_compression;
  if (ca1_applies) return Reading::extrapolated_dual;
  return Reading::biconditional;
}

struct Prediction {
  std::vector<std::string> selected;
  Reading reading = Reading::biconditional;
  std::vector<std::pair<std::string, std::string>> rationale;  // card id, explanation
};

inline std::string explain(Reading reading, CardKind kind) {
  switch (kind) {
    case CardKind::antecedent_false:
      return "antecedent absent: compression is not activated, card irrelevant";
    case CardKind::antecedent_true:
      if (reading == Reading::extrapolated_dual)
        return "antecedent present: only the consequent is tested for compression";
      return "antecedent present: check that the consequent closure follows";
    case CardKind::consequent_false:
      if (reading == Reading::double_compression || reading == Reading::extrapolated_dual)
        return "consequent absent: check that every antecedent in the closure is absent";
      return "consequent absent: consequent is not assumed closed, not tested";
    case CardKind::consequent_true:
      if (reading == Reading::biconditional)
        return "consequent present: supervenience forced without closure, check the antecedent";
      return "consequent present: no compression test depends on it";
  }
  return {};
}

inline Prediction predict_selection(const SelectionTask& task) {
  validate(task);
  Prediction prediction;
  prediction.reading = reading_for(task.ca1_applies, task.ca2_applies);
  switch (prediction.reading) {
    case Reading::antecedent_compression:
      prediction.selected = detail::cards_of(task, {CardKind::antecedent_true});
      break;
    case Reading::double_compression:
      prediction.selected =
          detail::cards_of(task, {CardKind::antecedent_true, CardKind::consequent_false});
      break;
    case Reading::biconditional:
      prediction.selected =
          detail::cards_of(task, {CardKind::antecedent_true, CardKind::consequent_true});
      break;
    case Reading::extrapolated_dual:
      prediction.selected = detail::cards_of(task, {CardKind::consequent_false});
      break;
  }
  for (const auto& card : task.cards)
    prediction.rationale.emplace_back(card.id,
                                      explain(prediction.reading, classify(task.rule, card)));
  return prediction;
}

struct Comparison {
  std::vector<std::string> normative;
  Prediction prediction;
  bool agreement = false;
  std::vector<std::string> hits;         // predicted and normative
  std::vector<std::string> omissions;    // normative only
  std::vector<std::string> commissions;  // predicted only
};

inline Comparison compare(const SelectionTask& task) {
  Comparison result;
  result.normative = normative_selection(task);
  result.prediction = predict_selection(task);
  auto contains = [](const std::vector<std::string>& set, const std::string& id) {
    return std::find(set.begin(), set.end(), id) != set.end();
  };
  for (const auto& id : result.prediction.selected)
    (contains(result.normative, id) ? result.hits : result.commissions).push_back(id);
  for (const auto& id : result.normative)
    if (!contains(result.prediction.selected, id)) result.omissions.push_back(id);
  result.agreement = result.omissions.empty() && result.commissions.empty();
  return result;
}

}  // namespace supervene
