#pragma once

// Closure constructions for a conditional (the added star properties) and the
// two closure assumptions: CA-I over sufficient conditions of the consequent,
// CA-II over the properties jointly discriminating the antecedent.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supervene/property_model.hpp"

namespace supervene {

inline std::string star_name(const Conditional& rule) { return rule.antecedent.property + "__star"; }
inline std::string costar_name(const Conditional& rule) {
  return rule.consequent.property + "__costar";
}

struct ClosureResult {
  std::string star_name;
  DomainModel extended_domain;
  LiteralSet closed_set;   // the closed base set
  LiteralSet supervenient; // the set that supervenes closed_set

  const Vocabulary& extended_vocabulary() const { return extended_domain.vocabulary(); }
};

namespace detail {

inline void require_satisfied(const DomainModel& domain, const Conditional& rule) {
  for (const auto& entity : domain.entities())
    if (!rule.satisfied_by(domain.vocabulary(), entity.world))
      throw Error(Errc::rule_violated,
                  "entity '" + entity.id + "' falsifies rule '" + rule.id + "' (" +
                      rule.to_string() + ")");
}

template <class ValueFn>
DomainModel extend(const DomainModel& domain, const std::string& name, ValueFn value) {
  auto vocabulary = domain.vocabulary().extended(name);
  std::vector<Entity> entities;
  entities.reserve(domain.entities().size());
  for (const auto& entity : domain.entities())
    entities.push_back({entity.id, entity.world.with(value(entity.world))});
  return DomainModel(std::move(vocabulary), std::move(entities), domain.conditionals());
}

}  // namespace detail

/// Adds `<antecedent>__star`, true exactly when the consequent holds without
/// the antecedent. On rows where both hold the value is free; it is set to
/// `unconstrained_value` (false by default).
inline ClosureResult close_antecedent(const DomainModel& domain, const Conditional& rule,
                                      bool unconstrained_value = false) {
  rule.validate(domain.vocabulary());
  if (!rule.antecedent.positive() || !rule.consequent.positive())
    throw Error(Errc::negative_literal_unsupported,
                "rule '" + rule.id + "': antecedent closure needs positive literals; "
                "close the consequent instead");
  detail::require_satisfied(domain, rule);

  const auto antecedent = resolve(domain.vocabulary(), rule.antecedent);
  const auto consequent = resolve(domain.vocabulary(), rule.consequent);
  const auto name = star_name(rule);
  auto extended = detail::extend(domain, name, [&](const World& world) {
    bool a = antecedent.holds(world);
    bool b = consequent.holds(world);
    if (a && b) return unconstrained_value;
    return b && !a;
  });
  return {name, std::move(extended), {rule.antecedent, Literal::pos(name)}, {rule.consequent}};
}

/// Adds `<consequent>__costar` (b*) such that its negation is true exactly
/// when the consequent holds without the antecedent. On rows where both are
/// false, the negation is free and set to `unconstrained_value`.
inline ClosureResult close_consequent(const DomainModel& domain, const Conditional& rule,
                                      bool unconstrained_value = false) {
  rule.validate(domain.vocabulary());
  detail::require_satisfied(domain, rule);

  const auto antecedent = resolve(domain.vocabulary(), rule.antecedent);
  const auto consequent = resolve(domain.vocabulary(), rule.consequent);
  const auto name = costar_name(rule);
  auto extended = detail::extend(domain, name, [&](const World& world) {
    bool a = antecedent.holds(world);
    bool b = consequent.holds(world);
    bool negated_star = (!a && !b) ? unconstrained_value : (b && !a);
    return !negated_star;
  });
  return {name,
          std::move(extended),
          {rule.consequent.negated(), Literal::neg(name)},
          {rule.antecedent.negated()}};
}

namespace detail {

inline const LiteralSet& declared(const std::optional<LiteralSet>& set, const Conditional& rule,
                                  const char* which) {
  if (!set)
    throw Error(Errc::missing_closure_declaration,
                "rule '" + rule.id + "' has no " + which + " declaration");
  return *set;
}

}  // namespace detail

/// First entity where the consequent holds but no declared sufficient condition does.
inline std::optional<std::size_t> ca1_counterexample(const DomainModel& domain,
                                                     const Conditional& rule) {
  const auto& sufficient = detail::declared(rule.ca1_set, rule, "ca1");
  const auto conditions = resolve_set(domain.vocabulary(), sufficient);
  const auto consequent = resolve(domain.vocabulary(), rule.consequent);
  const auto& entities = domain.entities();
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const auto& world = entities[i].world;
    if (!consequent.holds(world)) continue;
    bool any = false;
    for (const auto& literal : conditions) any = any || literal.holds(world);
    if (!any) return i;
  }
  return std::nullopt;
}

inline bool check_ca1(const DomainModel& domain, const Conditional& rule) {
  return !ca1_counterexample(domain, rule).has_value();
}

/// First entity lacking the antecedent while showing every declared property.
inline std::optional<std::size_t> ca2_counterexample(const DomainModel& domain,
                                                     const Conditional& rule) {
  const auto& discriminating = detail::declared(rule.ca2_set, rule, "ca2");
  const auto properties = resolve_set(domain.vocabulary(), discriminating);
  const auto antecedent = resolve(domain.vocabulary(), rule.antecedent);
  const auto& entities = domain.entities();
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const auto& world = entities[i].world;
    if (antecedent.holds(world)) continue;
    bool all = true;
    for (const auto& literal : properties) all = all && literal.holds(world);
    if (all) return i;
  }
  return std::nullopt;
}

inline bool check_ca2(const DomainModel& domain, const Conditional& rule) {
  return !ca2_counterexample(domain, rule).has_value();
}

/// Entity-by-entity confirmation of the two compression consequences of a
/// closure assumption.
///
/// For CA-I the pivot is the consequent and the closure is the ca1 set: when
/// the pivot is false every closure literal is false (one modus tollens step
/// removes them all), and when it is true some closure literal is true.
/// For CA-II the pivot is the antecedent and the closure is the ca2 set: when
/// the pivot is true every closure literal is true (one modus ponens step
/// produces them all), and when it is false some closure literal is false.
struct ClosureConsequences {
  Literal pivot;
  LiteralSet closure;
  bool uniform_holds = true;   // pivot in its "uniform" state forces every closure literal
  bool witness_holds = true;   // pivot in the other state has a witness literal
  std::vector<std::string> uniform_entities;
  std::vector<std::pair<std::string, std::string>> witnesses;  // entity id, literal
};

/// Requires CA-I and sufficiency of every ca1 literal for the consequent.
inline ClosureConsequences ca1_consequences(const DomainModel& domain, const Conditional& rule) {
  const auto& closure = detail::declared(rule.ca1_set, rule, "ca1");
  if (auto bad = ca1_counterexample(domain, rule))
    throw Error(Errc::ca1_not_satisfied,
                "entity '" + domain.entities()[*bad].id + "' has " +
                    rule.consequent.to_string() + " without any ca1 condition");

  const auto& vocabulary = domain.vocabulary();
  const auto consequent = resolve(vocabulary, rule.consequent);
  ClosureConsequences report{rule.consequent, closure, true, true, {}, {}};
  for (const auto& entity : domain.entities()) {
    const auto& world = entity.world;
    if (!consequent.holds(world)) {
      for (const auto& literal : closure)
        if (resolve(vocabulary, literal).holds(world))
          throw Error(Errc::sufficiency_violated,
                      "entity '" + entity.id + "' has " + literal.to_string() + " but not " +
                          rule.consequent.to_string());
      report.uniform_entities.push_back(entity.id);
    } else {
      for (const auto& literal : closure)
        if (resolve(vocabulary, literal).holds(world)) {
          report.witnesses.emplace_back(entity.id, literal.to_string());
          break;
        }
    }
  }
  return report;
}

/// Requires CA-II and necessity of every ca2 literal for the antecedent.
inline ClosureConsequences ca2_consequences(const DomainModel& domain, const Conditional& rule) {
  const auto& closure = detail::declared(rule.ca2_set, rule, "ca2");
  if (auto bad = ca2_counterexample(domain, rule))
    throw Error(Errc::ca2_not_satisfied,
                "entity '" + domain.entities()[*bad].id + "' has every ca2 property without " +
                    rule.antecedent.to_string());

  const auto& vocabulary = domain.vocabulary();
  const auto antecedent = resolve(vocabulary, rule.antecedent);
  ClosureConsequences report{rule.antecedent, closure, true, true, {}, {}};
  for (const auto& entity : domain.entities()) {
    const auto& world = entity.world;
    if (antecedent.holds(world)) {
      for (const auto& literal : closure)
        if (!resolve(vocabulary, literal).holds(world))
          throw Error(Errc::necessity_violated,
                      "entity '" + entity.id + "' has " + rule.antecedent.to_string() +
                          " but not " + literal.to_string());
      report.uniform_entities.push_back(entity.id);
    } else {
      for (const auto& literal : closure)
        if (!resolve(vocabulary, literal).holds(world)) {
          report.witnesses.emplace_back(entity.id, literal.negated().to_string());
          break;
        }
    }
  }
  return report;
}

}  // namespace supervene
