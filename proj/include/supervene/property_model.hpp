#pragma once

// Property language: vocabularies, literals, worlds, entity domains and the
// Boolean lattice of admissible configurations.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supervene/error.hpp"

namespace supervene {

inline constexpr std::size_t max_enumerable_properties = 24;

inline bool is_valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') ||
           (ch >= '0' && ch <= '9') || ch == '_';
  });
}

/// Ordered set of property names. Position defines the bit index in a World.
class Vocabulary {
 public:
  Vocabulary() = default;

  explicit Vocabulary(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string_view> seen;
    for (const auto& name : names_) {
      if (!is_valid_identifier(name))
        throw Error(Errc::invalid_name, "invalid property name '" + name + "'");
      if (!seen.insert(name).second)
        throw Error(Errc::duplicate_id, "duplicate property '" + name + "'");
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t index) const { return names_.at(index); }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  bool contains(std::string_view name) const { return find(name).has_value(); }

  std::size_t index_of(std::string_view name) const {
    if (auto index = find(name)) return *index;
    throw Error(Errc::unknown_property, "unknown property '" + std::string(name) + "'");
  }

  /// Copy with one more property appended. Existing names are an error.
  Vocabulary extended(const std::string& name) const {
    if (contains(name))
      throw Error(Errc::name_collision, "property '" + name + "' already exists");
    auto names = names_;
    names.push_back(name);
    return Vocabulary(std::move(names));
  }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<std::string> names_;
};

enum class Polarity { positive, negative };

struct Literal {
  std::string property;
  Polarity polarity = Polarity::positive;

  static Literal pos(std::string name) { return {std::move(name), Polarity::positive}; }
  static Literal neg(std::string name) { return {std::move(name), Polarity::negative}; }

  bool positive() const noexcept { return polarity == Polarity::positive; }

  Literal negated() const {
    return {property, positive() ? Polarity::negative : Polarity::positive};
  }

  /// Canonical rendering: "a" or "!a".
  std::string to_string() const { return positive() ? property : "!" + property; }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using LiteralSet = std::vector<Literal>;

inline LiteralSet positive_literals(std::span<const std::string> names) {
  LiteralSet out;
  out.reserve(names.size());
  for (const auto& name : names) out.push_back(Literal::pos(name));
  return out;
}

inline LiteralSet positive_literals(std::initializer_list<std::string> names) {
  return positive_literals(std::span<const std::string>(names.begin(), names.size()));
}

/// Total truth assignment, indexed by vocabulary position.
///
/// Worlds order canonically: lexicographic over vocabulary positions with T
/// placed before F, which reproduces the usual truth-table row order
/// (TT, TF, FT, FF).
class World {
 public:
  World() = default;
  explicit World(std::vector<bool> bits) : bits_(std::move(bits)) {}

  /// "TF.." string form, one character per property.
  static World parse(std::string_view code) {
    std::vector<bool> bits;
    bits.reserve(code.size());
    for (char ch : code) {
      if (ch == 'T') bits.push_back(true);
      else if (ch == 'F') bits.push_back(false);
      else throw Error(Errc::world_mismatch, "invalid world code '" + std::string(code) + "'");
    }
    return World(std::move(bits));
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t index) const { return bits_.at(index); }
  const std::vector<bool>& bits() const noexcept { return bits_; }

  World with(bool value) const {
    auto bits = bits_;
    bits.push_back(value);
    return World(std::move(bits));
  }

  World restricted(std::span<const std::size_t> indices) const {
    std::vector<bool> bits;
    bits.reserve(indices.size());
    for (auto index : indices) bits.push_back(bits_.at(index));
    return World(std::move(bits));
  }

  std::string code() const {
    std::string out;
    out.reserve(bits_.size());
    for (bool bit : bits_) out.push_back(bit ? 'T' : 'F');
    return out;
  }

  friend bool operator==(const World&, const World&) = default;

  friend std::strong_ordering operator<=>(const World& lhs, const World& rhs) {
    auto n = std::min(lhs.size(), rhs.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (lhs.bits_[i] != rhs.bits_[i])
        return lhs.bits_[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return lhs.size() <=> rhs.size();
  }

 private:
  std::vector<bool> bits_;
};

inline std::size_t hamming_distance(const World& x, const World& y) {
  if (x.size() != y.size())
    throw Error(Errc::world_mismatch, "worlds of different size");
  std::size_t distance = 0;
  for (std::size_t i = 0; i < x.size(); ++i) distance += x[i] != y[i];
  return distance;
}

/// Literal bound to a vocabulary position.
struct ResolvedLiteral {
  std::size_t index = 0;
  bool positive = true;

  bool holds(const World& world) const { return world[index] == positive; }
};

inline ResolvedLiteral resolve(const Vocabulary& vocabulary, const Literal& literal) {
  return {vocabulary.index_of(literal.property), literal.positive()};
}

/// Resolves a non-empty literal set; duplicates are dropped, order kept.
inline std::vector<ResolvedLiteral> resolve_set(const Vocabulary& vocabulary,
                                                const LiteralSet& literals) {
  if (literals.empty()) throw Error(Errc::empty_subset, "property set is empty");
  std::vector<ResolvedLiteral> out;
  std::set<Literal> seen;
  for (const auto& literal : literals) {
    auto resolved = resolve(vocabulary, literal);
    if (seen.insert(literal).second) out.push_back(resolved);
  }
  return out;
}

/// Creates a world from name=value pairs; must be total over the vocabulary.
inline World make_world(const Vocabulary& vocabulary,
                        std::span<const std::pair<std::string, bool>> values) {
  std::vector<std::optional<bool>> slots(vocabulary.size());
  for (const auto& [name, value] : values) {
    auto index = vocabulary.index_of(name);
    if (slots[index])
      throw Error(Errc::world_mismatch, "property '" + name + "' assigned twice");
    slots[index] = value;
  }
  std::vector<bool> bits;
  bits.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i])
      throw Error(Errc::world_mismatch, "property '" + vocabulary.name(i) + "' not assigned");
    bits.push_back(*slots[i]);
  }
  return World(std::move(bits));
}

struct Entity {
  std::string id;
  World world;

  friend bool operator==(const Entity&, const Entity&) = default;
};

/// Literal-to-literal rule with optional declared closure sets.
struct Conditional {
  std::string id;
  Literal antecedent;
  Literal consequent;
  std::optional<LiteralSet> ca1_set;  // sufficient conditions for the consequent
  std::optional<LiteralSet> ca2_set;  // properties jointly discriminating the antecedent

  void validate() const {
    if (antecedent == consequent)
      throw Error(Errc::invalid_conditional,
                  "rule '" + id + "': antecedent equals consequent");
    if (ca1_set && std::find(ca1_set->begin(), ca1_set->end(), antecedent) == ca1_set->end())
      throw Error(Errc::invalid_conditional,
                  "rule '" + id + "': ca1 set must contain the antecedent");
    if (ca2_set && std::find(ca2_set->begin(), ca2_set->end(), consequent) == ca2_set->end())
      throw Error(Errc::invalid_conditional,
                  "rule '" + id + "': ca2 set must contain the consequent");
  }

  void validate(const Vocabulary& vocabulary) const {
    validate();
    resolve(vocabulary, antecedent);
    resolve(vocabulary, consequent);
    if (ca1_set)
      for (const auto& literal : *ca1_set) resolve(vocabulary, literal);
    if (ca2_set)
      for (const auto& literal : *ca2_set) resolve(vocabulary, literal);
  }

  /// Material reading: false only when the antecedent holds and the consequent does not.
  bool satisfied_by(const Vocabulary& vocabulary, const World& world) const {
    return !resolve(vocabulary, antecedent).holds(world) ||
           resolve(vocabulary, consequent).holds(world);
  }

  std::string to_string() const { return antecedent.to_string() + " -> " + consequent.to_string(); }

  friend bool operator==(const Conditional&, const Conditional&) = default;
};

/// A finite multiset of entities over one vocabulary, plus declared rules.
class DomainModel {
 public:
  DomainModel() = default;

  DomainModel(Vocabulary vocabulary, std::vector<Entity> entities,
              std::vector<Conditional> conditionals = {})
      : vocabulary_(std::move(vocabulary)),
        entities_(std::move(entities)),
        conditionals_(std::move(conditionals)) {
    std::set<std::string_view> ids;
    for (const auto& entity : entities_) {
      if (!is_valid_identifier(entity.id))
        throw Error(Errc::invalid_name, "invalid entity id '" + entity.id + "'");
      if (!ids.insert(entity.id).second)
        throw Error(Errc::duplicate_id, "duplicate entity '" + entity.id + "'");
      if (entity.world.size() != vocabulary_.size())
        throw Error(Errc::world_mismatch,
                    "entity '" + entity.id + "' is not a world over the vocabulary");
    }
    std::set<std::string_view> rule_ids;
    for (const auto& rule : conditionals_) {
      if (!is_valid_identifier(rule.id))
        throw Error(Errc::invalid_name, "invalid rule id '" + rule.id + "'");
      if (!rule_ids.insert(rule.id).second)
        throw Error(Errc::duplicate_id, "duplicate rule '" + rule.id + "'");
      rule.validate(vocabulary_);
    }
  }

  const Vocabulary& vocabulary() const noexcept { return vocabulary_; }
  const std::vector<Entity>& entities() const noexcept { return entities_; }
  const std::vector<Conditional>& conditionals() const noexcept { return conditionals_; }

  const Conditional* find_conditional(std::string_view id) const {
    for (const auto& rule : conditionals_)
      if (rule.id == id) return &rule;
    return nullptr;
  }

  const Conditional& conditional(std::string_view id) const {
    if (const auto* rule = find_conditional(id)) return *rule;
    throw Error(Errc::unknown_rule, "unknown rule '" + std::string(id) + "'");
  }

  friend bool operator==(const DomainModel&, const DomainModel&) = default;

 private:
  Vocabulary vocabulary_;
  std::vector<Entity> entities_;
  std::vector<Conditional> conditionals_;
};

/// Minimal constraint language used for lattice pruning.
class Formula {
 public:
  enum class Kind { truth, literal, conjunction, disjunction, implication, biconditional };

  static Formula tautology() { return Formula(Kind::truth, {}); }
  static Formula of(Literal literal) { return Formula(Kind::literal, {std::move(literal)}); }
  static Formula conjunction(LiteralSet literals) {
    return Formula(Kind::conjunction, std::move(literals));
  }
  static Formula disjunction(LiteralSet literals) {
    return Formula(Kind::disjunction, std::move(literals));
  }
  static Formula implication(Literal lhs, Literal rhs) {
    return Formula(Kind::implication, {std::move(lhs), std::move(rhs)});
  }
  static Formula biconditional(Literal lhs, Literal rhs) {
    return Formula(Kind::biconditional, {std::move(lhs), std::move(rhs)});
  }
  static Formula from(const Conditional& rule) {
    return implication(rule.antecedent, rule.consequent);
  }

  Kind kind() const noexcept { return kind_; }
  const LiteralSet& operands() const noexcept { return operands_; }

  /// Throws unknown-property when an operand is outside the vocabulary.
  void check(const Vocabulary& vocabulary) const {
    for (const auto& literal : operands_) resolve(vocabulary, literal);
  }

  bool evaluate(const Vocabulary& vocabulary, const World& world) const {
    auto holds = [&](const Literal& literal) { return resolve(vocabulary, literal).holds(world); };
    switch (kind_) {
      case Kind::truth: return true;
      case Kind::literal: return holds(operands_[0]);
      case Kind::conjunction: return std::all_of(operands_.begin(), operands_.end(), holds);
      case Kind::disjunction: return std::any_of(operands_.begin(), operands_.end(), holds);
      case Kind::implication: return !holds(operands_[0]) || holds(operands_[1]);
      case Kind::biconditional: return holds(operands_[0]) == holds(operands_[1]);
    }
    return false;
  }

  std::string to_string() const {
    auto join = [&](std::string_view separator) {
      std::string out;
      for (std::size_t i = 0; i < operands_.size(); ++i) {
        if (i) out += separator;
        out += operands_[i].to_string();
      }
      return out;
    };
    switch (kind_) {
      case Kind::truth: return "true";
      case Kind::literal: return operands_[0].to_string();
      case Kind::conjunction: return join(" & ");
      case Kind::disjunction: return join(" | ");
      case Kind::implication: return join(" -> ");
      case Kind::biconditional: return join(" <-> ");
    }
    return {};
  }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  Formula(Kind kind, LiteralSet operands) : kind_(kind), operands_(std::move(operands)) {
    if ((kind_ == Kind::conjunction || kind_ == Kind::disjunction) && operands_.empty())
      throw Error(Errc::empty_subset, "connective needs at least one operand");
  }

  Kind kind_;
  LiteralSet operands_;
};

/// Admissible worlds joined by edges at Hamming distance one.
struct Lattice {
  std::vector<World> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // node indices, first < second
};

/// All 2^n worlds in canonical order (TT.., TF.., ..., FF..).
inline std::vector<World> enumerate_worlds(const Vocabulary& vocabulary) {
  const auto n = vocabulary.size();
  if (n > max_enumerable_properties)
    throw Error(Errc::vocabulary_too_large,
                std::to_string(n) + " properties exceed the enumeration limit of " +
                    std::to_string(max_enumerable_properties));
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<World> worlds;
  worlds.reserve(count);
  for (std::uint64_t row = 0; row < count; ++row) {
    std::vector<bool> bits(n);
    for (std::size_t j = 0; j < n; ++j) bits[j] = ((row >> (n - 1 - j)) & 1U) == 0;
    worlds.emplace_back(std::move(bits));
  }
  return worlds;
}

/// Keeps the worlds satisfying the constraint, input order preserved.
inline Lattice prune(const Vocabulary& vocabulary, std::span<const World> worlds,
                     const Formula& constraint) {
  constraint.check(vocabulary);
  Lattice lattice;
  for (const auto& world : worlds) {
    if (world.size() != vocabulary.size())
      throw Error(Errc::world_mismatch, "world is not over the vocabulary");
    if (constraint.evaluate(vocabulary, world)) lattice.nodes.push_back(world);
  }
  for (std::size_t i = 0; i < lattice.nodes.size(); ++i)
    for (std::size_t j = i + 1; j < lattice.nodes.size(); ++j)
      if (hamming_distance(lattice.nodes[i], lattice.nodes[j]) == 1) lattice.edges.emplace_back(i, j);
  return lattice;
}

inline Lattice build_lattice(const Vocabulary& vocabulary, const Formula& constraint) {
  auto worlds = enumerate_worlds(vocabulary);
  return prune(vocabulary, worlds, constraint);
}

struct Projection {
  std::vector<std::string> subset;     // vocabulary order
  std::map<std::string, World> image;  // entity id -> restricted world
};

/// Sorted vocabulary indices for a non-empty name set.
inline std::vector<std::size_t> resolve_subset(const Vocabulary& vocabulary,
                                               std::span<const std::string> names) {
  if (names.empty()) throw Error(Errc::empty_subset, "property subset is empty");
  std::set<std::size_t> indices;
  for (const auto& name : names) indices.insert(vocabulary.index_of(name));
  return {indices.begin(), indices.end()};
}

inline Projection project(const DomainModel& domain, std::span<const std::string> names) {
  auto indices = resolve_subset(domain.vocabulary(), names);
  Projection projection;
  for (auto index : indices) projection.subset.push_back(domain.vocabulary().name(index));
  for (const auto& entity : domain.entities())
    projection.image.emplace(entity.id, entity.world.restricted(indices));
  return projection;
}

/// True iff x and y disagree on at least one property of the subset.
/// The empty subset never distinguishes anything.
inline bool differs(const Vocabulary& vocabulary, const Entity& x, const Entity& y,
                    std::span<const std::string> names) {
  bool found = false;
  for (const auto& name : names) {
    auto index = vocabulary.index_of(name);
    found = found || x.world[index] != y.world[index];
  }
  return found;
}

inline bool differs(const Vocabulary& vocabulary, const Entity& x, const Entity& y,
                    std::initializer_list<std::string> names) {
  return differs(vocabulary, x, y, std::span<const std::string>(names.begin(), names.size()));
}

/// Renders a world as space-separated literals, e.g. "!a b".
inline std::string literal_string(const Vocabulary& vocabulary, const World& world) {
  std::string out;
  for (std::size_t i = 0; i < world.size(); ++i) {
    if (i) out += ' ';
    if (!world[i]) out += '!';
    out += vocabulary.name(i);
  }
  return out;
}

}  // namespace supervene
