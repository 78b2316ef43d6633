#pragma once

// Weak supervenience, determination, ontological dependence and the
// A-description to B-description relation used to measure compression.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "supervene/property_model.hpp"

namespace supervene {

/// x and y differ on a literal set iff they differ on some literal's property.
struct ExactDiffers {
  bool operator()(const World& x, const World& y,
                  std::span<const ResolvedLiteral> literals) const {
    return std::any_of(literals.begin(), literals.end(),
                       [&](const ResolvedLiteral& l) { return l.holds(x) != l.holds(y); });
  }
};

/// Seeded logic mutation used to show that the exhaustive oracle is not vacuous.
struct InvertedDiffers {
  bool operator()(const World& x, const World& y,
                  std::span<const ResolvedLiteral> literals) const {
    return !ExactDiffers{}(x, y, literals);
  }
};

/// Indices of two entities in DomainModel::entities().
struct EntityPair {
  std::size_t first = 0;
  std::size_t second = 0;

  friend bool operator==(const EntityPair&, const EntityPair&) = default;
};

/// First pair (in index order) differing on `super` but not on `base`.
template <class Differs = ExactDiffers>
std::optional<EntityPair> supervenience_counterexample(const DomainModel& domain,
                                                       const LiteralSet& super,
                                                       const LiteralSet& base,
                                                       Differs differs = {}) {
  const auto super_set = resolve_set(domain.vocabulary(), super);
  const auto base_set = resolve_set(domain.vocabulary(), base);
  const auto& entities = domain.entities();
  for (std::size_t i = 0; i < entities.size(); ++i)
    for (std::size_t j = i + 1; j < entities.size(); ++j) {
      const auto& x = entities[i].world;
      const auto& y = entities[j].world;
      if (differs(x, y, super_set) && !differs(x, y, base_set)) return EntityPair{i, j};
    }
  return std::nullopt;
}

/// `super` weakly supervenes `base`: no two entities differ on super without
/// also differing on base.
template <class Differs = ExactDiffers>
bool weak_supervenience(const DomainModel& domain, const LiteralSet& super,
                        const LiteralSet& base, Differs differs = {}) {
  return !supervenience_counterexample(domain, super, base, differs).has_value();
}

/// First pair equal on `determining` but unequal on `determined`.
inline std::optional<EntityPair> determination_counterexample(const DomainModel& domain,
                                                              const LiteralSet& determining,
                                                              const LiteralSet& determined) {
  const auto lhs = resolve_set(domain.vocabulary(), determining);
  const auto rhs = resolve_set(domain.vocabulary(), determined);
  auto equal_on = [](const World& x, const World& y, std::span<const ResolvedLiteral> set) {
    return std::all_of(set.begin(), set.end(),
                       [&](const ResolvedLiteral& l) { return x[l.index] == y[l.index]; });
  };
  const auto& entities = domain.entities();
  for (std::size_t i = 0; i < entities.size(); ++i)
    for (std::size_t j = i + 1; j < entities.size(); ++j) {
      const auto& x = entities[i].world;
      const auto& y = entities[j].world;
      if (equal_on(x, y, lhs) && !equal_on(x, y, rhs)) return EntityPair{i, j};
    }
  return std::nullopt;
}

/// Entities equal on `determining` are equal on `determined`.
inline bool determination(const DomainModel& domain, const LiteralSet& determining,
                          const LiteralSet& determined) {
  return !determination_counterexample(domain, determining, determined).has_value();
}

/// First entity exhibiting some literal of `dependent` but none of `base`.
inline std::optional<std::size_t> dependence_counterexample(const DomainModel& domain,
                                                            const LiteralSet& dependent,
                                                            const LiteralSet& base) {
  const auto dep = resolve_set(domain.vocabulary(), dependent);
  const auto bas = resolve_set(domain.vocabulary(), base);
  const auto& entities = domain.entities();
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const auto& world = entities[i].world;
    auto exhibits = [&](const ResolvedLiteral& l) { return l.holds(world); };
    if (std::any_of(dep.begin(), dep.end(), exhibits) &&
        std::none_of(bas.begin(), bas.end(), exhibits))
      return i;
  }
  return std::nullopt;
}

inline bool ontological_dependence(const DomainModel& domain, const LiteralSet& dependent,
                                   const LiteralSet& base) {
  return !dependence_counterexample(domain, dependent, base).has_value();
}

/// Observed co-occurrences of base descriptions and supervenient descriptions.
/// A description is the tuple of literal truth values, in set order.
struct RhoRelation {
  LiteralSet base;
  LiteralSet super;
  std::vector<std::pair<World, World>> pairs;  // deduplicated, canonical order
};

inline World describe(const World& world, std::span<const ResolvedLiteral> literals) {
  std::vector<bool> bits;
  bits.reserve(literals.size());
  for (const auto& literal : literals) bits.push_back(literal.holds(world));
  return World(std::move(bits));
}

inline RhoRelation build_rho(const DomainModel& domain, const LiteralSet& base,
                             const LiteralSet& super) {
  const auto base_set = resolve_set(domain.vocabulary(), base);
  const auto super_set = resolve_set(domain.vocabulary(), super);
  std::set<std::pair<World, World>> pairs;
  for (const auto& entity : domain.entities())
    pairs.emplace(describe(entity.world, base_set), describe(entity.world, super_set));

  RhoRelation rho;
  // Duplicate literals were dropped during resolution; keep the sets aligned
  // with the description width.
  std::set<Literal> seen;
  for (const auto& literal : base)
    if (seen.insert(literal).second) rho.base.push_back(literal);
  seen.clear();
  for (const auto& literal : super)
    if (seen.insert(literal).second) rho.super.push_back(literal);
  rho.pairs.assign(pairs.begin(), pairs.end());
  return rho;
}

struct CompressionReport {
  bool functional = false;
  bool lossy = false;                    // meaningful only when functional
  std::optional<double> gain_bits;       // defined iff functional
  double raw_gain_bits = 0.0;            // unclamped, for diagnostics
  std::size_t base_codes = 0;
  std::size_t super_codes = 0;
  std::vector<std::pair<World, World>> mapping;  // present iff functional

  std::optional<World> apply(const World& base_description) const {
    auto it = std::lower_bound(
        mapping.begin(), mapping.end(), base_description,
        [](const std::pair<World, World>& entry, const World& key) { return entry.first < key; });
    if (it == mapping.end() || it->first != base_description) return std::nullopt;
    return it->second;
  }
};

/// Functionality of rho and the realized-code gain log2|A codes| - log2|B codes|.
inline CompressionReport compression_report(const RhoRelation& rho) {
  std::map<World, std::set<World>> images;
  std::set<World> super_codes;
  for (const auto& [a, b] : rho.pairs) {
    images[a].insert(b);
    super_codes.insert(b);
  }

  CompressionReport report;
  report.base_codes = images.size();
  report.super_codes = super_codes.size();
  report.functional = std::all_of(images.begin(), images.end(),
                                  [](const auto& entry) { return entry.second.size() == 1; });
  auto log2_count = [](std::size_t count) {
    return count == 0 ? 0.0 : std::log2(static_cast<double>(count));
  };
  report.raw_gain_bits = log2_count(report.base_codes) - log2_count(report.super_codes);

  if (report.functional) {
    for (const auto& [a, bs] : images) report.mapping.emplace_back(a, *bs.begin());
    report.lossy = report.super_codes < report.base_codes;
    report.gain_bits = std::max(0.0, report.raw_gain_bits);
  }
  return report;
}

}  // namespace supervene
