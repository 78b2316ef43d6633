#pragma once

// Exhaustive verifier: enumerates every small domain and checks that the
// independently computed relations agree where the theory says they must.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "supervene/closure.hpp"
#include "supervene/supervenience.hpp"

namespace supervene {

inline constexpr std::size_t oracle_max_props_limit = 4;
inline constexpr std::size_t oracle_max_entities_limit = 6;

struct OracleOptions {
  std::size_t max_props = 3;
  std::size_t max_entities = 4;
  bool invert_differs = false;  // seeded mutation
};

struct OracleCheck {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
};

struct OracleSummary {
  std::uint64_t domains = 0;
  std::vector<OracleCheck> checks;

  bool passed() const {
    for (const auto& check : checks)
      if (check.failures) return false;
    return true;
  }
};

/// Calls `visit` with every nondecreasing index sequence of length `size`
/// over [0, choices): the multisets of that size.
inline void for_each_multiset(std::size_t choices, std::size_t size,
                              const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> picks(size, 0);
  if (size == 0) {
    visit(picks);
    return;
  }
  if (choices == 0) return;
  while (true) {
    visit(picks);
    std::size_t pos = size;
    while (pos > 0 && picks[pos - 1] == choices - 1) --pos;
    if (pos == 0) return;
    auto next = picks[pos - 1] + 1;
    for (std::size_t i = pos - 1; i < size; ++i) picks[i] = next;
  }
}

/// Domains with 0..max_entities entities drawn with repetition from `worlds`,
/// ids e0, e1, ...
inline void for_each_domain(const Vocabulary& vocabulary, const std::vector<World>& worlds,
                            std::size_t max_entities,
                            const std::function<void(const DomainModel&)>& visit) {
  for (std::size_t count = 0; count <= max_entities; ++count)
    for_each_multiset(worlds.size(), count, [&](const std::vector<std::size_t>& picks) {
      std::vector<Entity> entities;
      for (std::size_t i = 0; i < picks.size(); ++i)
        entities.push_back({"e" + std::to_string(i), worlds[picks[i]]});
      visit(DomainModel(vocabulary, std::move(entities)));
    });
}

/// All non-empty subsets of the vocabulary as positive literal sets.
inline std::vector<LiteralSet> nonempty_subsets(const Vocabulary& vocabulary) {
  std::vector<LiteralSet> out;
  const std::size_t n = vocabulary.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    LiteralSet set;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) set.push_back(Literal::pos(vocabulary.name(i)));
    out.push_back(std::move(set));
  }
  return out;
}

namespace detail {

template <class Differs>
OracleSummary run_oracle_with(const OracleOptions& options, Differs differs) {
  OracleSummary summary;
  OracleCheck contrapositive{"contrapositive"};
  OracleCheck functionality{"functionality"};
  OracleCheck mapping{"mapping-consistency"};
  OracleCheck closure{"closure-antecedent"};
  OracleCheck dual{"closure-consequent"};

  for (std::size_t n = 1; n <= options.max_props; ++n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
    const Vocabulary vocabulary(names);
    const auto worlds = enumerate_worlds(vocabulary);
    const auto subsets = nonempty_subsets(vocabulary);
    for_each_domain(vocabulary, worlds, options.max_entities, [&](const DomainModel& domain) {
      ++summary.domains;
      for (const auto& base : subsets)
        for (const auto& super : subsets) {
          const bool determined = determination(domain, base, super);
          ++contrapositive.cases;
          if (weak_supervenience(domain, super, base, differs) != determined) ++contrapositive.failures;

          const auto report = compression_report(build_rho(domain, base, super));
          ++functionality.cases;
          if (report.functional != determined) ++functionality.failures;

          if (report.functional) {
            const auto base_set = resolve_set(vocabulary, base);
            const auto super_set = resolve_set(vocabulary, super);
            for (const auto& entity : domain.entities()) {
              ++mapping.cases;
              auto image = report.apply(describe(entity.world, base_set));
              if (!image || *image != describe(entity.world, super_set)) ++mapping.failures;
            }
          }
        }
    });
  }

  if (options.max_props >= 2) {
    const Vocabulary vocabulary({"a", "b"});
    const Conditional rule{"r", Literal::pos("a"), Literal::pos("b"), std::nullopt, std::nullopt};
    std::vector<World> satisfying;
    for (const auto& world : enumerate_worlds(vocabulary))
      if (rule.satisfied_by(vocabulary, world)) satisfying.push_back(world);
    for_each_domain(vocabulary, satisfying, options.max_entities, [&](const DomainModel& domain) {
      for (bool unconstrained : {false, true}) {
        auto closed = close_antecedent(domain, rule, unconstrained);
        ++closure.cases;
        if (!weak_supervenience(closed.extended_domain, closed.supervenient, closed.closed_set, differs) ||
            !ontological_dependence(closed.extended_domain, closed.supervenient, closed.closed_set))
          ++closure.failures;

        auto coclosed = close_consequent(domain, rule, unconstrained);
        ++dual.cases;
        if (!weak_supervenience(coclosed.extended_domain, coclosed.supervenient,
                                coclosed.closed_set, differs))
          ++dual.failures;
      }
    });
  }

  summary.checks = {contrapositive, functionality, mapping, closure, dual};
  return summary;
}

}  // namespace detail

inline OracleSummary run_oracle(const OracleOptions& options) {
  if (options.max_props > oracle_max_props_limit || options.max_entities > oracle_max_entities_limit)
    throw Error(Errc::vocabulary_too_large,
                "oracle bounds limited to " + std::to_string(oracle_max_props_limit) +
                    " properties and " + std::to_string(oracle_max_entities_limit) + " entities");
  if (options.invert_differs) return detail::run_oracle_with(options, InvertedDiffers{});
  return detail::run_oracle_with(options, ExactDiffers{});
}

}  // namespace supervene
