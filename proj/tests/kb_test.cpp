#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "supervene/closure.hpp"
#include "supervene/kb.hpp"

namespace supervene {
namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path kb_dir() { return std::filesystem::path(SUPERVENE_SOURCE_DIR) / "kb"; }

ParseError parse_failure(std::string_view text) {
  try {
    parse_kb(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "parsed without error: " << text;
  return ParseError(Errc::parse_error, 0, 0, "");
}

TEST(ParseKb, EbbinghausFixture) {
  auto doc = parse_kb(slurp(kb_dir() / "ebbinghaus.kb"));
  EXPECT_EQ(doc.domain.vocabulary().names(), (std::vector<std::string>{"ebbinghaus", "forgetful"}));
  EXPECT_EQ(doc.cards.size(), 4U);
  EXPECT_EQ(doc.domain.conditionals().size(), 1U);
  ASSERT_EQ(doc.tasks.size(), 1U);
  const auto& task = doc.tasks[0];
  EXPECT_EQ(task.rule.id, "r1");
  EXPECT_FALSE(task.ca1_applies);
  EXPECT_TRUE(task.ca2_applies);
  EXPECT_EQ(task.cards[0].visible, Literal::neg("forgetful"));
  EXPECT_EQ(task.label, "causal rule, disease producing symptom");
}

TEST(ParseKb, ClosureFixturesSatisfyTheirAssumptions) {
  auto animals = parse_kb(slurp(kb_dir() / "animals.kb"));
  const auto& taxonomy = animals.domain.conditional("dog_animal");
  EXPECT_TRUE(check_ca1(animals.domain, taxonomy));
  EXPECT_EQ(ca1_consequences(animals.domain, taxonomy).uniform_entities, (std::vector<std::string>{"rock"}));

  auto dogs = parse_kb(slurp(kb_dir() / "dogs.kb"));
  const auto& composition = dogs.domain.conditional("dog_tail");
  EXPECT_TRUE(check_ca2(dogs.domain, composition));
  EXPECT_EQ(ca2_consequences(dogs.domain, composition).uniform_entities, (std::vector<std::string>{"rex"}));
}

TEST(ParseKb, EmptyInputIsEmptyDocument) {
  EXPECT_TRUE(parse_kb("").empty());
  EXPECT_TRUE(parse_kb("# nothing here\n\n   \n").empty());
  EXPECT_EQ(render_kb(parse_kb("")), "");
}

TEST(ParseKb, RuleWithEqualSidesIsRejected) {
  auto error = parse_failure("props a\nrule r1: a -> a\n");
  EXPECT_EQ(error.code(), Errc::invalid_conditional);
  EXPECT_EQ(error.line(), 2U);
}

TEST(ParseKb, DiagnosticsCarryLocation) {
  auto bad_value = parse_failure("props a b\nentity x: a=T b=Q\n");
  EXPECT_EQ(bad_value.code(), Errc::parse_error);
  EXPECT_EQ(bad_value.line(), 2U);

  auto undeclared = parse_failure("props a b\nentity x: a=T c=F\n");
  EXPECT_EQ(undeclared.code(), Errc::unresolved_reference);
  EXPECT_EQ(undeclared.column(), 15U);

  EXPECT_EQ(parse_failure("props a b\nentity x: a=T\n").code(), Errc::parse_error);
  EXPECT_EQ(parse_failure("props a\nentity x: a=T\nentity x: a=F\n").code(), Errc::duplicate_id);
  EXPECT_EQ(parse_failure("props a b\nrule r: a -> b\nrule r: b -> a\n").code(), Errc::duplicate_id);
  EXPECT_EQ(parse_failure("props a a\n").code(), Errc::duplicate_id);
  EXPECT_EQ(parse_failure("props a b\nca1 r: a\n").code(), Errc::unresolved_reference);
  EXPECT_EQ(parse_failure("props a b\nrule r: a -> b\nca1 r: b\n").code(), Errc::invalid_conditional);
  EXPECT_EQ(parse_failure("props a b\nrule r: a -> b\nca2 r: a\n").code(), Errc::invalid_conditional);
  EXPECT_EQ(parse_failure("props a b\ncard A: c\n").code(), Errc::unresolved_reference);
  EXPECT_EQ(parse_failure("props a b\nrule r: a -> b\ncard A: a\ntask t: rule=x cards=A ca1=no ca2=no\n").code(),
            Errc::unresolved_reference);
  EXPECT_EQ(parse_failure("props a b\nrule r: a -> b\ncard A: a\ntask t: rule=r cards=B ca1=no ca2=no\n").code(),
            Errc::unresolved_reference);
  EXPECT_EQ(parse_failure("props a b\nrule r: a -> b\ncard A: a\ntask t: rule=r cards=A ca1=no\n").code(),
            Errc::parse_error);
  EXPECT_EQ(parse_failure("props a b\nrule r: a -> b\ncard A: a\ntask t: rule=r cards=A ca1=maybe ca2=no\n").code(),
            Errc::parse_error);
  EXPECT_EQ(parse_failure("props a b c\nrule r: a -> b\ncard A: c\ntask t: rule=r cards=A ca1=no ca2=no\n").code(),
            Errc::malformed_card);
  EXPECT_EQ(parse_failure("entity x:\nprops a\n").code(), Errc::parse_error);
  EXPECT_EQ(parse_failure("frobnicate x\n").code(), Errc::parse_error);
}

TEST(ParseKb, AcceptsUnicodeNegation) {
  auto doc = parse_kb(
      "props a b\n"
      "rule r: a -> b\n"
      "card w: \xC2\xAC" "a\n"          // U+00AC prefix
      "card x: b\xCC\x84\n"             // combining macron
      "card y: \xC4\x81\n"              // precomposed a-macron
      "card z: !b\n");
  ASSERT_EQ(doc.cards.size(), 4U);
  EXPECT_EQ(doc.cards[0].visible, Literal::neg("a"));
  EXPECT_EQ(doc.cards[1].visible, Literal::neg("b"));
  EXPECT_EQ(doc.cards[2].visible, Literal::neg("a"));
  EXPECT_EQ(render_kb(doc).find("\xCC"), std::string::npos);
}

TEST(ParseKb, CommentsAndLabels) {
  auto doc = parse_kb(
      "props a b  # two properties\n"
      "rule r: !a->b\n"
      "card A: a\n"
      "task t: label=\"hash # inside, kept\" ca2=yes ca1=no cards=A rule=r # trailing\n");
  EXPECT_EQ(doc.domain.conditionals()[0].antecedent, Literal::neg("a"));
  EXPECT_EQ(doc.tasks[0].label, "hash # inside, kept");
}

TEST(RenderKb, FixturesRoundTrip) {
  std::size_t fixtures = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kb_dir())) {
    if (entry.path().extension() != ".kb") continue;
    ++fixtures;
    auto doc = parse_kb(slurp(entry.path()));
    auto text = render_kb(doc);
    EXPECT_EQ(parse_kb(text), doc) << entry.path();
    EXPECT_EQ(render_kb(parse_kb(text)), text) << entry.path();
  }
  EXPECT_GE(fixtures, 5U);
}

// Generated documents: render then parse must give back the same value.
TEST(RenderKb, GeneratedDocumentsRoundTrip) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> names;
    const auto n = 2 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
    Vocabulary vocabulary(names);
    auto literal = [&](std::size_t index) {
      return Literal{names[index], (rng() & 1) ? Polarity::negative : Polarity::positive};
    };

    std::vector<Entity> entities;
    for (std::size_t i = 0, count = rng() % 5; i < count; ++i) {
      std::vector<bool> bits;
      for (std::size_t j = 0; j < n; ++j) bits.push_back(rng() & 1);
      entities.push_back({"e" + std::to_string(i), World(bits)});
    }
    std::vector<Conditional> rules;
    for (std::size_t i = 0, count = 1 + rng() % 3; i < count; ++i) {
      auto lhs = rng() % n;
      auto rhs = (lhs + 1 + rng() % (n - 1)) % n;
      Conditional rule{"r" + std::to_string(i), literal(lhs), literal(rhs)};
      if (rng() & 1) rule.ca1_set = LiteralSet{rule.antecedent};
      if (rng() & 1) rule.ca2_set = LiteralSet{rule.consequent};
      rules.push_back(rule);
    }
    KbDocument doc;
    doc.domain = DomainModel(vocabulary, entities, rules);
    const auto& target = rules[rng() % rules.size()];
    for (std::size_t i = 0, count = 1 + rng() % 4; i < count; ++i)
      doc.cards.push_back({"c" + std::to_string(i),
                           Literal{(rng() & 1) ? target.antecedent.property : target.consequent.property,
                                   (rng() & 1) ? Polarity::negative : Polarity::positive}});
    SelectionTask task{"t", target, doc.cards, (rng() & 1) != 0, (rng() & 1) != 0, std::nullopt};
    if (rng() & 1) task.label = "generated " + std::to_string(trial);
    doc.tasks.push_back(task);

    ASSERT_EQ(parse_kb(render_kb(doc)), doc) << render_kb(doc);
  }
}

TEST(ParseLiteralList, CommaSeparated) {
  EXPECT_EQ(parse_literal_list("a, !b,c"), (LiteralSet{Literal::pos("a"), Literal::neg("b"), Literal::pos("c")}));
  EXPECT_THROW(parse_literal_list("a,b-c"), Error);
}

TEST(ParseFormula, Connectives) {
  EXPECT_EQ(parse_formula("true"), Formula::tautology());
  EXPECT_EQ(parse_formula("a -> !b"), Formula::implication(Literal::pos("a"), Literal::neg("b")));
  EXPECT_EQ(parse_formula("a<->b"), Formula::biconditional(Literal::pos("a"), Literal::pos("b")));
  EXPECT_EQ(parse_formula("a & b & c").operands().size(), 3U);
  EXPECT_EQ(parse_formula("a | b").kind(), Formula::Kind::disjunction);
  EXPECT_EQ(parse_formula("!a").kind(), Formula::Kind::literal);
  EXPECT_THROW(parse_formula("a -> b -> c"), Error);
  EXPECT_THROW(parse_formula("a & "), Error);
}

}  // namespace
}  // namespace supervene
