#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "supervene/cli.hpp"

namespace supervene {
namespace {

namespace fs = std::filesystem;

const fs::path source_dir{SUPERVENE_SOURCE_DIR};

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(std::move(args), in, out, err);
  return {code, out.str(), err.str()};
}

std::string kb(const std::string& name) { return (source_dir / "kb" / name).string(); }

std::string golden(const std::string& name) {
  std::ifstream in(source_dir / "tests" / "golden" / name);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

TEST(CliCheck, ConditionalFailsWithWitness) {
  auto result = run({"check", kb("conditional.kb"), "--base", "a", "--super", "b"});
  EXPECT_EQ(result.code, 3);
  EXPECT_NE(result.out.find("weak_supervenience: false"), std::string::npos);
  EXPECT_NE(result.out.find("supervenience_witness: {nab, nanb}"), std::string::npos);
  EXPECT_EQ(result.out.find("\ngain_bits:"), std::string::npos);
  EXPECT_EQ(result.out.find("mapping:"), std::string::npos);
}

TEST(CliCheck, BiImplicationHoldsWithoutGain) {
  auto result = run({"check", kb("biimplication.kb"), "--base", "a", "--super", "b"});
  EXPECT_EQ(result.code, 0);
  EXPECT_NE(result.out.find("gain_bits: 0.000000"), std::string::npos);
  EXPECT_NE(result.out.find("lossy: false"), std::string::npos);
}

TEST(CliCheck, ClosedDomainPipedBackHolds) {
  auto closed = run({"closure", kb("conditional.kb"), "--rule", "r1", "--mode", "antecedent"});
  ASSERT_EQ(closed.code, 0) << closed.err;
  auto result = run({"check", "-", "--base", "a,a__star", "--super", "b"}, closed.out);
  EXPECT_EQ(result.code, 0) << result.out << result.err;
  EXPECT_NE(result.out.find("ontological_dependence: true"), std::string::npos);

  auto coclosed = run({"closure", kb("conditional.kb"), "--rule", "r1", "--mode", "consequent"});
  ASSERT_EQ(coclosed.code, 0);
  EXPECT_EQ(run({"check", "-", "--base", "!b,!b__costar", "--super", "!a"}, coclosed.out).code, 0);
}

TEST(CliCheck, JsonMirrorsKeys) {
  auto result = run({"check", kb("biimplication.kb"), "--base", "a", "--super", "b", "--json"});
  auto json = nlohmann::json::parse(result.out);
  EXPECT_EQ(json["weak_supervenience"], true);
  EXPECT_EQ(json["base"], nlohmann::json::array({"a"}));
  EXPECT_DOUBLE_EQ(json["gain_bits"].get<double>(), 0.0);
}

TEST(CliCheck, Errors) {
  EXPECT_EQ(run({"check", kb("conditional.kb"), "--base", "zz", "--super", "b"}).code, 2);
  EXPECT_EQ(run({"check", "-", "--base", "a", "--super", "b"}, "props a\nrule r: a -> a\n").code, 2);
  EXPECT_EQ(run({"check", "/nonexistent.kb", "--base", "a", "--super", "b"}).code, 2);
  EXPECT_EQ(run({"check", kb("conditional.kb")}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(CliClosure, OutputRoundTripsAndCarriesStarColumn) {
  auto result = run({"closure", kb("conditional.kb"), "--rule", "r1"});
  ASSERT_EQ(result.code, 0);
  EXPECT_EQ(result.out, golden("closure_antecedent.txt"));
  auto doc = parse_kb(result.out);
  EXPECT_EQ(parse_kb(render_kb(doc)), doc);
  EXPECT_EQ(run({"closure", kb("conditional.kb"), "--rule", "r1", "--mode", "consequent"}).out,
            golden("closure_consequent.txt"));
}

TEST(CliClosure, Errors) {
  auto all = "props a b\nentity x: a=T b=F\nrule r: a -> b\n";
  EXPECT_EQ(run({"closure", "-", "--rule", "r"}, all).code, 3);
  EXPECT_EQ(run({"closure", kb("conditional.kb"), "--rule", "nope"}).code, 2);
  EXPECT_EQ(run({"closure", kb("conditional.kb"), "--rule", "r1", "--mode", "sideways"}).code, 2);
}

TEST(CliPredict, GoldenReports) {
  EXPECT_EQ(run({"predict", kb("ebbinghaus.kb"), "--task", "ebbinghaus"}).out, golden("predict_ebbinghaus.txt"));
  EXPECT_EQ(run({"predict", kb("drinking.kb"), "--task", "drinking"}).out, golden("predict_drinking.txt"));
  EXPECT_EQ(run({"predict", kb("scenarios.kb")}).out, golden("predict_scenarios.txt"));
  EXPECT_EQ(run({"predict", kb("scenarios.kb"), "--task", "missing"}).code, 2);
}

TEST(CliPredict, JsonArrayForAllTasks) {
  auto result = run({"predict", kb("scenarios.kb"), "--json"});
  auto json = nlohmann::json::parse(result.out);
  ASSERT_TRUE(json.is_array());
  EXPECT_EQ(json.size(), 5U);
  EXPECT_EQ(json[0]["predicted"], nlohmann::json::array({"eP"}));
}

TEST(CliLattice, DotGoldens) {
  EXPECT_EQ(run({"lattice", kb("unconstrained.kb")}).out, golden("lattice_diamond.dot"));
  EXPECT_EQ(run({"lattice", kb("unconstrained.kb"), "--constraint", "r1"}).out, golden("lattice_conditional.dot"));
  EXPECT_EQ(run({"lattice", kb("unconstrained.kb"), "--formula", "a & b"}).out, golden("lattice_conjunction.dot"));
  EXPECT_EQ(run({"lattice", kb("unconstrained.kb"), "--formula", "a | b"}).out, golden("lattice_disjunction.dot"));
  EXPECT_EQ(run({"lattice", kb("unconstrained.kb"), "--formula", "a <-> b"}).out,
            golden("lattice_biconditional.dot"));
}

TEST(CliLattice, AsciiTruthTable) {
  auto result = run({"lattice", kb("unconstrained.kb"), "--constraint", "r1", "--format", "ascii"});
  EXPECT_EQ(result.out, "a b | a -> b\nT T | T\nF T | T\nF F | T\n");
  EXPECT_EQ(run({"lattice", kb("unconstrained.kb"), "--format", "ascii"}).out, "a b\nT T\nT F\nF T\nF F\n");
}

TEST(CliLattice, DotIsByteStable) {
  auto first = run({"lattice", kb("scenarios.kb"), "--constraint", "norm"});
  auto second = run({"lattice", kb("scenarios.kb"), "--constraint", "norm"});
  EXPECT_EQ(first.code, 0);
  EXPECT_EQ(first.out, second.out);
}

TEST(CliLattice, Errors) {
  EXPECT_EQ(run({"lattice", kb("unconstrained.kb"), "--constraint", "r1", "--formula", "a"}).code, 2);
  EXPECT_EQ(run({"lattice", kb("unconstrained.kb"), "--formula", "a -> z"}).code, 2);
  EXPECT_EQ(run({"lattice", kb("unconstrained.kb"), "--format", "svg"}).code, 2);
}

TEST(CliOracle, PassesAndReportsCounts) {
  auto result = run({"oracle", "--max-props", "2", "--max-entities", "2"});
  EXPECT_EQ(result.code, 0);
  EXPECT_NE(result.out.find("contrapositive.cases: 141"), std::string::npos);
  EXPECT_NE(result.out.find("passed: true"), std::string::npos);
}

TEST(CliOracle, MutationFails) {
  auto result = run({"oracle", "--max-props", "2", "--max-entities", "2", "--mutate"});
  EXPECT_EQ(result.code, 3);
  EXPECT_NE(result.out.find("passed: false"), std::string::npos);
  EXPECT_EQ(run({"oracle", "--max-props", "9"}).code, 2);
}

}  // namespace
}  // namespace supervene
