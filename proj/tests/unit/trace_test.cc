#include "htdl/trace.h"

#include <algorithm>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "htdl/families.h"
#include "htdl/ontology_io.h"
#include "htdl/preprocessing.h"
#include "support/worked_examples.h"

namespace htdl {
namespace {

std::vector<TraceRecord> Record(const std::vector<HTClause>& clauses,
                                const InputAbox& abox) {
  Program program(clauses);
  std::vector<TraceRecord> trace;
  EngineConfig config;
  config.trace = &trace;
  Derive(program, abox, config);
  return trace;
}

std::vector<TraceRecord> RecordText(const char* text) {
  ClauseSet set = ParseClauseSet(text);
  return Record(set.clauses, set.abox);
}

TEST(TraceTest, DeterministicRunIsAPath) {
  Clausification c = Preprocess(FamilyK1(3));
  std::vector<TraceRecord> trace = Record(c.clauses, c.abox);
  ASSERT_FALSE(trace.empty());
  EXPECT_EQ(trace.front().rule, "init");
  EXPECT_EQ(trace.front().parent, -1);
  for (size_t i = 1; i < trace.size(); ++i) {
    EXPECT_EQ(trace[i].parent, static_cast<int64_t>(trace[i - 1].node));
    EXPECT_EQ(trace[i].choice, 0u);
  }
  std::string dot = ExportTrace(trace, TraceFormat::kDot);
  EXPECT_EQ(dot.rfind("digraph derivation {\n", 0), 0u);
  EXPECT_EQ(static_cast<size_t>(std::count(dot.begin(), dot.end(), '>')),
            trace.size() - 1);
}

TEST(TraceTest, ThreeWayChoiceHasThreeChildren) {
  ClauseSet set = ParseClauseSet(testing::kThreeWayChoice);
  set.clauses.push_back(ParseClauseSet("B(x) -> bottom").clauses.front());
  set.clauses.push_back(ParseClauseSet("C(x) -> bottom").clauses.front());
  std::vector<TraceRecord> trace = Record(set.clauses, set.abox);
  std::vector<size_t> choices;
  int64_t branch_parent = -2;
  for (const TraceRecord& r : trace) {
    if (r.rule != "hyp") continue;
    if (branch_parent == -2) branch_parent = r.parent;
    if (r.parent == branch_parent) choices.push_back(r.choice);
  }
  EXPECT_EQ(choices, (std::vector<size_t>{0, 1, 2}));
}

TEST(TraceTest, EmptyDerivationIsASingleNode) {
  std::vector<TraceRecord> trace = RecordText("A(a)");
  ASSERT_EQ(trace.size(), 1u);
  EXPECT_EQ(ExportTrace(trace, TraceFormat::kDot),
            "digraph derivation {\n  n0 [label=\"0: init\"];\n}\n");
}

TEST(TraceTest, JsonLinesParse) {
  std::vector<TraceRecord> trace = RecordText(testing::kThreeWayChoice);
  std::istringstream in(ExportTrace(trace, TraceFormat::kJsonLines));
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    nlohmann::json j = nlohmann::json::parse(line);
    EXPECT_EQ(j["node"].get<uint64_t>(), trace[n].node);
    EXPECT_EQ(j["rule"].get<std::string>(), trace[n].rule);
    EXPECT_TRUE(j["added"].is_array());
    ++n;
  }
  EXPECT_EQ(n, trace.size());
}

TEST(TraceTest, ByteDeterministic) {
  Clausification c = Preprocess(FamilyK2(2, 2));
  std::vector<TraceRecord> a = Record(c.clauses, c.abox);
  std::vector<TraceRecord> b = Record(c.clauses, c.abox);
  EXPECT_EQ(ExportTrace(a, TraceFormat::kDot), ExportTrace(b, TraceFormat::kDot));
  EXPECT_EQ(ExportTrace(a, TraceFormat::kJsonLines),
            ExportTrace(b, TraceFormat::kJsonLines));
}

}  // namespace
}  // namespace htdl
