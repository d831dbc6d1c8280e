#include "htdl/families.h"

#include <gtest/gtest.h>

#include "htdl/ontology_io.h"
#include "htdl/preprocessing.h"
#include "htdl/reasoner.h"

namespace htdl {
namespace {

TEST(FamilyK1Test, ExactAxioms) {
  EXPECT_EQ(SerializeKB(FamilyK1(2)),
            "(gci (some R A) A)\n"
            "(instance a0 (not A))\n"
            "(related a0 R b1)\n"
            "(related b1 R a1)\n"
            "(related a1 R b2)\n"
            "(related b2 R a2)\n"
            "(instance a2 A)\n");
}

TEST(FamilyK2Test, ExactAxioms) {
  EXPECT_EQ(SerializeKB(FamilyK2(2, 1)),
            "(gci A1 (atleast 2 S A2))\n"
            "(gci A2 A1)\n"
            "(gci A1 (or B1 C1))\n"
            "(gci A2 (or B1 C1))\n"
            "(instance a A1)\n");
}

TEST(FamilyTest, RangeErrors) {
  EXPECT_THROW(FamilyK1(0), FamilyRangeError);
  EXPECT_THROW(FamilyK2(0, 1), FamilyRangeError);
  EXPECT_THROW(FamilyK2(1, 0), FamilyRangeError);
  EXPECT_THROW(FamilyK11(0), FamilyRangeError);
  EXPECT_THROW(FamilyK12(-1), FamilyRangeError);
}

TEST(FamilyTest, CounterBitNames) {
  EXPECT_EQ(CounterBit(0), "B0");
  EXPECT_EQ(CounterBit(11), "B11");
}

TEST(FamilyTest, K12AddsNominalAndAtMost) {
  KnowledgeBase k11 = FamilyK11(2);
  KnowledgeBase k12 = FamilyK12(2);
  EXPECT_EQ(k12.tbox().size(), k11.tbox().size() + 2);
  EXPECT_FALSE(HasNominalGuards(Preprocess(k11).clauses));
  EXPECT_TRUE(HasNominalGuards(Preprocess(k12).clauses));
}

TEST(FamilyTest, SerializedFamiliesReparseAndClausify) {
  for (const KnowledgeBase& kb :
       {FamilyK1(3), FamilyK2(3, 2), FamilyK11(2), FamilyK12(2)}) {
    std::string text = SerializeKB(kb);
    KnowledgeBase back = ParseKB(text);
    EXPECT_EQ(SerializeKB(back), text);
    Clausification c = Preprocess(back);
    for (const HTClause& clause : c.clauses) {
      EXPECT_TRUE(ValidateHTClause(clause).empty()) << text;
    }
  }
}

TEST(FamilyTest, Verdicts) {
  EXPECT_EQ(IsSatisfiable(FamilyK1(4)), Verdict::kUnsat);
  EXPECT_EQ(IsSatisfiable(FamilyK2(3, 2)), Verdict::kSat);
  EXPECT_EQ(IsSatisfiable(FamilyK11(2)), Verdict::kSat);
}

}  // namespace
}  // namespace htdl
