#include "htdl/interpretation.h"

#include <random>

#include <gtest/gtest.h>

#include "htdl/ontology_io.h"
#include "support/oracle.h"
#include "support/random_kb.h"

namespace htdl {
namespace {

FiniteInterpretation Triangle() {
  FiniteInterpretation i;
  i.domain_size = 3;
  i.concept_ext["A"] = {0, 1};
  i.role_ext["R"] = {{0, 1}, {1, 2}, {2, 0}, {0, 2}};
  i.individual_map = {{"a", 0}, {"b", 1}};
  return i;
}

TEST(EvalConceptTest, Constructors) {
  FiniteInterpretation i = Triangle();
  Role r("R");
  EXPECT_EQ(EvalConcept(i, Concept::Exists(r, Concept::Atomic("A"))),
            (ElementSet{0, 2}));
  EXPECT_EQ(EvalConcept(i, Concept::ForAll(r, Concept::Atomic("A"))),
            (ElementSet{2}));
  EXPECT_EQ(EvalConcept(i, Concept::AtLeast(2, r, Concept::Top())),
            (ElementSet{0}));
  EXPECT_EQ(EvalConcept(i, Concept::AtMost(0, r.Inverse(), Concept::Top())),
            (ElementSet{}));
  EXPECT_EQ(EvalConcept(i, Concept::Nominal("b")), (ElementSet{1}));
  EXPECT_EQ(EvalConcept(i, Concept::Not(Concept::Atomic("A"))),
            (ElementSet{2}));
  EXPECT_EQ(EvalConcept(i, Concept::Self(r)), (ElementSet{}));
  EXPECT_EQ(RoleExtension(i, r.Inverse()).count({1, 0}), 1u);
}

TEST(EvalConceptTest, UnknownIndividualThrows) {
  FiniteInterpretation i = Triangle();
  EXPECT_THROW(EvalConcept(i, Concept::Nominal("zz")), UnknownSymbolError);
}

TEST(SatisfiesKBTest, AxiomKinds) {
  FiniteInterpretation i = Triangle();
  EXPECT_TRUE(SatisfiesKB(i, ParseKB("(instance a A) (related a R b)")));
  EXPECT_FALSE(SatisfiesKB(i, ParseKB("(related b R a)")));
  EXPECT_FALSE(SatisfiesKB(i, ParseKB("(transitive R)")));
  EXPECT_TRUE(SatisfiesKB(i, ParseKB("(irreflexive R)")));
  EXPECT_TRUE(SatisfiesKB(i, ParseKB("(different a b)")));
  EXPECT_FALSE(SatisfiesKB(i, ParseKB("(same a b)")));
  EXPECT_TRUE(SatisfiesKB(i, ParseKB("(gci A (some R top))")));
}

// The library evaluator and the oracle's three-valued evaluator agree on
// complete interpretations.
TEST(SatisfiesKBTest, AgreesWithOracleEvaluator) {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution coin(0.5);
  int agreements = 0;
  for (int n = 0; n < 300; ++n) {
    KnowledgeBase kb = testing::RandomAlcKB(rng);
    FiniteInterpretation i;
    i.domain_size = 1 + static_cast<int>(rng() % 3);
    for (const char* c : {"A", "B", "C"}) {
      i.concept_ext[c];
      for (int e = 0; e < i.domain_size; ++e) {
        if (coin(rng)) i.concept_ext[c].insert(e);
      }
    }
    for (const char* r : {"R", "S"}) {
      i.role_ext[r];
      for (int e = 0; e < i.domain_size; ++e) {
        for (int f = 0; f < i.domain_size; ++f) {
          if (coin(rng)) i.role_ext[r].insert({e, f});
        }
      }
    }
    i.individual_map["a"] = static_cast<int>(rng() % i.domain_size);
    i.individual_map["b"] = static_cast<int>(rng() % i.domain_size);
    ASSERT_EQ(SatisfiesKB(i, kb), testing::OracleSatisfies(i, kb))
        << SerializeKB(kb);
    ++agreements;
  }
  EXPECT_EQ(agreements, 300);
}

TEST(OracleTest, FindsModelsOnlyWhenTheyExist) {
  auto model = testing::FindModel(
      ParseKB("(instance a (and A (some R (not A))))"), 3);
  ASSERT_TRUE(model.has_value());
  EXPECT_EQ(model->domain_size, 2);
  EXPECT_FALSE(testing::FindModel(
                   ParseKB("(instance a (and A (all R bottom) (some R top)))"),
                   3)
                   .has_value());
}

}  // namespace
}  // namespace htdl
