#include "htdl/preprocessing.h"

#include <random>

#include <gtest/gtest.h>

#include "htdl/families.h"
#include "htdl/ontology_io.h"
#include "htdl/reasoner.h"
#include "support/oracle.h"
#include "support/random_kb.h"

namespace htdl {
namespace {

TEST(OmegaTest, ReplacesTransitivityByPropagationAxioms) {
  KnowledgeBase kb = ParseKB(R"(
    (subrole S R)
    (transitive S)
    (gci A (all R B))
  )");
  KnowledgeBase out = OmegaEncode(kb);
  for (const RoleAxiom& ax : out.rbox()) {
    const auto* p = std::get_if<RoleProperty>(&ax);
    EXPECT_FALSE(p && p->characteristic == RoleCharacteristic::kTransitive);
  }
  Concept all_r_b = Concept::ForAll(Role("R"), Concept::Atomic("B"));
  Gci expected{all_r_b,
               Concept::ForAll(Role("S"), Concept::ForAll(Role("S"),
                                                          Concept::Atomic("B")))};
  bool found = false;
  for (const Gci& g : out.tbox()) found = found || g == expected;
  EXPECT_TRUE(found) << SerializeKB(out);
}

TEST(OmegaTest, TransitiveChainsAreFollowed) {
  EXPECT_EQ(IsSatisfiable(ParseKB(R"(
    (transitive R)
    (instance a (and (some R (some R (some R A))) (all R (not A))))
  )")),
            Verdict::kUnsat);
  EXPECT_EQ(IsSatisfiable(ParseKB(R"(
    (instance a (and (some R (some R A)) (all R (not A))))
  )")),
            Verdict::kSat);
}

TEST(DeltaTest, OutputIsNormalized) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    KnowledgeBase kb = testing::RandomAlcKB(rng);
    KnowledgeBase d = DeltaNormalize(OmegaEncode(kb));
    for (const Gci& g : d.tbox()) {
      EXPECT_TRUE(IsNormalizedGci(g)) << SerializeAxiom(g);
    }
    for (const AboxAxiom& a : d.abox()) {
      if (const auto* c = std::get_if<ConceptAssertion>(&a)) {
        EXPECT_TRUE(c->expression.IsLiteral()) << SerializeAxiom(a);
      }
    }
  }
}

// Normalization is a conservative extension, so small models survive it in
// both directions.
TEST(DeltaTest, PreservesSmallModels) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 80; ++i) {
    KnowledgeBase kb = testing::RandomAlcKB(rng);
    KnowledgeBase d = DeltaNormalize(kb);
    EXPECT_EQ(testing::FindModel(kb, 2).has_value(),
              testing::FindModel(d, 2).has_value())
        << SerializeKB(kb);
  }
}

TEST(XiTest, ClausesSatisfyHTConditions) {
  std::mt19937_64 rng(31);
  std::vector<KnowledgeBase> kbs = {FamilyK1(2), FamilyK2(3, 2), FamilyK11(2),
                                    FamilyK12(2)};
  for (int i = 0; i < 100; ++i) kbs.push_back(testing::RandomAlcKB(rng));
  kbs.push_back(ParseKB(R"(
    (subrole R S) (symmetric S) (reflexive T) (asymmetric P)
    (disjoint-roles R P) (irreflexive P)
    (gci (or (oneof a) (oneof b)) (and (self T) (atmost 2 (inv S) (not A))))
    (gci A (atleast 3 R (oneof c)))
    (instance a (not (self P)))
    (related a R b) (same b c) (different a c)
  )"));
  for (const KnowledgeBase& kb : kbs) {
    Clausification c = Preprocess(kb);
    for (const HTClause& clause : c.clauses) {
      std::vector<std::string> errors = ValidateHTClause(clause);
      EXPECT_TRUE(errors.empty()) << clause.ToString() << ": " << errors[0];
    }
  }
}

TEST(XiTest, AtMostBecomesAnnotatedEqualities) {
  Clausification c = Preprocess(ParseKB("(gci top (atmost 2 (inv S) top))"));
  std::string text = SerializeClauses(c.clauses, c.abox);
  EXPECT_NE(text.find("S(y1,x) ^ S(y2,x) ^ S(y3,x) -> "
                      "y1 = y2 @{<=2 S-.top}^x v y1 = y3 @{<=2 S-.top}^x v "
                      "y2 = y3 @{<=2 S-.top}^x"),
            std::string::npos)
      << text;
}

TEST(XiTest, NominalsUseGuardConcepts) {
  Clausification c = Preprocess(ParseKB("(gci A (oneof b))"));
  EXPECT_TRUE(HasNominalGuards(c.clauses));
  std::string text = SerializeClauses(c.clauses, c.abox);
  EXPECT_NE(text.find("A(x) ^ O%b(z1) -> x = z1"), std::string::npos) << text;
  EXPECT_NE(text.find("O%b(b)"), std::string::npos) << text;
}

TEST(XiTest, RejectsUnnormalizedInput) {
  EXPECT_THROW(XiClausify(ParseKB("(gci (some R A) B)")),
               std::invalid_argument);
}

TEST(PreprocessTest, HornDetection) {
  EXPECT_TRUE(IsHorn(Preprocess(FamilyK1(3)).clauses));
  EXPECT_FALSE(IsHorn(Preprocess(FamilyK2(1, 1)).clauses));
  std::mt19937_64 rng(37);
  for (int i = 0; i < 100; ++i) {
    KnowledgeBase kb = testing::RandomHornKB(rng);
    EXPECT_TRUE(IsHorn(Preprocess(kb).clauses)) << SerializeKB(kb);
  }
}

TEST(PreprocessTest, DeterministicOutput) {
  KnowledgeBase kb = FamilyK12(2);
  Clausification a = Preprocess(kb);
  Clausification b = Preprocess(kb);
  EXPECT_EQ(SerializeClauses(a.clauses, a.abox),
            SerializeClauses(b.clauses, b.abox));
  Concept c = Concept::Exists(Role("R"), Concept::Atomic("A"));
  EXPECT_EQ(FreshConceptName(c), FreshConceptName(c));
  EXPECT_EQ(FreshConceptName(c).rfind(kFreshConceptPrefix, 0), 0u);
}

TEST(ValidateHTClauseTest, FlagsBadShapes) {
  ClauseSet cs = ParseClauseSet(
      "R(x,y1) ^ R(y1,y2) -> A(x)\n"
      "A(x) -> B(y1)\n");
  for (const HTClause& c : cs.clauses) {
    EXPECT_FALSE(ValidateHTClause(c).empty()) << c.ToString();
  }
}

}  // namespace
}  // namespace htdl
