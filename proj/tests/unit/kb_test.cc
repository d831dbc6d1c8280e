#include "htdl/kb.h"

#include <random>

#include <gtest/gtest.h>

#include "htdl/interpretation.h"
#include "htdl/ontology_io.h"
#include "support/oracle.h"
#include "support/random_kb.h"

namespace htdl {
namespace {

Concept A() { return Concept::Atomic("A"); }
Concept B() { return Concept::Atomic("B"); }

bool InNnf(const Concept& c) {
  if (c.kind() == ConceptKind::kNot) {
    ConceptKind k = c.filler().kind();
    return k == ConceptKind::kAtomic || k == ConceptKind::kNominal ||
           k == ConceptKind::kSelf;
  }
  if (c.kind() == ConceptKind::kSelf) return true;
  for (const Concept& op : c.operands()) {
    if (!InNnf(op)) return false;
  }
  return true;
}

TEST(ConceptTest, AtLeastRejectsZero) {
  EXPECT_THROW(Concept::AtLeast(0, Role("R"), A()), std::invalid_argument);
  EXPECT_NO_THROW(Concept::AtMost(0, Role("R"), A()));
}

TEST(ConceptTest, StructuralEqualityAndOrder) {
  Concept x = Concept::And({A(), Concept::Exists(Role("R"), B())});
  Concept y = Concept::And({A(), Concept::Exists(Role("R"), B())});
  EXPECT_EQ(x, y);
  EXPECT_FALSE(x < y);
  EXPECT_NE(x, Concept::And({B(), A()}));
  EXPECT_EQ(x.ToString(), "(and A (some R B))");
}

TEST(ConceptTest, IsLiteral) {
  EXPECT_TRUE(A().IsLiteral());
  EXPECT_TRUE(Concept::Not(A()).IsLiteral());
  EXPECT_TRUE(Concept::Top().IsLiteral());
  EXPECT_FALSE(Concept::Nominal("a").IsLiteral());
  EXPECT_FALSE(Concept::Not(Concept::Not(A())).IsLiteral());
}

TEST(NnfTest, PushesNegationInward) {
  Concept c = Concept::Not(
      Concept::And({A(), Concept::Exists(Role("R"), Concept::Not(B()))}));
  EXPECT_EQ(Nnf(c),
            Concept::Or({Concept::Not(A()), Concept::ForAll(Role("R"), B())}));
  EXPECT_EQ(NegDot(Concept::AtLeast(2, Role("R"), A())),
            Concept::AtMost(1, Role("R"), A()));
  EXPECT_EQ(NegDot(Concept::AtMost(2, Role("R"), A())),
            Concept::AtLeast(3, Role("R"), A()));
  EXPECT_EQ(NegDot(Concept::Top()), Concept::Bottom());
}

// Nnf preserves meaning and reaches normal form on random concepts.
TEST(NnfTest, PreservesExtensionsOnRandomInterpretations) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    KnowledgeBase kb = testing::RandomAlcKB(rng);
    FiniteInterpretation interp;
    interp.domain_size = 3;
    std::bernoulli_distribution coin(0.5);
    for (const char* c : {"A", "B", "C"}) {
      interp.concept_ext[c];
      for (int e = 0; e < 3; ++e) {
        if (coin(rng)) interp.concept_ext[c].insert(e);
      }
    }
    for (const char* r : {"R", "S"}) {
      interp.role_ext[r];
      for (int e = 0; e < 3; ++e) {
        for (int f = 0; f < 3; ++f) {
          if (coin(rng)) interp.role_ext[r].insert({e, f});
        }
      }
    }
    for (const Gci& g : kb.tbox()) {
      for (const Concept& c : {g.lhs, g.rhs, Concept::Not(g.rhs)}) {
        Concept n = Nnf(c);
        EXPECT_TRUE(InNnf(n)) << n.ToString();
        EXPECT_EQ(EvalConcept(interp, n), EvalConcept(interp, c))
            << c.ToString();
      }
    }
  }
}

TEST(KnowledgeBaseTest, SignatureCollectsSymbols) {
  KnowledgeBase kb = ParseKB(R"(
    (subrole R S)
    (gci A (some (inv T) (oneof b)))
    (instance a B)
    (related a R c)
  )");
  const Signature& sig = kb.signature();
  EXPECT_EQ(sig.concepts, (std::set<std::string>{"A", "B"}));
  EXPECT_EQ(sig.roles, (std::set<std::string>{"R", "S", "T"}));
  EXPECT_TRUE(sig.individuals.count("a"));
  EXPECT_TRUE(sig.individuals.count("c"));
  EXPECT_TRUE(kb.HasNominals());
}

TEST(RoleHierarchyTest, ClosureIncludesInverses) {
  KnowledgeBase kb = ParseKB(R"(
    (subrole R S)
    (subrole S (inv T))
    (transitive T)
  )");
  RoleHierarchy h(kb.rbox());
  EXPECT_TRUE(h.IsSubRole(Role("R"), Role("S")));
  EXPECT_TRUE(h.IsSubRole(Role("R"), Role("T", true)));
  EXPECT_TRUE(h.IsSubRole(Role("R", true), Role("T")));
  EXPECT_FALSE(h.IsSubRole(Role("S"), Role("R")));
  EXPECT_TRUE(h.IsSubRole(Role("R"), Role("R")));
  EXPECT_TRUE(h.IsTransitive(Role("T", true)));
  EXPECT_FALSE(h.IsSimple(Role("S")) && h.IsSimple(Role("T")));
  EXPECT_TRUE(h.IsSimple(Role("R")));
  EXPECT_FALSE(h.IsSimple(Role("T")));
}

TEST(RoleHierarchyTest, NonSimpleRoleUnderTransitiveSubrole) {
  KnowledgeBase kb = ParseKB(R"(
    (subrole P Q)
    (transitive P)
  )");
  EXPECT_FALSE(IsSimple(Role("Q"), kb.rbox()));
  EXPECT_TRUE(IsSimple(Role("Z"), kb.rbox()));
}

TEST(SimplicityTest, ReportsNumberRestrictionsOnTransitiveRoles) {
  KnowledgeBase kb;
  kb.Add(RoleProperty{RoleCharacteristic::kTransitive, Role("R")});
  kb.AddGci(Concept::Atomic("A"), Concept::AtMost(1, Role("R"), B()));
  std::vector<SimplicityViolation> v = CheckSimplicity(kb);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].role.name, "R");
}

}  // namespace
}  // namespace htdl
