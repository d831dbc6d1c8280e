#include "htdl/families.h"

#include <vector>

namespace htdl {

namespace {

Concept Name(const std::string& name) { return Concept::Atomic(name); }

Concept Conj(std::vector<Concept> ops) {
  if (ops.empty()) return Concept::Top();
  if (ops.size() == 1) return ops.front();
  return Concept::And(std::move(ops));
}

void Require(bool ok, const std::string& message) {
  if (!ok) throw FamilyRangeError(message);
}

// t is an r-successor of s => value(t) = value(s) + 1 mod 2^k.
void AddCounter(KnowledgeBase& kb, const Role& r, int k) {
  for (int i = 0; i < k; ++i) {
    Concept bit = Name(CounterBit(i));
    Concept nbit = Concept::Not(bit);
    std::vector<Concept> low;
    for (int j = 0; j < i; ++j) low.push_back(Name(CounterBit(j)));
    // All lower bits set: bit i flips.
    std::vector<Concept> set_case = low;
    set_case.push_back(bit);
    kb.AddGci(Conj(set_case), Concept::ForAll(r, nbit));
    std::vector<Concept> clear_case = low;
    clear_case.push_back(nbit);
    kb.AddGci(Conj(clear_case), Concept::ForAll(r, bit));
    // Some lower bit clear: bit i is copied.
    for (int j = 0; j < i; ++j) {
      Concept nlow = Concept::Not(Name(CounterBit(j)));
      kb.AddGci(Concept::And({nlow, bit}), Concept::ForAll(r, bit));
      kb.AddGci(Concept::And({nlow, nbit}), Concept::ForAll(r, nbit));
    }
  }
}

Concept AllBits(int k) {
  std::vector<Concept> bits;
  for (int i = 0; i < k; ++i) bits.push_back(Name(CounterBit(i)));
  return Conj(bits);
}

}  // namespace

std::string CounterBit(int i) { return "B" + std::to_string(i); }

KnowledgeBase FamilyK1(int n) {
  Require(n >= 1, "K1 requires n >= 1");
  KnowledgeBase kb;
  Role r("R");
  kb.AddGci(Concept::Exists(r, Name("A")), Name("A"));
  kb.Add(AboxAxiom(ConceptAssertion{Concept::Not(Name("A")), "a0"}));
  for (int i = 1; i <= n; ++i) {
    std::string prev = "a" + std::to_string(i - 1);
    std::string b = "b" + std::to_string(i);
    std::string next = "a" + std::to_string(i);
    kb.Add(AboxAxiom(RoleAssertion{r, prev, b}));
    kb.Add(AboxAxiom(RoleAssertion{r, b, next}));
  }
  kb.Add(AboxAxiom(ConceptAssertion{Name("A"), "a" + std::to_string(n)}));
  return kb;
}

KnowledgeBase FamilyK2(int n, int m) {
  Require(n >= 1 && m >= 1, "K2 requires n >= 1 and m >= 1");
  KnowledgeBase kb;
  Role s("S");
  auto a = [](int i) { return Name("A" + std::to_string(i)); };
  for (int i = 1; i < n; ++i) {
    kb.AddGci(a(i), Concept::AtLeast(2, s, a(i + 1)));
  }
  kb.AddGci(a(n), a(1));
  for (int i = 1; i <= n; ++i) {
    std::vector<Concept> ops;
    for (int j = 1; j <= m; ++j) {
      ops.push_back(Concept::Or({Name("B" + std::to_string(j)),
                                 Name("C" + std::to_string(j))}));
    }
    kb.AddGci(a(i), Conj(ops));
  }
  kb.Add(AboxAxiom(ConceptAssertion{a(1), "a"}));
  return kb;
}

KnowledgeBase FamilyK11(int k) {
  Require(k >= 1, "K11 requires k >= 1");
  KnowledgeBase kb;
  Role l("L");
  Role r("R");
  Concept c = Name("C");
  Concept a = Name("A");
  kb.Add(AboxAxiom(ConceptAssertion{c, "a"}));
  kb.AddGci(c, Concept::And({Concept::Exists(l, c), Concept::Exists(r, c)}));
  AddCounter(kb, r, k);
  AddCounter(kb, l, k);
  kb.AddGci(AllBits(k), a);
  kb.AddGci(Concept::And({Concept::Exists(l, a), Concept::Exists(r, a)}), a);
  return kb;
}

KnowledgeBase FamilyK12(int k) {
  Require(k >= 1, "K12 requires k >= 1");
  KnowledgeBase kb = FamilyK11(k);
  kb.AddGci(AllBits(k), Concept::Nominal("b"));
  kb.AddGci(Name("A"),
            Concept::And({Concept::AtMost(2, Role("L", true), Concept::Top()),
                          Concept::AtMost(2, Role("R", true), Concept::Top())}));
  return kb;
}

}  // namespace htdl
