#include "support/random_kb.h"

#include <string>
#include <vector>

namespace htdl::testing {
namespace {

int Uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Concept RandomAlcConcept(std::mt19937_64& rng, int depth) {
  static const char* kNames[] = {"A", "B", "C"};
  static const char* kRoles[] = {"R", "S"};
  int pick = Uniform(rng, 0, depth == 0 ? 3 : 8);
  switch (pick) {
    case 0:
    case 1:
    case 2:
      return Concept::Atomic(kNames[Uniform(rng, 0, 2)]);
    case 3:
      return Uniform(rng, 0, 3) == 0 ? Concept::Bottom() : Concept::Top();
    case 4:
      return Concept::Not(RandomAlcConcept(rng, depth - 1));
    case 5:
      return Concept::And({RandomAlcConcept(rng, depth - 1),
                           RandomAlcConcept(rng, depth - 1)});
    case 6:
      return Concept::Or({RandomAlcConcept(rng, depth - 1),
                          RandomAlcConcept(rng, depth - 1)});
    case 7:
      return Concept::Exists(Role(kRoles[Uniform(rng, 0, 1)]),
                             RandomAlcConcept(rng, depth - 1));
    default:
      return Concept::ForAll(Role(kRoles[Uniform(rng, 0, 1)]),
                             RandomAlcConcept(rng, depth - 1));
  }
}

Concept Name(std::mt19937_64& rng) {
  return Concept::Atomic("H" + std::to_string(Uniform(rng, 0, 5)));
}

Role HornRole(std::mt19937_64& rng) {
  Role r(Uniform(rng, 0, 1) == 0 ? "R" : "S");
  return Uniform(rng, 0, 4) == 0 ? r.Inverse() : r;
}

}  // namespace

KnowledgeBase RandomAlcKB(std::mt19937_64& rng) {
  KnowledgeBase kb;
  int axioms = Uniform(rng, 1, 4);
  for (int i = 0; i < axioms; ++i) {
    int kind = Uniform(rng, 0, 9);
    if (kind < 6) {
      kb.AddGci(RandomAlcConcept(rng, 2), RandomAlcConcept(rng, 2));
    } else if (kind < 9) {
      kb.Add(ConceptAssertion{RandomAlcConcept(rng, 2),
                              Uniform(rng, 0, 1) == 0 ? "a" : "b"});
    } else {
      kb.Add(RoleAssertion{Role(Uniform(rng, 0, 1) == 0 ? "R" : "S"), "a",
                           "b"});
    }
  }
  return kb;
}

KnowledgeBase RandomHornKB(std::mt19937_64& rng) {
  KnowledgeBase kb;
  int axioms = Uniform(rng, 2, 8);
  for (int i = 0; i < axioms; ++i) {
    switch (Uniform(rng, 0, 6)) {
      case 0:
        kb.AddGci(Concept::And({Name(rng), Name(rng)}), Name(rng));
        break;
      case 1:
        kb.AddGci(Name(rng), Concept::Exists(HornRole(rng), Name(rng)));
        break;
      case 2:
        kb.AddGci(Concept::Exists(HornRole(rng), Name(rng)), Name(rng));
        break;
      case 3:
        kb.AddGci(Name(rng), Concept::ForAll(HornRole(rng), Name(rng)));
        break;
      case 4:
        kb.AddGci(Name(rng), Concept::Not(Name(rng)));
        break;
      case 5:
        kb.AddGci(Name(rng),
                  Concept::AtMost(1, HornRole(rng), Name(rng)));
        break;
      default:
        kb.AddGci(Name(rng),
                  Concept::And({Name(rng),
                                Concept::Exists(HornRole(rng), Name(rng))}));
        break;
    }
  }
  kb.Add(ConceptAssertion{Name(rng), "a"});
  if (Uniform(rng, 0, 1) == 0) {
    kb.Add(RoleAssertion{Role("R"), "a", "b"});
    kb.Add(ConceptAssertion{Name(rng), "b"});
  }
  return kb;
}

}  // namespace htdl::testing
