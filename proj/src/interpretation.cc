#include "htdl/interpretation.h"

#include <algorithm>
#include <cstdint>
#include <iterator>

namespace htdl {

PairSet RoleExtension(const FiniteInterpretation& i, const Role& r) {
  auto it = i.role_ext.find(r.name);
  if (it == i.role_ext.end()) throw UnknownSymbolError(r.name);
  if (!r.inverse) return it->second;
  PairSet out;
  for (const auto& [a, b] : it->second) out.emplace(b, a);
  return out;
}

namespace {

int Individual(const FiniteInterpretation& i, const std::string& name) {
  auto it = i.individual_map.find(name);
  if (it == i.individual_map.end()) throw UnknownSymbolError(name);
  return it->second;
}

ElementSet Domain(const FiniteInterpretation& i) {
  ElementSet out;
  for (int d = 0; d < i.domain_size; ++d) out.insert(d);
  return out;
}

// Number of r-successors of d inside c.
int CountSuccessors(const PairSet& r, const ElementSet& c, int d) {
  int n = 0;
  for (auto it = r.lower_bound({d, INT32_MIN}); it != r.end() && it->first == d;
       ++it) {
    n += c.count(it->second) ? 1 : 0;
  }
  return n;
}

}  // namespace

ElementSet EvalConcept(const FiniteInterpretation& i, const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::kTop:
      return Domain(i);
    case ConceptKind::kBottom:
      return {};
    case ConceptKind::kAtomic: {
      auto it = i.concept_ext.find(c.name());
      if (it == i.concept_ext.end()) throw UnknownSymbolError(c.name());
      return it->second;
    }
    case ConceptKind::kNominal:
      return {Individual(i, c.name())};
    case ConceptKind::kNot: {
      ElementSet inner = EvalConcept(i, c.filler());
      ElementSet out;
      for (int d = 0; d < i.domain_size; ++d) {
        if (!inner.count(d)) out.insert(d);
      }
      return out;
    }
    case ConceptKind::kAnd: {
      ElementSet out = Domain(i);
      for (const Concept& o : c.operands()) {
        ElementSet part = EvalConcept(i, o);
        ElementSet next;
        std::set_intersection(out.begin(), out.end(), part.begin(), part.end(),
                              std::inserter(next, next.end()));
        out.swap(next);
      }
      return out;
    }
    case ConceptKind::kOr: {
      ElementSet out;
      for (const Concept& o : c.operands()) {
        ElementSet part = EvalConcept(i, o);
        out.insert(part.begin(), part.end());
      }
      return out;
    }
    case ConceptKind::kSelf: {
      PairSet r = RoleExtension(i, c.role());
      ElementSet out;
      for (int d = 0; d < i.domain_size; ++d) {
        if (r.count({d, d})) out.insert(d);
      }
      return out;
    }
    case ConceptKind::kExists:
    case ConceptKind::kForAll:
    case ConceptKind::kAtLeast:
    case ConceptKind::kAtMost:
      break;
  }
  PairSet r = RoleExtension(i, c.role());
  ElementSet filler = EvalConcept(i, c.filler());
  ElementSet out;
  for (int d = 0; d < i.domain_size; ++d) {
    int n = CountSuccessors(r, filler, d);
    bool member = false;
    switch (c.kind()) {
      case ConceptKind::kExists:
        member = n >= 1;
        break;
      case ConceptKind::kForAll:
        member = n == CountSuccessors(r, Domain(i), d);
        break;
      case ConceptKind::kAtLeast:
        member = n >= static_cast<int>(c.number());
        break;
      default:
        member = n <= static_cast<int>(c.number());
        break;
    }
    if (member) out.insert(d);
  }
  return out;
}

namespace {

bool Satisfies(const FiniteInterpretation& i, const RoleAxiom& axiom) {
  if (const auto* sub = std::get_if<SubRole>(&axiom)) {
    PairSet a = RoleExtension(i, sub->sub);
    PairSet b = RoleExtension(i, sub->super);
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }
  if (const auto* dis = std::get_if<DisjointRoles>(&axiom)) {
    PairSet a = RoleExtension(i, dis->first);
    PairSet b = RoleExtension(i, dis->second);
    for (const auto& p : a) {
      if (b.count(p)) return false;
    }
    return true;
  }
  const auto& prop = std::get<RoleProperty>(axiom);
  PairSet r = RoleExtension(i, prop.role);
  switch (prop.characteristic) {
    case RoleCharacteristic::kReflexive:
      for (int d = 0; d < i.domain_size; ++d) {
        if (!r.count({d, d})) return false;
      }
      return true;
    case RoleCharacteristic::kIrreflexive:
      for (int d = 0; d < i.domain_size; ++d) {
        if (r.count({d, d})) return false;
      }
      return true;
    case RoleCharacteristic::kSymmetric:
      for (const auto& [a, b] : r) {
        if (!r.count({b, a})) return false;
      }
      return true;
    case RoleCharacteristic::kAsymmetric:
      for (const auto& [a, b] : r) {
        if (r.count({b, a})) return false;
      }
      return true;
    case RoleCharacteristic::kTransitive:
      for (const auto& [a, b] : r) {
        for (auto it = r.lower_bound({b, INT32_MIN});
             it != r.end() && it->first == b; ++it) {
          if (!r.count({a, it->second})) return false;
        }
      }
      return true;
  }
  return true;
}

bool Satisfies(const FiniteInterpretation& i, const AboxAxiom& axiom) {
  if (const auto* ca = std::get_if<ConceptAssertion>(&axiom)) {
    return EvalConcept(i, ca->expression).count(Individual(i, ca->individual)) >
           0;
  }
  if (const auto* ra = std::get_if<RoleAssertion>(&axiom)) {
    return RoleExtension(i, ra->role)
               .count({Individual(i, ra->from), Individual(i, ra->to)}) > 0;
  }
  if (const auto* same = std::get_if<SameIndividual>(&axiom)) {
    return Individual(i, same->first) == Individual(i, same->second);
  }
  const auto& diff = std::get<DifferentIndividuals>(axiom);
  return Individual(i, diff.first) != Individual(i, diff.second);
}

}  // namespace

bool SatisfiesKB(const FiniteInterpretation& i, const KnowledgeBase& kb) {
  for (const RoleAxiom& ax : kb.rbox()) {
    if (!Satisfies(i, ax)) return false;
  }
  for (const Gci& g : kb.tbox()) {
    ElementSet lhs = EvalConcept(i, g.lhs);
    ElementSet rhs = EvalConcept(i, g.rhs);
    if (!std::includes(rhs.begin(), rhs.end(), lhs.begin(), lhs.end())) {
      return false;
    }
  }
  for (const AboxAxiom& ax : kb.abox()) {
    if (!Satisfies(i, ax)) return false;
  }
  return true;
}

}  // namespace htdl
