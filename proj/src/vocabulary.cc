#include "htdl/vocabulary.h"

#include <stdexcept>

#include "htdl/clause.h"

namespace htdl {

Vocabulary::Vocabulary() {
  top_ = InternConcept(Concept::Top());
  bottom_ = InternConcept(Concept::Bottom());
}

ConceptId Vocabulary::Add(ConceptEntry entry) {
  ConceptId id = static_cast<ConceptId>(concepts_.size());
  concept_ids_.emplace(entry.concept_, id);
  concepts_.push_back(std::move(entry));
  return id;
}

ConceptId Vocabulary::InternConcept(const Concept& c) {
  if (auto found = FindConcept(c)) return *found;
  ConceptEntry e;
  e.concept_ = c;
  e.text = ConceptText(c);
  switch (c.kind()) {
    case ConceptKind::kTop:
      e.kind = LiteralKind::kTop;
      return Add(std::move(e));
    case ConceptKind::kBottom:
      e.kind = LiteralKind::kBottom;
      return Add(std::move(e));
    case ConceptKind::kAtomic:
    case ConceptKind::kNot: {
      bool negated = c.kind() == ConceptKind::kNot;
      const Concept& atom = negated ? c.filler() : c;
      if (atom.kind() != ConceptKind::kAtomic) {
        throw std::invalid_argument("not a literal: " + c.ToString());
      }
      ConceptEntry pos;
      pos.concept_ = atom;
      pos.kind = LiteralKind::kAtomic;
      pos.text = ConceptText(atom);
      pos.guard = IsNominalGuard(atom.name());
      ConceptEntry neg = pos;
      neg.concept_ = Concept::Not(atom);
      neg.kind = LiteralKind::kNegated;
      neg.text = ConceptText(neg.concept_);
      ConceptId p = Add(std::move(pos));
      ConceptId n = Add(std::move(neg));
      concepts_[p].complement = n;
      concepts_[n].complement = p;
      return negated ? n : p;
    }
    case ConceptKind::kAtLeast: {
      ConceptId filler = InternConcept(c.filler());
      e.kind = LiteralKind::kAtLeast;
      e.number = c.number();
      e.role = InternRole(c.role());
      e.filler = filler;
      return Add(std::move(e));
    }
    default:
      throw std::invalid_argument("not an atom concept: " + c.ToString());
  }
}

std::optional<ConceptId> Vocabulary::FindConcept(const Concept& c) const {
  auto it = concept_ids_.find(c);
  if (it == concept_ids_.end()) return std::nullopt;
  return it->second;
}

RoleId Vocabulary::InternRole(const std::string& name) {
  auto [it, inserted] =
      role_ids_.emplace(name, static_cast<RoleId>(roles_.size()));
  if (inserted) roles_.push_back(name);
  return it->second;
}

std::optional<RoleId> Vocabulary::FindRole(const std::string& name) const {
  auto it = role_ids_.find(name);
  if (it == role_ids_.end()) return std::nullopt;
  return it->second;
}

}  // namespace htdl
