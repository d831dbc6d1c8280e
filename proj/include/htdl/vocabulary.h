// Dense ids for the concepts and roles an engine run manipulates.

#ifndef HTDL_VOCABULARY_H_
#define HTDL_VOCABULARY_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "htdl/kb.h"

namespace htdl {

using ConceptId = uint32_t;
using RoleId = uint32_t;
using IndId = uint32_t;
using Depth = uint32_t;

inline constexpr uint32_t kNone = UINT32_MAX;

struct RoleRef {
  RoleId role = 0;
  bool inverse = false;
  friend auto operator<=>(const RoleRef&, const RoleRef&) = default;
};

enum class LiteralKind { kTop, kBottom, kAtomic, kNegated, kAtLeast };

struct ConceptEntry {
  Concept concept_;
  LiteralKind kind = LiteralKind::kTop;
  std::string text;              // clause notation
  bool guard = false;            // nominal-guard concept O_a
  ConceptId complement = kNone;  // A <-> !A
  uint32_t number = 0;           // at-least only
  RoleRef role;                  // at-least only
  ConceptId filler = kNone;      // at-least only
};

class Vocabulary {
 public:
  Vocabulary();

  // Accepts literals and at-least concepts with literal fillers.
  ConceptId InternConcept(const Concept& c);
  std::optional<ConceptId> FindConcept(const Concept& c) const;
  RoleId InternRole(const std::string& name);
  RoleRef InternRole(const Role& r) {
    return RoleRef{InternRole(r.name), r.inverse};
  }
  std::optional<RoleId> FindRole(const std::string& name) const;

  const ConceptEntry& concept_entry(ConceptId id) const { return concepts_[id]; }
  const std::string& role_name(RoleId id) const { return roles_[id]; }
  std::string RoleRefText(RoleRef r) const {
    return r.inverse ? roles_[r.role] + "-" : roles_[r.role];
  }
  size_t num_concepts() const { return concepts_.size(); }
  size_t num_roles() const { return roles_.size(); }

  ConceptId top() const { return top_; }
  ConceptId bottom() const { return bottom_; }
  bool IsAtomic(ConceptId id) const {
    return concepts_[id].kind == LiteralKind::kAtomic;
  }

 private:
  ConceptId Add(ConceptEntry entry);

  std::vector<ConceptEntry> concepts_;
  std::map<Concept, ConceptId> concept_ids_;
  std::vector<std::string> roles_;
  std::map<std::string, RoleId> role_ids_;
  ConceptId top_ = 0;
  ConceptId bottom_ = 0;
};

}  // namespace htdl

#endif  // HTDL_VOCABULARY_H_
