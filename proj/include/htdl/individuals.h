// Structured individual names: named, root extensions u.<R,B,i> and
// blockable successors s.i.

#ifndef HTDL_INDIVIDUALS_H_
#define HTDL_INDIVIDUALS_H_

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "htdl/vocabulary.h"

namespace htdl {

enum class IndividualKind { kNamed, kRootExt, kBlockable };

struct IndividualInfo {
  IndividualKind kind = IndividualKind::kNamed;
  std::string text;
  IndId base = kNone;  // rootExt base or blockable predecessor
  uint32_t index = 0;
  RoleRef role;               // rootExt only
  ConceptId filler = kNone;   // rootExt only
  uint32_t tree_depth = 0;    // number of blockable steps below the root
  std::vector<IndId> children;
};

// Append-only arena. Ids grow with creation, so an id doubles as the
// creation stamp and every predecessor has a smaller id than its successors.
class IndividualPool {
 public:
  IndId Named(const std::string& name);
  IndId RootExt(IndId base, RoleRef role, ConceptId filler, uint32_t index,
                const Vocabulary& vocab);
  IndId Blockable(IndId parent, uint32_t index);

  std::optional<IndId> FindNamed(const std::string& name) const;
  std::optional<IndId> FindRootExt(IndId base, RoleRef role, ConceptId filler,
                                   uint32_t index) const;

  const IndividualInfo& info(IndId id) const { return infos_[id]; }
  const std::string& Name(IndId id) const { return infos_[id].text; }
  size_t size() const { return infos_.size(); }

  bool IsNamed(IndId id) const {
    return infos_[id].kind == IndividualKind::kNamed;
  }
  bool IsRoot(IndId id) const {
    return infos_[id].kind != IndividualKind::kBlockable;
  }
  bool IsBlockable(IndId id) const { return !IsRoot(id); }
  // Predecessor of a blockable individual, kNone for roots.
  IndId Parent(IndId id) const {
    return IsBlockable(id) ? infos_[id].base : kNone;
  }
  bool IsSuccessor(IndId s, IndId of) const { return Parent(s) == of; }
  // Strict descendant.
  bool IsDescendant(IndId d, IndId of) const;
  // Strict descendants ever created, in id order.
  std::vector<IndId> Descendants(IndId of) const;

 private:
  IndId Add(IndividualInfo info);

  std::vector<IndividualInfo> infos_;
  std::map<std::string, IndId> named_;
  std::map<std::tuple<IndId, RoleRef, ConceptId, uint32_t>, IndId> root_ext_;
  std::map<std::pair<IndId, uint32_t>, IndId> blockable_;
};

}  // namespace htdl

#endif  // HTDL_INDIVIDUALS_H_
