// HT-ABoxes: per-individual assertion storage with copy-on-write sharing,
// pruning, merging and renamings.

#ifndef HTDL_ABOX_H_
#define HTDL_ABOX_H_

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/flat_map.hpp>

#include "htdl/individuals.h"
#include "htdl/vocabulary.h"

namespace htdl {

// @^at_{<= bound role.filler}
struct AnnotationRef {
  IndId at = kNone;
  uint32_t bound = 0;
  RoleRef role;
  ConceptId filler = kNone;
  friend auto operator<=>(const AnnotationRef&, const AnnotationRef&) = default;
};

struct EqAssertion {
  IndId s = kNone;
  IndId t = kNone;
  std::optional<AnnotationRef> annotation;
  Depth depth = 0;
};

struct IndState {
  boost::container::flat_map<ConceptId, Depth> concepts;
  // (role, other endpoint)
  boost::container::flat_map<std::pair<RoleId, IndId>, Depth> out;
  boost::container::flat_map<std::pair<RoleId, IndId>, Depth> in;
  boost::container::flat_map<IndId, Depth> neq;
  uint32_t child_counter = 0;

  bool empty() const {
    return concepts.empty() && out.empty() && in.empty() && neq.empty();
  }
};

// One added or removed assertion, kept for trace export.
struct AssertionChange {
  enum class Kind { kConcept, kRole, kEquality, kInequality, kClash, kRenaming };
  bool added = true;
  Kind kind = Kind::kConcept;
  ConceptId concept_ = kNone;
  RoleId role = kNone;
  IndId a = kNone;
  IndId b = kNone;
  std::optional<AnnotationRef> annotation;
};

class ABox {
 public:
  // ---- queries ----
  bool alive(IndId id) const {
    return id < inds_.size() && inds_[id] != nullptr;
  }
  // nullptr for individuals that occur in no assertion.
  const IndState* state(IndId id) const {
    return id < inds_.size() ? inds_[id].get() : nullptr;
  }
  size_t capacity() const { return inds_.size(); }
  size_t alive_count() const { return alive_count_; }
  std::vector<IndId> AliveIndividuals() const;

  std::optional<Depth> ConceptDepth(IndId s, ConceptId c) const;
  bool HasConcept(IndId s, ConceptId c) const {
    return ConceptDepth(s, c).has_value();
  }
  std::optional<Depth> EdgeDepth(RoleId r, IndId s, IndId t) const;
  bool HasEdge(RoleId r, IndId s, IndId t) const {
    return EdgeDepth(r, s, t).has_value();
  }
  // ar(R, s, t)
  bool HasAr(RoleRef r, IndId s, IndId t) const {
    return r.inverse ? HasEdge(r.role, t, s) : HasEdge(r.role, s, t);
  }
  std::optional<Depth> ArDepth(RoleRef r, IndId s, IndId t) const {
    return r.inverse ? EdgeDepth(r.role, t, s) : EdgeDepth(r.role, s, t);
  }
  bool HasNeq(IndId s, IndId t) const;
  std::optional<Depth> NeqDepth(IndId s, IndId t) const;
  // Unannotated s = s counts as present.
  bool HasEquality(IndId s, IndId t,
                   const std::optional<AnnotationRef>& ann) const;
  const std::vector<EqAssertion>& equalities() const { return eqs_; }
  const std::map<IndId, IndId>& renamings() const { return renamings_; }
  IndId Canonical(IndId root) const;

  bool clash() const { return clash_; }
  Depth clash_depth() const { return clash_depth_; }
  size_t assertion_count() const;

  // ---- mutation; each returns whether the ABox changed ----
  bool AddConcept(IndId s, ConceptId c, Depth d);
  bool AddEdge(RoleId r, IndId s, IndId t, Depth d);
  bool AddAr(RoleRef r, IndId s, IndId t, Depth d) {
    return r.inverse ? AddEdge(r.role, t, s, d) : AddEdge(r.role, s, t, d);
  }
  bool AddNeq(IndId s, IndId t, Depth d);
  bool AddEquality(IndId s, IndId t, std::optional<AnnotationRef> ann,
                   Depth d);
  void SetClash(Depth d);

  // Removes every assertion mentioning a strict descendant of s.
  void Prune(IndId s, const IndividualPool& pool);
  // prune(s), then replace s by t everywhere; rewritten assertions get depth
  // max(own, d). Adds s -> t when both are roots.
  void Merge(IndId s, IndId t, Depth d, const IndividualPool& pool);
  // Next unused child index of s on this branch.
  uint32_t NextChildIndex(IndId s);

  // ---- change tracking, drained by the engine ----
  std::vector<IndId> TakeTouched() { return std::exchange(touched_, {}); }
  bool TakeLabelsChanged() { return std::exchange(labels_changed_, false); }
  bool TakeGuardChanged() { return std::exchange(guard_changed_, false); }
  void set_vocabulary(const Vocabulary* v) { vocab_ = v; }
  void set_logging(bool on) { logging_ = on; }
  std::vector<AssertionChange> TakeLog() { return std::exchange(log_, {}); }

 private:
  IndState& Mut(IndId id);
  void Release(IndId id);  // drops an empty state
  void Touch(IndId id) { touched_.push_back(id); }
  void ConceptChanged(ConceptId c);
  void Log(AssertionChange change) {
    if (logging_) log_.push_back(std::move(change));
  }
  void RemoveAllOf(IndId d);
  void PutConceptMin(IndId s, ConceptId c, Depth d);
  void PutEdgeMin(RoleId r, IndId s, IndId t, Depth d);
  void PutNeqMin(IndId s, IndId t, Depth d);

  std::vector<std::shared_ptr<IndState>> inds_;
  size_t alive_count_ = 0;
  std::vector<EqAssertion> eqs_;
  std::map<IndId, IndId> renamings_;
  bool clash_ = false;
  Depth clash_depth_ = 0;

  const Vocabulary* vocab_ = nullptr;
  std::vector<IndId> touched_;
  bool labels_changed_ = false;
  bool guard_changed_ = false;
  bool logging_ = false;
  std::vector<AssertionChange> log_;
};

// Checks the HT-ABox conditions; empty when all hold.
std::vector<std::string> ValidateHTABox(const ABox& abox,
                                        const IndividualPool& pool,
                                        const Vocabulary& vocab);

std::string AssertionChangeText(const AssertionChange& change,
                                const IndividualPool& pool,
                                const Vocabulary& vocab);

}  // namespace htdl

#endif  // HTDL_ABOX_H_
