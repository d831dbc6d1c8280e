#include "htdl/abox.h"

#include <algorithm>
#include <set>

namespace htdl {

namespace {

bool SameEquality(const EqAssertion& e, IndId s, IndId t,
                  const std::optional<AnnotationRef>& ann) {
  if (e.annotation != ann) return false;
  return (e.s == s && e.t == t) || (e.s == t && e.t == s);
}

}  // namespace

std::vector<IndId> ABox::AliveIndividuals() const {
  std::vector<IndId> out;
  out.reserve(alive_count_);
  for (IndId i = 0; i < inds_.size(); ++i) {
    if (inds_[i]) out.push_back(i);
  }
  return out;
}

std::optional<Depth> ABox::ConceptDepth(IndId s, ConceptId c) const {
  const IndState* st = state(s);
  if (!st) return std::nullopt;
  auto it = st->concepts.find(c);
  if (it == st->concepts.end()) return std::nullopt;
  return it->second;
}

std::optional<Depth> ABox::EdgeDepth(RoleId r, IndId s, IndId t) const {
  const IndState* st = state(s);
  if (!st) return std::nullopt;
  auto it = st->out.find({r, t});
  if (it == st->out.end()) return std::nullopt;
  return it->second;
}

bool ABox::HasNeq(IndId s, IndId t) const { return NeqDepth(s, t).has_value(); }

std::optional<Depth> ABox::NeqDepth(IndId s, IndId t) const {
  const IndState* st = state(s);
  if (!st) return std::nullopt;
  auto it = st->neq.find(t);
  if (it == st->neq.end()) return std::nullopt;
  return it->second;
}

bool ABox::HasEquality(IndId s, IndId t,
                       const std::optional<AnnotationRef>& ann) const {
  if (s == t && !ann) return true;
  for (const EqAssertion& e : eqs_) {
    if (SameEquality(e, s, t, ann)) return true;
  }
  return false;
}

IndId ABox::Canonical(IndId root) const {
  IndId cur = root;
  for (auto it = renamings_.find(cur); it != renamings_.end();
       it = renamings_.find(cur)) {
    cur = it->second;
  }
  return cur;
}

size_t ABox::assertion_count() const {
  size_t n = eqs_.size() + (clash_ ? 1 : 0);
  for (const auto& st : inds_) {
    if (!st) continue;
    n += st->concepts.size() + st->out.size() + st->neq.size();
  }
  return n;
}

IndState& ABox::Mut(IndId id) {
  if (id >= inds_.size()) inds_.resize(id + 1);
  auto& slot = inds_[id];
  if (!slot) {
    slot = std::make_shared<IndState>();
    ++alive_count_;
  } else if (slot.use_count() > 1) {
    slot = std::make_shared<IndState>(*slot);
  }
  return *slot;
}

void ABox::Release(IndId id) {
  if (id < inds_.size() && inds_[id] && inds_[id]->empty()) {
    inds_[id].reset();
    --alive_count_;
    labels_changed_ = true;
  }
}

void ABox::ConceptChanged(ConceptId c) {
  if (!vocab_) {
    labels_changed_ = true;
    return;
  }
  const ConceptEntry& e = vocab_->concept_entry(c);
  if (e.kind == LiteralKind::kAtomic || e.kind == LiteralKind::kAtLeast) {
    labels_changed_ = true;
  }
  if (e.guard) guard_changed_ = true;
}

bool ABox::AddConcept(IndId s, ConceptId c, Depth d) {
  if (HasConcept(s, c)) return false;
  Mut(s).concepts.emplace(c, d);
  ConceptChanged(c);
  Touch(s);
  Log({true, AssertionChange::Kind::kConcept, c, kNone, s, kNone, {}});
  return true;
}

bool ABox::AddEdge(RoleId r, IndId s, IndId t, Depth d) {
  if (HasEdge(r, s, t)) return false;
  Mut(s).out.emplace(std::make_pair(r, t), d);
  Mut(t).in.emplace(std::make_pair(r, s), d);
  labels_changed_ = true;
  Touch(s);
  Touch(t);
  Log({true, AssertionChange::Kind::kRole, kNone, r, s, t, {}});
  return true;
}

bool ABox::AddNeq(IndId s, IndId t, Depth d) {
  if (HasNeq(s, t)) return false;
  Mut(s).neq.emplace(t, d);
  Mut(t).neq.emplace(s, d);
  Touch(s);
  Touch(t);
  Log({true, AssertionChange::Kind::kInequality, kNone, kNone, s, t, {}});
  return true;
}

bool ABox::AddEquality(IndId s, IndId t, std::optional<AnnotationRef> ann,
                       Depth d) {
  if (HasEquality(s, t, ann)) return false;
  Log({true, AssertionChange::Kind::kEquality, kNone, kNone, s, t, ann});
  eqs_.push_back({s, t, std::move(ann), d});
  Touch(s);
  Touch(t);
  return true;
}

void ABox::SetClash(Depth d) {
  if (clash_) {
    clash_depth_ = std::min(clash_depth_, d);
    return;
  }
  clash_ = true;
  clash_depth_ = d;
  Log({true, AssertionChange::Kind::kClash, kNone, kNone, kNone, kNone, {}});
}

uint32_t ABox::NextChildIndex(IndId s) { return ++Mut(s).child_counter; }

void ABox::RemoveAllOf(IndId d) {
  const IndState* st = state(d);
  if (!st) return;
  IndState copy = *st;
  for (const auto& [c, dep] : copy.concepts) {
    ConceptChanged(c);
    Log({false, AssertionChange::Kind::kConcept, c, kNone, d, kNone, {}});
  }
  for (const auto& [key, dep] : copy.out) {
    auto [r, v] = key;
    Log({false, AssertionChange::Kind::kRole, kNone, r, d, v, {}});
    if (v != d) {
      Mut(v).in.erase({r, d});
      Touch(v);
      Release(v);
    }
  }
  for (const auto& [key, dep] : copy.in) {
    auto [r, v] = key;
    if (v == d) continue;
    Log({false, AssertionChange::Kind::kRole, kNone, r, v, d, {}});
    Mut(v).out.erase({r, d});
    Touch(v);
    Release(v);
  }
  for (const auto& [v, dep] : copy.neq) {
    if (v == d || !alive(v)) continue;
    Log({false, AssertionChange::Kind::kInequality, kNone, kNone, d, v, {}});
    Mut(v).neq.erase(d);
    Touch(v);
    Release(v);
  }
  labels_changed_ = true;
  inds_[d].reset();
  --alive_count_;
}

void ABox::Prune(IndId s, const IndividualPool& pool) {
  std::vector<IndId> doomed;
  for (IndId d : pool.Descendants(s)) {
    if (alive(d)) doomed.push_back(d);
  }
  if (doomed.empty()) return;
  std::set<IndId> gone(doomed.begin(), doomed.end());
  for (IndId d : doomed) RemoveAllOf(d);
  std::vector<EqAssertion> kept;
  for (EqAssertion& e : eqs_) {
    bool hit = gone.count(e.s) || gone.count(e.t) ||
               (e.annotation && gone.count(e.annotation->at));
    if (hit) {
      Log({false, AssertionChange::Kind::kEquality, kNone, kNone, e.s, e.t,
           e.annotation});
    } else {
      kept.push_back(std::move(e));
    }
  }
  eqs_ = std::move(kept);
}

void ABox::PutConceptMin(IndId s, ConceptId c, Depth d) {
  IndState& st = Mut(s);
  auto it = st.concepts.find(c);
  if (it != st.concepts.end()) {
    it->second = std::min(it->second, d);
    return;
  }
  st.concepts.emplace(c, d);
  ConceptChanged(c);
  Log({true, AssertionChange::Kind::kConcept, c, kNone, s, kNone, {}});
}

void ABox::PutEdgeMin(RoleId r, IndId s, IndId t, Depth d) {
  IndState& a = Mut(s);
  auto it = a.out.find({r, t});
  if (it != a.out.end()) {
    it->second = std::min(it->second, d);
    Mut(t).in[{r, s}] = it->second;
    return;
  }
  a.out.emplace(std::make_pair(r, t), d);
  Mut(t).in.emplace(std::make_pair(r, s), d);
  labels_changed_ = true;
  Log({true, AssertionChange::Kind::kRole, kNone, r, s, t, {}});
}

void ABox::PutNeqMin(IndId s, IndId t, Depth d) {
  IndState& a = Mut(s);
  auto it = a.neq.find(t);
  if (it != a.neq.end()) {
    it->second = std::min(it->second, d);
    Mut(t).neq[s] = it->second;
    return;
  }
  a.neq.emplace(t, d);
  Mut(t).neq.emplace(s, d);
  Log({true, AssertionChange::Kind::kInequality, kNone, kNone, s, t, {}});
}

void ABox::Merge(IndId s, IndId t, Depth d, const IndividualPool& pool) {
  Prune(s, pool);
  IndState moved;
  if (const IndState* st = state(s)) moved = *st;
  // Detach s from its neighbours first so that no entry refers to s.
  for (const auto& [c, dep] : moved.concepts) {
    ConceptChanged(c);
    Log({false, AssertionChange::Kind::kConcept, c, kNone, s, kNone, {}});
  }
  for (const auto& [key, dep] : moved.out) {
    auto [r, v] = key;
    Log({false, AssertionChange::Kind::kRole, kNone, r, s, v, {}});
    if (v != s) Mut(v).in.erase({r, s});
  }
  for (const auto& [key, dep] : moved.in) {
    auto [r, v] = key;
    if (v == s) continue;
    Log({false, AssertionChange::Kind::kRole, kNone, r, v, s, {}});
    Mut(v).out.erase({r, s});
  }
  for (const auto& [v, dep] : moved.neq) {
    Log({false, AssertionChange::Kind::kInequality, kNone, kNone, s, v, {}});
    if (v != s) Mut(v).neq.erase(s);
  }
  if (alive(s)) {
    inds_[s].reset();
    --alive_count_;
  }
  labels_changed_ = true;

  auto sub = [&](IndId v) { return v == s ? t : v; };
  for (const auto& [c, dep] : moved.concepts) {
    PutConceptMin(t, c, std::max(dep, d));
  }
  for (const auto& [key, dep] : moved.out) {
    PutEdgeMin(key.first, t, sub(key.second), std::max(dep, d));
    Touch(sub(key.second));
  }
  for (const auto& [key, dep] : moved.in) {
    if (key.second == s) continue;
    PutEdgeMin(key.first, key.second, t, std::max(dep, d));
    Touch(key.second);
  }
  for (const auto& [v, dep] : moved.neq) {
    PutNeqMin(t, sub(v), std::max(dep, d));
    Touch(sub(v));
  }
  Touch(t);
  if (alive(t)) {
    IndState& ts = Mut(t);
    ts.child_counter = std::max(ts.child_counter, moved.child_counter);
  }

  std::vector<EqAssertion> rewritten;
  for (EqAssertion& e : eqs_) {
    bool changed = e.s == s || e.t == s || (e.annotation && e.annotation->at == s);
    if (changed) {
      Log({false, AssertionChange::Kind::kEquality, kNone, kNone, e.s, e.t,
           e.annotation});
      e.s = sub(e.s);
      e.t = sub(e.t);
      if (e.annotation) e.annotation->at = sub(e.annotation->at);
      e.depth = std::max(e.depth, d);
    }
    if (e.s == e.t && !e.annotation) continue;
    auto dup = std::find_if(rewritten.begin(), rewritten.end(),
                            [&](const EqAssertion& o) {
                              return SameEquality(o, e.s, e.t, e.annotation);
                            });
    if (dup != rewritten.end()) {
      dup->depth = std::min(dup->depth, e.depth);
      continue;
    }
    if (changed) {
      Log({true, AssertionChange::Kind::kEquality, kNone, kNone, e.s, e.t,
           e.annotation});
    }
    rewritten.push_back(std::move(e));
  }
  eqs_ = std::move(rewritten);

  if (pool.IsRoot(s) && pool.IsRoot(t)) {
    renamings_[s] = t;
    Log({true, AssertionChange::Kind::kRenaming, kNone, kNone, s, t, {}});
  }
}

// ---- validation ----

std::vector<std::string> ValidateHTABox(const ABox& abox,
                                        const IndividualPool& pool,
                                        const Vocabulary& vocab) {
  std::vector<std::string> out;
  auto name = [&](IndId i) { return pool.Name(i); };
  auto is_edge_shape = [&](IndId s, IndId t) {
    return pool.IsRoot(s) || pool.IsRoot(t) || s == t ||
           pool.Parent(t) == s || pool.Parent(s) == t;
  };
  bool any = abox.clash() || !abox.equalities().empty();
  for (IndId s : abox.AliveIndividuals()) {
    any = true;
    const IndState& st = *abox.state(s);
    for (const auto& [key, dep] : st.out) {
      if (!is_edge_shape(s, key.second)) {
        out.push_back("role assertion shape: " + vocab.role_name(key.first) +
                      "(" + name(s) + "," + name(key.second) + ")");
      }
    }
    for (const auto& [c, dep] : st.concepts) {
      const ConceptEntry& e = vocab.concept_entry(c);
      if (e.guard) {
        if (e.kind != LiteralKind::kAtomic || !pool.IsNamed(s)) {
          out.push_back("nominal guard on non-named individual: " + e.text +
                        "(" + name(s) + ")");
        }
      } else if (e.kind == LiteralKind::kAtLeast &&
                 vocab.concept_entry(e.filler).guard) {
        out.push_back("at-least filler is a nominal guard: " + e.text);
      }
    }
    if (pool.IsBlockable(s)) {
      IndId p = pool.Parent(s);
      bool linked = false;
      for (const auto& [key, dep] : st.out) linked |= key.second == p;
      for (const auto& [key, dep] : st.in) linked |= key.second == p;
      if (!linked) {
        out.push_back("blockable individual not connected to predecessor: " +
                      name(s));
      }
    }
    if (abox.renamings().count(s)) {
      out.push_back("renamed individual occurs in assertions: " + name(s));
    }
  }
  for (const EqAssertion& e : abox.equalities()) {
    auto plain_shape = [&](IndId a, IndId b) {
      if (a == b || pool.IsRoot(b)) return true;
      IndId pa = pool.Parent(a);
      IndId pb = pool.Parent(b);
      if (pa != kNone && pa == pb) return true;  // s.i ~ s.j
      if (pa == b) return true;                  // s.i ~ s
      return pa != kNone && pool.Parent(pa) == b;  // s.i.j ~ s
    };
    bool ok = plain_shape(e.s, e.t) || plain_shape(e.t, e.s);
    if (!ok && e.annotation) {
      IndId u = e.annotation->at;
      auto ann_shape = [&](IndId a, IndId b) {
        return pool.IsBlockable(a) && !pool.IsSuccessor(a, u) &&
               pool.IsBlockable(b);
      };
      ok = ann_shape(e.s, e.t) || ann_shape(e.t, e.s);
    }
    if (!ok) {
      out.push_back("equality shape: " + name(e.s) + " = " + name(e.t));
    }
    if (e.annotation) {
      const AnnotationRef& a = *e.annotation;
      if (!abox.HasAr(a.role, a.at, e.s) || !abox.HasAr(a.role, a.at, e.t)) {
        out.push_back("annotation witness missing: " + name(e.s) + " = " +
                      name(e.t) + " at " + name(a.at));
      }
    }
  }
  for (const auto& [from, to] : abox.renamings()) {
    if (!pool.IsRoot(from) || !pool.IsRoot(to)) {
      out.push_back("renaming between non-root individuals");
    }
    std::set<IndId> seen{from};
    for (IndId cur = to;;) {
      if (!seen.insert(cur).second) {
        out.push_back("renaming cycle through " + name(from));
        break;
      }
      auto it = abox.renamings().find(cur);
      if (it == abox.renamings().end()) break;
      cur = it->second;
    }
    for (const EqAssertion& e : abox.equalities()) {
      if (e.s == from || e.t == from ||
          (e.annotation && e.annotation->at == from)) {
        out.push_back("renamed individual occurs in an equality: " +
                      name(from));
      }
    }
  }
  if (!any) out.push_back("empty ABox");
  return out;
}

std::string AssertionChangeText(const AssertionChange& c,
                                const IndividualPool& pool,
                                const Vocabulary& vocab) {
  std::string sign = c.added ? "+" : "-";
  auto n = [&](IndId i) { return pool.Name(i); };
  using K = AssertionChange::Kind;
  switch (c.kind) {
    case K::kConcept:
      return sign + vocab.concept_entry(c.concept_).text + "(" + n(c.a) + ")";
    case K::kRole:
      return sign + vocab.role_name(c.role) + "(" + n(c.a) + "," + n(c.b) +
             ")";
    case K::kEquality: {
      std::string s = sign + n(c.a) + " = " + n(c.b);
      if (c.annotation) {
        const AnnotationRef& a = *c.annotation;
        s += " @{<=" + std::to_string(a.bound) + " " +
             vocab.RoleRefText(a.role) + "." +
             vocab.concept_entry(a.filler).text + "}^" + n(a.at);
      }
      return s;
    }
    case K::kInequality:
      return sign + n(c.a) + " != " + n(c.b);
    case K::kClash:
      return sign + "bottom";
    case K::kRenaming:
      return sign + n(c.a) + " |-> " + n(c.b);
  }
  return sign;
}

}  // namespace htdl
