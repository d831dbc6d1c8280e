#include "support/oracle.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace htdl::testing {
namespace {

// Kleene truth values.
enum Tv : int { kF = 0, kU = 1, kT = 2 };

Tv Neg(Tv v) { return static_cast<Tv>(2 - v); }
Tv Min(Tv a, Tv b) { return std::min(a, b); }
Tv Max(Tv a, Tv b) { return std::max(a, b); }

class Grounding {
 public:
  Grounding(const KnowledgeBase& kb, int n) : kb_(kb), n_(n) {
    Signature sig = kb.signature();
    for (const Gci& g : kb.tbox()) {
      CollectNames(g.lhs, &sig);
      CollectNames(g.rhs, &sig);
    }
    for (const std::string& c : sig.concepts) {
      concept_index_[c] = static_cast<int>(concepts_.size());
      concepts_.push_back(c);
    }
    for (const std::string& r : sig.roles) {
      role_index_[r] = static_cast<int>(roles_.size());
      roles_.push_back(r);
    }
    individuals_.assign(sig.individuals.begin(), sig.individuals.end());
    concept_val_.assign(concepts_.size() * n_, kU);
    role_val_.assign(roles_.size() * n_ * n_, kU);
  }

  std::optional<FiniteInterpretation> Search() {
    return AssignIndividuals(0);
  }

  // Loads a complete interpretation.
  void Load(const FiniteInterpretation& i) {
    for (size_t c = 0; c < concepts_.size(); ++c) {
      auto it = i.concept_ext.find(concepts_[c]);
      for (int e = 0; e < n_; ++e) {
        concept_val_[c * n_ + e] =
            it != i.concept_ext.end() && it->second.count(e) ? kT : kF;
      }
    }
    for (size_t r = 0; r < roles_.size(); ++r) {
      auto it = i.role_ext.find(roles_[r]);
      for (int e = 0; e < n_; ++e) {
        for (int f = 0; f < n_; ++f) {
          role_val_[(r * n_ + e) * n_ + f] =
              it != i.role_ext.end() && it->second.count({e, f}) ? kT : kF;
        }
      }
    }
    for (const std::string& a : individuals_) {
      auto it = i.individual_map.find(a);
      ind_map_[a] = it == i.individual_map.end() ? 0 : it->second;
    }
  }

  Tv Kb() const {
    Tv v = kT;
    for (const RoleAxiom& ax : kb_.rbox()) v = Min(v, RoleAx(ax));
    for (const Gci& g : kb_.tbox()) {
      for (int e = 0; e < n_ && v != kF; ++e) {
        v = Min(v, Max(Neg(Eval(g.lhs, e)), Eval(g.rhs, e)));
      }
    }
    for (const AboxAxiom& ax : kb_.abox()) v = Min(v, AboxAx(ax));
    return v;
  }

 private:
  static void CollectNames(const Concept& c, Signature* sig) {
    switch (c.kind()) {
      case ConceptKind::kAtomic:
        sig->concepts.insert(c.name());
        return;
      case ConceptKind::kNominal:
        sig->individuals.insert(c.name());
        return;
      case ConceptKind::kExists:
      case ConceptKind::kForAll:
      case ConceptKind::kSelf:
      case ConceptKind::kAtLeast:
      case ConceptKind::kAtMost:
        sig->roles.insert(c.role().name);
        break;
      default:
        break;
    }
    if (c.kind() == ConceptKind::kTop || c.kind() == ConceptKind::kBottom ||
        c.kind() == ConceptKind::kSelf) {
      return;
    }
    for (const Concept& op : c.operands()) CollectNames(op, sig);
  }

  std::optional<FiniteInterpretation> AssignIndividuals(size_t k) {
    if (k == individuals_.size()) return AssignVar(0);
    for (int e = 0; e < n_; ++e) {
      ind_map_[individuals_[k]] = e;
      if (auto m = AssignIndividuals(k + 1)) return m;
    }
    return std::nullopt;
  }

  std::optional<FiniteInterpretation> AssignVar(size_t v) {
    Tv now = Kb();
    if (now == kF) return std::nullopt;
    size_t nc = concept_val_.size();
    if (v == nc + role_val_.size()) {
      if (now != kT) return std::nullopt;
      return Extract();
    }
    Tv& slot = v < nc ? concept_val_[v] : role_val_[v - nc];
    for (Tv value : {kT, kF}) {
      slot = value;
      if (auto m = AssignVar(v + 1)) return m;
    }
    slot = kU;
    return std::nullopt;
  }

  FiniteInterpretation Extract() const {
    FiniteInterpretation i;
    i.domain_size = n_;
    for (size_t c = 0; c < concepts_.size(); ++c) {
      ElementSet& ext = i.concept_ext[concepts_[c]];
      for (int e = 0; e < n_; ++e) {
        if (concept_val_[c * n_ + e] == kT) ext.insert(e);
      }
    }
    for (size_t r = 0; r < roles_.size(); ++r) {
      PairSet& ext = i.role_ext[roles_[r]];
      for (int e = 0; e < n_; ++e) {
        for (int f = 0; f < n_; ++f) {
          if (role_val_[(r * n_ + e) * n_ + f] == kT) ext.insert({e, f});
        }
      }
    }
    i.individual_map.insert(ind_map_.begin(), ind_map_.end());
    return i;
  }

  Tv RoleAt(const Role& r, int e, int f) const {
    auto it = role_index_.find(r.name);
    if (it == role_index_.end()) return kF;
    if (r.inverse) std::swap(e, f);
    return role_val_[(it->second * n_ + e) * n_ + f];
  }

  Tv Ind(const std::string& a, int e) const {
    return ind_map_.at(a) == e ? kT : kF;
  }

  Tv Count(const Concept& c, int e, uint32_t n) const {
    int sure = 0, maybe = 0;
    for (int f = 0; f < n_; ++f) {
      Tv v = Min(RoleAt(c.role(), e, f), Eval(c.filler(), f));
      if (v == kT) ++sure;
      if (v == kU) ++maybe;
    }
    if (sure >= static_cast<int>(n)) return kT;
    if (sure + maybe < static_cast<int>(n)) return kF;
    return kU;
  }

  Tv Eval(const Concept& c, int e) const {
    switch (c.kind()) {
      case ConceptKind::kTop:
        return kT;
      case ConceptKind::kBottom:
        return kF;
      case ConceptKind::kAtomic:
        return concept_val_[concept_index_.at(c.name()) * n_ + e];
      case ConceptKind::kNominal:
        return Ind(c.name(), e);
      case ConceptKind::kNot:
        return Neg(Eval(c.filler(), e));
      case ConceptKind::kAnd: {
        Tv v = kT;
        for (const Concept& op : c.operands()) v = Min(v, Eval(op, e));
        return v;
      }
      case ConceptKind::kOr: {
        Tv v = kF;
        for (const Concept& op : c.operands()) v = Max(v, Eval(op, e));
        return v;
      }
      case ConceptKind::kExists: {
        Tv v = kF;
        for (int f = 0; f < n_; ++f) {
          v = Max(v, Min(RoleAt(c.role(), e, f), Eval(c.filler(), f)));
        }
        return v;
      }
      case ConceptKind::kForAll: {
        Tv v = kT;
        for (int f = 0; f < n_; ++f) {
          v = Min(v, Max(Neg(RoleAt(c.role(), e, f)), Eval(c.filler(), f)));
        }
        return v;
      }
      case ConceptKind::kSelf:
        return RoleAt(c.role(), e, e);
      case ConceptKind::kAtLeast:
        return Count(c, e, c.number());
      case ConceptKind::kAtMost:
        return Neg(Count(c, e, c.number() + 1));
    }
    return kU;
  }

  Tv RoleAx(const RoleAxiom& ax) const {
    Tv v = kT;
    if (const auto* s = std::get_if<SubRole>(&ax)) {
      for (int e = 0; e < n_; ++e) {
        for (int f = 0; f < n_; ++f) {
          v = Min(v, Max(Neg(RoleAt(s->sub, e, f)), RoleAt(s->super, e, f)));
        }
      }
    } else if (const auto* d = std::get_if<DisjointRoles>(&ax)) {
      for (int e = 0; e < n_; ++e) {
        for (int f = 0; f < n_; ++f) {
          v = Min(v, Neg(Min(RoleAt(d->first, e, f), RoleAt(d->second, e, f))));
        }
      }
    } else {
      const auto& p = std::get<RoleProperty>(ax);
      for (int e = 0; e < n_; ++e) {
        for (int f = 0; f < n_; ++f) {
          Tv ef = RoleAt(p.role, e, f);
          switch (p.characteristic) {
            case RoleCharacteristic::kReflexive:
              if (e == f) v = Min(v, ef);
              break;
            case RoleCharacteristic::kIrreflexive:
              if (e == f) v = Min(v, Neg(ef));
              break;
            case RoleCharacteristic::kSymmetric:
              v = Min(v, Max(Neg(ef), RoleAt(p.role, f, e)));
              break;
            case RoleCharacteristic::kAsymmetric:
              v = Min(v, Neg(Min(ef, RoleAt(p.role, f, e))));
              break;
            case RoleCharacteristic::kTransitive:
              for (int g = 0; g < n_; ++g) {
                v = Min(v, Max(Neg(Min(ef, RoleAt(p.role, f, g))),
                               RoleAt(p.role, e, g)));
              }
              break;
          }
        }
      }
    }
    return v;
  }

  Tv AboxAx(const AboxAxiom& ax) const {
    if (const auto* c = std::get_if<ConceptAssertion>(&ax)) {
      return Eval(c->expression, ind_map_.at(c->individual));
    }
    if (const auto* r = std::get_if<RoleAssertion>(&ax)) {
      return RoleAt(r->role, ind_map_.at(r->from), ind_map_.at(r->to));
    }
    if (const auto* s = std::get_if<SameIndividual>(&ax)) {
      return ind_map_.at(s->first) == ind_map_.at(s->second) ? kT : kF;
    }
    const auto& d = std::get<DifferentIndividuals>(ax);
    return ind_map_.at(d.first) != ind_map_.at(d.second) ? kT : kF;
  }

  const KnowledgeBase& kb_;
  int n_;
  std::vector<std::string> concepts_, roles_, individuals_;
  std::map<std::string, int> concept_index_, role_index_;
  std::map<std::string, int> ind_map_;
  std::vector<Tv> concept_val_;
  std::vector<Tv> role_val_;
};

}  // namespace

std::optional<FiniteInterpretation> FindModel(const KnowledgeBase& kb,
                                              int max_domain) {
  for (int n = 1; n <= max_domain; ++n) {
    Grounding g(kb, n);
    if (auto m = g.Search()) return m;
  }
  return std::nullopt;
}

bool OracleSatisfies(const FiniteInterpretation& i, const KnowledgeBase& kb) {
  Grounding g(kb, i.domain_size);
  g.Load(i);
  return g.Kb() == kT;
}

}  // namespace htdl::testing
