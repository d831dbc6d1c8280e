#include "htdl/preprocessing.h"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <map>
#include <stdexcept>

#include "htdl/ontology_io.h"

namespace htdl {

namespace {

void AddSubconcepts(const Concept& c, std::set<Concept>* out,
                    std::deque<Concept>* queue) {
  if (!out->insert(c).second) return;
  queue->push_back(c);
  for (const Concept& sub : c.operands()) AddSubconcepts(sub, out, queue);
}

std::vector<Role> AllRoles(const KnowledgeBase& kb) {
  std::vector<Role> out;
  for (const std::string& r : kb.signature().roles) {
    out.emplace_back(r);
    out.emplace_back(r, true);
  }
  return out;
}

// Transitive roles S with S below r.
std::vector<Role> TransitiveSubRoles(const Role& r, const RoleHierarchy& h,
                                     const std::vector<Role>& roles) {
  std::vector<Role> out;
  for (const Role& s : roles) {
    if (h.IsTransitive(s) && h.IsSubRole(s, r)) out.push_back(s);
  }
  return out;
}

}  // namespace

std::set<Concept> ConceptClosure(const KnowledgeBase& kb) {
  std::set<Concept> clos;
  std::deque<Concept> queue;
  for (const Gci& g : kb.tbox()) {
    AddSubconcepts(Nnf(Concept::Or({Concept::Not(g.lhs), g.rhs})), &clos,
                   &queue);
  }
  for (const AboxAxiom& a : kb.abox()) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      AddSubconcepts(Nnf(ca->expression), &clos, &queue);
    }
  }
  RoleHierarchy h(kb.rbox());
  std::vector<Role> roles = AllRoles(kb);
  while (!queue.empty()) {
    Concept c = queue.front();
    queue.pop_front();
    if (c.kind() == ConceptKind::kAtMost) {
      AddSubconcepts(NegDot(c.filler()), &clos, &queue);
    } else if (c.kind() == ConceptKind::kForAll) {
      for (const Role& s : TransitiveSubRoles(c.role(), h, roles)) {
        AddSubconcepts(Concept::ForAll(s, c.filler()), &clos, &queue);
      }
    }
  }
  return clos;
}

KnowledgeBase OmegaEncode(const KnowledgeBase& kb) {
  KnowledgeBase out;
  for (const RoleAxiom& ax : kb.rbox()) {
    const auto* prop = std::get_if<RoleProperty>(&ax);
    if (prop && prop->characteristic == RoleCharacteristic::kTransitive) {
      continue;
    }
    out.Add(ax);
  }
  for (const Gci& g : kb.tbox()) out.Add(g);
  RoleHierarchy h(kb.rbox());
  std::vector<Role> roles = AllRoles(kb);
  for (const Concept& c : ConceptClosure(kb)) {
    if (c.kind() != ConceptKind::kForAll) continue;
    for (const Role& s : TransitiveSubRoles(c.role(), h, roles)) {
      out.AddGci(c, Concept::ForAll(s, Concept::ForAll(s, c.filler())));
    }
  }
  for (const AboxAxiom& a : kb.abox()) out.Add(a);
  return out;
}

bool PosPolarity(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::kTop:
    case ConceptKind::kBottom:
      return false;
    case ConceptKind::kAtomic:
    case ConceptKind::kNominal:
    case ConceptKind::kSelf:
    case ConceptKind::kAtLeast:
    case ConceptKind::kExists:
      return true;
    case ConceptKind::kNot:
      return false;
    case ConceptKind::kAnd:
    case ConceptKind::kOr:
      for (const Concept& o : c.operands()) {
        if (PosPolarity(o)) return true;
      }
      return false;
    case ConceptKind::kForAll:
      return PosPolarity(c.filler());
    case ConceptKind::kAtMost:
      return c.number() == 0 ? PosPolarity(NegDot(c.filler())) : true;
  }
  return true;
}

std::string FreshConceptName(const Concept& c) {
  // FNV-1a over the canonical text.
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : c.ToString()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(kFreshConceptPrefix) + buf;
}

namespace {

bool IsNormalDisjunct(const Concept& d) {
  switch (d.kind()) {
    case ConceptKind::kTop:
    case ConceptKind::kBottom:
    case ConceptKind::kAtomic:
    case ConceptKind::kNominal:
    case ConceptKind::kSelf:
      return true;
    case ConceptKind::kNot:
      return d.filler().kind() == ConceptKind::kAtomic ||
             d.filler().kind() == ConceptKind::kSelf;
    case ConceptKind::kForAll:
    case ConceptKind::kAtLeast:
    case ConceptKind::kAtMost:
      return d.filler().IsLiteral();
    default:
      return false;
  }
}

class Normalizer {
 public:
  KnowledgeBase Run(const KnowledgeBase& kb) {
    for (const RoleAxiom& ax : kb.rbox()) out_.Add(ax);
    out_.Add(AboxAxiom(ConceptAssertion{Concept::Top(), kFreshIndividual}));
    for (const AboxAxiom& a : kb.abox()) Assertion(a);
    for (const Gci& g : kb.tbox()) {
      Gci_({Nnf(Concept::Or({Concept::Not(g.lhs), g.rhs}))});
    }
    return std::move(out_);
  }

 private:
  void Assertion(const AboxAxiom& a) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      ConceptAssertionOf(Nnf(ca->expression), ca->individual);
    } else if (const auto* ra = std::get_if<RoleAssertion>(&a)) {
      if (ra->role.inverse) {
        out_.Add(AboxAxiom(RoleAssertion{ra->role.Inverse(), ra->to, ra->from}));
      } else {
        out_.Add(a);
      }
    } else {
      out_.Add(a);
    }
  }

  void ConceptAssertionOf(const Concept& d, const std::string& s) {
    if (d.IsLiteral()) {
      out_.Add(AboxAxiom(ConceptAssertion{d, s}));
      return;
    }
    Concept alpha = Alpha(d);
    out_.Add(AboxAxiom(ConceptAssertion{alpha, s}));
    Define(alpha, d);
  }

  // alpha_C: Q_C when pos(C), otherwise not Q_C.
  Concept Alpha(const Concept& c) {
    std::string name = FreshConceptName(c);
    auto [it, inserted] = names_.emplace(name, c);
    if (!inserted && !(it->second == c)) {
      // Hash collision: disambiguate deterministically.
      int suffix = 1;
      while (true) {
        std::string alt = name + "_" + std::to_string(suffix++);
        auto [it2, ins2] = names_.emplace(alt, c);
        if (ins2 || it2->second == c) {
          name = alt;
          break;
        }
      }
    }
    Concept q = Concept::Atomic(name);
    return PosPolarity(c) ? q : Concept::Not(q);
  }

  // Emits top <= negdot(alpha) or c, once per alpha.
  void Define(const Concept& alpha, const Concept& c) {
    if (!defined_.insert(alpha).second) return;
    if (c.kind() == ConceptKind::kAnd) {
      for (const Concept& op : c.operands()) Gci_({NegDot(alpha), op});
      return;
    }
    Gci_({NegDot(alpha), c});
  }

  void Gci_(std::vector<Concept> pending) {
    std::vector<Concept> flat;
    std::vector<std::string> negated_nominals;
    while (!pending.empty()) {
      Concept d = pending.back();
      pending.pop_back();
      switch (d.kind()) {
        case ConceptKind::kOr:
          for (const Concept& o : d.operands()) pending.push_back(o);
          continue;
        case ConceptKind::kTop:
          return;
        case ConceptKind::kBottom:
          continue;
        case ConceptKind::kExists:
          d = Concept::AtLeast(1, d.role(), d.filler());
          break;
        case ConceptKind::kAnd:
          if (d.operands().empty()) return;
          if (d.operands().size() == 1) {
            pending.push_back(d.filler());
            continue;
          }
          break;
        case ConceptKind::kNot:
          if (d.filler().kind() == ConceptKind::kNominal) {
            negated_nominals.push_back(d.filler().name());
            continue;
          }
          break;
        default:
          break;
      }
      if ((d.kind() == ConceptKind::kForAll &&
           d.filler().kind() == ConceptKind::kTop) ||
          (d.kind() == ConceptKind::kAtMost &&
           d.filler().kind() == ConceptKind::kBottom)) {
        return;
      }
      if (d.kind() == ConceptKind::kAtLeast &&
          d.filler().kind() == ConceptKind::kBottom) {
        continue;
      }
      flat.push_back(d);
    }
    // pending was consumed back to front; restore declared order.
    std::reverse(flat.begin(), flat.end());

    if (!negated_nominals.empty()) {
      // top <= C or not {s}  ==>  C(s)
      std::string s = negated_nominals.front();
      std::vector<Concept> rest = flat;
      for (size_t i = 1; i < negated_nominals.size(); ++i) {
        rest.push_back(Concept::Not(Concept::Nominal(negated_nominals[i])));
      }
      if (rest.empty()) {
        out_.Add(Gci{Concept::Top(), Concept::Or({})});
        return;
      }
      ConceptAssertionOf(rest.size() == 1 ? rest[0] : Concept::Or(rest), s);
      return;
    }

    std::vector<Concept> disjuncts;
    for (const Concept& d : flat) {
      if (IsNormalDisjunct(d)) {
        disjuncts.push_back(d);
        continue;
      }
      switch (d.kind()) {
        case ConceptKind::kAnd: {
          Concept alpha = Alpha(d);
          disjuncts.push_back(alpha);
          Define(alpha, d);
          break;
        }
        case ConceptKind::kForAll:
        case ConceptKind::kAtLeast: {
          Concept alpha = Alpha(d.filler());
          disjuncts.push_back(d.kind() == ConceptKind::kForAll
                                  ? Concept::ForAll(d.role(), alpha)
                                  : Concept::AtLeast(d.number(), d.role(), alpha));
          Define(alpha, d.filler());
          break;
        }
        case ConceptKind::kAtMost: {
          Concept negated = NegDot(d.filler());
          Concept alpha = Alpha(negated);
          disjuncts.push_back(
              Concept::AtMost(d.number(), d.role(), NegDot(alpha)));
          Define(alpha, negated);
          break;
        }
        default:
          throw std::logic_error("unexpected disjunct " + d.ToString());
      }
    }
    out_.Add(Gci{Concept::Top(), Concept::Or(std::move(disjuncts))});
  }

  KnowledgeBase out_;
  std::map<std::string, Concept> names_;
  std::set<Concept> defined_;
};

}  // namespace

KnowledgeBase DeltaNormalize(const KnowledgeBase& kb) {
  return Normalizer().Run(kb);
}

bool IsNormalizedGci(const Gci& g) {
  if (g.lhs.kind() != ConceptKind::kTop || g.rhs.kind() != ConceptKind::kOr) {
    return false;
  }
  for (const Concept& d : g.rhs.operands()) {
    if (!IsNormalDisjunct(d) || d.kind() == ConceptKind::kOr) return false;
  }
  return true;
}

// ---- Xi ----

namespace {

class ClauseBuilder {
 public:
  // Returns false when the GCI is a tautology and produces no clause.
  bool Disjunct(const Concept& d) {
    Term x = Term::X();
    switch (d.kind()) {
      case ConceptKind::kTop:
        return false;
      case ConceptKind::kBottom:
        return true;
      case ConceptKind::kAtomic:
        clause_.consequent.push_back(Atom::ConceptAtom(d, x));
        return true;
      case ConceptKind::kNominal: {
        Term z = Term::Z(++z_);
        clause_.antecedent.push_back(
            Atom::ConceptAtom(Concept::Atomic(NominalGuard(d.name())), z));
        clause_.consequent.push_back(Atom::Equality(x, z));
        nominals_.insert(d.name());
        return true;
      }
      case ConceptKind::kSelf:
        clause_.consequent.push_back(Ar(d.role(), x, x));
        return true;
      case ConceptKind::kAtLeast:
        if (d.filler().kind() == ConceptKind::kBottom) return true;
        clause_.consequent.push_back(Atom::ConceptAtom(d, x));
        return true;
      case ConceptKind::kNot: {
        const Concept& inner = d.filler();
        if (inner.kind() == ConceptKind::kSelf) {
          clause_.antecedent.push_back(Ar(inner.role(), x, x));
        } else {
          clause_.antecedent.push_back(Atom::ConceptAtom(inner, x));
        }
        return true;
      }
      case ConceptKind::kForAll: {
        const Concept& b = d.filler();
        if (b.kind() == ConceptKind::kTop) return false;
        Term y = Term::Y(++y_);
        clause_.antecedent.push_back(Ar(d.role(), x, y));
        if (b.kind() == ConceptKind::kAtomic) {
          clause_.consequent.push_back(Atom::ConceptAtom(b, y));
        } else if (b.kind() == ConceptKind::kNot) {
          clause_.antecedent.push_back(Atom::ConceptAtom(b.filler(), y));
        }
        return true;
      }
      case ConceptKind::kAtMost: {
        const Concept& b = d.filler();
        if (b.kind() == ConceptKind::kBottom) return false;
        Annotation ann{x, d.number(), d.role(), b};
        std::vector<Term> ys;
        for (uint32_t k = 0; k <= d.number(); ++k) ys.push_back(Term::Y(++y_));
        for (const Term& y : ys) {
          clause_.antecedent.push_back(Ar(d.role(), x, y));
          if (b.kind() == ConceptKind::kAtomic) {
            clause_.antecedent.push_back(Atom::ConceptAtom(b, y));
          } else if (b.kind() == ConceptKind::kNot) {
            clause_.consequent.push_back(Atom::ConceptAtom(b.filler(), y));
          }
        }
        for (size_t i = 0; i < ys.size(); ++i) {
          for (size_t j = i + 1; j < ys.size(); ++j) {
            clause_.consequent.push_back(Atom::Equality(ys[i], ys[j], ann));
          }
        }
        return true;
      }
      default:
        throw std::invalid_argument("not a normalized disjunct: " +
                                    d.ToString());
    }
  }

  HTClause Take() { return std::move(clause_); }
  const std::set<std::string>& nominals() const { return nominals_; }

 private:
  HTClause clause_;
  int y_ = 0;
  int z_ = 0;
  std::set<std::string> nominals_;
};

HTClause RoleClause(std::vector<Atom> ante, std::vector<Atom> cons) {
  HTClause c;
  c.antecedent = std::move(ante);
  c.consequent = std::move(cons);
  return c;
}

}  // namespace

Clausification XiClausify(const KnowledgeBase& normalized) {
  Clausification out;
  std::set<std::string> nominals;
  Term x = Term::X();
  Term y = Term::Y(1);
  for (const Gci& g : normalized.tbox()) {
    if (!IsNormalizedGci(g)) {
      throw std::invalid_argument("GCI is not normalized: " + SerializeAxiom(g));
    }
    ClauseBuilder builder;
    bool keep = true;
    for (const Concept& d : g.rhs.operands()) {
      if (!builder.Disjunct(d)) {
        keep = false;
        break;
      }
    }
    if (!keep) continue;
    nominals.insert(builder.nominals().begin(), builder.nominals().end());
    out.clauses.push_back(builder.Take());
  }
  for (const RoleAxiom& ax : normalized.rbox()) {
    if (const auto* sub = std::get_if<SubRole>(&ax)) {
      out.clauses.push_back(
          RoleClause({Ar(sub->sub, x, y)}, {Ar(sub->super, x, y)}));
    } else if (const auto* dis = std::get_if<DisjointRoles>(&ax)) {
      out.clauses.push_back(
          RoleClause({Ar(dis->first, x, y), Ar(dis->second, x, y)}, {}));
    } else {
      const auto& prop = std::get<RoleProperty>(ax);
      const Role& r = prop.role;
      switch (prop.characteristic) {
        case RoleCharacteristic::kReflexive:
          out.clauses.push_back(RoleClause({}, {Ar(r, x, x)}));
          break;
        case RoleCharacteristic::kIrreflexive:
          out.clauses.push_back(RoleClause({Ar(r, x, x)}, {}));
          break;
        case RoleCharacteristic::kSymmetric:
          out.clauses.push_back(RoleClause({Ar(r, x, y)}, {Ar(r, y, x)}));
          break;
        case RoleCharacteristic::kAsymmetric:
          out.clauses.push_back(RoleClause({Ar(r, x, y), Ar(r, y, x)}, {}));
          break;
        case RoleCharacteristic::kTransitive:
          throw std::invalid_argument(
              "transitivity axioms must be eliminated before clausification: " +
              SerializeAxiom(ax));
      }
    }
  }
  for (const AboxAxiom& a : normalized.abox()) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      if (!ca->expression.IsLiteral()) {
        throw std::invalid_argument("assertion is not normalized: " +
                                    SerializeAxiom(a));
      }
      out.abox.push_back(
          Atom::ConceptAtom(ca->expression, Term::Ind(ca->individual)));
    } else if (const auto* ra = std::get_if<RoleAssertion>(&a)) {
      out.abox.push_back(Ar(ra->role, Term::Ind(ra->from), Term::Ind(ra->to)));
    } else if (const auto* same = std::get_if<SameIndividual>(&a)) {
      out.abox.push_back(
          Atom::Equality(Term::Ind(same->first), Term::Ind(same->second)));
    } else {
      const auto& diff = std::get<DifferentIndividuals>(a);
      out.abox.push_back(
          Atom::Inequality(Term::Ind(diff.first), Term::Ind(diff.second)));
    }
  }
  for (const std::string& a : nominals) {
    out.abox.push_back(
        Atom::ConceptAtom(Concept::Atomic(NominalGuard(a)), Term::Ind(a)));
  }
  return out;
}

Clausification Preprocess(const KnowledgeBase& kb) {
  return XiClausify(DeltaNormalize(OmegaEncode(kb)));
}

// ---- validation ----

namespace {

bool IsX(const Term& t) { return t.kind == TermKind::kCenter; }
bool IsY(const Term& t) { return t.kind == TermKind::kBranch; }
bool IsZ(const Term& t) { return t.kind == TermKind::kNominal; }

bool IsAtomicConcept(const Atom& a) {
  return a.kind == AtomKind::kConcept &&
         a.concept_.kind() == ConceptKind::kAtomic;
}

bool IsGuardAtom(const Atom& a) {
  return IsAtomicConcept(a) && IsNominalGuard(a.concept_.name());
}

bool LiteralWithoutGuard(const Concept& c) {
  if (!c.IsLiteral()) return false;
  if (c.kind() == ConceptKind::kAtomic) return !IsNominalGuard(c.name());
  if (c.kind() == ConceptKind::kNot) return !IsNominalGuard(c.filler().name());
  return true;
}

bool Mentions(const Atom& a, const Term& v) {
  if (a.s == v) return true;
  if (a.kind != AtomKind::kConcept && a.t == v) return true;
  return a.annotation && a.annotation->at == v;
}

bool SameAnnotationKind(const Annotation& a, const Annotation& b) {
  return a.bound == b.bound && a.role == b.role && a.filler == b.filler;
}

void CheckAnnotatedGroups(const HTClause& c, std::vector<std::string>* out) {
  std::vector<bool> seen(c.consequent.size(), false);
  for (size_t i = 0; i < c.consequent.size(); ++i) {
    const Atom& first = c.consequent[i];
    if (first.kind != AtomKind::kEquality || !first.annotation || seen[i]) {
      continue;
    }
    const Annotation& ann = *first.annotation;
    std::vector<size_t> group;
    std::set<Term> vars;
    for (size_t j = i; j < c.consequent.size(); ++j) {
      const Atom& a = c.consequent[j];
      if (a.kind == AtomKind::kEquality && a.annotation &&
          SameAnnotationKind(*a.annotation, ann) && a.annotation->at == ann.at) {
        // Only equalities sharing variables with this group belong to it.
        if (group.empty() || vars.count(a.s) || vars.count(a.t)) {
          group.push_back(j);
          vars.insert(a.s);
          vars.insert(a.t);
          seen[j] = true;
        }
      }
    }
    if (!IsX(ann.at)) out->push_back("annotation not anchored at x");
    size_t h = ann.bound;
    if (vars.size() != h + 1 || group.size() != (h + 1) * h / 2) {
      out->push_back("annotated equality not embedded in an at-most subclause");
      continue;
    }
    bool positive = ann.filler.kind() == ConceptKind::kAtomic;
    bool negative = ann.filler.kind() == ConceptKind::kNot;
    for (const Term& v : vars) {
      if (!IsY(v)) {
        out->push_back("annotated equality over a non-branch variable");
        continue;
      }
      Atom guard = Ar(ann.role, Term::X(), v);
      bool has_guard = false;
      bool has_filler = false;
      for (const Atom& a : c.antecedent) {
        if (!Mentions(a, v)) continue;
        if (a == guard) {
          has_guard = true;
        } else if (positive && a == Atom::ConceptAtom(ann.filler, v)) {
          has_filler = true;
        } else {
          out->push_back("private variable reuse: " + v.ToString());
        }
      }
      for (size_t j = 0; j < c.consequent.size(); ++j) {
        const Atom& a = c.consequent[j];
        if (!Mentions(a, v)) continue;
        bool in_group =
            std::find(group.begin(), group.end(), j) != group.end();
        if (in_group) continue;
        if (negative && a == Atom::ConceptAtom(ann.filler.filler(), v)) {
          has_filler = true;
        } else {
          out->push_back("private variable reuse: " + v.ToString());
        }
      }
      if (!has_guard) {
        out->push_back("annotated variable " + v.ToString() +
                       " lacks its role atom");
      }
      if ((positive || negative) && !has_filler) {
        out->push_back("annotated variable " + v.ToString() +
                       " lacks its filler atom");
      }
    }
  }
}

}  // namespace

std::vector<std::string> ValidateHTClause(const HTClause& c) {
  std::vector<std::string> out;
  std::set<Term> guarded_y;
  std::set<Term> guarded_z;
  for (const Atom& a : c.antecedent) {
    if (a.kind == AtomKind::kConcept) {
      if (!IsAtomicConcept(a)) {
        out.push_back("antecedent concept atom is not atomic: " + a.ToString());
      } else if (!IsX(a.s) && !IsY(a.s) && !IsZ(a.s)) {
        out.push_back("constant in clause: " + a.ToString());
      }
      if (IsZ(a.s) && IsGuardAtom(a)) guarded_z.insert(a.s);
      if (IsZ(a.s) && !IsGuardAtom(a)) {
        // Non-guard atoms on nominal variables are allowed but do not guard.
      }
    } else if (a.kind == AtomKind::kRole) {
      bool ok = (IsX(a.s) && IsX(a.t)) || (IsX(a.s) && IsY(a.t)) ||
                (IsY(a.s) && IsX(a.t));
      if (!ok) out.push_back("antecedent role atom shape: " + a.ToString());
      if (IsY(a.t) && IsX(a.s)) guarded_y.insert(a.t);
      if (IsY(a.s) && IsX(a.t)) guarded_y.insert(a.s);
    } else {
      out.push_back("equality in antecedent: " + a.ToString());
    }
  }
  for (const Atom& a : c.consequent) {
    switch (a.kind) {
      case AtomKind::kConcept: {
        const Concept& k = a.concept_;
        if (k.kind() == ConceptKind::kAtLeast) {
          if (!IsX(a.s)) out.push_back("at-least atom not on x: " + a.ToString());
          if (!LiteralWithoutGuard(k.filler())) {
            out.push_back("at-least filler: " + a.ToString());
          }
        } else if (!LiteralWithoutGuard(k)) {
          out.push_back("consequent concept is not a guard-free literal: " +
                        a.ToString());
        } else if (!IsX(a.s) && !IsY(a.s)) {
          out.push_back("consequent concept atom shape: " + a.ToString());
        }
        break;
      }
      case AtomKind::kRole: {
        bool ok = (IsX(a.s) && (IsX(a.t) || IsY(a.t) || IsZ(a.t))) ||
                  ((IsY(a.s) || IsZ(a.s)) && IsX(a.t));
        if (!ok) out.push_back("consequent role atom shape: " + a.ToString());
        break;
      }
      case AtomKind::kEquality:
        if (a.annotation) {
          if (!IsY(a.s) || !IsY(a.t)) {
            out.push_back("annotated equality shape: " + a.ToString());
          }
        } else if (!((IsX(a.s) && IsZ(a.t)) || (IsZ(a.s) && IsX(a.t)))) {
          out.push_back("unannotated equality shape: " + a.ToString());
        }
        break;
      case AtomKind::kInequality:
        out.push_back("inequality in clause: " + a.ToString());
        break;
    }
  }
  for (const Term& v : c.Variables()) {
    if (IsY(v) && !guarded_y.count(v)) {
      out.push_back("branch variable not guarded: " + v.ToString());
    }
    if (IsZ(v) && !guarded_z.count(v)) {
      out.push_back("nominal variable not guarded: " + v.ToString());
    }
    if (v.kind == TermKind::kIndividual) {
      out.push_back("constant in clause: " + v.ToString());
    }
  }
  CheckAnnotatedGroups(c, &out);
  return out;
}

bool IsSimpleHTClause(const HTClause& c) {
  for (const Atom& a : c.antecedent) {
    if (a.kind == AtomKind::kConcept) {
      if (!IsAtomicConcept(a)) return false;
    } else if (a.kind == AtomKind::kRole) {
      if (!(IsX(a.s) && (IsX(a.t) || IsY(a.t)))) return false;
    } else {
      return false;
    }
  }
  for (const Atom& a : c.consequent) {
    switch (a.kind) {
      case AtomKind::kConcept:
        if (a.concept_.kind() == ConceptKind::kAtLeast) {
          if (!IsX(a.s) || a.concept_.role().inverse) return false;
        } else if (!IsX(a.s) && !IsY(a.s)) {
          return false;
        }
        break;
      case AtomKind::kRole:
        if (!(IsX(a.s) && (IsX(a.t) || IsY(a.t) || IsZ(a.t)))) return false;
        break;
      case AtomKind::kEquality:
        if (!((IsX(a.s) && IsZ(a.t)) || (IsY(a.s) && IsY(a.t)))) return false;
        break;
      case AtomKind::kInequality:
        return false;
    }
  }
  return true;
}

bool IsHorn(const std::vector<HTClause>& clauses) {
  for (const HTClause& c : clauses) {
    if (c.consequent.size() > 1) return false;
  }
  return true;
}

bool HasNominalGuards(const std::vector<HTClause>& clauses) {
  for (const HTClause& c : clauses) {
    for (const Atom& a : c.antecedent) {
      if (IsGuardAtom(a)) return true;
    }
  }
  return false;
}

}  // namespace htdl
