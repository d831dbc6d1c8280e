#include "htdl/clause.h"

#include <algorithm>
#include <set>

namespace htdl {

namespace {

const char kGuardPrefix[] = "O%";

void AddVariable(const Term& t, std::set<Term>* out) {
  if (t.IsVariable()) out->insert(t);
}

}  // namespace

std::string RoleText(const Role& r) { return r.inverse ? r.name + "-" : r.name; }

std::string ConceptText(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::kTop:
      return "top";
    case ConceptKind::kBottom:
      return "bottom";
    case ConceptKind::kAtomic:
      return c.name();
    case ConceptKind::kNot:
      return "!" + ConceptText(c.filler());
    case ConceptKind::kAtLeast:
      return ">=" + std::to_string(c.number()) + " " + RoleText(c.role()) +
             "." + ConceptText(c.filler());
    default:
      return c.ToString();
  }
}

std::string Term::ToString() const {
  switch (kind) {
    case TermKind::kCenter:
      return "x";
    case TermKind::kBranch:
      return "y" + std::to_string(index);
    case TermKind::kNominal:
      return "z" + std::to_string(index);
    case TermKind::kIndividual:
      return name;
  }
  return "?";
}

std::string Annotation::ToString() const {
  return "@{<=" + std::to_string(bound) + " " + RoleText(role) + "." +
         ConceptText(filler) + "}^" + at.ToString();
}

Atom Atom::ConceptAtom(Concept c, Term s) {
  Atom a;
  a.kind = AtomKind::kConcept;
  a.concept_ = std::move(c);
  a.s = std::move(s);
  return a;
}

Atom Atom::RoleAtom(std::string role, Term s, Term t) {
  Atom a;
  a.kind = AtomKind::kRole;
  a.role = std::move(role);
  a.s = std::move(s);
  a.t = std::move(t);
  return a;
}

Atom Atom::Equality(Term s, Term t, std::optional<Annotation> annotation) {
  Atom a;
  a.kind = AtomKind::kEquality;
  a.s = std::move(s);
  a.t = std::move(t);
  a.annotation = std::move(annotation);
  return a;
}

Atom Atom::Inequality(Term s, Term t) {
  Atom a;
  a.kind = AtomKind::kInequality;
  a.s = std::move(s);
  a.t = std::move(t);
  return a;
}

std::string Atom::ToString() const {
  switch (kind) {
    case AtomKind::kConcept:
      return ConceptText(concept_) + "(" + s.ToString() + ")";
    case AtomKind::kRole:
      return role + "(" + s.ToString() + "," + t.ToString() + ")";
    case AtomKind::kEquality: {
      std::string out = s.ToString() + " = " + t.ToString();
      if (annotation) out += " " + annotation->ToString();
      return out;
    }
    case AtomKind::kInequality:
      return s.ToString() + " != " + t.ToString();
  }
  return "?";
}

bool operator==(const Atom& a, const Atom& b) {
  if (a.kind != b.kind || a.s != b.s) return false;
  switch (a.kind) {
    case AtomKind::kConcept:
      return a.concept_ == b.concept_;
    case AtomKind::kRole:
      return a.role == b.role && a.t == b.t;
    case AtomKind::kEquality:
      return a.t == b.t && a.annotation == b.annotation;
    case AtomKind::kInequality:
      return a.t == b.t;
  }
  return false;
}

Atom Ar(const Role& r, const Term& s, const Term& t) {
  return r.inverse ? Atom::RoleAtom(r.name, t, s) : Atom::RoleAtom(r.name, s, t);
}

std::vector<Term> HTClause::Variables() const {
  std::set<Term> vars;
  for (const auto* side : {&antecedent, &consequent}) {
    for (const Atom& a : *side) {
      AddVariable(a.s, &vars);
      if (a.kind != AtomKind::kConcept) AddVariable(a.t, &vars);
      if (a.annotation) AddVariable(a.annotation->at, &vars);
    }
  }
  return {vars.begin(), vars.end()};
}

std::string HTClause::ToString() const {
  std::string out;
  if (antecedent.empty()) out = "top";
  for (size_t i = 0; i < antecedent.size(); ++i) {
    if (i) out += " ^ ";
    out += antecedent[i].ToString();
  }
  out += " -> ";
  if (consequent.empty()) out += "bottom";
  for (size_t i = 0; i < consequent.size(); ++i) {
    if (i) out += " v ";
    out += consequent[i].ToString();
  }
  return out;
}

std::string NominalGuard(const std::string& individual) {
  return kGuardPrefix + individual;
}

bool IsNominalGuard(const std::string& concept_name) {
  return concept_name.rfind(kGuardPrefix, 0) == 0;
}

std::string GuardedIndividual(const std::string& concept_name) {
  return concept_name.substr(sizeof(kGuardPrefix) - 1);
}

}  // namespace htdl
