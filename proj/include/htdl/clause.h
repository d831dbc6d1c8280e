// Atoms, annotations and HT-clauses.

#ifndef HTDL_CLAUSE_H_
#define HTDL_CLAUSE_H_

#include <optional>
#include <string>
#include <vector>

#include "htdl/kb.h"

namespace htdl {

enum class TermKind { kCenter, kBranch, kNominal, kIndividual };

// A clause variable (x, y_i, z_j) or an individual name.
struct Term {
  TermKind kind = TermKind::kCenter;
  int index = 0;     // for branch and nominal variables, 1-based
  std::string name;  // for individuals

  static Term X() { return Term{TermKind::kCenter, 0, ""}; }
  static Term Y(int i) { return Term{TermKind::kBranch, i, ""}; }
  static Term Z(int j) { return Term{TermKind::kNominal, j, ""}; }
  static Term Ind(std::string n) {
    return Term{TermKind::kIndividual, 0, std::move(n)};
  }

  bool IsVariable() const { return kind != TermKind::kIndividual; }
  std::string ToString() const;

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;
};

// The tag @^u_{<=n R.B} of an equality.
struct Annotation {
  Term at;
  uint32_t bound = 0;
  Role role;
  Concept filler;  // literal

  std::string ToString() const;
  friend bool operator==(const Annotation& a, const Annotation& b) {
    return a.at == b.at && a.bound == b.bound && a.role == b.role &&
           a.filler == b.filler;
  }
};

enum class AtomKind { kConcept, kRole, kEquality, kInequality };

// Concept atoms carry a literal (top, bottom, A, not A) or an at-least
// concept with a literal filler. Role atoms carry an atomic role name.
// Inequalities appear only in ABoxes.
struct Atom {
  AtomKind kind = AtomKind::kConcept;
  Concept concept_;
  std::string role;
  Term s;
  Term t;
  std::optional<Annotation> annotation;

  static Atom ConceptAtom(Concept c, Term s);
  static Atom RoleAtom(std::string role, Term s, Term t);
  static Atom Equality(Term s, Term t,
                       std::optional<Annotation> annotation = std::nullopt);
  static Atom Inequality(Term s, Term t);

  std::string ToString() const;
  friend bool operator==(const Atom& a, const Atom& b);
};

// ar(R, s, t): R(s,t) for atomic R and S(t,s) for R = inv(S).
Atom Ar(const Role& r, const Term& s, const Term& t);

struct HTClause {
  std::vector<Atom> antecedent;
  std::vector<Atom> consequent;

  // Variables occurring anywhere in the clause, sorted.
  std::vector<Term> Variables() const;
  std::string ToString() const;
  friend bool operator==(const HTClause&, const HTClause&) = default;
};

// Ground atoms over individuals.
using InputAbox = std::vector<Atom>;

// Clause-notation text: "S-" for inverse roles; "!A", "top", ">=2 S-.A" for
// concepts.
std::string RoleText(const Role& r);
std::string ConceptText(const Concept& c);

// Name of the nominal-guard concept for individual a.
std::string NominalGuard(const std::string& individual);
bool IsNominalGuard(const std::string& concept_name);
std::string GuardedIndividual(const std::string& concept_name);

}  // namespace htdl

#endif  // HTDL_CLAUSE_H_
