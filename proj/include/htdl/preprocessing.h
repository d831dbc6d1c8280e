// Preprocessing: transitivity elimination (Omega), structural normalization
// (Delta) and clausification (Xi).

#ifndef HTDL_PREPROCESSING_H_
#define HTDL_PREPROCESSING_H_

#include <set>
#include <string>
#include <vector>

#include "htdl/clause.h"
#include "htdl/kb.h"

namespace htdl {

// Reserved fresh-name prefixes. User symbols may not contain '%'.
inline constexpr char kFreshConceptPrefix[] = "Q%";
inline constexpr char kFreshIndividual[] = "%top";

std::set<Concept> ConceptClosure(const KnowledgeBase& kb);

// Removes transitivity axioms and adds the GCIs that compensate for them.
KnowledgeBase OmegaEncode(const KnowledgeBase& kb);

bool PosPolarity(const Concept& c);

// Name of the fresh concept Q_C.
std::string FreshConceptName(const Concept& c);

// Normalized GCIs are Gci{top, Or(disjuncts)} where each disjunct is B, {a},
// (all R B), (self R), (not (self R)), (atleast n R B) or (atmost n R B) for
// literal B. Assertions are literal concept assertions on atomic roles.
KnowledgeBase DeltaNormalize(const KnowledgeBase& kb);
bool IsNormalizedGci(const Gci& g);

struct Clausification {
  std::vector<HTClause> clauses;
  InputAbox abox;
};

// Throws std::invalid_argument naming the offending GCI when the input is
// not normalized.
Clausification XiClausify(const KnowledgeBase& normalized);

// Omega, Delta and Xi in sequence.
Clausification Preprocess(const KnowledgeBase& kb);

// Empty when the clause satisfies every HT-clause condition.
std::vector<std::string> ValidateHTClause(const HTClause& clause);
bool IsSimpleHTClause(const HTClause& clause);
// At most one consequent atom in every clause.
bool IsHorn(const std::vector<HTClause>& clauses);
bool HasNominalGuards(const std::vector<HTClause>& clauses);

}  // namespace htdl

#endif  // HTDL_PREPROCESSING_H_
