// Reasoning services on top of preprocessing and the derivation engine:
// satisfiability, subsumption and classification.

#ifndef HTDL_REASONER_H_
#define HTDL_REASONER_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "htdl/engine.h"
#include "htdl/interpretation.h"
#include "htdl/kb.h"
#include "htdl/preprocessing.h"

namespace htdl {

// Reserved name of the test individual used by subsumption tests.
inline constexpr char kTestIndividual[] = "%a0";

struct SatResult {
  Verdict verdict = Verdict::kIndeterminate;
  DeriveResult derivation;
  std::shared_ptr<const Program> program;
};

SatResult CheckSatisfiable(const KnowledgeBase& kb,
                           const EngineConfig& config = {});
Verdict IsSatisfiable(const KnowledgeBase& kb, const EngineConfig& config = {});

enum class Answer { kTrue, kFalse, kUnknown };
std::string AnswerName(Answer a);

// K |= sub <= super, decided on K plus (sub and not super)(%a0).
Answer Subsumes(const KnowledgeBase& kb, const Concept& sub,
                const Concept& super, const EngineConfig& config = {});

// What a clash-free run for K plus A(a) reveals about the subsumers of A.
struct SubsumerReadOff {
  // Atomic concepts C with C(a) derived independently of any choice.
  std::set<std::string> certain;
  // Atomic concepts absent from the label of a.
  std::set<std::string> non_subsumers;
  // Atomic concepts in the label of a that depend on a choice.
  std::set<std::string> undecided;
};

// `candidates` are the atomic concepts of interest; fresh and guard names
// never appear in the output.
SubsumerReadOff ReadSubsumersFromRun(const DeriveResult& run,
                                     const Vocabulary& vocab,
                                     const std::string& individual,
                                     const std::set<std::string>& candidates);

// The interpretation whose domain is the set of alive individuals of a SAT
// run, with concept and role extensions read from the assertions and role
// inclusions and transitivity closed. Empty when the final ABox contains
// blocked individuals.
std::optional<FiniteInterpretation> ReadOffInterpretation(
    const DeriveResult& run, const Vocabulary& vocab, const KnowledgeBase& kb);

struct Taxonomy {
  // Reflexive subsumer sets, including "top"; concepts equivalent to
  // "bottom" map to every concept.
  std::map<std::string, std::set<std::string>> subsumers;
  std::set<std::string> unsatisfiable;
  // Pairs (sub, super) left undecided by a resource limit.
  std::set<std::pair<std::string, std::string>> unknown;

  bool Subsumes(const std::string& sub, const std::string& super) const;
  // Equivalence classes, each sorted, in order of their least member.
  std::vector<std::vector<std::string>> Classes() const;
  // Direct subsumer edges between class representatives.
  std::vector<std::pair<std::string, std::string>> DirectEdges() const;
  // One "(gci A B)" line per direct subsumption and per equivalence.
  std::string ToString() const;
};

// Reuses one preprocessed clause set across tests on the same knowledge base.
class Reasoner {
 public:
  explicit Reasoner(KnowledgeBase kb, EngineConfig config = {},
                    bool label_cache = true);

  Verdict IsSatisfiable();
  Answer Subsumes(const std::string& sub, const std::string& super);
  Taxonomy Classify();

  uint64_t sat_calls() const { return sat_calls_; }
  const DeriveStats& total_stats() const { return total_; }
  bool cache_enabled() const { return cache_enabled_; }
  size_t cache_size() const { return cache_.size(); }
  void ClearCache() { cache_.Clear(); }
  const Program& program() const { return *program_; }

  // Satisfiability of the knowledge base extended by the given literals of
  // the test individual.
  DeriveResult RunWithTest(const std::vector<Concept>& literals);

 private:
  KnowledgeBase kb_;
  EngineConfig config_;
  Clausification clauses_;
  std::shared_ptr<Program> program_;
  bool cache_enabled_ = false;
  BlockerCache cache_;
  uint64_t sat_calls_ = 0;
  DeriveStats total_;
};

// Concept names of the knowledge base that classification covers.
std::set<std::string> ClassifiableConcepts(const KnowledgeBase& kb);

}  // namespace htdl

#endif  // HTDL_REASONER_H_
