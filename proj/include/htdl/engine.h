// The hypertableau derivation engine: compiled clause sets, rule selection
// with fixed precedence, and depth-first search over derivation trees.

#ifndef HTDL_ENGINE_H_
#define HTDL_ENGINE_H_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "htdl/abox.h"
#include "htdl/blocking.h"
#include "htdl/clause.h"
#include "htdl/individuals.h"
#include "htdl/vocabulary.h"

namespace htdl {

enum class RuleKind { kBot = 0, kNI = 1, kEq = 2, kHyp = 3, kAtLeast = 4 };
inline constexpr int kNumRules = 5;
std::string RuleName(RuleKind r);

enum class DisjunctOrder { kDeclared, kReversed };

// A term of a compiled clause: a variable slot or a fixed individual.
struct CompiledTerm {
  int var = -1;
  std::string constant;
  bool is_constant() const { return var < 0; }
};

// How an antecedent atom participates in the join.
enum class JoinOp : uint8_t {
  kCheck,        // every term bound
  kExtendOut,    // R(s, t) with s bound
  kExtendIn,     // R(s, t) with t bound
  kScanConcept,  // C(s) with s unbound
  kScanRole,     // R(s, t) with neither bound
};

struct CompiledAtom {
  AtomKind kind = AtomKind::kConcept;
  JoinOp op = JoinOp::kCheck;
  ConceptId concept_ = kNone;
  RoleId role = kNone;
  CompiledTerm s;
  CompiledTerm t;
  bool annotated = false;
  CompiledTerm ann_at;
  uint32_t ann_bound = 0;
  RoleRef ann_role;
  ConceptId ann_filler = kNone;
};

struct CompiledClause {
  size_t index = 0;  // position in the source clause list
  std::vector<CompiledAtom> antecedent;  // in join order
  std::vector<CompiledAtom> consequent;
  int num_vars = 1;  // slot 0 is x
  bool has_center = true;
  // Longest role-atom path from x to a variable or constant of the
  // antecedent; kUnbounded when some variable is reachable only by a global
  // scan. Variables bound solely by a nominal-guard atom do not count.
  int radius = 0;
  std::vector<std::string> constants;
};

inline constexpr int kUnbounded = 1 << 20;

class Program {
 public:
  // Throws std::invalid_argument for clauses whose consequent uses a
  // variable that the antecedent does not bind.
  explicit Program(std::vector<HTClause> clauses);

  const std::vector<HTClause>& clauses() const { return clauses_; }
  const std::vector<CompiledClause>& compiled() const { return compiled_; }
  Vocabulary& vocab() const { return *vocab_; }
  // Largest finite clause radius, at least 1.
  int radius() const { return radius_; }
  bool has_global_clauses() const { return global_; }
  bool has_nominal_guards() const { return has_guards_; }
  bool horn() const { return horn_; }

 private:
  std::vector<HTClause> clauses_;
  std::vector<CompiledClause> compiled_;
  std::shared_ptr<Vocabulary> vocab_;
  int radius_ = 1;
  bool global_ = false;
  bool has_guards_ = false;
  bool horn_ = true;
};

enum class Verdict { kSat, kUnsat, kIndeterminate };
std::string VerdictName(Verdict v);

struct DeriveStats {
  std::array<uint64_t, kNumRules> rule_counts{};
  uint64_t applications = 0;
  uint64_t peak_alive = 0;
  uint64_t branch_count = 0;  // leaves visited
  uint64_t choice_points = 0;
  uint64_t ni_root_creations = 0;
  uint64_t cache_blocked = 0;  // individuals blocked by cached labels
  uint64_t individuals_created = 0;
  uint64_t backjumps = 0;
  uint64_t count(RuleKind r) const { return rule_counts[static_cast<int>(r)]; }
};

// Snapshot handed to observers after each rule application.
struct StepEvent {
  RuleKind rule;
  size_t choice = 0;
  size_t alternatives = 1;
  const ABox& abox;
  const IndividualPool& pool;
  const Vocabulary& vocab;
  uint64_t step = 0;
};

struct TraceRecord {
  uint64_t node = 0;
  int64_t parent = -1;
  std::string rule;  // "init" for the root
  size_t choice = 0;
  std::vector<std::string> added;
  std::vector<std::string> removed;
  std::vector<std::string> blocking;
};

struct EngineConfig {
  BlockingStrategy blocking = BlockingStrategy::kAnywherePairwise;
  bool unsafe_blocking = false;
  uint64_t individual_cap = 200000;
  double timeout_seconds = 300;
  bool backjumping = false;
  DisjunctOrder disjunct_order = DisjunctOrder::kDeclared;
  uint64_t seed = 0;  // 0 keeps the canonical don't-care order
  // Runs the HT-ABox validator after every rule application and throws
  // std::logic_error on a violation.
  bool validate_each_step = false;
  // Compares the incremental rule selection with a full scan at every step.
  bool cross_check_selection = false;
  const BlockerCache* blocker_cache = nullptr;
  std::function<void(const StepEvent&)> on_step;
  std::vector<TraceRecord>* trace = nullptr;
};

class StrategyGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DeriveResult {
  Verdict verdict = Verdict::kIndeterminate;
  DeriveStats stats;
  std::string limit_reason;
  // The clash-free leaf for SAT answers.
  std::shared_ptr<const ABox> final_abox;
  BlockingStatus final_blocking;
  std::shared_ptr<const IndividualPool> pool;
  // No choice point was opened during the whole run.
  bool deterministic = true;
};

// Throws StrategyGuardError when the strategy guard rejects the clause set
// and config.unsafe_blocking is off.
DeriveResult Derive(const Program& program, const InputAbox& abox,
                    const EngineConfig& config = {});

// Reads seed-dependent settings from HTDL_SEED when present.
uint64_t SeedFromEnvironment();

}  // namespace htdl

#endif  // HTDL_ENGINE_H_
