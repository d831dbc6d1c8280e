// Blocking statuses under the supported strategies, the label index used to
// find blockers, and the syntactic guards that keep each strategy sound.

#ifndef HTDL_BLOCKING_H_
#define HTDL_BLOCKING_H_

#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "htdl/abox.h"
#include "htdl/clause.h"

namespace htdl {

enum class BlockingStrategy {
  kAnywherePairwise,
  kAncestorPairwise,
  kAtomicSingle,
  kFullSingle,
  kSubset,
};

std::string StrategyName(BlockingStrategy s);
std::optional<BlockingStrategy> ParseStrategy(const std::string& name);

enum class BlockKind : uint8_t { kUnblocked, kDirect, kIndirect };

// Blocker id used for blockers taken from a BlockerCache.
inline constexpr IndId kCachedBlocker = kNone - 1;

struct BlockState {
  BlockKind kind = BlockKind::kUnblocked;
  IndId blocker = kNone;
  friend bool operator==(const BlockState&, const BlockState&) = default;
};

// Indexed by individual id; ids past the end are unblocked.
class BlockingStatus {
 public:
  const BlockState& at(IndId id) const {
    static const BlockState kUnblockedState;
    return id < states_.size() ? states_[id] : kUnblockedState;
  }
  bool blocked(IndId id) const { return at(id).kind != BlockKind::kUnblocked; }
  bool indirectly_blocked(IndId id) const {
    return at(id).kind == BlockKind::kIndirect;
  }
  bool directly_blocked(IndId id) const {
    return at(id).kind == BlockKind::kDirect;
  }
  void set(IndId id, BlockState s) {
    if (id >= states_.size()) states_.resize(id + 1);
    states_[id] = s;
  }
  size_t size() const { return states_.size(); }
  size_t CountDirect() const;
  size_t CountBlocked() const;
  friend bool operator==(const BlockingStatus& a, const BlockingStatus& b);

 private:
  std::vector<BlockState> states_;
};

// L(s): atomic concepts asserted for s, sorted by id.
std::vector<ConceptId> LabelOf(const ABox& abox, const Vocabulary& vocab,
                               IndId s);
// Atomic concepts plus at-least concepts with number 1.
std::vector<ConceptId> FullLabelOf(const ABox& abox, const Vocabulary& vocab,
                                   IndId s);
// L(s, t): roles R with R(s, t), sorted.
std::vector<RoleId> EdgeLabel(const ABox& abox, IndId s, IndId t);

struct BlockingKey {
  std::vector<ConceptId> self;
  std::vector<ConceptId> parent;
  std::vector<RoleId> to_parent;    // L(s, s')
  std::vector<RoleId> from_parent;  // L(s', s)
  friend bool operator==(const BlockingKey&, const BlockingKey&) = default;
};

struct BlockingKeyHash {
  size_t operator()(const BlockingKey& k) const;
};

BlockingKey PairwiseKey(const ABox& abox, const IndividualPool& pool,
                        const Vocabulary& vocab, IndId s);

// Label quadruples of non-blocked individuals from earlier clash-free runs.
// Only meaningful for nominal-free clause sets under anywhere-pairwise
// blocking.
class BlockerCache {
 public:
  void Add(BlockingKey key) { keys_.insert(std::move(key)); }
  bool Contains(const BlockingKey& key) const { return keys_.count(key) > 0; }
  size_t size() const { return keys_.size(); }
  void Clear() { keys_.clear(); }

 private:
  std::unordered_set<BlockingKey, BlockingKeyHash> keys_;
};

// Single ascending scan; blockers come from a hash index of labels (a linear
// superset search for subset blocking). The cache, when given, supplies
// virtual blockers for anywhere-pairwise blocking.
BlockingStatus ComputeBlocking(const ABox& abox, const IndividualPool& pool,
                               const Vocabulary& vocab,
                               BlockingStrategy strategy,
                               const BlockerCache* cache = nullptr);

// Direct quadratic transcription of the definitions. `precedes` is the
// blocking order; nullptr means id order.
BlockingStatus ComputeBlockingNaive(
    const ABox& abox, const IndividualPool& pool, const Vocabulary& vocab,
    BlockingStrategy strategy,
    const std::function<bool(IndId, IndId)>& precedes = nullptr);

// Stores the keys of all non-blocked blockable individuals of a clash-free
// ABox.
void CacheBlockers(const ABox& abox, const IndividualPool& pool,
                   const Vocabulary& vocab, const BlockingStatus& status,
                   BlockerCache* cache);

struct GuardResult {
  bool ok = true;
  std::string reason;
};

GuardResult CheckStrategyGuard(BlockingStrategy strategy,
                               const std::vector<HTClause>& clauses);

}  // namespace htdl

#endif  // HTDL_BLOCKING_H_
