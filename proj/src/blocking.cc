#include "htdl/blocking.h"

#include <algorithm>
#include <set>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "htdl/preprocessing.h"

namespace htdl {

std::string StrategyName(BlockingStrategy s) {
  switch (s) {
    case BlockingStrategy::kAnywherePairwise:
      return "anywhere-pairwise";
    case BlockingStrategy::kAncestorPairwise:
      return "ancestor-pairwise";
    case BlockingStrategy::kAtomicSingle:
      return "atomic-single";
    case BlockingStrategy::kFullSingle:
      return "full-single";
    case BlockingStrategy::kSubset:
      return "subset";
  }
  return "?";
}

std::optional<BlockingStrategy> ParseStrategy(const std::string& name) {
  for (auto s : {BlockingStrategy::kAnywherePairwise,
                 BlockingStrategy::kAncestorPairwise,
                 BlockingStrategy::kAtomicSingle, BlockingStrategy::kFullSingle,
                 BlockingStrategy::kSubset}) {
    if (StrategyName(s) == name) return s;
  }
  return std::nullopt;
}

size_t BlockingStatus::CountDirect() const {
  return std::count_if(states_.begin(), states_.end(), [](const BlockState& s) {
    return s.kind == BlockKind::kDirect;
  });
}

size_t BlockingStatus::CountBlocked() const {
  return std::count_if(states_.begin(), states_.end(), [](const BlockState& s) {
    return s.kind != BlockKind::kUnblocked;
  });
}

bool operator==(const BlockingStatus& a, const BlockingStatus& b) {
  size_t n = std::max(a.size(), b.size());
  for (IndId i = 0; i < n; ++i) {
    if (!(a.at(i) == b.at(i))) return false;
  }
  return true;
}

std::vector<ConceptId> LabelOf(const ABox& abox, const Vocabulary& vocab,
                               IndId s) {
  std::vector<ConceptId> out;
  if (const IndState* st = abox.state(s)) {
    for (const auto& [c, dep] : st->concepts) {
      if (vocab.IsAtomic(c)) out.push_back(c);
    }
  }
  return out;
}

std::vector<ConceptId> FullLabelOf(const ABox& abox, const Vocabulary& vocab,
                                   IndId s) {
  std::vector<ConceptId> out;
  if (const IndState* st = abox.state(s)) {
    for (const auto& [c, dep] : st->concepts) {
      const ConceptEntry& e = vocab.concept_entry(c);
      if (e.kind == LiteralKind::kAtomic ||
          (e.kind == LiteralKind::kAtLeast && e.number == 1)) {
        out.push_back(c);
      }
    }
  }
  return out;
}

std::vector<RoleId> EdgeLabel(const ABox& abox, IndId s, IndId t) {
  std::vector<RoleId> out;
  if (const IndState* st = abox.state(s)) {
    for (const auto& [key, dep] : st->out) {
      if (key.second == t) out.push_back(key.first);
    }
  }
  return out;
}

size_t BlockingKeyHash::operator()(const BlockingKey& k) const {
  size_t seed = 0;
  boost::hash_combine(seed, boost::hash_range(k.self.begin(), k.self.end()));
  boost::hash_combine(seed,
                      boost::hash_range(k.parent.begin(), k.parent.end()));
  boost::hash_combine(
      seed, boost::hash_range(k.to_parent.begin(), k.to_parent.end()));
  boost::hash_combine(
      seed, boost::hash_range(k.from_parent.begin(), k.from_parent.end()));
  return seed;
}

BlockingKey PairwiseKey(const ABox& abox, const IndividualPool& pool,
                        const Vocabulary& vocab, IndId s) {
  IndId p = pool.Parent(s);
  return BlockingKey{LabelOf(abox, vocab, s), LabelOf(abox, vocab, p),
                     EdgeLabel(abox, s, p), EdgeLabel(abox, p, s)};
}

namespace {

BlockingKey KeyFor(BlockingStrategy strategy, const ABox& abox,
                   const IndividualPool& pool, const Vocabulary& vocab,
                   IndId s) {
  switch (strategy) {
    case BlockingStrategy::kAnywherePairwise:
    case BlockingStrategy::kAncestorPairwise:
      return PairwiseKey(abox, pool, vocab, s);
    case BlockingStrategy::kAtomicSingle:
      return BlockingKey{LabelOf(abox, vocab, s), {}, {}, {}};
    case BlockingStrategy::kFullSingle:
    case BlockingStrategy::kSubset:
      return BlockingKey{FullLabelOf(abox, vocab, s), {}, {}, {}};
  }
  return {};
}

}  // namespace

BlockingStatus ComputeBlocking(const ABox& abox, const IndividualPool& pool,
                               const Vocabulary& vocab,
                               BlockingStrategy strategy,
                               const BlockerCache* cache) {
  BlockingStatus status;
  std::unordered_map<BlockingKey, IndId, BlockingKeyHash> index;
  std::vector<std::pair<std::vector<ConceptId>, IndId>> candidates;
  std::unordered_map<IndId, std::pair<size_t, BlockingKey>> path_keys;
  for (IndId s : abox.AliveIndividuals()) {
    if (pool.IsRoot(s)) continue;
    IndId p = pool.Parent(s);
    if (status.blocked(p)) {
      status.set(s, {BlockKind::kIndirect, kNone});
      continue;
    }
    BlockingKey key = KeyFor(strategy, abox, pool, vocab, s);
    IndId blocker = kNone;
    switch (strategy) {
      case BlockingStrategy::kAnywherePairwise:
      case BlockingStrategy::kAtomicSingle:
      case BlockingStrategy::kFullSingle: {
        auto it = index.find(key);
        if (it != index.end()) {
          blocker = it->second;
        } else if (cache &&
                   strategy == BlockingStrategy::kAnywherePairwise &&
                   cache->Contains(key)) {
          blocker = kCachedBlocker;
        } else {
          index.emplace(std::move(key), s);
        }
        break;
      }
      case BlockingStrategy::kAncestorPairwise: {
        // Ancestors precede s in id order, so their keys are already known.
        size_t h = BlockingKeyHash{}(key);
        std::vector<IndId> ancestors;
        for (IndId a = p; a != kNone && pool.IsBlockable(a);
             a = pool.Parent(a)) {
          ancestors.push_back(a);
        }
        for (auto it = ancestors.rbegin(); it != ancestors.rend(); ++it) {
          auto known = path_keys.find(*it);
          if (known != path_keys.end() && known->second.first == h &&
              known->second.second == key) {
            blocker = *it;
            break;
          }
        }
        if (blocker == kNone) path_keys.emplace(s, std::pair(h, std::move(key)));
        break;
      }
      case BlockingStrategy::kSubset: {
        for (const auto& [label, t] : candidates) {
          if (std::includes(label.begin(), label.end(), key.self.begin(),
                            key.self.end())) {
            blocker = t;
            break;
          }
        }
        if (blocker == kNone) candidates.emplace_back(std::move(key.self), s);
        break;
      }
    }
    if (blocker != kNone) status.set(s, {BlockKind::kDirect, blocker});
  }
  return status;
}

BlockingStatus ComputeBlockingNaive(
    const ABox& abox, const IndividualPool& pool, const Vocabulary& vocab,
    BlockingStrategy strategy,
    const std::function<bool(IndId, IndId)>& precedes) {
  auto before = [&](IndId t, IndId s) {
    if (strategy == BlockingStrategy::kAncestorPairwise) {
      return pool.IsDescendant(s, t);
    }
    return precedes ? precedes(t, s) : t < s;
  };
  auto atomic_label = [&](IndId s) {
    std::set<ConceptId> out;
    for (IndId c = 0; c < vocab.num_concepts(); ++c) {
      if (vocab.concept_entry(c).kind == LiteralKind::kAtomic &&
          abox.HasConcept(s, c)) {
        out.insert(c);
      }
    }
    return out;
  };
  auto full_label = [&](IndId s) {
    std::set<ConceptId> out = atomic_label(s);
    for (IndId c = 0; c < vocab.num_concepts(); ++c) {
      const ConceptEntry& e = vocab.concept_entry(c);
      if (e.kind == LiteralKind::kAtLeast && e.number == 1 &&
          abox.HasConcept(s, c)) {
        out.insert(c);
      }
    }
    return out;
  };
  auto edge_label = [&](IndId s, IndId t) {
    std::set<RoleId> out;
    for (RoleId r = 0; r < vocab.num_roles(); ++r) {
      if (abox.HasEdge(r, s, t)) out.insert(r);
    }
    return out;
  };
  auto blocks = [&](IndId t, IndId s) {
    switch (strategy) {
      case BlockingStrategy::kAnywherePairwise:
      case BlockingStrategy::kAncestorPairwise: {
        IndId sp = pool.Parent(s);
        IndId tp = pool.Parent(t);
        return atomic_label(s) == atomic_label(t) &&
               atomic_label(sp) == atomic_label(tp) &&
               edge_label(s, sp) == edge_label(t, tp) &&
               edge_label(sp, s) == edge_label(tp, t);
      }
      case BlockingStrategy::kAtomicSingle:
        return atomic_label(s) == atomic_label(t);
      case BlockingStrategy::kFullSingle:
        return full_label(s) == full_label(t);
      case BlockingStrategy::kSubset: {
        auto ls = full_label(s);
        auto lt = full_label(t);
        return std::includes(lt.begin(), lt.end(), ls.begin(), ls.end());
      }
    }
    return false;
  };

  std::vector<IndId> alive = abox.AliveIndividuals();
  BlockingStatus status;
  for (IndId s : alive) {
    if (!pool.IsBlockable(s)) continue;
    if (status.blocked(pool.Parent(s))) {
      status.set(s, {BlockKind::kIndirect, kNone});
      continue;
    }
    for (IndId t : alive) {
      if (t == s || !pool.IsBlockable(t) || status.blocked(t)) continue;
      if (!before(t, s)) continue;
      if (blocks(t, s)) {
        status.set(s, {BlockKind::kDirect, t});
        break;
      }
    }
  }
  return status;
}

void CacheBlockers(const ABox& abox, const IndividualPool& pool,
                   const Vocabulary& vocab, const BlockingStatus& status,
                   BlockerCache* cache) {
  if (abox.clash()) return;
  for (IndId s : abox.AliveIndividuals()) {
    if (pool.IsBlockable(s) && !status.blocked(s)) {
      cache->Add(PairwiseKey(abox, pool, vocab, s));
    }
  }
}

// ---- strategy guards ----

namespace {

bool IsCenter(const Term& t) { return t.kind == TermKind::kCenter; }
bool IsBranch(const Term& t) { return t.kind == TermKind::kBranch; }

bool HasSelfLoop(const HTClause& c) {
  auto loop = [](const Atom& a) {
    return a.kind == AtomKind::kRole && IsCenter(a.s) && IsCenter(a.t);
  };
  return std::any_of(c.antecedent.begin(), c.antecedent.end(), loop) ||
         std::any_of(c.consequent.begin(), c.consequent.end(), loop);
}

GuardResult FullSingleGuard(const std::vector<HTClause>& clauses) {
  for (const HTClause& c : clauses) {
    if (HasSelfLoop(c)) {
      return {false, "contains a self-loop atom R(x,x): " + c.ToString()};
    }
    int roles = std::count_if(c.antecedent.begin(), c.antecedent.end(),
                              [](const Atom& a) {
                                return a.kind == AtomKind::kRole;
                              });
    if (roles > 1) {
      return {false, "contains two role atoms: " + c.ToString()};
    }
    for (const Atom& a : c.consequent) {
      if (a.kind == AtomKind::kConcept &&
          a.concept_.kind() == ConceptKind::kAtLeast &&
          a.concept_.number() != 1) {
        return {false, "at-least restriction with number above 1: " +
                           c.ToString()};
      }
    }
  }
  return {};
}

}  // namespace

GuardResult CheckStrategyGuard(BlockingStrategy strategy,
                               const std::vector<HTClause>& clauses) {
  switch (strategy) {
    case BlockingStrategy::kAnywherePairwise:
    case BlockingStrategy::kAncestorPairwise:
      return {};
    case BlockingStrategy::kAtomicSingle:
      for (const HTClause& c : clauses) {
        if (!IsSimpleHTClause(c)) {
          return {false, "clause is not simple: " + c.ToString()};
        }
      }
      return {};
    case BlockingStrategy::kFullSingle:
      return FullSingleGuard(clauses);
    case BlockingStrategy::kSubset: {
      GuardResult base = FullSingleGuard(clauses);
      if (!base.ok) return base;
      if (HasNominalGuards(clauses)) {
        return {false, "clause set uses nominals"};
      }
      for (const HTClause& c : clauses) {
        if (!IsSimpleHTClause(c)) {
          return {false, "clause is not simple: " + c.ToString()};
        }
        for (const Atom& a : c.antecedent) {
          if (a.kind == AtomKind::kConcept && IsBranch(a.s)) {
            return {false, "implicit inverse: " + c.ToString()};
          }
        }
        for (const Atom& a : c.consequent) {
          if (a.kind == AtomKind::kEquality) {
            return {false, "equality in consequent: " + c.ToString()};
          }
          if (a.kind == AtomKind::kConcept && IsBranch(a.s) &&
              a.concept_.kind() == ConceptKind::kNot) {
            return {false, "negated successor literal: " + c.ToString()};
          }
        }
      }
      return {};
    }
  }
  return {};
}

}  // namespace htdl
