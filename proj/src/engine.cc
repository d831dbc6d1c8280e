#include "htdl/engine.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>

#include "htdl/preprocessing.h"

namespace htdl {

std::string RuleName(RuleKind r) {
  switch (r) {
    case RuleKind::kBot:
      return "bot";
    case RuleKind::kNI:
      return "ni";
    case RuleKind::kEq:
      return "eq";
    case RuleKind::kHyp:
      return "hyp";
    case RuleKind::kAtLeast:
      return "atleast";
  }
  return "?";
}

std::string VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kSat:
      return "SAT";
    case Verdict::kUnsat:
      return "UNSAT";
    case Verdict::kIndeterminate:
      return "INDETERMINATE";
  }
  return "?";
}

uint64_t SeedFromEnvironment() {
  const char* v = std::getenv("HTDL_SEED");
  if (!v || !*v) return 0;
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    return 0;
  }
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

CompiledTerm CompileTerm(const Term& t, const std::map<Term, int>& slots) {
  CompiledTerm out;
  if (t.IsVariable()) {
    out.var = slots.at(t);
  } else {
    out.constant = t.name;
  }
  return out;
}

CompiledAtom CompileAtom(const Atom& a, const std::map<Term, int>& slots,
                         Vocabulary& vocab) {
  CompiledAtom out;
  out.kind = a.kind;
  out.s = CompileTerm(a.s, slots);
  switch (a.kind) {
    case AtomKind::kConcept:
      out.concept_ = vocab.InternConcept(a.concept_);
      break;
    case AtomKind::kRole:
      out.role = vocab.InternRole(a.role);
      out.t = CompileTerm(a.t, slots);
      break;
    case AtomKind::kEquality:
    case AtomKind::kInequality:
      out.t = CompileTerm(a.t, slots);
      break;
  }
  if (a.annotation) {
    out.annotated = true;
    out.ann_at = CompileTerm(a.annotation->at, slots);
    out.ann_bound = a.annotation->bound;
    out.ann_role = vocab.InternRole(a.annotation->role);
    out.ann_filler = vocab.InternConcept(a.annotation->filler);
  }
  return out;
}

bool Bound(const CompiledTerm& t, const std::vector<bool>& bound) {
  return t.is_constant() || bound[t.var];
}

CompiledClause CompileClause(const HTClause& clause, size_t index,
                             Vocabulary& vocab) {
  CompiledClause cc;
  cc.index = index;
  std::map<Term, int> slots;
  slots[Term::X()] = 0;
  int next = 1;
  std::vector<Term> vars = clause.Variables();
  cc.has_center = std::find(vars.begin(), vars.end(), Term::X()) != vars.end();
  for (const Term& v : vars) {
    if (!slots.count(v)) slots[v] = next++;
  }
  cc.num_vars = next;

  std::vector<CompiledAtom> pending;
  for (const Atom& a : clause.antecedent) {
    if (a.kind != AtomKind::kConcept && a.kind != AtomKind::kRole) {
      throw std::invalid_argument("antecedent may contain only concept and "
                                  "role atoms: " + clause.ToString());
    }
    pending.push_back(CompileAtom(a, slots, vocab));
  }
  for (const Atom& a : clause.consequent) {
    cc.consequent.push_back(CompileAtom(a, slots, vocab));
  }

  // Greedy join order: checks, then edge extensions, then scans.
  std::vector<bool> bound(cc.num_vars, false);
  bound[0] = true;
  auto category = [&](const CompiledAtom& a) {
    if (a.kind == AtomKind::kConcept) {
      if (Bound(a.s, bound)) return 0;
      return vocab.concept_entry(a.concept_).guard ? 2 : 3;
    }
    bool bs = Bound(a.s, bound);
    bool bt = Bound(a.t, bound);
    if (bs && bt) return 0;
    if (bs || bt) return 1;
    return 4;
  };
  while (!pending.empty()) {
    size_t best = 0;
    int best_cat = 99;
    for (size_t i = 0; i < pending.size(); ++i) {
      int c = category(pending[i]);
      if (c < best_cat) {
        best_cat = c;
        best = i;
      }
    }
    CompiledAtom a = pending[best];
    pending.erase(pending.begin() + best);
    switch (best_cat) {
      case 0:
        a.op = JoinOp::kCheck;
        break;
      case 1:
        a.op = Bound(a.s, bound) ? JoinOp::kExtendOut : JoinOp::kExtendIn;
        break;
      case 2:
      case 3:
        a.op = JoinOp::kScanConcept;
        break;
      default:
        a.op = JoinOp::kScanRole;
        break;
    }
    if (!a.s.is_constant()) bound[a.s.var] = true;
    if (a.kind == AtomKind::kRole && !a.t.is_constant()) bound[a.t.var] = true;
    cc.antecedent.push_back(a);
  }

  auto require = [&](const CompiledTerm& t) {
    if (!t.is_constant() && !bound[t.var]) {
      throw std::invalid_argument(
          "consequent variable not bound by the antecedent: " +
          clause.ToString());
    }
  };
  std::set<std::string> constants;
  auto note_constant = [&](const CompiledTerm& t) {
    if (t.is_constant()) constants.insert(t.constant);
  };
  for (const CompiledAtom& a : cc.consequent) {
    require(a.s);
    note_constant(a.s);
    if (a.kind != AtomKind::kConcept) {
      require(a.t);
      note_constant(a.t);
    }
    if (a.annotated) {
      require(a.ann_at);
      note_constant(a.ann_at);
    }
  }

  // Radius: breadth-first distances from x over antecedent role atoms;
  // constants are nodes of their own.
  std::map<std::string, int> const_node;
  for (const CompiledAtom& a : cc.antecedent) {
    note_constant(a.s);
    if (a.kind == AtomKind::kRole) note_constant(a.t);
    for (const CompiledTerm* t : {&a.s, &a.t}) {
      if (t->is_constant() && !t->constant.empty() &&
          !const_node.count(t->constant)) {
        int id = cc.num_vars + static_cast<int>(const_node.size());
        const_node[t->constant] = id;
      }
    }
  }
  cc.constants.assign(constants.begin(), constants.end());
  auto node_of = [&](const CompiledTerm& t) {
    return t.is_constant() ? const_node.at(t.constant) : t.var;
  };
  int nodes = cc.num_vars + static_cast<int>(const_node.size());
  std::vector<std::vector<int>> adj(nodes);
  std::vector<bool> in_antecedent(nodes, false);
  std::vector<bool> only_guards(nodes, true);
  for (const CompiledAtom& a : cc.antecedent) {
    int s = node_of(a.s);
    in_antecedent[s] = true;
    if (a.kind == AtomKind::kRole) {
      int t = node_of(a.t);
      in_antecedent[t] = true;
      adj[s].push_back(t);
      adj[t].push_back(s);
      only_guards[s] = only_guards[t] = false;
    } else if (!vocab.concept_entry(a.concept_).guard || a.s.is_constant()) {
      only_guards[s] = false;
    }
  }
  std::vector<int> dist(nodes, -1);
  std::deque<int> queue;
  if (cc.has_center) {
    dist[0] = 0;
    queue.push_back(0);
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  cc.radius = 0;
  if (!cc.has_center) {
    cc.radius = kUnbounded;
  } else {
    for (int v = 0; v < nodes; ++v) {
      if (!in_antecedent[v]) continue;
      if (dist[v] >= 0) {
        cc.radius = std::max(cc.radius, dist[v]);
      } else if (!(v < cc.num_vars && only_guards[v])) {
        cc.radius = kUnbounded;
        break;
      }
    }
  }
  return cc;
}

}  // namespace

Program::Program(std::vector<HTClause> clauses)
    : clauses_(std::move(clauses)), vocab_(std::make_shared<Vocabulary>()) {
  horn_ = IsHorn(clauses_);
  has_guards_ = HasNominalGuards(clauses_);
  for (size_t i = 0; i < clauses_.size(); ++i) {
    compiled_.push_back(CompileClause(clauses_[i], i, *vocab_));
    int r = compiled_.back().radius;
    if (r >= kUnbounded) {
      global_ = true;
    } else {
      radius_ = std::max(radius_, r);
    }
  }
}

// ---------------------------------------------------------------------------
// Derivation

namespace {

using Clock = std::chrono::steady_clock;
using Key = std::pair<uint64_t, IndId>;

uint64_t SplitMix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct GroundAtom {
  AtomKind kind = AtomKind::kConcept;
  ConceptId concept_ = kNone;
  RoleId role = kNone;
  IndId s = kNone;
  IndId t = kNone;
  std::optional<AnnotationRef> ann;
  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
};

struct Selection {
  RuleKind rule = RuleKind::kBot;
  IndId s = kNone;  // bot / atleast individual, merge source, Hyp center
  IndId t = kNone;  // merge target
  size_t eq_index = 0;
  std::optional<AnnotationRef> ann;  // NI
  ConceptId concept_ = kNone;        // atleast
  size_t clause = 0;
  std::vector<IndId> sigma;
  std::vector<GroundAtom> alternatives;
  Depth depth = 0;
  bool via_renaming = false;

  size_t count() const {
    switch (rule) {
      case RuleKind::kHyp:
        return std::max<size_t>(1, alternatives.size());
      case RuleKind::kNI:
        return ann->bound;
      default:
        return 1;
    }
  }

  bool SameInstance(const Selection& o) const {
    return rule == o.rule && s == o.s && t == o.t && eq_index == o.eq_index &&
           concept_ == o.concept_ && clause == o.clause && sigma == o.sigma;
  }
};

struct Node {
  ABox abox;
  BlockingStatus blocking;
  bool blocking_stale = true;
  std::set<Key> hyp;
  std::set<Key> atleast;
  std::set<Key> bot;
  size_t renamings = 0;
  uint64_t trace = 0;
};

struct Frame {
  Node base;
  Selection sel;
  size_t next = 1;
  size_t count = 1;
};

class LimitReached : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Engine {
 public:
  Engine(const Program& program, const EngineConfig& config)
      : program_(program),
        vocab_(program.vocab()),
        config_(config),
        pool_(std::make_shared<IndividualPool>()) {
    clause_order_.resize(program.compiled().size());
    for (size_t i = 0; i < clause_order_.size(); ++i) clause_order_[i] = i;
    if (config.seed != 0) {
      std::mt19937_64 rng(config.seed);
      std::shuffle(clause_order_.begin(), clause_order_.end(), rng);
    }
  }

  DeriveResult Run(const InputAbox& input);

 private:
  uint64_t Prio(IndId id) const {
    return config_.seed == 0 ? id : SplitMix(config_.seed ^ id);
  }
  Key KeyOf(IndId id) const { return {Prio(id), id}; }

  IndId Resolve(const ABox& abox, const CompiledTerm& t,
                const std::vector<IndId>& sigma, bool* via) const;

  void MarkAll(Node& node) const;
  void MarkBall(Node& node, IndId id) const;
  void AfterChange(Node& node);
  void RefreshBlocking(Node& node);

  std::optional<Selection> Select(Node& node);
  std::optional<Selection> SelectNaive(const Node& node) const;
  std::optional<Selection> FindBot(const Node& node, IndId s) const;
  std::optional<Selection> FindNI(const Node& node) const;
  std::optional<Selection> FindEq(const Node& node) const;
  std::optional<Selection> FindHyp(const Node& node, IndId center) const;
  std::optional<Selection> FindAtLeast(const Node& node, IndId s) const;
  bool MatchClause(const Node& node, const CompiledClause& cc,
                   std::vector<IndId>& sigma, size_t step, bool& via,
                   Selection* out) const;
  bool ConsequentPresent(const Node& node, const CompiledClause& cc,
                         const std::vector<IndId>& sigma, bool& via,
                         std::vector<GroundAtom>* ground) const;

  void Apply(Node& node, const Selection& sel, size_t choice, Depth level,
             Depth open_levels);
  void AddGround(ABox& abox, const GroundAtom& g, Depth d);
  void Record(Node& node, const std::string& rule, size_t choice,
              uint64_t parent);
  void CheckLimits(const Node& node);

  const Program& program_;
  Vocabulary& vocab_;
  const EngineConfig& config_;
  std::shared_ptr<IndividualPool> pool_;
  std::vector<size_t> clause_order_;
  DeriveStats stats_;
  Clock::time_point start_;
  uint64_t iterations_ = 0;
  uint64_t next_trace_ = 0;
};

IndId Engine::Resolve(const ABox& abox, const CompiledTerm& t,
                      const std::vector<IndId>& sigma, bool* via) const {
  if (!t.is_constant()) return sigma[t.var];
  auto named = pool_->FindNamed(t.constant);
  if (!named) return kNone;
  IndId canon = abox.Canonical(*named);
  if (canon != *named && via) *via = true;
  return canon;
}

void Engine::MarkAll(Node& node) const {
  for (IndId id : node.abox.AliveIndividuals()) {
    node.hyp.insert(KeyOf(id));
    node.atleast.insert(KeyOf(id));
    node.bot.insert(KeyOf(id));
  }
}

void Engine::MarkBall(Node& node, IndId id) const {
  if (!node.abox.alive(id)) return;
  const int radius = program_.radius();
  std::map<IndId, int> dist{{id, 0}};
  std::deque<IndId> queue{id};
  while (!queue.empty()) {
    IndId v = queue.front();
    queue.pop_front();
    int d = dist[v];
    node.hyp.insert(KeyOf(v));
    if (d <= 1) node.atleast.insert(KeyOf(v));
    if (d == 0) node.bot.insert(KeyOf(v));
    if (d >= radius) continue;
    const IndState* st = node.abox.state(v);
    auto visit = [&](IndId w) {
      if (dist.emplace(w, d + 1).second) queue.push_back(w);
    };
    for (const auto& [key, dep] : st->out) visit(key.second);
    for (const auto& [key, dep] : st->in) visit(key.second);
  }
}

void Engine::AfterChange(Node& node) {
  std::vector<IndId> touched = node.abox.TakeTouched();
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  if (node.abox.TakeLabelsChanged()) node.blocking_stale = true;
  bool all = node.abox.TakeGuardChanged();
  if (node.abox.renamings().size() != node.renamings) {
    node.renamings = node.abox.renamings().size();
    all = true;
  }
  if (program_.has_global_clauses() && !touched.empty()) all = true;
  if (all) MarkAll(node);
  for (IndId id : touched) MarkBall(node, id);
}

void Engine::RefreshBlocking(Node& node) {
  if (!node.blocking_stale) return;
  const BlockerCache* cache =
      config_.blocking == BlockingStrategy::kAnywherePairwise
          ? config_.blocker_cache
          : nullptr;
  BlockingStatus fresh = ComputeBlocking(node.abox, *pool_, vocab_,
                                         config_.blocking, cache);
  node.blocking_stale = false;
  size_t n = std::max(fresh.size(), node.blocking.size());
  TraceRecord* rec = config_.trace ? &(*config_.trace)[node.trace] : nullptr;
  for (IndId i = 0; i < n; ++i) {
    const BlockState& now = fresh.at(i);
    if (now == node.blocking.at(i)) continue;
    if (now.blocker == kCachedBlocker) ++stats_.cache_blocked;
    MarkBall(node, i);
    if (rec && i < pool_->size()) {
      std::string text = pool_->Name(i);
      switch (now.kind) {
        case BlockKind::kUnblocked:
          text += " unblocked";
          break;
        case BlockKind::kIndirect:
          text += " indirectly blocked";
          break;
        case BlockKind::kDirect:
          text += now.blocker == kCachedBlocker
                      ? " blocked by cache"
                      : " blocked by " + pool_->Name(now.blocker);
          break;
      }
      rec->blocking.push_back(std::move(text));
    }
  }
  node.blocking = std::move(fresh);
}

// ---- rule instances ----

std::optional<Selection> Engine::FindBot(const Node& node, IndId s) const {
  const ABox& abox = node.abox;
  const IndState* st = abox.state(s);
  if (!st || node.blocking.indirectly_blocked(s)) return std::nullopt;
  Selection sel;
  sel.rule = RuleKind::kBot;
  sel.s = s;
  if (auto d = abox.NeqDepth(s, s)) {
    sel.depth = *d;
    return sel;
  }
  if (auto d = abox.ConceptDepth(s, vocab_.bottom())) {
    sel.depth = *d;
    return sel;
  }
  for (const auto& [c, dep] : st->concepts) {
    const ConceptEntry& e = vocab_.concept_entry(c);
    if (e.kind != LiteralKind::kAtomic) continue;
    if (auto d = abox.ConceptDepth(s, e.complement)) {
      sel.concept_ = c;
      sel.depth = std::max(dep, *d);
      return sel;
    }
  }
  return std::nullopt;
}

std::optional<Selection> Engine::FindNI(const Node& node) const {
  const auto& eqs = node.abox.equalities();
  size_t n = eqs.size();
  size_t start = config_.seed == 0 || n == 0 ? 0 : config_.seed % n;
  for (size_t k = 0; k < n; ++k) {
    size_t idx = (start + k) % n;
    const EqAssertion& e = eqs[idx];
    if (!e.annotation) continue;
    IndId u = e.annotation->at;
    if (!pool_->IsRoot(u)) continue;
    for (int orient = 0; orient < (e.s == e.t ? 1 : 2); ++orient) {
      IndId a = orient == 0 ? e.s : e.t;
      IndId b = orient == 0 ? e.t : e.s;
      if (!pool_->IsBlockable(a) || pool_->IsSuccessor(a, u)) continue;
      if (!pool_->IsBlockable(b)) continue;
      if (node.blocking.indirectly_blocked(a) ||
          node.blocking.indirectly_blocked(b)) {
        continue;
      }
      Selection sel;
      sel.rule = RuleKind::kNI;
      sel.s = a;
      sel.t = b;
      sel.eq_index = idx;
      sel.ann = e.annotation;
      sel.depth = e.depth;
      return sel;
    }
  }
  return std::nullopt;
}

std::optional<Selection> Engine::FindEq(const Node& node) const {
  const auto& eqs = node.abox.equalities();
  size_t n = eqs.size();
  size_t start = config_.seed == 0 || n == 0 ? 0 : config_.seed % n;
  auto valid = [&](IndId s, IndId t) {
    return pool_->IsNamed(t) || (pool_->IsRoot(t) && !pool_->IsNamed(s)) ||
           pool_->IsDescendant(s, t);
  };
  for (size_t k = 0; k < n; ++k) {
    size_t idx = (start + k) % n;
    const EqAssertion& e = eqs[idx];
    if (e.s == e.t) continue;
    if (node.blocking.indirectly_blocked(e.s) ||
        node.blocking.indirectly_blocked(e.t)) {
      continue;
    }
    bool st = valid(e.s, e.t);
    bool ts = valid(e.t, e.s);
    Selection sel;
    sel.rule = RuleKind::kEq;
    sel.eq_index = idx;
    sel.depth = e.depth;
    if (st != ts) {
      sel.s = st ? e.s : e.t;
      sel.t = st ? e.t : e.s;
    } else {
      sel.s = std::max(e.s, e.t);
      sel.t = std::min(e.s, e.t);
    }
    return sel;
  }
  return std::nullopt;
}

bool Engine::ConsequentPresent(const Node& node, const CompiledClause& cc,
                               const std::vector<IndId>& sigma, bool& via,
                               std::vector<GroundAtom>* ground) const {
  const ABox& abox = node.abox;
  for (const CompiledAtom& a : cc.consequent) {
    GroundAtom g;
    g.kind = a.kind;
    g.concept_ = a.concept_;
    g.role = a.role;
    g.s = Resolve(abox, a.s, sigma, &via);
    if (a.kind != AtomKind::kConcept) g.t = Resolve(abox, a.t, sigma, &via);
    if (a.annotated) {
      g.ann = AnnotationRef{Resolve(abox, a.ann_at, sigma, &via), a.ann_bound,
                            a.ann_role, a.ann_filler};
    }
    bool present = false;
    switch (a.kind) {
      case AtomKind::kConcept:
        present = g.concept_ == vocab_.top() || abox.HasConcept(g.s, g.concept_);
        break;
      case AtomKind::kRole:
        present = abox.HasEdge(g.role, g.s, g.t);
        break;
      case AtomKind::kEquality:
        present = abox.HasEquality(g.s, g.t, g.ann);
        if (g.s > g.t) std::swap(g.s, g.t);
        break;
      case AtomKind::kInequality:
        present = abox.HasNeq(g.s, g.t);
        if (g.s > g.t) std::swap(g.s, g.t);
        break;
    }
    if (present) return true;
    if (ground &&
        std::find(ground->begin(), ground->end(), g) == ground->end()) {
      ground->push_back(std::move(g));
    }
  }
  return false;
}

bool Engine::MatchClause(const Node& node, const CompiledClause& cc,
                         std::vector<IndId>& sigma, size_t step, bool& via,
                         Selection* out) const {
  const ABox& abox = node.abox;
  auto usable = [&](IndId v) {
    return abox.alive(v) && !node.blocking.indirectly_blocked(v);
  };
  if (step == cc.antecedent.size()) {
    std::vector<GroundAtom> ground;
    bool local_via = via;
    if (ConsequentPresent(node, cc, sigma, local_via, &ground)) return false;
    out->rule = RuleKind::kHyp;
    out->clause = cc.index;
    out->sigma = sigma;
    out->alternatives = std::move(ground);
    out->via_renaming = local_via;
    Depth d = 0;
    for (const CompiledAtom& a : cc.antecedent) {
      IndId s = Resolve(abox, a.s, sigma, nullptr);
      if (a.kind == AtomKind::kConcept) {
        if (a.concept_ != vocab_.top()) d = std::max(d, *abox.ConceptDepth(s, a.concept_));
      } else {
        IndId t = Resolve(abox, a.t, sigma, nullptr);
        d = std::max(d, *abox.EdgeDepth(a.role, s, t));
      }
    }
    out->depth = d;
    return true;
  }
  const CompiledAtom& a = cc.antecedent[step];
  auto bind = [&](const CompiledTerm& term, IndId v) -> bool {
    if (term.is_constant()) return true;
    if (!usable(v)) return false;
    sigma[term.var] = v;
    return true;
  };
  auto recurse = [&]() {
    return MatchClause(node, cc, sigma, step + 1, via, out);
  };
  auto concept_holds = [&](IndId v) {
    return a.concept_ == vocab_.top() ? abox.alive(v)
                                      : abox.HasConcept(v, a.concept_);
  };
  switch (a.op) {
    case JoinOp::kCheck: {
      bool saved = via;
      IndId s = Resolve(abox, a.s, sigma, &via);
      bool ok;
      if (a.kind == AtomKind::kConcept) {
        ok = s != kNone && usable(s) && concept_holds(s);
      } else {
        IndId t = Resolve(abox, a.t, sigma, &via);
        ok = s != kNone && t != kNone && usable(s) && usable(t) &&
             abox.HasEdge(a.role, s, t);
      }
      if (ok && recurse()) return true;
      via = saved;
      return false;
    }
    case JoinOp::kExtendOut:
    case JoinOp::kExtendIn: {
      bool out_dir = a.op == JoinOp::kExtendOut;
      bool saved = via;
      IndId b = Resolve(abox, out_dir ? a.s : a.t, sigma, &via);
      if (b == kNone || !usable(b)) {
        via = saved;
        return false;
      }
      const IndState* st = abox.state(b);
      const auto& edges = out_dir ? st->out : st->in;
      auto it = edges.lower_bound({a.role, 0});
      for (; it != edges.end() && it->first.first == a.role; ++it) {
        if (!bind(out_dir ? a.t : a.s, it->first.second)) continue;
        if (recurse()) return true;
      }
      via = saved;
      return false;
    }
    case JoinOp::kScanConcept: {
      const ConceptEntry& e = vocab_.concept_entry(a.concept_);
      if (e.guard) {
        auto named = pool_->FindNamed(GuardedIndividual(e.concept_.name()));
        if (!named) return false;
        IndId v = abox.Canonical(*named);
        if (!usable(v) || !abox.HasConcept(v, a.concept_)) return false;
        sigma[a.s.var] = v;
        return recurse();
      }
      for (IndId v : abox.AliveIndividuals()) {
        if (!concept_holds(v) || !bind(a.s, v)) continue;
        if (recurse()) return true;
      }
      return false;
    }
    case JoinOp::kScanRole: {
      for (IndId v : abox.AliveIndividuals()) {
        if (!bind(a.s, v)) continue;
        const IndState* st = abox.state(v);
        auto it = st->out.lower_bound({a.role, 0});
        for (; it != st->out.end() && it->first.first == a.role; ++it) {
          if (!bind(a.t, it->first.second)) continue;
          // A repeated variable must bind consistently.
          if (!a.s.is_constant() && !a.t.is_constant() && a.s.var == a.t.var &&
              it->first.second != v) {
            continue;
          }
          if (recurse()) return true;
        }
      }
      return false;
    }
  }
  return false;
}

std::optional<Selection> Engine::FindHyp(const Node& node, IndId center) const {
  if (!node.abox.alive(center)) return std::nullopt;
  bool center_usable = !node.blocking.indirectly_blocked(center);
  for (size_t k : clause_order_) {
    const CompiledClause& cc = program_.compiled()[k];
    if (cc.has_center && !center_usable) continue;
    std::vector<IndId> sigma(cc.num_vars, kNone);
    sigma[0] = center;
    bool via = false;
    Selection sel;
    if (MatchClause(node, cc, sigma, 0, via, &sel)) {
      sel.s = center;
      return sel;
    }
  }
  return std::nullopt;
}

std::optional<Selection> Engine::FindAtLeast(const Node& node, IndId s) const {
  const ABox& abox = node.abox;
  const IndState* st = abox.state(s);
  if (!st || node.blocking.blocked(s)) return std::nullopt;
  for (const auto& [c, dep] : st->concepts) {
    const ConceptEntry& e = vocab_.concept_entry(c);
    if (e.kind != LiteralKind::kAtLeast) continue;
    std::vector<IndId> cands;
    const auto& edges = e.role.inverse ? st->in : st->out;
    auto it = edges.lower_bound({e.role.role, 0});
    for (; it != edges.end() && it->first.first == e.role.role; ++it) {
      IndId u = it->first.second;
      if (e.filler != vocab_.top() && !abox.HasConcept(u, e.filler)) continue;
      if (!pool_->IsSuccessor(u, s) && node.blocking.blocked(u)) continue;
      cands.push_back(u);
    }
    // Look for e.number pairwise-distinct witnesses.
    std::vector<IndId> chosen;
    std::function<bool(size_t)> clique = [&](size_t from) {
      if (chosen.size() == e.number) return true;
      for (size_t i = from; i < cands.size(); ++i) {
        bool ok = std::all_of(chosen.begin(), chosen.end(), [&](IndId w) {
          return abox.HasNeq(w, cands[i]);
        });
        if (!ok) continue;
        chosen.push_back(cands[i]);
        if (clique(i + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (clique(0)) continue;
    Selection sel;
    sel.rule = RuleKind::kAtLeast;
    sel.s = s;
    sel.concept_ = c;
    sel.depth = dep;
    return sel;
  }
  return std::nullopt;
}

std::optional<Selection> Engine::Select(Node& node) {
  RefreshBlocking(node);
  if (node.abox.clash()) return std::nullopt;
  for (auto it = node.bot.begin(); it != node.bot.end();) {
    if (auto sel = FindBot(node, it->second)) return sel;
    it = node.bot.erase(it);
  }
  if (auto sel = FindNI(node)) return sel;
  if (auto sel = FindEq(node)) return sel;
  for (auto it = node.hyp.begin(); it != node.hyp.end();) {
    if (auto sel = FindHyp(node, it->second)) return sel;
    it = node.hyp.erase(it);
  }
  for (auto it = node.atleast.begin(); it != node.atleast.end();) {
    if (auto sel = FindAtLeast(node, it->second)) return sel;
    it = node.atleast.erase(it);
  }
  return std::nullopt;
}

std::optional<Selection> Engine::SelectNaive(const Node& node) const {
  if (node.abox.clash()) return std::nullopt;
  std::vector<Key> order;
  for (IndId id : node.abox.AliveIndividuals()) order.push_back(KeyOf(id));
  std::sort(order.begin(), order.end());
  for (const Key& k : order) {
    if (auto sel = FindBot(node, k.second)) return sel;
  }
  if (auto sel = FindNI(node)) return sel;
  if (auto sel = FindEq(node)) return sel;
  for (const Key& k : order) {
    if (auto sel = FindHyp(node, k.second)) return sel;
  }
  for (const Key& k : order) {
    if (auto sel = FindAtLeast(node, k.second)) return sel;
  }
  return std::nullopt;
}

// ---- application ----

void Engine::AddGround(ABox& abox, const GroundAtom& g, Depth d) {
  switch (g.kind) {
    case AtomKind::kConcept:
      abox.AddConcept(g.s, g.concept_, d);
      break;
    case AtomKind::kRole:
      abox.AddEdge(g.role, g.s, g.t, d);
      break;
    case AtomKind::kEquality:
      abox.AddEquality(g.s, g.t, g.ann, d);
      break;
    case AtomKind::kInequality:
      abox.AddNeq(g.s, g.t, d);
      break;
  }
}

void Engine::Apply(Node& node, const Selection& sel, size_t choice,
                   Depth level, Depth open_levels) {
  ABox& abox = node.abox;
  ++stats_.rule_counts[static_cast<int>(sel.rule)];
  ++stats_.applications;
  Depth base = sel.depth;
  if (sel.via_renaming) base = std::max(base, open_levels);
  switch (sel.rule) {
    case RuleKind::kBot:
      abox.SetClash(base);
      break;
    case RuleKind::kHyp: {
      if (sel.alternatives.empty()) {
        abox.SetClash(base);
        break;
      }
      Depth d = sel.alternatives.size() > 1 ? std::max(base, level) : base;
      AddGround(abox, sel.alternatives[choice], d);
      break;
    }
    case RuleKind::kEq:
      abox.Merge(sel.s, sel.t, base, *pool_);
      break;
    case RuleKind::kNI: {
      const AnnotationRef& a = *sel.ann;
      IndId ext = pool_->RootExt(a.at, a.role, a.filler,
                                 static_cast<uint32_t>(choice + 1), vocab_);
      IndId target = abox.Canonical(ext);
      Depth d = a.bound > 1 ? std::max(base, level)
                            : std::max(base, open_levels);
      if (!abox.alive(target)) ++stats_.ni_root_creations;
      abox.Merge(sel.s, target, d, *pool_);
      break;
    }
    case RuleKind::kAtLeast: {
      const ConceptEntry& e = vocab_.concept_entry(sel.concept_);
      std::vector<IndId> fresh;
      for (uint32_t i = 0; i < e.number; ++i) {
        IndId t = pool_->Blockable(sel.s, abox.NextChildIndex(sel.s));
        abox.AddAr(e.role, sel.s, t, base);
        abox.AddConcept(t, e.filler, base);
        fresh.push_back(t);
        ++stats_.individuals_created;
      }
      for (size_t i = 0; i < fresh.size(); ++i) {
        for (size_t j = i + 1; j < fresh.size(); ++j) {
          abox.AddNeq(fresh[i], fresh[j], base);
        }
      }
      break;
    }
  }
  AfterChange(node);
  stats_.peak_alive = std::max<uint64_t>(stats_.peak_alive, abox.alive_count());
}

void Engine::Record(Node& node, const std::string& rule, size_t choice,
                    uint64_t parent) {
  if (!config_.trace) return;
  TraceRecord rec;
  rec.node = next_trace_++;
  rec.parent = rule == "init" ? -1 : static_cast<int64_t>(parent);
  rec.rule = rule;
  rec.choice = choice;
  for (const AssertionChange& c : node.abox.TakeLog()) {
    std::string text = AssertionChangeText(c, *pool_, vocab_).substr(1);
    (c.added ? rec.added : rec.removed).push_back(std::move(text));
  }
  node.trace = rec.node;
  config_.trace->push_back(std::move(rec));
}

void Engine::CheckLimits(const Node& node) {
  if (node.abox.alive_count() > config_.individual_cap) {
    throw LimitReached("individual cap of " +
                       std::to_string(config_.individual_cap) + " exceeded");
  }
  if ((++iterations_ & 63) == 0) {
    std::chrono::duration<double> elapsed = Clock::now() - start_;
    if (elapsed.count() > config_.timeout_seconds) {
      throw LimitReached("timeout after " +
                         std::to_string(config_.timeout_seconds) + " s");
    }
  }
}

DeriveResult Engine::Run(const InputAbox& input) {
  start_ = Clock::now();
  if (!config_.unsafe_blocking) {
    GuardResult g = CheckStrategyGuard(config_.blocking, program_.clauses());
    if (!g.ok) {
      throw StrategyGuardError(StrategyName(config_.blocking) +
                               " blocking rejected: " + g.reason);
    }
  }
  if (config_.blocker_cache && program_.has_nominal_guards()) {
    throw StrategyGuardError("blocker cache cannot be used with nominals");
  }
  DeriveResult result;
  result.pool = pool_;

  Node cur;
  cur.abox.set_vocabulary(&vocab_);
  cur.abox.set_logging(config_.trace != nullptr);
  auto named = [&](const Term& t) {
    if (t.IsVariable()) {
      throw std::invalid_argument("input ABox atom mentions a variable");
    }
    return pool_->Named(t.name);
  };
  for (const Atom& a : input) {
    switch (a.kind) {
      case AtomKind::kConcept:
        cur.abox.AddConcept(named(a.s), vocab_.InternConcept(a.concept_), 0);
        break;
      case AtomKind::kRole:
        cur.abox.AddEdge(vocab_.InternRole(a.role), named(a.s), named(a.t), 0);
        break;
      case AtomKind::kEquality: {
        IndId s = named(a.s);
        IndId t = named(a.t);
        if (s != t) cur.abox.AddEquality(s, t, std::nullopt, 0);
        break;
      }
      case AtomKind::kInequality:
        cur.abox.AddNeq(named(a.s), named(a.t), 0);
        break;
    }
  }
  for (const CompiledClause& cc : program_.compiled()) {
    for (const std::string& c : cc.constants) pool_->Named(c);
  }
  cur.abox.TakeTouched();
  cur.abox.TakeLabelsChanged();
  cur.abox.TakeGuardChanged();
  MarkAll(cur);
  stats_.peak_alive = cur.abox.alive_count();
  Record(cur, "init", 0, 0);

  std::vector<Frame> stack;
  auto finish = [&](Verdict v) {
    result.verdict = v;
    result.stats = stats_;
    result.deterministic = stats_.choice_points == 0;
    return result;
  };

  try {
    while (true) {
      CheckLimits(cur);
      Selection applied;
      size_t alt = 0;
      std::optional<Selection> sel = Select(cur);
      if (config_.cross_check_selection) {
        std::optional<Selection> naive = SelectNaive(cur);
        bool same = sel.has_value() == naive.has_value() &&
                    (!sel || sel->SameInstance(*naive));
        if (!same) {
          throw std::logic_error("incremental rule selection diverged from "
                                 "the full scan");
        }
      }
      if (!sel) {
        ++stats_.branch_count;
        if (!cur.abox.clash()) {
          result.final_blocking = cur.blocking;
          result.final_abox = std::make_shared<ABox>(std::move(cur.abox));
          return finish(Verdict::kSat);
        }
        if (config_.backjumping) {
          Depth c = cur.abox.clash_depth();
          if (c == 0) return finish(Verdict::kUnsat);
          while (stack.size() > c) {
            stack.pop_back();
            ++stats_.backjumps;
          }
        }
        while (!stack.empty() && stack.back().next >= stack.back().count) {
          stack.pop_back();
        }
        if (stack.empty()) return finish(Verdict::kUnsat);
        Frame& f = stack.back();
        Depth level = static_cast<Depth>(stack.size());
        size_t k = f.next++;
        cur = f.base;
        applied = f.sel;
        alt = config_.disjunct_order == DisjunctOrder::kReversed
                  ? f.count - 1 - k
                  : k;
        Apply(cur, applied, alt, level, level - 1);
        Record(cur, RuleName(applied.rule), alt, f.base.trace);
      } else {
        applied = std::move(*sel);
        size_t count = applied.count();
        Depth open = static_cast<Depth>(stack.size());
        uint64_t parent = cur.trace;
        alt = 0;
        if (count > 1) {
          ++stats_.choice_points;
          if (config_.disjunct_order == DisjunctOrder::kReversed) {
            alt = count - 1;
          }
          stack.push_back(Frame{cur, applied, 1, count});
          Apply(cur, applied, alt, open + 1, open);
        } else {
          Apply(cur, applied, 0, open, open);
        }
        Record(cur, RuleName(applied.rule), alt, parent);
      }
      if (config_.validate_each_step) {
        std::vector<std::string> errors =
            ValidateHTABox(cur.abox, *pool_, vocab_);
        if (!errors.empty()) {
          throw std::logic_error("HT-ABox condition violated: " + errors[0]);
        }
      }
      if (config_.on_step) {
        config_.on_step(StepEvent{applied.rule, alt, applied.count(),
                                  cur.abox, *pool_, vocab_,
                                  stats_.applications});
      }
    }
  } catch (const LimitReached& e) {
    result.limit_reason = e.what();
    return finish(Verdict::kIndeterminate);
  }
}

}  // namespace

DeriveResult Derive(const Program& program, const InputAbox& abox,
                    const EngineConfig& config) {
  Engine engine(program, config);
  return engine.Run(abox);
}

}  // namespace htdl
