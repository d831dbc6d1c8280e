#include "htdl/reasoner.h"

#include <algorithm>

namespace htdl {

namespace {

bool IsReserved(const std::string& name) {
  return name.find('%') != std::string::npos;
}

Atom TestAtom(const Concept& literal) {
  return Atom::ConceptAtom(literal, Term::Ind(kTestIndividual));
}

Answer FromVerdict(Verdict v) {
  switch (v) {
    case Verdict::kUnsat:
      return Answer::kTrue;
    case Verdict::kSat:
      return Answer::kFalse;
    case Verdict::kIndeterminate:
      return Answer::kUnknown;
  }
  return Answer::kUnknown;
}

}  // namespace

SatResult CheckSatisfiable(const KnowledgeBase& kb,
                           const EngineConfig& config) {
  Clausification c = Preprocess(kb);
  auto program = std::make_shared<Program>(std::move(c.clauses));
  SatResult out;
  out.derivation = Derive(*program, c.abox, config);
  out.verdict = out.derivation.verdict;
  out.program = std::move(program);
  return out;
}

Verdict IsSatisfiable(const KnowledgeBase& kb, const EngineConfig& config) {
  return CheckSatisfiable(kb, config).verdict;
}

std::string AnswerName(Answer a) {
  switch (a) {
    case Answer::kTrue:
      return "true";
    case Answer::kFalse:
      return "false";
    case Answer::kUnknown:
      return "INDETERMINATE";
  }
  return "?";
}

Answer Subsumes(const KnowledgeBase& kb, const Concept& sub,
                const Concept& super, const EngineConfig& config) {
  KnowledgeBase extended = kb;
  extended.Add(AboxAxiom(ConceptAssertion{
      Concept::And({sub, Concept::Not(super)}), kTestIndividual}));
  return FromVerdict(IsSatisfiable(extended, config));
}

SubsumerReadOff ReadSubsumersFromRun(const DeriveResult& run,
                                     const Vocabulary& vocab,
                                     const std::string& individual,
                                     const std::set<std::string>& candidates) {
  SubsumerReadOff out;
  auto named = run.pool->FindNamed(individual);
  IndId a = named ? run.final_abox->Canonical(*named) : kNone;
  const IndState* st = a == kNone ? nullptr : run.final_abox->state(a);
  std::set<std::string> label;
  if (st) {
    for (const auto& [c, depth] : st->concepts) {
      const ConceptEntry& e = vocab.concept_entry(c);
      if (e.kind != LiteralKind::kAtomic || e.guard) continue;
      const std::string& name = e.concept_.name();
      if (IsReserved(name) || !candidates.count(name)) continue;
      label.insert(name);
      (depth == 0 ? out.certain : out.undecided).insert(name);
    }
  }
  for (const std::string& c : candidates) {
    if (!label.count(c)) out.non_subsumers.insert(c);
  }
  return out;
}

std::optional<FiniteInterpretation> ReadOffInterpretation(
    const DeriveResult& run, const Vocabulary& vocab, const KnowledgeBase& kb) {
  if (run.verdict != Verdict::kSat || !run.final_abox) return std::nullopt;
  const ABox& abox = *run.final_abox;
  if (run.final_blocking.CountBlocked() > 0) return std::nullopt;
  FiniteInterpretation out;
  std::map<IndId, int> element;
  for (IndId id : abox.AliveIndividuals()) {
    int e = static_cast<int>(element.size());
    element[id] = e;
  }
  out.domain_size = std::max<int>(1, static_cast<int>(element.size()));
  const Signature& sig = kb.signature();
  for (const std::string& c : sig.concepts) out.concept_ext[c];
  for (const std::string& r : sig.roles) out.role_ext[r];
  for (const auto& [id, e] : element) {
    const IndState& st = *abox.state(id);
    for (const auto& [c, depth] : st.concepts) {
      const ConceptEntry& entry = vocab.concept_entry(c);
      if (entry.kind == LiteralKind::kAtomic && !entry.guard) {
        out.concept_ext[entry.concept_.name()].insert(e);
      }
    }
    for (const auto& [key, depth] : st.out) {
      out.role_ext[vocab.role_name(key.first)].insert(
          {e, element.at(key.second)});
    }
  }
  // Named individuals without assertions of their own behave like the
  // anonymous individual.
  auto fallback = run.pool->FindNamed(kFreshIndividual);
  for (const std::string& a : sig.individuals) {
    auto named = run.pool->FindNamed(a);
    IndId id = named ? abox.Canonical(*named) : kNone;
    if (id == kNone || !element.count(id)) {
      id = fallback ? abox.Canonical(*fallback) : kNone;
    }
    out.individual_map[a] = element.count(id) ? element.at(id) : 0;
  }

  RoleHierarchy hierarchy(kb.rbox());
  auto oriented = [&](const Role& r) {
    PairSet ext;
    for (auto [x, y] : out.role_ext[r.name]) {
      ext.insert(r.inverse ? std::make_pair(y, x) : std::make_pair(x, y));
    }
    return ext;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [sub, super] : hierarchy.Pairs()) {
      PairSet& target = out.role_ext[super.name];
      for (auto [x, y] : oriented(sub)) {
        auto p = super.inverse ? std::make_pair(y, x) : std::make_pair(x, y);
        changed |= target.insert(p).second;
      }
    }
    for (const std::string& r : sig.roles) {
      if (!hierarchy.IsTransitive(Role(r))) continue;
      PairSet& ext = out.role_ext[r];
      PairSet add;
      for (auto [x, y] : ext) {
        for (auto it = ext.lower_bound({y, -1}); it != ext.end() && it->first == y;
             ++it) {
          if (!ext.count({x, it->second})) add.insert({x, it->second});
        }
      }
      for (const auto& p : add) changed |= ext.insert(p).second;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

bool Taxonomy::Subsumes(const std::string& sub, const std::string& super) const {
  if (sub == super || super == "top" || sub == "bottom") return true;
  if (unsatisfiable.count(sub)) return true;
  auto it = subsumers.find(sub);
  return it != subsumers.end() && it->second.count(super) > 0;
}

std::vector<std::vector<std::string>> Taxonomy::Classes() const {
  std::vector<std::vector<std::string>> out;
  std::set<std::string> placed;
  std::vector<std::string> all{"bottom", "top"};
  for (const auto& [c, s] : subsumers) all.push_back(c);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  for (const std::string& c : all) {
    if (placed.count(c)) continue;
    std::vector<std::string> cls;
    for (const std::string& d : all) {
      if (Subsumes(c, d) && Subsumes(d, c)) {
        cls.push_back(d);
        placed.insert(d);
      }
    }
    out.push_back(std::move(cls));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> Taxonomy::DirectEdges() const {
  std::vector<std::vector<std::string>> classes = Classes();
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& sub : classes) {
    if (sub.front() == "bottom" || std::count(sub.begin(), sub.end(), "bottom")) {
      continue;
    }
    for (const auto& sup : classes) {
      if (&sub == &sup || !Subsumes(sub.front(), sup.front())) continue;
      bool direct = true;
      for (const auto& mid : classes) {
        if (&mid == &sub || &mid == &sup) continue;
        if (Subsumes(sub.front(), mid.front()) &&
            Subsumes(mid.front(), sup.front())) {
          direct = false;
          break;
        }
      }
      if (direct) out.push_back({sub.front(), sup.front()});
    }
  }
  return out;
}

std::string Taxonomy::ToString() const {
  std::vector<std::string> lines;
  auto has = [](const std::vector<std::string>& cls, const char* name) {
    return std::find(cls.begin(), cls.end(), name) != cls.end();
  };
  for (const auto& cls : Classes()) {
    if (has(cls, "bottom")) {
      for (const std::string& c : cls) {
        if (c != "bottom") lines.push_back("(gci " + c + " bottom)");
      }
    } else if (has(cls, "top")) {
      for (const std::string& c : cls) {
        if (c != "top") lines.push_back("(gci top " + c + ")");
      }
    } else {
      for (size_t i = 1; i < cls.size(); ++i) {
        lines.push_back("(gci " + cls[i] + " " + cls[0] + ")");
        lines.push_back("(gci " + cls[0] + " " + cls[i] + ")");
      }
    }
  }
  for (const auto& [sub, sup] : DirectEdges()) {
    if (Subsumes("top", sub) || Subsumes("top", sup)) continue;
    lines.push_back("(gci " + sub + " " + sup + ")");
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::string out;
  for (const std::string& l : lines) out += l + "\n";
  return out;
}

std::set<std::string> ClassifiableConcepts(const KnowledgeBase& kb) {
  std::set<std::string> out;
  for (const std::string& c : kb.signature().concepts) {
    if (!IsReserved(c)) out.insert(c);
  }
  return out;
}

// ---------------------------------------------------------------------------

Reasoner::Reasoner(KnowledgeBase kb, EngineConfig config, bool label_cache)
    : kb_(std::move(kb)), config_(std::move(config)) {
  clauses_ = Preprocess(kb_);
  program_ = std::make_shared<Program>(clauses_.clauses);
  cache_enabled_ = label_cache && !program_->has_nominal_guards() &&
                   config_.blocking == BlockingStrategy::kAnywherePairwise;
}

DeriveResult Reasoner::RunWithTest(const std::vector<Concept>& literals) {
  InputAbox abox = clauses_.abox;
  for (const Concept& c : literals) abox.push_back(TestAtom(c));
  EngineConfig cfg = config_;
  if (cache_enabled_) cfg.blocker_cache = &cache_;
  ++sat_calls_;
  DeriveResult r = Derive(*program_, abox, cfg);
  for (int i = 0; i < kNumRules; ++i) {
    total_.rule_counts[i] += r.stats.rule_counts[i];
  }
  total_.applications += r.stats.applications;
  total_.peak_alive = std::max(total_.peak_alive, r.stats.peak_alive);
  total_.branch_count += r.stats.branch_count;
  total_.choice_points += r.stats.choice_points;
  total_.ni_root_creations += r.stats.ni_root_creations;
  total_.cache_blocked += r.stats.cache_blocked;
  total_.individuals_created += r.stats.individuals_created;
  total_.backjumps += r.stats.backjumps;
  if (cache_enabled_ && r.verdict == Verdict::kSat) {
    CacheBlockers(*r.final_abox, *r.pool, program_->vocab(), r.final_blocking,
                  &cache_);
  }
  return r;
}

Verdict Reasoner::IsSatisfiable() { return RunWithTest({}).verdict; }

Answer Reasoner::Subsumes(const std::string& sub, const std::string& super) {
  if (sub == super || super == "top" || sub == "bottom") return Answer::kTrue;
  std::vector<Concept> literals;
  if (sub != "top") literals.push_back(Concept::Atomic(sub));
  if (super == "bottom") {
    if (literals.empty()) literals.push_back(Concept::Top());
  } else {
    literals.push_back(Concept::Not(Concept::Atomic(super)));
  }
  return FromVerdict(RunWithTest(literals).verdict);
}

Taxonomy Reasoner::Classify() {
  Taxonomy tax;
  std::set<std::string> concepts = ClassifiableConcepts(kb_);
  std::map<std::string, SubsumerReadOff> reads;
  std::set<std::string> unknown_concepts;
  // Choice-free consequences for the anonymous individual hold everywhere.
  std::optional<std::set<std::string>> top_subsumers;
  for (const std::string& a : concepts) {
    DeriveResult r = RunWithTest({Concept::Atomic(a)});
    if (r.verdict == Verdict::kUnsat) {
      tax.unsatisfiable.insert(a);
    } else if (r.verdict == Verdict::kIndeterminate) {
      unknown_concepts.insert(a);
    } else {
      reads[a] = ReadSubsumersFromRun(r, program_->vocab(), kTestIndividual,
                                      concepts);
      if (!program_->has_nominal_guards()) {
        std::set<std::string> certain =
            ReadSubsumersFromRun(r, program_->vocab(), kFreshIndividual,
                                 concepts)
                .certain;
        if (top_subsumers) {
          std::erase_if(*top_subsumers,
                        [&](const std::string& c) { return !certain.count(c); });
        } else {
          top_subsumers = std::move(certain);
        }
      }
    }
  }
  if (top_subsumers && !top_subsumers->empty()) {
    tax.subsumers["top"] = *top_subsumers;
    tax.subsumers["top"].insert("top");
  }
  for (const std::string& a : concepts) {
    std::set<std::string>& subs = tax.subsumers[a];
    subs.insert(a);
    subs.insert("top");
    if (tax.unsatisfiable.count(a)) {
      subs.insert(concepts.begin(), concepts.end());
      subs.insert("bottom");
      continue;
    }
    if (unknown_concepts.count(a)) {
      for (const std::string& b : concepts) {
        if (b != a) tax.unknown.insert({a, b});
      }
      continue;
    }
    const SubsumerReadOff& ra = reads[a];
    subs.insert(ra.certain.begin(), ra.certain.end());
    // Top-down pruning: B cannot subsume A when a known subsumer of B is a
    // known non-subsumer of A.
    for (const std::string& b : ra.undecided) {
      if (subs.count(b)) continue;
      auto rb = reads.find(b);
      bool pruned = false;
      if (rb != reads.end()) {
        for (const std::string& c : rb->second.certain) {
          if (ra.non_subsumers.count(c)) {
            pruned = true;
            break;
          }
        }
      }
      if (pruned) continue;
      Answer ans = Subsumes(a, b);
      if (ans == Answer::kTrue) {
        subs.insert(b);
        if (rb != reads.end()) {
          subs.insert(rb->second.certain.begin(), rb->second.certain.end());
        }
      } else if (ans == Answer::kUnknown) {
        tax.unknown.insert({a, b});
      }
    }
  }
  return tax;
}

}  // namespace htdl
