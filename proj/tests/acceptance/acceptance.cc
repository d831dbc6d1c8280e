// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "htdl/blocking.h"
#include "htdl/engine.h"
#include "htdl/families.h"
#include "htdl/ontology_io.h"
#include "htdl/preprocessing.h"
#include "htdl/reasoner.h"
#include "support/corpus.h"
#include "support/oracle.h"
#include "support/worked_examples.h"
#include "support/random_kb.h"

namespace htdl::testing {
namespace {

using Clock = std::chrono::steady_clock;

// Ancestor and unsafe blocking let some corpus entries grow without a
// useful bound; runs stop here and report INDETERMINATE.
constexpr uint64_t kCorpusCap = 2000;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

DeriveResult RunClauses(const std::string& text, EngineConfig config = {}) {
  ClauseSet cs = ParseClauseSet(text);
  Program program(cs.clauses);
  return Derive(program, cs.abox, config);
}

EngineConfig WithStrategy(BlockingStrategy s, bool unsafe = false) {
  EngineConfig c;
  c.blocking = s;
  c.unsafe_blocking = unsafe;
  return c;
}

void K1Chains(Outcome& out) {
  for (int n : {1, 3, 5, 10}) {
    auto start = Clock::now();
    SatResult r = CheckSatisfiable(FamilyK1(n));
    double t = Seconds(start);
    out.detail << " n=" << n << ":" << VerdictName(r.verdict) << "/"
               << r.derivation.stats.branch_count << "br/" << t << "s";
    out.Require(r.verdict == Verdict::kUnsat, "K1 verdict");
    out.Require(r.derivation.stats.branch_count == 1, "K1 branch count");
    out.Require(t < 1.0, "K1 runtime");
  }
}

void K2Blocking(Outcome& out) {
  auto start = Clock::now();
  KnowledgeBase kb = FamilyK2(4, 4);
  SatResult any =
      CheckSatisfiable(kb, WithStrategy(BlockingStrategy::kAnywherePairwise));
  SatResult anc =
      CheckSatisfiable(kb, WithStrategy(BlockingStrategy::kAncestorPairwise));
  double t = Seconds(start);
  out.detail << " anywhere=" << VerdictName(any.verdict) << "/peak "
             << any.derivation.stats.peak_alive
             << " ancestor=" << VerdictName(anc.verdict) << "/peak "
             << anc.derivation.stats.peak_alive << " " << t << "s";
  out.Require(any.verdict == Verdict::kSat, "anywhere verdict");
  out.Require(anc.verdict == Verdict::kSat, "ancestor verdict");
  out.Require(
      any.derivation.stats.peak_alive < anc.derivation.stats.peak_alive,
      "peak alive ordering");
  out.Require(t < 30.0, "runtime");
}

void YoYo(Outcome& out) {
  DeriveResult r = RunClauses(kYoYo);
  out.detail << " " << VerdictName(r.verdict) << " after "
             << r.stats.applications << " applications";
  out.Require(r.verdict == Verdict::kSat, "verdict");
  out.Require(r.stats.applications < 100, "application bound");
}

void TwoRoots(Outcome& out) {
  for (const char* text : {kTwoRoots, kTwoRootsBelowNamed}) {
    size_t most = 0;
    uint64_t ni = 0;
    for (uint64_t seed = 0; seed <= 10; ++seed) {
      EngineConfig c;
      c.seed = seed;
      DeriveResult r = RunClauses(text, c);
      size_t root_ext = 0;
      for (IndId i = 0; i < r.pool->size(); ++i) {
        if (r.pool->info(i).kind == IndividualKind::kRootExt) ++root_ext;
      }
      most = std::max(most, root_ext);
      ni += r.stats.ni_root_creations;
      out.Require(r.verdict != Verdict::kIndeterminate, "termination");
    }
    out.detail << (text == kTwoRoots ? " chain at b" : "; chain below b")
               << ": at most " << most << " root extensions, " << ni
               << " NI creations over 11 orders";
    out.Require(most <= 2, "root extension bound");
  }
}

void Caterpillar(Outcome& out) {
  std::set<Verdict> verdicts;
  size_t renamings = 0;
  bool into_named = true;
  for (uint64_t seed = 0; seed <= 10; ++seed) {
    EngineConfig c;
    c.seed = seed;
    c.on_step = [&](const StepEvent& e) {
      for (const auto& [from, to] : e.abox.renamings()) {
        ++renamings;
        if (!e.pool.IsNamed(to)) into_named = false;
      }
    };
    DeriveResult r = RunClauses(kCaterpillar, c);
    verdicts.insert(r.verdict);
    out.Require(r.verdict != Verdict::kIndeterminate, "termination");
  }
  out.detail << " verdict " << VerdictName(*verdicts.begin()) << " over 11 "
             << "orders, " << renamings << " renamings observed";
  out.Require(verdicts.size() == 1, "verdict stable across seeds");
  out.Require(into_named, "renamings target named individuals");
}

void NoPredecessors(Outcome& out) {
  DeriveResult r = RunClauses(kNoPredecessors);
  out.detail << " " << VerdictName(r.verdict);
  out.Require(r.verdict == Verdict::kUnsat, "verdict");
}

void Normalization(Outcome& out) {
  SatResult full = CheckSatisfiable(ParseKB(kThreeStepKB));
  DeriveResult raw = RunClauses(kThreeStepClause);
  out.detail << " pipeline=" << VerdictName(full.verdict)
             << " raw clause=" << VerdictName(raw.verdict);
  out.Require(full.verdict == Verdict::kUnsat, "pipeline verdict");
  out.Require(raw.verdict == Verdict::kSat, "raw clause gives wrong SAT");
}

void GuardCounterexample(Outcome& out, const char* text,
                         BlockingStrategy strategy) {
  ClauseSet cs = ParseClauseSet(text);
  GuardResult g = CheckStrategyGuard(strategy, cs.clauses);
  bool threw = false;
  try {
    RunClauses(text, WithStrategy(strategy));
  } catch (const StrategyGuardError&) {
    threw = true;
  }
  DeriveResult pairwise = RunClauses(text);
  DeriveResult unsafe = RunClauses(text, WithStrategy(strategy, true));
  out.detail << " guard " << (g.ok ? "accepts" : "rejects")
             << "; pairwise=" << VerdictName(pairwise.verdict) << " unsafe "
             << StrategyName(strategy) << "=" << VerdictName(unsafe.verdict);
  out.Require(!g.ok && threw, "guard rejection");
  out.Require(pairwise.verdict == Verdict::kUnsat, "pairwise verdict");
  out.Require(unsafe.verdict == Verdict::kSat, "unsafe verdict");
}

void InfiniteModel(Outcome& out) {
  auto start = Clock::now();
  SatResult r = CheckSatisfiable(ParseKB(kInfiniteModelKB));
  double t = Seconds(start);
  size_t direct = r.derivation.final_blocking.CountDirect();
  out.detail << " " << VerdictName(r.verdict) << " in " << t << "s, "
             << direct << " directly blocked";
  out.Require(r.verdict == Verdict::kSat, "verdict");
  out.Require(t < 1.0, "runtime");
  out.Require(direct >= 1, "direct blocking");
}

void OracleAgreement(Outcome& out) {
  auto start = Clock::now();
  std::mt19937_64 rng(11);
  int with_model = 0, unsat = 0, disagreements = 0;
  for (int i = 0; i < 500; ++i) {
    KnowledgeBase kb = RandomAlcKB(rng);
    Verdict v = IsSatisfiable(kb);
    bool model = FindModel(kb, 3).has_value();
    if (model) ++with_model;
    if (v == Verdict::kUnsat) ++unsat;
    if ((model && v != Verdict::kSat) || (v == Verdict::kUnsat && model)) {
      ++disagreements;
      out.detail << "\n  disagreement on:\n" << SerializeKB(kb);
    }
  }
  double t = Seconds(start);
  out.detail << " oracle models " << with_model << ", engine UNSAT " << unsat
             << ", disagreements " << disagreements << ", " << t << "s";
  out.Require(disagreements == 0, "agreement");
  out.Require(t < 300.0, "runtime");
}

void HornDeterminism(Outcome& out) {
  std::mt19937_64 rng(12);
  int bad = 0;
  for (int i = 0; i < 200; ++i) {
    KnowledgeBase kb = RandomHornKB(rng);
    SatResult r = CheckSatisfiable(kb);
    bool horn = r.program->horn();
    if (!horn || r.derivation.stats.branch_count != 1 ||
        r.verdict == Verdict::kIndeterminate) {
      ++bad;
    }
  }
  out.detail << " " << bad << " of 200 runs branched or were not Horn";
  out.Require(bad == 0, "branch count 1");
}

void ValidatorEveryStep(Outcome& out) {
  uint64_t steps = 0;
  int runs = 0;
  for (const CorpusEntry& e : RegressionCorpus()) {
    for (BlockingStrategy s : {BlockingStrategy::kAnywherePairwise,
                               BlockingStrategy::kAncestorPairwise}) {
      EngineConfig c = WithStrategy(s);
      c.validate_each_step = true;
      c.individual_cap = kCorpusCap;
      c.on_step = [&](const StepEvent&) { ++steps; };
      try {
        Program p(e.clauses);
        Derive(p, e.abox, c);
        ++runs;
      } catch (const std::logic_error& err) {
        out.Require(false, e.name + ": " + err.what());
      }
    }
  }
  out.detail << " " << runs << " runs, " << steps << " validated steps";
}

void BlockingIndex(Outcome& out) {
  uint64_t snapshots = 0, mismatches = 0;
  for (const CorpusEntry& e : RegressionCorpus()) {
    for (BlockingStrategy s :
         {BlockingStrategy::kAnywherePairwise,
          BlockingStrategy::kAncestorPairwise, BlockingStrategy::kAtomicSingle,
          BlockingStrategy::kFullSingle, BlockingStrategy::kSubset}) {
      auto compare = [&](const ABox& abox, const IndividualPool& pool,
                         const Vocabulary& vocab) {
        ++snapshots;
        if (!(ComputeBlocking(abox, pool, vocab, s) ==
              ComputeBlockingNaive(abox, pool, vocab, s))) {
          ++mismatches;
          out.Require(false, e.name + " under " + StrategyName(s));
        }
      };
      EngineConfig c = WithStrategy(s, true);
      c.individual_cap = kCorpusCap;
      c.on_step = [&](const StepEvent& ev) {
        if (ev.step % 100 == 0) compare(ev.abox, ev.pool, ev.vocab);
      };
      Program p(e.clauses);
      DeriveResult r = Derive(p, e.abox, c);
      if (r.final_abox) compare(*r.final_abox, *r.pool, p.vocab());
    }
  }
  out.detail << " " << snapshots << " snapshots, " << mismatches
             << " mismatches";
}

KnowledgeBase CyclicHornKB(int n) {
  KnowledgeBase kb;
  for (int i = 0; i < n; ++i) {
    kb.AddGci(Concept::Atomic("A" + std::to_string(i)),
              Concept::Exists(Role("R"),
                              Concept::Atomic("A" + std::to_string((i + 1) % n))));
  }
  return kb;
}

void Classification(Outcome& out) {
  KnowledgeBase kb = CyclicHornKB(50);
  size_t n = ClassifiableConcepts(kb).size();
  Reasoner cached(kb, {}, true);
  Taxonomy t1 = cached.Classify();
  Reasoner plain(kb, {}, false);
  Taxonomy t2 = plain.Classify();
  uint64_t with = cached.total_stats().count(RuleKind::kAtLeast);
  uint64_t without = plain.total_stats().count(RuleKind::kAtLeast);

  KnowledgeBase chain;
  for (int i = 0; i < 12; ++i) {
    chain.AddGci(Concept::Atomic("C" + std::to_string(i)),
                 Concept::And({Concept::Atomic("C" + std::to_string(i + 1)),
                               Concept::Exists(Role("S"),
                                               Concept::Atomic("D"))}));
  }
  Reasoner horn(chain, {}, false);
  horn.Classify();
  size_t chain_n = ClassifiableConcepts(chain).size();

  out.detail << " cyclic N=" << n << " calls " << cached.sat_calls() << "/"
             << plain.sat_calls() << ", >= firings cached " << with
             << " vs uncached " << without << "; chain N=" << chain_n
             << " calls " << horn.sat_calls();
  out.Require(cached.sat_calls() == n && plain.sat_calls() == n,
              "N satisfiability calls on the cyclic KB");
  out.Require(horn.sat_calls() == chain_n, "N satisfiability calls");
  out.Require(with < without, "cache saves >= firings");
  out.Require(t1.subsumers == t2.subsumers, "cache preserves taxonomy");
}

int Level(const ABox& abox, const Vocabulary& vocab, IndId s, int k) {
  int level = 0;
  for (int i = 0; i < k; ++i) {
    auto id = vocab.FindConcept(Concept::Atomic(CounterBit(i)));
    if (id && abox.HasConcept(s, *id)) level |= 1 << i;
  }
  return level;
}

void Counters(Outcome& out) {
  const int k = 3;
  SatResult r = CheckSatisfiable(FamilyK11(k));
  out.Require(r.verdict == Verdict::kSat, "K11 verdict");
  size_t pairs = 0, bad = 0;
  if (r.derivation.final_abox) {
    const ABox& abox = *r.derivation.final_abox;
    const Vocabulary& vocab = r.program->vocab();
    const BlockingStatus& b = r.derivation.final_blocking;
    auto l = vocab.FindRole("L");
    auto rr = vocab.FindRole("R");
    for (IndId s : abox.AliveIndividuals()) {
      if (b.indirectly_blocked(s)) continue;
      for (const auto& [edge, depth] : abox.state(s)->out) {
        const auto& [role, t] = edge;
        if ((l && role == *l) || (rr && role == *rr)) {
          if (b.indirectly_blocked(t) || !abox.alive(t)) continue;
          ++pairs;
          int want = (Level(abox, vocab, s, k) + 1) % (1 << k);
          if (Level(abox, vocab, t, k) != want) ++bad;
        }
      }
    }
  }
  SatResult k12 = CheckSatisfiable(FamilyK12(2));
  out.detail << " K11(3): " << pairs << " successor pairs, " << bad
             << " violations; K12(2): " << VerdictName(k12.verdict) << ", "
             << k12.derivation.stats.ni_root_creations << " NI creations";
  out.Require(pairs > 0 && bad == 0, "counter increments");
  out.Require(k12.derivation.stats.ni_root_creations >= 1, "NI creation");
}

struct Criterion {
  int number;
  const char* title;
  std::function<void(Outcome&)> check;
};

}  // namespace
}  // namespace htdl::testing

int main() {
  using namespace htdl;
  using namespace htdl::testing;
  std::vector<Criterion> criteria = {
      {1, "K1 is UNSAT on a single branch", K1Chains},
      {2, "K2 under anywhere vs ancestor blocking", K2Blocking},
      {3, "yo-yo example terminates", YoYo},
      {4, "at most two root extensions", TwoRoots},
      {5, "caterpillar renamings and seed stability", Caterpillar},
      {6, "no-predecessor example is UNSAT", NoPredecessors},
      {7, "normalization is required for soundness", Normalization},
      {8, "full-single blocking counterexample",
       [](Outcome& o) {
         GuardCounterexample(o, kSingleBlockingCounterexample,
                             BlockingStrategy::kFullSingle);
       }},
      {9, "subset blocking counterexample",
       [](Outcome& o) {
         GuardCounterexample(o, kSubsetBlockingCounterexample,
                             BlockingStrategy::kSubset);
       }},
      {10, "infinite-model KB is SAT via blocking", InfiniteModel},
      {11, "random ALC KBs agree with the model oracle", OracleAgreement},
      {12, "random Horn KBs never branch", HornDeterminism},
      {13, "HT-ABox validator after every step", ValidatorEveryStep},
      {14, "indexed blocking equals naive blocking", BlockingIndex},
      {15, "classification call count and blocker cache", Classification},
      {16, "counter families", Counters},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome out;
    try {
      c.check(out);
    } catch (const std::exception& e) {
      out.Require(false, std::string("exception: ") + e.what());
    }
    if (!out.pass) ++failed;
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << c.number
              << ": " << c.title << " --" << out.detail.str() << std::endl;
  }
  std::cout << (16 - failed) << "/16 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
