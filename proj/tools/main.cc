// htdl: command-line front end for the hypertableau reasoner.
//
// Exit codes: 0 reasoning completed, 2 malformed input, 3 resource limit,
// 4 blocking strategy rejected.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "htdl/engine.h"
#include "htdl/families.h"
#include "htdl/ontology_io.h"
#include "htdl/preprocessing.h"
#include "htdl/reasoner.h"
#include "htdl/trace.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitLimit = 3;
constexpr int kExitGuard = 4;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string blocking = "anywhere-pairwise";
  bool unsafe_blocking = false;
  bool no_label_cache = false;
  uint64_t individual_cap = 200000;
  double timeout = 300;
  bool backjumping = false;
  std::string disjunct_order = "declared";
};

htdl::EngineConfig MakeConfig(const Options& o) {
  htdl::EngineConfig c;
  auto strategy = htdl::ParseStrategy(o.blocking);
  if (!strategy) throw InputError("unknown blocking strategy: " + o.blocking);
  c.blocking = *strategy;
  c.unsafe_blocking = o.unsafe_blocking;
  c.individual_cap = o.individual_cap;
  c.timeout_seconds = o.timeout;
  c.backjumping = o.backjumping;
  c.disjunct_order = o.disjunct_order == "reversed"
                         ? htdl::DisjunctOrder::kReversed
                         : htdl::DisjunctOrder::kDeclared;
  c.seed = htdl::SeedFromEnvironment();
  return c;
}

htdl::KnowledgeBase LoadKB(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return htdl::ParseKB(buf.str());
  } catch (const htdl::ParseError& e) {
    throw InputError(path + ":" + e.what());
  }
}

int VerdictExit(htdl::Verdict v) {
  return v == htdl::Verdict::kIndeterminate ? kExitLimit : kExitOk;
}

int RunSat(const std::string& file, const Options& o) {
  htdl::SatResult r = htdl::CheckSatisfiable(LoadKB(file), MakeConfig(o));
  std::cout << htdl::VerdictName(r.verdict) << "\n";
  if (!r.derivation.limit_reason.empty()) {
    std::cerr << r.derivation.limit_reason << "\n";
  }
  return VerdictExit(r.verdict);
}

int RunSubsumes(const std::string& file, const std::string& sub,
                const std::string& super, const Options& o) {
  htdl::Reasoner reasoner(LoadKB(file), MakeConfig(o), !o.no_label_cache);
  htdl::Answer a = reasoner.Subsumes(sub, super);
  std::cout << htdl::AnswerName(a) << "\n";
  return a == htdl::Answer::kUnknown ? kExitLimit : kExitOk;
}

int RunClassify(const std::string& file, const Options& o) {
  htdl::Reasoner reasoner(LoadKB(file), MakeConfig(o), !o.no_label_cache);
  htdl::Taxonomy tax = reasoner.Classify();
  std::cout << tax.ToString();
  if (!tax.unknown.empty()) {
    std::cout << "INDETERMINATE\n";
    return kExitLimit;
  }
  return kExitOk;
}

int RunClausify(const std::string& file) {
  htdl::Clausification c = htdl::Preprocess(LoadKB(file));
  std::cout << htdl::SerializeClauses(c.clauses, c.abox);
  return kExitOk;
}

int RunTrace(const std::string& file, const std::string& format,
             const Options& o) {
  htdl::Clausification c = htdl::Preprocess(LoadKB(file));
  htdl::Program program(c.clauses);
  std::vector<htdl::TraceRecord> trace;
  htdl::EngineConfig config = MakeConfig(o);
  config.trace = &trace;
  htdl::DeriveResult r = htdl::Derive(program, c.abox, config);
  std::cout << htdl::ExportTrace(trace, format == "dot"
                                            ? htdl::TraceFormat::kDot
                                            : htdl::TraceFormat::kJsonLines);
  std::cerr << htdl::VerdictName(r.verdict) << "\n";
  return VerdictExit(r.verdict);
}

int RunGen(const std::string& family, int n, int m, int k) {
  htdl::KnowledgeBase kb;
  try {
    if (family == "k1") {
      kb = htdl::FamilyK1(n);
    } else if (family == "k2") {
      kb = htdl::FamilyK2(n, m);
    } else if (family == "k11") {
      kb = htdl::FamilyK11(k);
    } else {
      kb = htdl::FamilyK12(k);
    }
  } catch (const htdl::FamilyRangeError& e) {
    throw InputError(e.what());
  }
  std::cout << htdl::SerializeKB(kb);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypertableau reasoner for SHOIQ+ knowledge bases"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--blocking", o.blocking, "Blocking strategy")
      ->check(CLI::IsMember({"anywhere-pairwise", "ancestor-pairwise",
                             "atomic-single", "full-single", "subset"}));
  app.add_flag("--unsafe-blocking", o.unsafe_blocking,
               "Skip the strategy guard");
  app.add_flag("--no-label-cache", o.no_label_cache,
               "Disable the blocker cache during classification");
  app.add_option("--individual-cap", o.individual_cap,
                 "Maximum number of alive individuals");
  app.add_option("--timeout", o.timeout, "Timeout in seconds");
  app.add_flag("--backjumping", o.backjumping, "Enable backjumping");
  app.add_option("--disjunct-order", o.disjunct_order,
                 "Order in which disjuncts are tried")
      ->check(CLI::IsMember({"declared", "reversed"}));

  std::string file, sub, super, format = "dot", family;
  int n = 1, m = 1, k = 1;

  CLI::App* sat = app.add_subcommand("sat", "Decide satisfiability");
  sat->add_option("FILE", file)->required();
  CLI::App* subsumes = app.add_subcommand("subsumes", "Decide A <= B");
  subsumes->add_option("FILE", file)->required();
  subsumes->add_option("A", sub)->required();
  subsumes->add_option("B", super)->required();
  CLI::App* classify = app.add_subcommand("classify", "Compute the taxonomy");
  classify->add_option("FILE", file)->required();
  CLI::App* clausify = app.add_subcommand("clausify", "Print the clause set");
  clausify->add_option("FILE", file)->required();
  CLI::App* trace = app.add_subcommand("trace", "Export the derivation");
  trace->add_option("FILE", file)->required();
  trace->add_option("--format", format)
      ->check(CLI::IsMember({"dot", "jsonl"}));
  CLI::App* gen = app.add_subcommand("gen", "Generate a benchmark family");
  gen->add_option("FAMILY", family)
      ->required()
      ->check(CLI::IsMember({"k1", "k2", "k11", "k12"}));
  gen->add_option("--n", n);
  gen->add_option("--m", m);
  gen->add_option("--k", k);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*sat) return RunSat(file, o);
    if (*subsumes) return RunSubsumes(file, sub, super, o);
    if (*classify) return RunClassify(file, o);
    if (*clausify) return RunClausify(file);
    if (*trace) return RunTrace(file, format, o);
    return RunGen(family, n, m, k);
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const htdl::StrategyGuardError& e) {
    std::cerr << e.what() << "\n";
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }
}
