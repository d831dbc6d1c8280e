// Finite interpretations and the model-theoretic semantics of SHOIQ+.

#ifndef HTDL_INTERPRETATION_H_
#define HTDL_INTERPRETATION_H_

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "htdl/kb.h"

namespace htdl {

using ElementSet = std::set<int>;
using PairSet = std::set<std::pair<int, int>>;

// Domain elements are 0 .. domain_size-1.
struct FiniteInterpretation {
  int domain_size = 1;
  std::map<std::string, ElementSet> concept_ext;
  std::map<std::string, PairSet> role_ext;
  std::map<std::string, int> individual_map;
};

class UnknownSymbolError : public std::runtime_error {
 public:
  explicit UnknownSymbolError(const std::string& symbol)
      : std::runtime_error("unknown symbol: " + symbol), symbol_(symbol) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

// Extension of r, with inverse roles resolved.
PairSet RoleExtension(const FiniteInterpretation& i, const Role& r);
ElementSet EvalConcept(const FiniteInterpretation& i, const Concept& c);
bool SatisfiesKB(const FiniteInterpretation& i, const KnowledgeBase& kb);

}  // namespace htdl

#endif  // HTDL_INTERPRETATION_H_
