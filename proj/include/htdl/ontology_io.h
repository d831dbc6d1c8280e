// Text formats: the s-expression knowledge-base language and the arrow
// notation for clause sets.

#ifndef HTDL_ONTOLOGY_IO_H_
#define HTDL_ONTOLOGY_IO_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "htdl/clause.h"
#include "htdl/kb.h"

namespace htdl {

struct SourceLocation {
  int line = 1;  // 1-based
  int column = 1;
  std::string ToString() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceLocation loc, const std::string& message)
      : std::runtime_error(loc.ToString() + ": " + message), location_(loc) {}
  const SourceLocation& location() const { return location_; }

 private:
  SourceLocation location_;
};

struct ParseOptions {
  uint64_t number_cap = 65536;
};

// Throws ParseError on syntax errors, reserved symbols, numbers above the
// cap and non-simple roles where simple ones are required.
KnowledgeBase ParseKB(std::string_view text, const ParseOptions& options = {});

std::string SerializeAxiom(const RoleAxiom& axiom);
std::string SerializeAxiom(const Gci& axiom);
std::string SerializeAxiom(const AboxAxiom& axiom);
// One item per line: role axioms, then GCIs, then assertions.
std::string SerializeKB(const KnowledgeBase& kb);

// Clauses one per line in lexicographic order, followed by the ground atoms
// of the ABox in lexicographic order.
std::string SerializeClauses(const std::vector<HTClause>& clauses,
                             const InputAbox& abox);

struct ClauseSet {
  std::vector<HTClause> clauses;
  InputAbox abox;
};

// Reads the arrow notation. Lines containing "->" are clauses; every other
// non-blank line not starting with ';' is a ground atom.
ClauseSet ParseClauseSet(std::string_view text);

}  // namespace htdl

#endif  // HTDL_ONTOLOGY_IO_H_
