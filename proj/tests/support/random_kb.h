// Random knowledge bases for property tests.

#ifndef HTDL_TESTS_SUPPORT_RANDOM_KB_H_
#define HTDL_TESTS_SUPPORT_RANDOM_KB_H_

#include <random>

#include "htdl/kb.h"

namespace htdl::testing {

// At most three concept names, two roles and four axioms, with concepts of
// nesting depth at most two built from not, and, or, some and all.
KnowledgeBase RandomAlcKB(std::mt19937_64& rng);

// GCIs whose clauses have at most one consequent atom, plus assertions.
KnowledgeBase RandomHornKB(std::mt19937_64& rng);

}  // namespace htdl::testing

#endif  // HTDL_TESTS_SUPPORT_RANDOM_KB_H_
