// Parameterized benchmark knowledge bases.

#ifndef HTDL_FAMILIES_H_
#define HTDL_FAMILIES_H_

#include <stdexcept>
#include <string>

#include "htdl/kb.h"

namespace htdl {

class FamilyRangeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Chain a0 -R-> b1 -R-> a1 ... -R-> an with A(an), not A(a0) and
// (some R A) <= A. Requires n >= 1.
KnowledgeBase FamilyK1(int n);

// A_i <= (atleast 2 S A_{i+1}), A_n <= A_1, A_i <= and_j (B_j or C_j), A_1(a).
// Requires n, m >= 1.
KnowledgeBase FamilyK2(int n, int m);

// Binary tree over L and R whose successors count modulo 2^k in the bits
// B0..B{k-1}; A marks nodes whose both children reach the top counter value.
// Requires k >= 1.
KnowledgeBase FamilyK11(int k);

// K11 plus B0 and .. and B{k-1} <= {b} and A <= (atmost 2 L- top) and
// (atmost 2 R- top). Requires k >= 1.
KnowledgeBase FamilyK12(int k);

// Name of the i-th counter bit concept.
std::string CounterBit(int i);

}  // namespace htdl

#endif  // HTDL_FAMILIES_H_
