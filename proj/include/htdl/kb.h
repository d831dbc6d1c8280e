// Abstract syntax of SHOIQ+ knowledge bases.

#ifndef HTDL_KB_H_
#define HTDL_KB_H_

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace htdl {

// An atomic role or the inverse of an atomic role. Inverses never nest.
struct Role {
  std::string name;
  bool inverse = false;

  Role() = default;
  explicit Role(std::string n, bool inv = false)
      : name(std::move(n)), inverse(inv) {}

  Role Inverse() const { return Role(name, !inverse); }
  std::string ToString() const;

  friend auto operator<=>(const Role&, const Role&) = default;
  friend bool operator==(const Role&, const Role&) = default;
};

enum class ConceptKind {
  kTop,
  kBottom,
  kAtomic,
  kNominal,
  kNot,
  kAnd,
  kOr,
  kExists,
  kForAll,
  kSelf,
  kAtLeast,
  kAtMost,
};

// Immutable concept tree with value semantics. Copies share structure.
class Concept {
 public:
  Concept();  // top

  static Concept Top();
  static Concept Bottom();
  static Concept Atomic(std::string name);
  static Concept Nominal(std::string individual);
  static Concept Not(Concept c);
  static Concept And(std::vector<Concept> operands);
  static Concept Or(std::vector<Concept> operands);
  static Concept Exists(Role r, Concept c);
  static Concept ForAll(Role r, Concept c);
  static Concept Self(Role r);
  // Throws std::invalid_argument when n == 0.
  static Concept AtLeast(uint32_t n, Role r, Concept c);
  static Concept AtMost(uint32_t n, Role r, Concept c);

  ConceptKind kind() const;
  // Concept name for kAtomic, individual for kNominal.
  const std::string& name() const;
  const Role& role() const;
  uint32_t number() const;
  // Operands of And/Or; the single child of Not, Exists, ForAll, AtLeast and
  // AtMost.
  const std::vector<Concept>& operands() const;
  const Concept& filler() const { return operands().front(); }

  bool IsLiteral() const;  // top, bottom, A or not A
  std::string ToString() const;

  friend int Compare(const Concept& a, const Concept& b);
  friend bool operator==(const Concept& a, const Concept& b) {
    return Compare(a, b) == 0;
  }
  friend bool operator<(const Concept& a, const Concept& b) {
    return Compare(a, b) < 0;
  }

 private:
  struct Node;
  explicit Concept(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

int Compare(const Concept& a, const Concept& b);

// ---- Axioms ----

struct Gci {
  Concept lhs;
  Concept rhs;
  friend bool operator==(const Gci&, const Gci&) = default;
};

struct SubRole {
  Role sub;
  Role super;
  friend bool operator==(const SubRole&, const SubRole&) = default;
};

struct DisjointRoles {
  Role first;
  Role second;
  friend bool operator==(const DisjointRoles&, const DisjointRoles&) = default;
};

enum class RoleCharacteristic {
  kReflexive,
  kIrreflexive,
  kSymmetric,
  kAsymmetric,
  kTransitive,
};

struct RoleProperty {
  RoleCharacteristic characteristic;
  Role role;
  friend bool operator==(const RoleProperty&, const RoleProperty&) = default;
};

using RoleAxiom = std::variant<SubRole, DisjointRoles, RoleProperty>;

struct ConceptAssertion {
  Concept expression;
  std::string individual;
  friend bool operator==(const ConceptAssertion&,
                         const ConceptAssertion&) = default;
};

struct RoleAssertion {
  Role role;
  std::string from;
  std::string to;
  friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
};

struct SameIndividual {
  std::string first;
  std::string second;
  friend bool operator==(const SameIndividual&,
                         const SameIndividual&) = default;
};

struct DifferentIndividuals {
  std::string first;
  std::string second;
  friend bool operator==(const DifferentIndividuals&,
                         const DifferentIndividuals&) = default;
};

using AboxAxiom = std::variant<ConceptAssertion, RoleAssertion, SameIndividual,
                               DifferentIndividuals>;

struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles;
  std::set<std::string> individuals;
};

class KnowledgeBase {
 public:
  void Add(RoleAxiom axiom);
  void Add(Gci axiom);
  void Add(AboxAxiom axiom);
  void AddGci(Concept lhs, Concept rhs) { Add(Gci{std::move(lhs), std::move(rhs)}); }

  const std::vector<RoleAxiom>& rbox() const { return rbox_; }
  const std::vector<Gci>& tbox() const { return tbox_; }
  const std::vector<AboxAxiom>& abox() const { return abox_; }
  const Signature& signature() const { return signature_; }

  bool HasNominals() const;

 private:
  void Declare(const Concept& c);
  void Declare(const Role& r) { signature_.roles.insert(r.name); }

  std::vector<RoleAxiom> rbox_;
  std::vector<Gci> tbox_;
  std::vector<AboxAxiom> abox_;
  Signature signature_;
};

// Negation normal form: negation only above atomic, nominal and self
// concepts.
Concept Nnf(const Concept& c);
// nnf(not c).
Concept NegDot(const Concept& c);

// Reflexive-transitive closure of the role inclusion axioms, with the
// inverse-mirrored pairs added.
class RoleHierarchy {
 public:
  RoleHierarchy() = default;
  explicit RoleHierarchy(const std::vector<RoleAxiom>& rbox);

  bool IsSubRole(const Role& sub, const Role& super) const;
  // Roles S with S below r, including r itself.
  std::vector<Role> SubRolesOf(const Role& r) const;
  bool IsTransitive(const Role& r) const;
  bool IsSimple(const Role& r) const;
  // All non-reflexive pairs of the closure.
  std::set<std::pair<Role, Role>> Pairs() const;

 private:
  std::map<Role, std::set<Role>> supers_;  // strict, transitively closed
  std::set<Role> declared_transitive_;     // both polarities
};

RoleHierarchy SubroleClosure(const std::vector<RoleAxiom>& rbox);
bool IsSimple(const Role& r, const std::vector<RoleAxiom>& rbox);

struct SimplicityViolation {
  std::string axiom;  // serialized offending axiom
  Role role;
};

// Roles in number restrictions, Self, disjointness, irreflexivity and
// asymmetry axioms must be simple.
std::vector<SimplicityViolation> CheckSimplicity(const KnowledgeBase& kb);

// Every role occurring in c, without polarity.
void CollectRoles(const Concept& c, std::set<std::string>* roles);
// Every nominal individual occurring in c.
void CollectNominals(const Concept& c, std::set<std::string>* individuals);

}  // namespace htdl

#endif  // HTDL_KB_H_
