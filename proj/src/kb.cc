#include "htdl/kb.h"

#include <deque>
#include <stdexcept>

namespace htdl {

std::string Role::ToString() const {
  return inverse ? "(inv " + name + ")" : name;
}

struct Concept::Node {
  ConceptKind kind = ConceptKind::kTop;
  std::string name;
  Role role;
  uint32_t number = 0;
  std::vector<Concept> operands;
};

namespace {

const std::vector<Concept>& EmptyOperands() {
  static const std::vector<Concept>* empty = new std::vector<Concept>();
  return *empty;
}

template <typename T>
int Cmp(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

}  // namespace

Concept::Concept() : Concept(Top()) {}

Concept::Concept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Concept Concept::Top() {
  static const std::shared_ptr<const Node> top = [] {
    auto n = std::make_shared<Node>();
    n->kind = ConceptKind::kTop;
    return n;
  }();
  return Concept(top);
}

Concept Concept::Bottom() {
  static const std::shared_ptr<const Node> bottom = [] {
    auto n = std::make_shared<Node>();
    n->kind = ConceptKind::kBottom;
    return n;
  }();
  return Concept(bottom);
}

Concept Concept::Atomic(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::kAtomic;
  n->name = std::move(name);
  return Concept(std::move(n));
}

Concept Concept::Nominal(std::string individual) {
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::kNominal;
  n->name = std::move(individual);
  return Concept(std::move(n));
}

Concept Concept::Not(Concept c) {
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::kNot;
  n->operands.push_back(std::move(c));
  return Concept(std::move(n));
}

Concept Concept::And(std::vector<Concept> operands) {
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::kAnd;
  n->operands = std::move(operands);
  return Concept(std::move(n));
}

Concept Concept::Or(std::vector<Concept> operands) {
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::kOr;
  n->operands = std::move(operands);
  return Concept(std::move(n));
}

Concept Concept::Exists(Role r, Concept c) {
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::kExists;
  n->role = std::move(r);
  n->operands.push_back(std::move(c));
  return Concept(std::move(n));
}

Concept Concept::ForAll(Role r, Concept c) {
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::kForAll;
  n->role = std::move(r);
  n->operands.push_back(std::move(c));
  return Concept(std::move(n));
}

Concept Concept::Self(Role r) {
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::kSelf;
  n->role = std::move(r);
  return Concept(std::move(n));
}

Concept Concept::AtLeast(uint32_t number, Role r, Concept c) {
  if (number == 0) throw std::invalid_argument("at-least bound must be >= 1");
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::kAtLeast;
  n->number = number;
  n->role = std::move(r);
  n->operands.push_back(std::move(c));
  return Concept(std::move(n));
}

Concept Concept::AtMost(uint32_t number, Role r, Concept c) {
  auto n = std::make_shared<Node>();
  n->kind = ConceptKind::kAtMost;
  n->number = number;
  n->role = std::move(r);
  n->operands.push_back(std::move(c));
  return Concept(std::move(n));
}

ConceptKind Concept::kind() const { return node_->kind; }
const std::string& Concept::name() const { return node_->name; }
const Role& Concept::role() const { return node_->role; }
uint32_t Concept::number() const { return node_->number; }

const std::vector<Concept>& Concept::operands() const {
  return node_ ? node_->operands : EmptyOperands();
}

bool Concept::IsLiteral() const {
  switch (kind()) {
    case ConceptKind::kTop:
    case ConceptKind::kBottom:
    case ConceptKind::kAtomic:
      return true;
    case ConceptKind::kNot:
      return filler().kind() == ConceptKind::kAtomic;
    default:
      return false;
  }
}

std::string Concept::ToString() const {
  switch (kind()) {
    case ConceptKind::kTop:
      return "top";
    case ConceptKind::kBottom:
      return "bottom";
    case ConceptKind::kAtomic:
      return name();
    case ConceptKind::kNominal:
      return "(oneof " + name() + ")";
    case ConceptKind::kNot:
      return "(not " + filler().ToString() + ")";
    case ConceptKind::kAnd:
    case ConceptKind::kOr: {
      std::string out = kind() == ConceptKind::kAnd ? "(and" : "(or";
      for (const Concept& c : operands()) out += " " + c.ToString();
      return out + ")";
    }
    case ConceptKind::kExists:
      return "(some " + role().ToString() + " " + filler().ToString() + ")";
    case ConceptKind::kForAll:
      return "(all " + role().ToString() + " " + filler().ToString() + ")";
    case ConceptKind::kSelf:
      return "(self " + role().ToString() + ")";
    case ConceptKind::kAtLeast:
      return "(atleast " + std::to_string(number()) + " " +
             role().ToString() + " " + filler().ToString() + ")";
    case ConceptKind::kAtMost:
      return "(atmost " + std::to_string(number()) + " " + role().ToString() +
             " " + filler().ToString() + ")";
  }
  return "?";
}

int Compare(const Concept& a, const Concept& b) {
  if (a.node_ == b.node_) return 0;
  if (int c = Cmp(a.kind(), b.kind())) return c;
  if (int c = a.name().compare(b.name())) return c < 0 ? -1 : 1;
  if (int c = Cmp(a.role(), b.role())) return c;
  if (int c = Cmp(a.number(), b.number())) return c;
  const auto& x = a.operands();
  const auto& y = b.operands();
  for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (int c = Compare(x[i], y[i])) return c;
  }
  return Cmp(x.size(), y.size());
}

// ---- KnowledgeBase ----

void KnowledgeBase::Declare(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::kAtomic:
      signature_.concepts.insert(c.name());
      break;
    case ConceptKind::kNominal:
      signature_.individuals.insert(c.name());
      break;
    case ConceptKind::kExists:
    case ConceptKind::kForAll:
    case ConceptKind::kSelf:
    case ConceptKind::kAtLeast:
    case ConceptKind::kAtMost:
      Declare(c.role());
      break;
    default:
      break;
  }
  for (const Concept& sub : c.operands()) Declare(sub);
}

void KnowledgeBase::Add(RoleAxiom axiom) {
  std::visit(
      [this](const auto& ax) {
        using T = std::decay_t<decltype(ax)>;
        if constexpr (std::is_same_v<T, SubRole>) {
          Declare(ax.sub);
          Declare(ax.super);
        } else if constexpr (std::is_same_v<T, DisjointRoles>) {
          Declare(ax.first);
          Declare(ax.second);
        } else {
          Declare(ax.role);
        }
      },
      axiom);
  rbox_.push_back(std::move(axiom));
}

void KnowledgeBase::Add(Gci axiom) {
  Declare(axiom.lhs);
  Declare(axiom.rhs);
  tbox_.push_back(std::move(axiom));
}

void KnowledgeBase::Add(AboxAxiom axiom) {
  std::visit(
      [this](const auto& ax) {
        using T = std::decay_t<decltype(ax)>;
        if constexpr (std::is_same_v<T, ConceptAssertion>) {
          Declare(ax.expression);
          signature_.individuals.insert(ax.individual);
        } else if constexpr (std::is_same_v<T, RoleAssertion>) {
          Declare(ax.role);
          signature_.individuals.insert(ax.from);
          signature_.individuals.insert(ax.to);
        } else {
          signature_.individuals.insert(ax.first);
          signature_.individuals.insert(ax.second);
        }
      },
      axiom);
  abox_.push_back(std::move(axiom));
}

void CollectNominals(const Concept& c, std::set<std::string>* individuals) {
  if (c.kind() == ConceptKind::kNominal) individuals->insert(c.name());
  for (const Concept& sub : c.operands()) CollectNominals(sub, individuals);
}

void CollectRoles(const Concept& c, std::set<std::string>* roles) {
  switch (c.kind()) {
    case ConceptKind::kExists:
    case ConceptKind::kForAll:
    case ConceptKind::kSelf:
    case ConceptKind::kAtLeast:
    case ConceptKind::kAtMost:
      roles->insert(c.role().name);
      break;
    default:
      break;
  }
  for (const Concept& sub : c.operands()) CollectRoles(sub, roles);
}

bool KnowledgeBase::HasNominals() const {
  std::set<std::string> found;
  for (const Gci& g : tbox_) {
    CollectNominals(g.lhs, &found);
    CollectNominals(g.rhs, &found);
  }
  for (const AboxAxiom& a : abox_) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      CollectNominals(ca->expression, &found);
    }
  }
  return !found.empty();
}

// ---- nnf ----

Concept Nnf(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::kTop:
    case ConceptKind::kBottom:
    case ConceptKind::kAtomic:
    case ConceptKind::kNominal:
    case ConceptKind::kSelf:
      return c;
    case ConceptKind::kAnd:
    case ConceptKind::kOr: {
      std::vector<Concept> ops;
      ops.reserve(c.operands().size());
      for (const Concept& o : c.operands()) ops.push_back(Nnf(o));
      return c.kind() == ConceptKind::kAnd ? Concept::And(std::move(ops))
                                           : Concept::Or(std::move(ops));
    }
    case ConceptKind::kExists:
      return Concept::Exists(c.role(), Nnf(c.filler()));
    case ConceptKind::kForAll:
      return Concept::ForAll(c.role(), Nnf(c.filler()));
    case ConceptKind::kAtLeast:
      return Concept::AtLeast(c.number(), c.role(), Nnf(c.filler()));
    case ConceptKind::kAtMost:
      return Concept::AtMost(c.number(), c.role(), Nnf(c.filler()));
    case ConceptKind::kNot:
      break;
  }
  const Concept& d = c.filler();
  switch (d.kind()) {
    case ConceptKind::kTop:
      return Concept::Bottom();
    case ConceptKind::kBottom:
      return Concept::Top();
    case ConceptKind::kAtomic:
    case ConceptKind::kNominal:
    case ConceptKind::kSelf:
      return c;
    case ConceptKind::kNot:
      return Nnf(d.filler());
    case ConceptKind::kAnd:
    case ConceptKind::kOr: {
      std::vector<Concept> ops;
      ops.reserve(d.operands().size());
      for (const Concept& o : d.operands()) ops.push_back(NegDot(o));
      return d.kind() == ConceptKind::kAnd ? Concept::Or(std::move(ops))
                                           : Concept::And(std::move(ops));
    }
    case ConceptKind::kExists:
      return Concept::ForAll(d.role(), NegDot(d.filler()));
    case ConceptKind::kForAll:
      return Concept::Exists(d.role(), NegDot(d.filler()));
    case ConceptKind::kAtLeast:
      return Concept::AtMost(d.number() - 1, d.role(), Nnf(d.filler()));
    case ConceptKind::kAtMost:
      return Concept::AtLeast(d.number() + 1, d.role(), Nnf(d.filler()));
  }
  return c;
}

Concept NegDot(const Concept& c) { return Nnf(Concept::Not(c)); }

// ---- role hierarchy ----

RoleHierarchy::RoleHierarchy(const std::vector<RoleAxiom>& rbox) {
  std::map<Role, std::set<Role>> direct;
  for (const RoleAxiom& ax : rbox) {
    if (const auto* sub = std::get_if<SubRole>(&ax)) {
      direct[sub->sub].insert(sub->super);
      direct[sub->sub.Inverse()].insert(sub->super.Inverse());
    } else if (const auto* prop = std::get_if<RoleProperty>(&ax)) {
      if (prop->characteristic == RoleCharacteristic::kTransitive) {
        declared_transitive_.insert(prop->role);
        declared_transitive_.insert(prop->role.Inverse());
      }
    }
  }
  for (const auto& [start, unused] : direct) {
    std::set<Role>& reach = supers_[start];
    std::deque<Role> queue(direct[start].begin(), direct[start].end());
    while (!queue.empty()) {
      Role r = queue.front();
      queue.pop_front();
      if (r == start || !reach.insert(r).second) continue;
      auto it = direct.find(r);
      if (it == direct.end()) continue;
      for (const Role& next : it->second) queue.push_back(next);
    }
  }
}

bool RoleHierarchy::IsSubRole(const Role& sub, const Role& super) const {
  if (sub == super) return true;
  auto it = supers_.find(sub);
  return it != supers_.end() && it->second.count(super) > 0;
}

std::vector<Role> RoleHierarchy::SubRolesOf(const Role& r) const {
  std::vector<Role> out{r};
  for (const auto& [sub, sups] : supers_) {
    if (sub != r && sups.count(r)) out.push_back(sub);
  }
  return out;
}

bool RoleHierarchy::IsTransitive(const Role& r) const {
  // Tra on any role equivalent to r, in either polarity.
  for (const Role& t : declared_transitive_) {
    if (IsSubRole(t, r) && IsSubRole(r, t)) return true;
  }
  return false;
}

bool RoleHierarchy::IsSimple(const Role& r) const {
  // Any transitive sub-role is equivalent to a declared one, which then is
  // itself a sub-role of r.
  for (const Role& t : declared_transitive_) {
    if (IsSubRole(t, r)) return false;
  }
  return true;
}

std::set<std::pair<Role, Role>> RoleHierarchy::Pairs() const {
  std::set<std::pair<Role, Role>> out;
  for (const auto& [sub, sups] : supers_) {
    for (const Role& s : sups) out.emplace(sub, s);
  }
  return out;
}

RoleHierarchy SubroleClosure(const std::vector<RoleAxiom>& rbox) {
  return RoleHierarchy(rbox);
}

bool IsSimple(const Role& r, const std::vector<RoleAxiom>& rbox) {
  return RoleHierarchy(rbox).IsSimple(r);
}

namespace {

void CheckConceptRoles(const Concept& c, const RoleHierarchy& h,
                       const std::string& axiom,
                       std::vector<SimplicityViolation>* out) {
  switch (c.kind()) {
    case ConceptKind::kSelf:
    case ConceptKind::kAtLeast:
    case ConceptKind::kAtMost:
      if (!h.IsSimple(c.role())) out->push_back({axiom, c.role()});
      break;
    default:
      break;
  }
  for (const Concept& sub : c.operands()) CheckConceptRoles(sub, h, axiom, out);
}

}  // namespace

std::vector<SimplicityViolation> CheckSimplicity(const KnowledgeBase& kb) {
  RoleHierarchy h(kb.rbox());
  std::vector<SimplicityViolation> out;
  for (const RoleAxiom& ax : kb.rbox()) {
    if (const auto* dis = std::get_if<DisjointRoles>(&ax)) {
      std::string text = "(disjoint-roles " + dis->first.ToString() + " " +
                         dis->second.ToString() + ")";
      if (!h.IsSimple(dis->first)) out.push_back({text, dis->first});
      if (!h.IsSimple(dis->second)) out.push_back({text, dis->second});
    } else if (const auto* prop = std::get_if<RoleProperty>(&ax)) {
      if (prop->characteristic == RoleCharacteristic::kIrreflexive &&
          !h.IsSimple(prop->role)) {
        out.push_back({"(irreflexive " + prop->role.ToString() + ")", prop->role});
      }
      if (prop->characteristic == RoleCharacteristic::kAsymmetric &&
          !h.IsSimple(prop->role)) {
        out.push_back({"(asymmetric " + prop->role.ToString() + ")", prop->role});
      }
    }
  }
  for (const Gci& g : kb.tbox()) {
    std::string text = "(gci " + g.lhs.ToString() + " " + g.rhs.ToString() + ")";
    CheckConceptRoles(g.lhs, h, text, &out);
    CheckConceptRoles(g.rhs, h, text, &out);
  }
  for (const AboxAxiom& a : kb.abox()) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      CheckConceptRoles(ca->expression, h,
                        "(instance " + ca->individual + " " +
                            ca->expression.ToString() + ")",
                        &out);
    }
  }
  return out;
}

}  // namespace htdl
