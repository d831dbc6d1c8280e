#include "htdl/ontology_io.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>

namespace htdl {

std::string SourceLocation::ToString() const {
  return std::to_string(line) + ":" + std::to_string(column);
}

namespace {

// ---- s-expression reader ----

struct SExpr {
  SourceLocation loc;
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> ReadAll() {
    std::vector<SExpr> out;
    SkipSpace();
    while (pos_ < text_.size()) {
      out.push_back(Read());
      SkipSpace();
    }
    return out;
  }

 private:
  SExpr Read() {
    SkipSpace();
    SExpr e;
    e.loc = loc_;
    if (pos_ >= text_.size()) throw ParseError(loc_, "unexpected end of input");
    char c = text_[pos_];
    if (c == ')') throw ParseError(loc_, "unexpected ')'");
    if (c == '(') {
      Advance();
      e.is_list = true;
      while (true) {
        SkipSpace();
        if (pos_ >= text_.size()) {
          throw ParseError(e.loc, "unterminated '('");
        }
        if (text_[pos_] == ')') {
          Advance();
          break;
        }
        e.items.push_back(Read());
      }
      return e;
    }
    while (pos_ < text_.size()) {
      c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
          c == ';') {
        break;
      }
      e.atom.push_back(c);
      Advance();
    }
    return e;
  }

  void SkipSpace() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') Advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
      } else {
        break;
      }
    }
  }

  void Advance() {
    if (text_[pos_] == '\n') {
      ++loc_.line;
      loc_.column = 1;
    } else {
      ++loc_.column;
    }
    ++pos_;
  }

  std::string_view text_;
  size_t pos_ = 0;
  SourceLocation loc_;
};

// ---- interpretation of s-expressions ----

class KbBuilder {
 public:
  explicit KbBuilder(const ParseOptions& options) : options_(options) {}

  KnowledgeBase Build(const std::vector<SExpr>& items) {
    for (const SExpr& item : items) Item(item);
    for (const SimplicityViolation& v : CheckSimplicity(kb_)) {
      auto it = locations_.find(v.axiom);
      SourceLocation loc = it == locations_.end() ? SourceLocation{} : it->second;
      throw ParseError(loc, "simplicity violation in " + v.axiom + ": role " +
                                v.role.ToString() + " is not simple");
    }
    return std::move(kb_);
  }

 private:
  void Item(const SExpr& e) {
    if (!e.is_list || e.items.empty() || e.items[0].is_list) {
      throw ParseError(e.loc, "expected an axiom or assertion");
    }
    const std::string& head = e.items[0].atom;
    if (head == "gci") {
      Arity(e, 2);
      Gci g{ConceptOf(e.items[1]), ConceptOf(e.items[2])};
      locations_.emplace(SerializeAxiom(g), e.loc);
      kb_.Add(std::move(g));
    } else if (head == "subrole" || head == "disjoint-roles") {
      Arity(e, 2);
      Role a = RoleOf(e.items[1]);
      Role b = RoleOf(e.items[2]);
      RoleAxiom ax = head == "subrole" ? RoleAxiom(SubRole{a, b})
                                       : RoleAxiom(DisjointRoles{a, b});
      locations_.emplace(SerializeAxiom(ax), e.loc);
      kb_.Add(std::move(ax));
    } else if (auto ch = Characteristic(head)) {
      Arity(e, 1);
      RoleAxiom ax = RoleProperty{*ch, RoleOf(e.items[1])};
      locations_.emplace(SerializeAxiom(ax), e.loc);
      kb_.Add(std::move(ax));
    } else if (head == "instance") {
      Arity(e, 2);
      AboxAxiom ax =
          ConceptAssertion{ConceptOf(e.items[2]), IndividualOf(e.items[1])};
      locations_.emplace(SerializeAxiom(ax), e.loc);
      kb_.Add(std::move(ax));
    } else if (head == "related") {
      Arity(e, 3);
      kb_.Add(AboxAxiom(RoleAssertion{RoleOf(e.items[2]),
                                      IndividualOf(e.items[1]),
                                      IndividualOf(e.items[3])}));
    } else if (head == "same") {
      Arity(e, 2);
      kb_.Add(AboxAxiom(
          SameIndividual{IndividualOf(e.items[1]), IndividualOf(e.items[2])}));
    } else if (head == "different") {
      Arity(e, 2);
      kb_.Add(AboxAxiom(DifferentIndividuals{IndividualOf(e.items[1]),
                                             IndividualOf(e.items[2])}));
    } else {
      throw ParseError(e.items[0].loc, "unknown item '" + head + "'");
    }
  }

  static std::optional<RoleCharacteristic> Characteristic(
      const std::string& head) {
    static const std::map<std::string, RoleCharacteristic> kTable = {
        {"transitive", RoleCharacteristic::kTransitive},
        {"reflexive", RoleCharacteristic::kReflexive},
        {"irreflexive", RoleCharacteristic::kIrreflexive},
        {"symmetric", RoleCharacteristic::kSymmetric},
        {"asymmetric", RoleCharacteristic::kAsymmetric},
    };
    auto it = kTable.find(head);
    if (it == kTable.end()) return std::nullopt;
    return it->second;
  }

  static void Arity(const SExpr& e, size_t n) {
    if (e.items.size() != n + 1) {
      throw ParseError(e.loc, "'" + e.items[0].atom + "' expects " +
                                  std::to_string(n) + " argument(s)");
    }
  }

  static std::string Name(const SExpr& e, const char* what) {
    if (e.is_list) throw ParseError(e.loc, std::string("expected ") + what);
    if (e.atom.find('%') != std::string::npos) {
      throw ParseError(e.loc, "reserved prefix in symbol '" + e.atom +
                                  "' (names containing '%', such as O% and "
                                  "Q%, are reserved)");
    }
    return e.atom;
  }

  std::string IndividualOf(const SExpr& e) { return Name(e, "an individual"); }

  Role RoleOf(const SExpr& e) {
    if (!e.is_list) return Role(Name(e, "a role"));
    if (e.items.size() == 2 && !e.items[0].is_list && e.items[0].atom == "inv") {
      return Role(Name(e.items[1], "an atomic role"), true);
    }
    throw ParseError(e.loc, "expected a role name or (inv name)");
  }

  uint32_t NumberOf(const SExpr& e) {
    if (e.is_list || e.atom.empty() ||
        !std::all_of(e.atom.begin(), e.atom.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw ParseError(e.loc, "expected a natural number");
    }
    std::string digits = e.atom.substr(
        std::min(e.atom.find_first_not_of('0'), e.atom.size() - 1));
    std::string cap = std::to_string(options_.number_cap);
    if (digits.size() > cap.size() ||
        (digits.size() == cap.size() && digits > cap)) {
      throw ParseError(e.loc, "number " + e.atom + " exceeds the cap " + cap);
    }
    return static_cast<uint32_t>(std::stoull(digits));
  }

  Concept ConceptOf(const SExpr& e) {
    if (!e.is_list) {
      if (e.atom == "top") return Concept::Top();
      if (e.atom == "bottom") return Concept::Bottom();
      return Concept::Atomic(Name(e, "a concept"));
    }
    if (e.items.empty() || e.items[0].is_list) {
      throw ParseError(e.loc, "expected a concept constructor");
    }
    const std::string& head = e.items[0].atom;
    if (head == "not") {
      Arity(e, 1);
      return Concept::Not(ConceptOf(e.items[1]));
    }
    if (head == "and" || head == "or") {
      if (e.items.size() < 3) {
        throw ParseError(e.loc, "'" + head + "' expects at least 2 operands");
      }
      std::vector<Concept> ops;
      for (size_t i = 1; i < e.items.size(); ++i) {
        ops.push_back(ConceptOf(e.items[i]));
      }
      return head == "and" ? Concept::And(std::move(ops))
                           : Concept::Or(std::move(ops));
    }
    if (head == "some" || head == "all") {
      Arity(e, 2);
      Role r = RoleOf(e.items[1]);
      Concept c = ConceptOf(e.items[2]);
      return head == "some" ? Concept::Exists(r, c) : Concept::ForAll(r, c);
    }
    if (head == "self") {
      Arity(e, 1);
      return Concept::Self(RoleOf(e.items[1]));
    }
    if (head == "atleast" || head == "atmost") {
      Arity(e, 3);
      uint32_t n = NumberOf(e.items[1]);
      Role r = RoleOf(e.items[2]);
      Concept c = ConceptOf(e.items[3]);
      if (head == "atmost") return Concept::AtMost(n, r, c);
      if (n == 0) throw ParseError(e.items[1].loc, "atleast needs n >= 1");
      return Concept::AtLeast(n, r, c);
    }
    if (head == "oneof") {
      Arity(e, 1);
      return Concept::Nominal(IndividualOf(e.items[1]));
    }
    throw ParseError(e.items[0].loc, "unknown concept constructor '" + head + "'");
  }

  ParseOptions options_;
  KnowledgeBase kb_;
  std::map<std::string, SourceLocation> locations_;
};

const char* CharacteristicKeyword(RoleCharacteristic c) {
  switch (c) {
    case RoleCharacteristic::kReflexive:
      return "reflexive";
    case RoleCharacteristic::kIrreflexive:
      return "irreflexive";
    case RoleCharacteristic::kSymmetric:
      return "symmetric";
    case RoleCharacteristic::kAsymmetric:
      return "asymmetric";
    case RoleCharacteristic::kTransitive:
      return "transitive";
  }
  return "?";
}

// ---- clause notation ----

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> Split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(Trim(std::string_view(s).substr(start)));
      return out;
    }
    out.push_back(Trim(std::string_view(s).substr(start, pos - start)));
    start = pos + sep.size();
  }
}

class ClauseReader {
 public:
  explicit ClauseReader(int line) : line_(line) {}

  Term TermOf(const std::string& s) const {
    if (s.empty()) Fail("empty term");
    if (s == "x") return Term::X();
    if ((s[0] == 'y' || s[0] == 'z') && s.size() > 1 &&
        std::all_of(s.begin() + 1, s.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      int i = std::stoi(s.substr(1));
      return s[0] == 'y' ? Term::Y(i) : Term::Z(i);
    }
    return Term::Ind(s);
  }

  Role RoleOf(std::string s) const {
    if (s.empty()) Fail("empty role");
    if (s.back() == '-') {
      s.pop_back();
      return Role(s, true);
    }
    return Role(s);
  }

  Concept LiteralOf(const std::string& s) const {
    if (s == "top") return Concept::Top();
    if (s == "bottom") return Concept::Bottom();
    if (s.empty()) Fail("empty concept");
    if (s[0] == '!') return Concept::Not(Concept::Atomic(s.substr(1)));
    return Concept::Atomic(s);
  }

  Concept ConceptOf(const std::string& s) const {
    if (s.rfind(">=", 0) != 0) return LiteralOf(s);
    size_t space = s.find(' ');
    size_t dot = s.find('.', space == std::string::npos ? 0 : space);
    if (space == std::string::npos || dot == std::string::npos) {
      Fail("malformed at-least concept '" + s + "'");
    }
    uint32_t n = static_cast<uint32_t>(std::stoul(s.substr(2, space - 2)));
    return Concept::AtLeast(n, RoleOf(s.substr(space + 1, dot - space - 1)),
                            LiteralOf(s.substr(dot + 1)));
  }

  Annotation AnnotationOf(const std::string& s) const {
    // @{<=n R.B}^u
    if (s.rfind("@{<=", 0) != 0) Fail("malformed annotation '" + s + "'");
    size_t close = s.find("}^");
    if (close == std::string::npos) Fail("malformed annotation '" + s + "'");
    std::string body = s.substr(4, close - 4);
    size_t space = body.find(' ');
    size_t dot = body.find('.', space == std::string::npos ? 0 : space);
    if (space == std::string::npos || dot == std::string::npos) {
      Fail("malformed annotation '" + s + "'");
    }
    Annotation a;
    a.bound = static_cast<uint32_t>(std::stoul(body.substr(0, space)));
    a.role = RoleOf(body.substr(space + 1, dot - space - 1));
    a.filler = LiteralOf(body.substr(dot + 1));
    a.at = TermOf(s.substr(close + 2));
    return a;
  }

  Atom AtomOf(const std::string& text) const {
    std::string s = Trim(text);
    size_t neq = s.find(" != ");
    if (neq != std::string::npos) {
      return Atom::Inequality(TermOf(Trim(s.substr(0, neq))),
                              TermOf(Trim(s.substr(neq + 4))));
    }
    size_t eq = s.find(" = ");
    if (eq != std::string::npos) {
      std::string rhs = Trim(s.substr(eq + 3));
      std::optional<Annotation> ann;
      size_t at = rhs.find(" @");
      if (at != std::string::npos) {
        ann = AnnotationOf(Trim(rhs.substr(at + 1)));
        rhs = Trim(rhs.substr(0, at));
      }
      return Atom::Equality(TermOf(Trim(s.substr(0, eq))), TermOf(rhs), ann);
    }
    if (s.empty() || s.back() != ')') Fail("malformed atom '" + s + "'");
    size_t open = s.rfind('(');
    if (open == std::string::npos) Fail("malformed atom '" + s + "'");
    std::string head = s.substr(0, open);
    std::string args = s.substr(open + 1, s.size() - open - 2);
    size_t comma = args.find(',');
    if (comma != std::string::npos) {
      return Atom::RoleAtom(head, TermOf(Trim(args.substr(0, comma))),
                            TermOf(Trim(args.substr(comma + 1))));
    }
    return Atom::ConceptAtom(ConceptOf(head), TermOf(Trim(args)));
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw ParseError(SourceLocation{line_, 1}, message);
  }

 private:
  int line_;
};

}  // namespace

KnowledgeBase ParseKB(std::string_view text, const ParseOptions& options) {
  Reader reader(text);
  return KbBuilder(options).Build(reader.ReadAll());
}

std::string SerializeAxiom(const RoleAxiom& axiom) {
  if (const auto* sub = std::get_if<SubRole>(&axiom)) {
    return "(subrole " + sub->sub.ToString() + " " + sub->super.ToString() + ")";
  }
  if (const auto* dis = std::get_if<DisjointRoles>(&axiom)) {
    return "(disjoint-roles " + dis->first.ToString() + " " +
           dis->second.ToString() + ")";
  }
  const auto& prop = std::get<RoleProperty>(axiom);
  return std::string("(") + CharacteristicKeyword(prop.characteristic) + " " +
         prop.role.ToString() + ")";
}

std::string SerializeAxiom(const Gci& axiom) {
  return "(gci " + axiom.lhs.ToString() + " " + axiom.rhs.ToString() + ")";
}

std::string SerializeAxiom(const AboxAxiom& axiom) {
  if (const auto* ca = std::get_if<ConceptAssertion>(&axiom)) {
    return "(instance " + ca->individual + " " + ca->expression.ToString() + ")";
  }
  if (const auto* ra = std::get_if<RoleAssertion>(&axiom)) {
    return "(related " + ra->from + " " + ra->role.ToString() + " " + ra->to +
           ")";
  }
  if (const auto* same = std::get_if<SameIndividual>(&axiom)) {
    return "(same " + same->first + " " + same->second + ")";
  }
  const auto& diff = std::get<DifferentIndividuals>(axiom);
  return "(different " + diff.first + " " + diff.second + ")";
}

std::string SerializeKB(const KnowledgeBase& kb) {
  std::string out;
  for (const RoleAxiom& ax : kb.rbox()) out += SerializeAxiom(ax) + "\n";
  for (const Gci& ax : kb.tbox()) out += SerializeAxiom(ax) + "\n";
  for (const AboxAxiom& ax : kb.abox()) out += SerializeAxiom(ax) + "\n";
  return out;
}

std::string SerializeClauses(const std::vector<HTClause>& clauses,
                             const InputAbox& abox) {
  std::vector<std::string> clause_lines;
  for (const HTClause& c : clauses) clause_lines.push_back(c.ToString());
  std::sort(clause_lines.begin(), clause_lines.end());
  std::vector<std::string> fact_lines;
  for (const Atom& a : abox) fact_lines.push_back(a.ToString());
  std::sort(fact_lines.begin(), fact_lines.end());
  std::string out;
  for (const std::string& l : clause_lines) out += l + "\n";
  for (const std::string& l : fact_lines) out += l + "\n";
  return out;
}

ClauseSet ParseClauseSet(std::string_view text) {
  ClauseSet out;
  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line = Trim(text.substr(start, end - start));
    ++line_no;
    start = end + 1;
    if (line.empty() || line[0] == ';') {
      if (end == text.size()) break;
      continue;
    }
    ClauseReader reader(line_no);
    size_t arrow = line.find("->");
    if (arrow == std::string::npos) {
      out.abox.push_back(reader.AtomOf(line));
    } else {
      HTClause clause;
      std::string ante = Trim(line.substr(0, arrow));
      std::string cons = Trim(line.substr(arrow + 2));
      if (!ante.empty() && ante != "top") {
        for (const std::string& a : Split(ante, " ^ ")) {
          clause.antecedent.push_back(reader.AtomOf(a));
        }
      }
      if (!cons.empty() && cons != "bottom") {
        for (const std::string& a : Split(cons, " v ")) {
          clause.consequent.push_back(reader.AtomOf(a));
        }
      }
      out.clauses.push_back(std::move(clause));
    }
    if (end == text.size()) break;
  }
  return out;
}

}  // namespace htdl
