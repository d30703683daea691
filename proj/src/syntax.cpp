#include "hlf/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hlf {

namespace {

size_t hash_combine(size_t a, size_t b) {
  return a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
}

}  // namespace

Formula::Formula() : Formula(top()) {}

Formula Formula::atom(std::string name) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = Kind::Atom;
  n->atom = std::move(name);
  n->hash = hash_combine(std::hash<std::string>{}(n->atom), 0x17);
  return Formula(std::move(n));
}

Formula Formula::top() {
  static const std::shared_ptr<const FormulaNode> t = [] {
    auto n = std::make_shared<FormulaNode>();
    n->kind = Kind::Top;
    n->hash = 0x51a1;
    return n;
  }();
  return Formula(t);
}

Formula Formula::bot() {
  static const std::shared_ptr<const FormulaNode> b = [] {
    auto n = std::make_shared<FormulaNode>();
    n->kind = Kind::Bot;
    n->hash = 0xb07;
    return n;
  }();
  return Formula(b);
}

Formula Formula::binary(Kind k, Formula a, Formula b) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->hash = hash_combine(hash_combine(a.hash(), b.hash()), static_cast<size_t>(k) * 0x100 + 7);
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return Formula(std::move(n));
}

int Formula::compare(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return 0;
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case Kind::Atom:
      return a.atom_name().compare(b.atom_name()) < 0   ? -1
             : a.atom_name().compare(b.atom_name()) > 0 ? 1
                                                        : 0;
    case Kind::Top:
    case Kind::Bot:
      return 0;
    default: {
      int c = compare(a.lhs(), b.lhs());
      if (c != 0) return c;
      return compare(a.rhs(), b.rhs());
    }
  }
}

// --- lexer / parser ----------------------------------------------------------

namespace {

enum class Tok { Atom, True, False, Not, Box, And, Or, Sto, Imp, LPar, RPar, End };

struct Lexer {
  const std::string& s;
  size_t pos = 0;
  Tok tok = Tok::End;
  std::string text;
  size_t tok_pos = 0;

  explicit Lexer(const std::string& str) : s(str) { advance(); }

  void advance() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    tok_pos = pos;
    if (pos >= s.size()) {
      tok = Tok::End;
      return;
    }
    char c = s[pos];
    if (std::islower(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      text = s.substr(start, pos - start);
      tok = text == "true" ? Tok::True : text == "false" ? Tok::False : Tok::Atom;
      return;
    }
    switch (c) {
      case '!': ++pos; tok = Tok::Not; return;
      case '&': ++pos; tok = Tok::And; return;
      case '|': ++pos; tok = Tok::Or; return;
      case '(': ++pos; tok = Tok::LPar; return;
      case ')': ++pos; tok = Tok::RPar; return;
      case '[':
        if (pos + 1 < s.size() && s[pos + 1] == ']') {
          pos += 2;
          tok = Tok::Box;
          return;
        }
        throw ParseError("expected \"[]\"", pos);
      case '~':
        if (pos + 1 < s.size() && s[pos + 1] == '>') {
          pos += 2;
          tok = Tok::Sto;
          return;
        }
        throw ParseError("expected \"~>\"", pos);
      case '-':
        if (pos + 1 < s.size() && s[pos + 1] == '>') {
          pos += 2;
          tok = Tok::Imp;
          return;
        }
        throw ParseError("expected \"->\"", pos);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
  }
};

struct Parser {
  Lexer lx;
  explicit Parser(const std::string& s) : lx(s) {}

  Formula parse_all() {
    Formula f = imp_level();
    if (lx.tok != Tok::End) throw ParseError("trailing input", lx.tok_pos);
    return f;
  }

  Formula imp_level() {  // right-assoc ->
    Formula l = sto_level();
    if (lx.tok == Tok::Imp) {
      lx.advance();
      return Formula::imp(std::move(l), imp_level());
    }
    return l;
  }

  Formula sto_level() {  // right-assoc ~>
    Formula l = or_level();
    if (lx.tok == Tok::Sto) {
      lx.advance();
      return Formula::sto(std::move(l), sto_level());
    }
    return l;
  }

  Formula or_level() {  // left-assoc |
    Formula l = and_level();
    while (lx.tok == Tok::Or) {
      lx.advance();
      l = Formula::disj(std::move(l), and_level());
    }
    return l;
  }

  Formula and_level() {  // left-assoc &
    Formula l = prefix_level();
    while (lx.tok == Tok::And) {
      lx.advance();
      l = Formula::conj(std::move(l), prefix_level());
    }
    return l;
  }

  Formula prefix_level() {
    switch (lx.tok) {
      case Tok::Not:
        lx.advance();
        return Formula::neg(prefix_level());
      case Tok::Box:
        lx.advance();
        return Formula::box(prefix_level());
      case Tok::True:
        lx.advance();
        return Formula::top();
      case Tok::False:
        lx.advance();
        return Formula::bot();
      case Tok::Atom: {
        Formula f = Formula::atom(lx.text);
        lx.advance();
        return f;
      }
      case Tok::LPar: {
        lx.advance();
        Formula f = imp_level();
        if (lx.tok != Tok::RPar) throw ParseError("expected ')'", lx.tok_pos);
        lx.advance();
        return f;
      }
      default:
        throw ParseError("expected a formula", lx.tok_pos);
    }
  }
};

// binding strength: prefix 4 > & 3 > | 2 > ~> 1 > -> 0
int level_of(const Formula& f) {
  if (f.is_negation() || f.is_box()) return 4;
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Top:
    case Kind::Bot:
      return 5;
    case Kind::And: return 3;
    case Kind::Or: return 2;
    case Kind::Sto: return 1;
    case Kind::Imp: return 0;
  }
  return 5;
}

void print_rec(std::string& out, const Formula& f, int min_level) {
  int lv = level_of(f);
  bool paren = lv < min_level;
  if (paren) out += '(';
  if (f.is_negation()) {
    out += '!';
    print_rec(out, f.lhs(), 4);
  } else if (f.is_box()) {
    out += "[]";
    print_rec(out, f.rhs(), 4);
  } else {
    switch (f.kind()) {
      case Kind::Atom: out += f.atom_name(); break;
      case Kind::Top: out += "true"; break;
      case Kind::Bot: out += "false"; break;
      case Kind::And:
        print_rec(out, f.lhs(), 3);
        out += " & ";
        print_rec(out, f.rhs(), 4);
        break;
      case Kind::Or:
        print_rec(out, f.lhs(), 2);
        out += " | ";
        print_rec(out, f.rhs(), 3);
        break;
      case Kind::Sto:
        print_rec(out, f.lhs(), 2);
        out += " ~> ";
        print_rec(out, f.rhs(), 1);
        break;
      case Kind::Imp:
        print_rec(out, f.lhs(), 1);
        out += " -> ";
        print_rec(out, f.rhs(), 0);
        break;
    }
  }
  if (paren) out += ')';
}

}  // namespace

Formula parse(const std::string& text) { return Parser(text).parse_all(); }

std::string to_string(const Formula& f) {
  std::string out;
  print_rec(out, f, 0);
  return out;
}

Consecution parse_consecution(const std::string& text) {
  auto split_list = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
      if (c == sep) {
        parts.push_back(cur);
        cur.clear();
      } else
        cur += c;
    }
    parts.push_back(cur);
    return parts;
  };
  auto is_blank = [](const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isspace(c); });
  };

  size_t ts = text.find("|-");
  if (ts != std::string::npos) {
    Consecution c;
    c.conclusion = parse(text.substr(ts + 2));
    std::string lhs = text.substr(0, ts);
    if (!is_blank(lhs))
      for (const auto& part : split_list(lhs, ';'))
        if (!is_blank(part)) c.premises.insert(parse(part));
    return c;
  }

  size_t ar = text.find("=>");
  if (ar == std::string::npos)
    throw ParseError("expected \"|-\" or \"=>\" in consecution", 0);
  std::string lhs = text.substr(0, ar);
  size_t lb = lhs.find('{'), rb = lhs.find('}');
  if (lb == std::string::npos || rb == std::string::npos || rb < lb)
    throw ParseError("expected \"{...}\" before \"=>\"", 0);
  Consecution c;
  c.conclusion = parse(text.substr(ar + 2));
  std::string inner = lhs.substr(lb + 1, rb - lb - 1);
  if (!is_blank(inner))
    for (const auto& part : split_list(inner, ','))
      if (!is_blank(part)) c.premises.insert(parse(part));
  return c;
}

std::string to_string(const FormulaSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& f : s) {
    if (!first) out += ", ";
    first = false;
    out += to_string(f);
  }
  out += "}";
  return out;
}

std::string to_string(const Consecution& c) {
  return to_string(c.premises) + " => " + to_string(c.conclusion);
}

// --- syntactic operations ---------------------------------------------------

FormulaSet subformula_closure(const FormulaSet& s) {
  FormulaSet out;
  std::vector<Formula> stack(s.begin(), s.end());
  stack.push_back(Formula::top());
  while (!stack.empty()) {
    Formula f = stack.back();
    stack.pop_back();
    if (!out.insert(f).second) continue;
    switch (f.kind()) {
      case Kind::And:
      case Kind::Or:
      case Kind::Imp:
      case Kind::Sto:
        stack.push_back(f.lhs());
        stack.push_back(f.rhs());
        break;
      default:
        break;
    }
  }
  return out;
}

Formula single_negation(const Formula& f) {
  if (f.is_negation()) return f.lhs();
  return Formula::neg(f);
}

Formula single_box(const Formula& f) {
  if (f.is_box()) return f;
  return Formula::box(f);
}

FormulaSet close_under_single_negations(FormulaSet s) {
  for (bool changed = true; changed;) {
    changed = false;
    FormulaSet add;
    for (const auto& f : s) {
      Formula g = single_negation(f);
      if (!s.count(g)) add.insert(g);
    }
    for (const auto& f : add) changed |= s.insert(f).second;
  }
  return s;
}

FormulaSet close_under_single_boxes(FormulaSet s) {
  for (bool changed = true; changed;) {
    changed = false;
    FormulaSet add;
    for (const auto& f : s) {
      Formula g = single_box(f);
      if (!s.count(g)) add.insert(g);
    }
    for (const auto& f : add) changed |= s.insert(f).second;
  }
  return s;
}

Formula apply_substitution(const Formula& f, const Substitution& sigma) {
  switch (f.kind()) {
    case Kind::Atom: {
      auto it = sigma.find(f.atom_name());
      return it == sigma.end() ? f : it->second;
    }
    case Kind::Top:
    case Kind::Bot:
      return f;
    case Kind::And:
      return Formula::conj(apply_substitution(f.lhs(), sigma), apply_substitution(f.rhs(), sigma));
    case Kind::Or:
      return Formula::disj(apply_substitution(f.lhs(), sigma), apply_substitution(f.rhs(), sigma));
    case Kind::Imp:
      return Formula::imp(apply_substitution(f.lhs(), sigma), apply_substitution(f.rhs(), sigma));
    case Kind::Sto:
      return Formula::sto(apply_substitution(f.lhs(), sigma), apply_substitution(f.rhs(), sigma));
  }
  return f;
}

FormulaSet apply_substitution(const FormulaSet& s, const Substitution& sigma) {
  FormulaSet out;
  for (const auto& f : s) out.insert(apply_substitution(f, sigma));
  return out;
}

Substitution compose(const Substitution& first, const Substitution& then) {
  Substitution out = then;
  for (const auto& [k, v] : first) out[k] = apply_substitution(v, then);
  return out;
}

Formula stability_translation(const Formula& f, const std::string& p) {
  if (atoms_of(f).count(p))
    throw Error("stability translation: atom '" + p + "' occurs in the formula");
  Formula pf = Formula::atom(p);
  auto rec = [&pf](const auto& self, const Formula& g) -> Formula {
    switch (g.kind()) {
      case Kind::Atom:
      case Kind::Top:
      case Kind::Bot:
        return g;
      case Kind::And:
        return Formula::conj(self(self, g.lhs()), self(self, g.rhs()));
      case Kind::Or:
        return Formula::disj(self(self, g.lhs()), self(self, g.rhs()));
      case Kind::Imp:
        return Formula::imp(self(self, g.lhs()), self(self, g.rhs()));
      case Kind::Sto:
        return Formula::sto(Formula::imp(pf, self(self, g.lhs())),
                            Formula::imp(pf, self(self, g.rhs())));
    }
    return g;
  };
  return rec(rec, f);
}

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    switch (g.kind()) {
      case Kind::Atom:
        out.insert(g.atom_name());
        break;
      case Kind::And:
      case Kind::Or:
      case Kind::Imp:
      case Kind::Sto:
        stack.push_back(g.lhs());
        stack.push_back(g.rhs());
        break;
      default:
        break;
    }
  }
  return out;
}

std::set<std::string> atoms_of(const Consecution& c) {
  std::set<std::string> out = atoms_of(c.conclusion);
  for (const auto& f : c.premises) {
    auto a = atoms_of(f);
    out.insert(a.begin(), a.end());
  }
  return out;
}

namespace {

bool match_rec(const Formula& schema, const Formula& target, Substitution& sigma) {
  switch (schema.kind()) {
    case Kind::Atom: {
      auto [it, inserted] = sigma.emplace(schema.atom_name(), target);
      return inserted || it->second == target;
    }
    case Kind::Top:
    case Kind::Bot:
      return schema.kind() == target.kind();
    default:
      return schema.kind() == target.kind() && match_rec(schema.lhs(), target.lhs(), sigma) &&
             match_rec(schema.rhs(), target.rhs(), sigma);
  }
}

}  // namespace

std::optional<Substitution> match_instance(const Formula& schema, const Formula& target) {
  Substitution sigma;
  if (match_rec(schema, target, sigma)) return sigma;
  return std::nullopt;
}

}  // namespace hlf
