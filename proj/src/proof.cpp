#include "hlf/proof.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace hlf {

const std::map<std::string, Formula>& core_axioms() {
  static const std::map<std::string, Formula> table = {
      {"i1", parse("p -> (q -> p)")},
      {"i2", parse("(p -> (q -> r)) -> ((p -> q) -> (p -> r))")},
      {"i3", parse("p & q -> p")},
      {"i4", parse("p & q -> q")},
      {"i5", parse("p -> (q -> p & q)")},
      {"i6", parse("p -> p | q")},
      {"i7", parse("q -> p | q")},
      {"i8", parse("(p -> r) -> ((q -> r) -> (p | q -> r))")},
      {"i9", parse("false -> p")},
      {"i10", parse("p -> p")},
      {"top", parse("true")},
      {"ka", parse("(p ~> q) & (p ~> r) -> (p ~> q & r)")},
      {"tr", parse("(p ~> q) & (q ~> r) -> (p ~> r)")},
  };
  return table;
}

const std::map<std::string, Formula>& extension_axioms() {
  static const std::map<std::string, Formula> table = {
      {"em", parse("p | !p")},
      {"tbox", parse("[]p -> p")},
      {"4a", parse("p ~> []p")},
      {"str", parse("(p -> q) -> (p ~> q)")},
      {"pa", parse("(p ~> q) -> [](p ~> q)")},
      {"di", parse("(p ~> r) & (q ~> r) -> ((p | q) ~> r)")},
  };
  return table;
}

AxiomBase AxiomBase::of(std::initializer_list<std::string> names) {
  AxiomBase b;
  for (const auto& n : names) {
    if (!extension_axioms().count(n)) throw Error("unknown axiom name: " + n);
    b.named.insert(n);
  }
  return b;
}

std::vector<std::pair<std::string, Formula>> AxiomBase::formulas() const {
  std::vector<std::pair<std::string, Formula>> out;
  for (const auto& n : named) out.emplace_back(n, extension_axioms().at(n));
  for (const auto& [n, f] : user) out.emplace_back(n, f);
  return out;
}

std::string AxiomBase::key() const {
  std::string k;
  for (const auto& n : named) k += n + "+";
  for (const auto& [n, f] : user) k += n + "=" + to_string(f) + "+";
  return k;
}

AxiomBase parse_axiom_base(const std::string& text) {
  AxiomBase base;
  std::string cur;
  auto flush = [&] {
    size_t a = cur.find_first_not_of(" \t");
    if (a == std::string::npos) {
      cur.clear();
      return;
    }
    size_t b = cur.find_last_not_of(" \t");
    std::string tok = cur.substr(a, b - a + 1);
    cur.clear();
    if (tok.empty() || tok == "none") return;
    size_t eq = tok.find('=');
    if (eq != std::string::npos) {
      std::string name = tok.substr(0, eq);
      while (!name.empty() && name.back() == ' ') name.pop_back();
      base.user[name] = parse(tok.substr(eq + 1));
      return;
    }
    if (!extension_axioms().count(tok)) throw Error("unknown axiom name: " + tok);
    base.named.insert(tok);
  };
  for (char c : text) {
    if (c == ',')
      flush();
    else
      cur += c;
  }
  flush();
  return base;
}

Formula axiom_formula(const std::string& name, const AxiomBase& base) {
  if (auto it = core_axioms().find(name); it != core_axioms().end()) return it->second;
  if (base.named.count(name)) return extension_axioms().at(name);
  if (auto it = base.user.find(name); it != base.user.end()) return it->second;
  throw Error("axiom '" + name + "' is not in the active base");
}

// --- derivation nodes ----------------------------------------------------------

const char* rule_name(RuleTag t) {
  switch (t) {
    case RuleTag::Ax: return "ax";
    case RuleTag::El: return "el";
    case RuleTag::MP: return "mp";
    case RuleTag::Na: return "na";
    case RuleTag::Weaken: return "weaken";
    case RuleTag::Cut: return "cut";
    case RuleTag::Subst: return "subst";
    case RuleTag::DedIntro: return "ded-intro";
    case RuleTag::DedElim: return "ded-elim";
  }
  return "?";
}

bool is_macro(RuleTag t) {
  return t == RuleTag::Weaken || t == RuleTag::Cut || t == RuleTag::Subst ||
         t == RuleTag::DedIntro || t == RuleTag::DedElim;
}

namespace {

DerivPtr make_node(RuleTag tag, std::optional<Consecution> concl, std::string axiom,
                   Substitution sigma, Formula member, std::vector<DerivPtr> children) {
  auto d = std::make_shared<Derivation>();
  d->tag = tag;
  d->declared = std::move(concl);
  d->axiom = std::move(axiom);
  d->sigma = std::move(sigma);
  d->member = std::move(member);
  d->children = std::move(children);
  return d;
}

}  // namespace

DerivPtr Derivation::ax(std::string name, Substitution sigma, std::optional<Consecution> concl) {
  return make_node(RuleTag::Ax, std::move(concl), std::move(name), std::move(sigma), {}, {});
}
DerivPtr Derivation::el(Formula member, std::optional<Consecution> concl) {
  return make_node(RuleTag::El, std::move(concl), {}, {}, std::move(member), {});
}
DerivPtr Derivation::mp(DerivPtr minor, DerivPtr major, std::optional<Consecution> concl) {
  return make_node(RuleTag::MP, std::move(concl), {}, {}, {}, {std::move(minor), std::move(major)});
}
DerivPtr Derivation::na(DerivPtr child, std::optional<Consecution> concl) {
  return make_node(RuleTag::Na, std::move(concl), {}, {}, {}, {std::move(child)});
}
DerivPtr Derivation::weaken(DerivPtr child, Consecution concl) {
  return make_node(RuleTag::Weaken, std::move(concl), {}, {}, {}, {std::move(child)});
}
DerivPtr Derivation::cut(std::vector<DerivPtr> children, Consecution concl) {
  return make_node(RuleTag::Cut, std::move(concl), {}, {}, {}, std::move(children));
}
DerivPtr Derivation::subst(Substitution sigma, DerivPtr child, Consecution concl) {
  return make_node(RuleTag::Subst, std::move(concl), {}, std::move(sigma), {}, {std::move(child)});
}
DerivPtr Derivation::ded_intro(DerivPtr child, Consecution concl) {
  return make_node(RuleTag::DedIntro, std::move(concl), {}, {}, {}, {std::move(child)});
}
DerivPtr Derivation::ded_elim(DerivPtr child, Consecution concl) {
  return make_node(RuleTag::DedElim, std::move(concl), {}, {}, {}, {std::move(child)});
}

// --- checker ----------------------------------------------------------------

std::string CheckResult::path_string() const {
  std::string s = "root";
  for (int i : path) s += "." + std::to_string(i);
  return s;
}

namespace {

struct CheckFail {
  std::string message;
  std::vector<int> path;
};

struct Checker {
  const AxiomBase& base;
  bool allow_macros;
  std::vector<int> path;

  [[noreturn]] void fail(const std::string& msg) { throw CheckFail{msg, path}; }

  // the conclusion a child would claim, when it is determined without recursion
  std::optional<Formula> resolved_formula(const DerivPtr& d) {
    if (d->declared) return d->declared->conclusion;
    if (d->tag == RuleTag::El) return d->member;
    if (d->tag == RuleTag::Ax) {
      auto f = try_axiom(d->axiom);
      if (!f) return std::nullopt;
      return apply_substitution(*f, d->sigma);
    }
    return std::nullopt;
  }

  std::optional<Formula> try_axiom(const std::string& name) {
    try {
      return axiom_formula(name, base);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  DerivPtr visit(const DerivPtr& d, const Consecution& expected) {
    if (!d) fail("missing node");
    if (d->declared && !(*d->declared == expected))
      fail("declared conclusion " + to_string(*d->declared) + " differs from required " +
           to_string(expected));
    if (is_macro(d->tag) && !allow_macros)
      fail(std::string("macro rule '") + rule_name(d->tag) + "' not allowed here");

    switch (d->tag) {
      case RuleTag::El: {
        if (!expected.premises.count(d->member))
          fail("El witness " + to_string(d->member) + " is not among the premises");
        if (d->member != expected.conclusion)
          fail("El conclusion must equal the witness formula");
        return Derivation::el(d->member, expected);
      }
      case RuleTag::Ax: {
        auto f = try_axiom(d->axiom);
        if (!f) fail("axiom '" + d->axiom + "' is not in the active base");
        Formula inst = apply_substitution(*f, d->sigma);
        if (inst != expected.conclusion)
          fail("axiom instance " + to_string(inst) + " does not match conclusion " +
               to_string(expected.conclusion));
        return Derivation::ax(d->axiom, d->sigma, expected);
      }
      case RuleTag::MP: {
        if (d->children.size() != 2) fail("MP needs exactly two children");
        std::optional<Formula> middle;
        if (auto f2 = resolved_formula(d->children[1])) {
          if (f2->kind() != Kind::Imp)
            fail("major premise of MP is not an implication: " + to_string(*f2));
          if (f2->rhs() != expected.conclusion)
            fail("major premise " + to_string(*f2) + " does not yield " +
                 to_string(expected.conclusion));
          middle = f2->lhs();
        } else if (auto f1 = resolved_formula(d->children[0])) {
          middle = *f1;
        } else {
          fail("cannot determine the MP cut formula; declare :concl on a child");
        }
        path.push_back(0);
        DerivPtr c1 = visit(d->children[0], Consecution{expected.premises, *middle});
        path.back() = 1;
        DerivPtr c2 = visit(d->children[1],
                            Consecution{expected.premises,
                                        Formula::imp(*middle, expected.conclusion)});
        path.pop_back();
        return Derivation::mp(std::move(c1), std::move(c2), expected);
      }
      case RuleTag::Na: {
        if (d->children.size() != 1) fail("Na needs exactly one child");
        if (expected.conclusion.kind() != Kind::Sto)
          fail("Na conclusion must be a strict implication");
        path.push_back(0);
        DerivPtr c = visit(d->children[0],
                           Consecution{{},
                                       Formula::imp(expected.conclusion.lhs(),
                                                    expected.conclusion.rhs())});
        path.pop_back();
        return Derivation::na(std::move(c), expected);
      }
      case RuleTag::Weaken: {
        if (d->children.size() != 1) fail("weaken needs exactly one child");
        const auto& c = d->children[0];
        if (!c->declared) fail("the child of weaken must declare :concl");
        if (c->declared->conclusion != expected.conclusion)
          fail("weaken does not change the conclusion formula");
        if (!std::includes(expected.premises.begin(), expected.premises.end(),
                           c->declared->premises.begin(), c->declared->premises.end()))
          fail("weaken premises must contain the child's premises");
        path.push_back(0);
        DerivPtr cc = visit(c, *c->declared);
        path.pop_back();
        return Derivation::weaken(std::move(cc), expected);
      }
      case RuleTag::Cut: {
        if (d->children.empty()) fail("cut needs at least the main child");
        const auto& main = d->children[0];
        if (!main->declared) fail("the main (first) child of cut must declare :concl");
        if (main->declared->conclusion != expected.conclusion)
          fail("cut does not change the conclusion formula");
        const FormulaSet& delta = main->declared->premises;
        std::map<Formula, size_t> provided;
        for (size_t i = 1; i < d->children.size(); ++i) {
          auto f = resolved_formula(d->children[i]);
          if (!f) fail("cut side premise " + std::to_string(i) + " must declare :concl");
          if (!delta.count(*f))
            fail("cut side premise proves " + to_string(*f) +
                 ", which is not a premise of the main child");
          provided[*f] = i;
        }
        for (const auto& dlt : delta)
          if (!expected.premises.count(dlt) && !provided.count(dlt))
            fail("cut premise " + to_string(dlt) + " is neither proved nor available");
        std::vector<DerivPtr> kids(d->children.size());
        path.push_back(0);
        kids[0] = visit(main, *main->declared);
        for (size_t i = 1; i < d->children.size(); ++i) {
          path.back() = static_cast<int>(i);
          auto f = *resolved_formula(d->children[i]);
          kids[i] = visit(d->children[i], Consecution{expected.premises, f});
        }
        path.pop_back();
        return make_node(RuleTag::Cut, expected, {}, {}, {}, std::move(kids));
      }
      case RuleTag::Subst: {
        if (d->children.size() != 1) fail("subst needs exactly one child");
        const auto& c = d->children[0];
        if (!c->declared) fail("the child of subst must declare :concl");
        Consecution mapped{apply_substitution(c->declared->premises, d->sigma),
                           apply_substitution(c->declared->conclusion, d->sigma)};
        if (!(mapped == expected))
          fail("substituted conclusion " + to_string(mapped) + " does not match " +
               to_string(expected));
        path.push_back(0);
        DerivPtr cc = visit(c, *c->declared);
        path.pop_back();
        return Derivation::subst(d->sigma, std::move(cc), expected);
      }
      case RuleTag::DedIntro: {
        if (d->children.size() != 1) fail("ded-intro needs exactly one child");
        if (expected.conclusion.kind() != Kind::Imp)
          fail("ded-intro conclusion must be an implication");
        FormulaSet prem = expected.premises;
        prem.insert(expected.conclusion.lhs());
        path.push_back(0);
        DerivPtr c = visit(d->children[0], Consecution{prem, expected.conclusion.rhs()});
        path.pop_back();
        return Derivation::ded_intro(std::move(c), expected);
      }
      case RuleTag::DedElim: {
        if (d->children.size() != 1) fail("ded-elim needs exactly one child");
        const auto& c = d->children[0];
        if (!c->declared) fail("the child of ded-elim must declare :concl");
        const Formula& f = c->declared->conclusion;
        if (f.kind() != Kind::Imp) fail("ded-elim child must conclude an implication");
        if (f.rhs() != expected.conclusion)
          fail("ded-elim conclusion must be the consequent of the child's implication");
        FormulaSet prem = c->declared->premises;
        prem.insert(f.lhs());
        if (prem != expected.premises)
          fail("ded-elim premises must be the child's plus the antecedent");
        path.push_back(0);
        DerivPtr cc = visit(c, *c->declared);
        path.pop_back();
        return Derivation::ded_elim(std::move(cc), expected);
      }
    }
    fail("unreachable");
  }
};

}  // namespace

CheckResult check(const DerivPtr& d, const AxiomBase& base, bool allow_macros) {
  CheckResult res;
  if (!d) {
    res.message = "empty derivation";
    return res;
  }
  if (!d->declared) {
    res.message = "the root node must declare :concl";
    return res;
  }
  Checker ck{base, allow_macros, {}};
  try {
    res.annotated = ck.visit(d, *d->declared);
    res.ok = true;
  } catch (const CheckFail& f) {
    res.message = f.message;
    res.path = f.path;
  }
  return res;
}

// --- macro elaboration --------------------------------------------------------

namespace {

// All trees below are annotated (every node carries its conclusion) and
// macro-free.

const Consecution& concl_of(const DerivPtr& d) { return *d->declared; }

DerivPtr enlarge(const DerivPtr& d, const FormulaSet& prem) {
  Consecution c{prem, concl_of(d).conclusion};
  switch (d->tag) {
    case RuleTag::El: return Derivation::el(d->member, c);
    case RuleTag::Ax: return Derivation::ax(d->axiom, d->sigma, c);
    case RuleTag::MP:
      return Derivation::mp(enlarge(d->children[0], prem), enlarge(d->children[1], prem), c);
    case RuleTag::Na: return Derivation::na(d->children[0], c);
    default: throw Error("enlarge applied to a macro node");
  }
}

DerivPtr subst_tree(const DerivPtr& d, const Substitution& sigma) {
  Consecution c{apply_substitution(concl_of(d).premises, sigma),
                apply_substitution(concl_of(d).conclusion, sigma)};
  switch (d->tag) {
    case RuleTag::El: return Derivation::el(apply_substitution(d->member, sigma), c);
    case RuleTag::Ax: return Derivation::ax(d->axiom, compose(d->sigma, sigma), c);
    case RuleTag::MP:
      return Derivation::mp(subst_tree(d->children[0], sigma), subst_tree(d->children[1], sigma),
                            c);
    case RuleTag::Na: return Derivation::na(subst_tree(d->children[0], sigma), c);
    default: throw Error("subst applied to a macro node");
  }
}

DerivPtr splice(const DerivPtr& d, const std::map<Formula, DerivPtr>& subs,
                const FormulaSet& prem) {
  Consecution c{prem, concl_of(d).conclusion};
  switch (d->tag) {
    case RuleTag::El: {
      if (prem.count(d->member)) return Derivation::el(d->member, c);
      auto it = subs.find(d->member);
      if (it == subs.end()) throw Error("cut: no proof supplied for " + to_string(d->member));
      return it->second;
    }
    case RuleTag::Ax: return Derivation::ax(d->axiom, d->sigma, c);
    case RuleTag::MP:
      return Derivation::mp(splice(d->children[0], subs, prem),
                            splice(d->children[1], subs, prem), c);
    case RuleTag::Na: return Derivation::na(d->children[0], c);
    default: throw Error("cut applied to a macro node");
  }
}

// deduction theorem: from a proof of prem + {phi} => psi build prem => phi -> psi
DerivPtr ded(const DerivPtr& d, const Formula& phi, const FormulaSet& prem) {
  const Formula& psi = concl_of(d).conclusion;
  Consecution c{prem, Formula::imp(phi, psi)};
  switch (d->tag) {
    case RuleTag::El: {
      if (d->member == phi)
        return Derivation::ax("i10", {{"p", phi}}, c);
      return Derivation::mp(
          Derivation::el(d->member, Consecution{prem, d->member}),
          Derivation::ax("i1", {{"p", d->member}, {"q", phi}},
                         Consecution{prem, Formula::imp(d->member, Formula::imp(phi, d->member))}),
          c);
    }
    case RuleTag::Ax: {
      return Derivation::mp(
          Derivation::ax(d->axiom, d->sigma, Consecution{prem, psi}),
          Derivation::ax("i1", {{"p", psi}, {"q", phi}},
                         Consecution{prem, Formula::imp(psi, Formula::imp(phi, psi))}),
          c);
    }
    case RuleTag::MP: {
      const Formula& alpha = concl_of(d->children[0]).conclusion;
      const Formula& beta = psi;
      DerivPtr t1 = ded(d->children[0], phi, prem);
      DerivPtr t2 = ded(d->children[1], phi, prem);
      Formula ia = Formula::imp(phi, alpha), ib = Formula::imp(phi, beta);
      DerivPtr k = Derivation::ax(
          "i2", {{"p", phi}, {"q", alpha}, {"r", beta}},
          Consecution{prem, Formula::imp(Formula::imp(phi, Formula::imp(alpha, beta)),
                                         Formula::imp(ia, ib))});
      DerivPtr step = Derivation::mp(t2, k, Consecution{prem, Formula::imp(ia, ib)});
      return Derivation::mp(t1, step, c);
    }
    case RuleTag::Na: {
      return Derivation::mp(
          Derivation::na(d->children[0], Consecution{prem, psi}),
          Derivation::ax("i1", {{"p", psi}, {"q", phi}},
                         Consecution{prem, Formula::imp(psi, Formula::imp(phi, psi))}),
          c);
    }
    default: throw Error("deduction applied to a macro node");
  }
}

DerivPtr elab(const DerivPtr& d) {
  std::vector<DerivPtr> kids;
  kids.reserve(d->children.size());
  for (const auto& c : d->children) kids.push_back(elab(c));
  const Consecution& c = concl_of(d);
  switch (d->tag) {
    case RuleTag::El:
    case RuleTag::Ax:
      return d;
    case RuleTag::MP: return Derivation::mp(kids[0], kids[1], c);
    case RuleTag::Na: return Derivation::na(kids[0], c);
    case RuleTag::Weaken: return enlarge(kids[0], c.premises);
    case RuleTag::Cut: {
      std::map<Formula, DerivPtr> subs;
      for (size_t i = 1; i < kids.size(); ++i)
        subs[concl_of(kids[i]).conclusion] = kids[i];
      return splice(kids[0], subs, c.premises);
    }
    case RuleTag::Subst: return subst_tree(kids[0], d->sigma);
    case RuleTag::DedIntro: return ded(kids[0], c.conclusion.lhs(), c.premises);
    case RuleTag::DedElim: {
      const Formula& f = concl_of(kids[0]).conclusion;  // phi -> psi
      DerivPtr widened = enlarge(kids[0], c.premises);
      return Derivation::mp(Derivation::el(f.lhs(), Consecution{c.premises, f.lhs()}), widened,
                            c);
    }
  }
  throw Error("unreachable");
}

}  // namespace

DerivPtr elaborate_macro(const DerivPtr& d, const AxiomBase& base) {
  CheckResult res = check(d, base, true);
  if (!res) throw Error("cannot elaborate: " + res.message + " at " + res.path_string());
  return elab(res.annotated);
}

DerivPtr substitute_derivation(const DerivPtr& d, const Substitution& sigma,
                               const AxiomBase& base) {
  CheckResult res = check(d, base, false);
  if (!res) throw Error("cannot substitute into an invalid derivation: " + res.message);
  return subst_tree(res.annotated, sigma);
}

// --- derivation files ----------------------------------------------------------

namespace {

struct SExpr {
  enum Type { List, Sym, Str } type = List;
  std::string text;
  std::vector<SExpr> items;
};

struct SReader {
  const std::string& s;
  size_t pos = 0;

  explicit SReader(const std::string& str) : s(str) {}

  void skip() {
    for (;;) {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos < s.size() && s[pos] == ';') {
        while (pos < s.size() && s[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
  }

  SExpr read() {
    skip();
    if (pos >= s.size()) throw ParseError("unexpected end of derivation file", pos);
    char c = s[pos];
    if (c == '(') {
      ++pos;
      SExpr e;
      e.type = SExpr::List;
      for (;;) {
        skip();
        if (pos >= s.size()) throw ParseError("unclosed '('", pos);
        if (s[pos] == ')') {
          ++pos;
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == '"') {
      ++pos;
      SExpr e;
      e.type = SExpr::Str;
      while (pos < s.size() && s[pos] != '"') e.text += s[pos++];
      if (pos >= s.size()) throw ParseError("unclosed string", pos);
      ++pos;
      return e;
    }
    SExpr e;
    e.type = SExpr::Sym;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
           s[pos] != '(' && s[pos] != ')' && s[pos] != '"' && s[pos] != ';')
      e.text += s[pos++];
    if (e.text.empty()) throw ParseError("unexpected character in derivation file", pos);
    return e;
  }
};

Substitution read_alist(const SExpr& e) {
  if (e.type != SExpr::List) throw Error("derivation file: expected a substitution alist");
  Substitution sigma;
  for (const auto& pair : e.items) {
    if (pair.type != SExpr::List || pair.items.size() != 3 || pair.items[0].type != SExpr::Sym ||
        pair.items[1].text != "." || pair.items[2].type != SExpr::Str)
      throw Error("derivation file: substitution entries look like (p . \"formula\")");
    sigma[pair.items[0].text] = parse(pair.items[2].text);
  }
  return sigma;
}

DerivPtr node_from_sexpr(const SExpr& e) {
  if (e.type != SExpr::List || e.items.empty() || e.items[0].type != SExpr::Sym)
    throw Error("derivation file: expected a (tag ...) node");
  const std::string& tag = e.items[0].text;

  std::optional<Consecution> concl;
  std::vector<const SExpr*> pos;
  for (size_t i = 1; i < e.items.size(); ++i) {
    if (e.items[i].type == SExpr::Sym && e.items[i].text == ":concl") {
      if (i + 1 >= e.items.size() || e.items[i + 1].type != SExpr::Str)
        throw Error("derivation file: :concl expects a string");
      concl = parse_consecution(e.items[i + 1].text);
      ++i;
    } else {
      pos.push_back(&e.items[i]);
    }
  }

  auto want = [&](size_t n) {
    if (pos.size() != n)
      throw Error("derivation file: '" + tag + "' expects " + std::to_string(n) + " argument(s)");
  };

  if (tag == "ax") {
    want(2);
    if (pos[0]->type != SExpr::Str) throw Error("derivation file: ax expects an axiom name");
    return Derivation::ax(pos[0]->text, read_alist(*pos[1]), concl);
  }
  if (tag == "el") {
    want(1);
    if (pos[0]->type != SExpr::Str) throw Error("derivation file: el expects a formula string");
    return Derivation::el(parse(pos[0]->text), concl);
  }
  if (tag == "mp") {
    want(2);
    return Derivation::mp(node_from_sexpr(*pos[0]), node_from_sexpr(*pos[1]), concl);
  }
  if (tag == "na") {
    want(1);
    return Derivation::na(node_from_sexpr(*pos[0]), concl);
  }
  auto need_concl = [&]() -> Consecution {
    if (!concl) throw Error("derivation file: '" + tag + "' must declare :concl");
    return *concl;
  };
  if (tag == "weaken") {
    want(1);
    return Derivation::weaken(node_from_sexpr(*pos[0]), need_concl());
  }
  if (tag == "cut") {
    if (pos.empty()) throw Error("derivation file: cut expects children");
    std::vector<DerivPtr> kids;
    for (const auto* p : pos) kids.push_back(node_from_sexpr(*p));
    return Derivation::cut(std::move(kids), need_concl());
  }
  if (tag == "subst") {
    want(2);
    Substitution sigma = read_alist(*pos[0]);
    return Derivation::subst(std::move(sigma), node_from_sexpr(*pos[1]), need_concl());
  }
  if (tag == "ded-intro") {
    want(1);
    return Derivation::ded_intro(node_from_sexpr(*pos[0]), need_concl());
  }
  if (tag == "ded-elim") {
    want(1);
    return Derivation::ded_elim(node_from_sexpr(*pos[0]), need_concl());
  }
  throw Error("derivation file: unknown rule tag '" + tag + "'");
}

void write_rec(std::string& out, const DerivPtr& d, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  out += pad + "(" + rule_name(d->tag);
  if (d->tag == RuleTag::Ax) {
    out += " \"" + d->axiom + "\" (";
    bool first = true;
    for (const auto& [k, v] : d->sigma) {
      if (!first) out += " ";
      first = false;
      out += "(" + k + " . \"" + to_string(v) + "\")";
    }
    out += ")";
  } else if (d->tag == RuleTag::El) {
    out += " \"" + to_string(d->member) + "\"";
  } else if (d->tag == RuleTag::Subst) {
    out += " (";
    bool first = true;
    for (const auto& [k, v] : d->sigma) {
      if (!first) out += " ";
      first = false;
      out += "(" + k + " . \"" + to_string(v) + "\")";
    }
    out += ")";
  }
  for (const auto& c : d->children) {
    out += "\n";
    write_rec(out, c, indent + 1);
  }
  if (d->declared) out += "\n" + pad + "  :concl \"" + to_string(*d->declared) + "\"";
  out += ")";
}

}  // namespace

DerivPtr parse_derivation(const std::string& text) {
  SReader r(text);
  SExpr e = r.read();
  r.skip();
  if (r.pos < text.size()) throw ParseError("trailing input in derivation file", r.pos);
  return node_from_sexpr(e);
}

DerivPtr read_derivation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open derivation file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_derivation(buf.str());
}

std::string write_derivation(const DerivPtr& d) {
  std::string out;
  write_rec(out, d, 0);
  out += "\n";
  return out;
}

// --- fixtures ------------------------------------------------------------------

std::vector<Fixture> fixture_library(const std::string& fixtures_dir) {
  struct Spec {
    const char* name;
    const char* file;
    AxiomBase base;
  };
  const std::vector<Spec> specs = {
      {"bl", "bl.deriv", {}},
      {"lb", "lb.deriv", {}},
      {"5.8a", "lem58a.deriv", AxiomBase::of({"tbox"})},
      {"5.8b", "lem58b.deriv", AxiomBase::of({"4a"})},
      {"trchain", "trchain.deriv", AxiomBase::of({"4a"})},
  };
  std::vector<Fixture> out;
  for (const auto& s : specs) {
    DerivPtr d = read_derivation_file(fixtures_dir + "/derivations/" + s.file);
    CheckResult res = check(d, s.base, true);
    if (!res)
      throw Error(std::string("fixture '") + s.name + "' does not check: " + res.message +
                  " at " + res.path_string());
    out.push_back(Fixture{s.name, s.base, res.annotated, *d->declared});
  }
  return out;
}

}  // namespace hlf
