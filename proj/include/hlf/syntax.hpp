#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlf {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, size_t pos)
      : Error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  size_t position;
};

enum class Kind : uint8_t { Atom, Top, Bot, And, Or, Imp, Sto };

struct FormulaNode;

// Immutable formula tree over atoms, true, false, &, |, ->, and the strict
// implication ~>. Negation and box are not constructors:
//   !a  is  a -> false        []a  is  true ~> a
// and the printer renders both back as sugar.
class Formula {
public:
  Formula();

  static Formula atom(std::string name);
  static Formula top();
  static Formula bot();
  static Formula conj(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
  static Formula imp(Formula a, Formula b) { return binary(Kind::Imp, std::move(a), std::move(b)); }
  static Formula sto(Formula a, Formula b) { return binary(Kind::Sto, std::move(a), std::move(b)); }
  static Formula neg(Formula a) { return imp(std::move(a), bot()); }
  static Formula box(Formula a) { return sto(top(), std::move(a)); }
  static Formula iff(Formula a, Formula b) { return conj(imp(a, b), imp(b, a)); }

  Kind kind() const;
  const std::string& atom_name() const;
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool is_negation() const { return kind() == Kind::Imp && rhs().kind() == Kind::Bot; }
  bool is_box() const { return kind() == Kind::Sto && lhs().kind() == Kind::Top; }

  size_t hash() const;

  // lexicographic on the constructor tag order Atom < Top < Bot < And < Or < Imp < Sto
  static int compare(const Formula& a, const Formula& b);

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.n_ == b.n_) return true;
    if (a.hash() != b.hash()) return false;
    return compare(a, b) == 0;
  }
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

private:
  explicit Formula(std::shared_ptr<const FormulaNode> n) : n_(std::move(n)) {}
  static Formula binary(Kind k, Formula a, Formula b);
  std::shared_ptr<const FormulaNode> n_;
};

struct FormulaNode {
  Kind kind = Kind::Top;
  std::string atom;
  std::optional<Formula> lhs, rhs;
  size_t hash = 0;
};

inline Kind Formula::kind() const { return n_->kind; }
inline size_t Formula::hash() const { return n_->hash; }
inline const std::string& Formula::atom_name() const {
  assert(kind() == Kind::Atom);
  return n_->atom;
}
inline const Formula& Formula::lhs() const {
  assert(n_->lhs);
  return *n_->lhs;
}
inline const Formula& Formula::rhs() const {
  assert(n_->rhs);
  return *n_->rhs;
}

struct FormulaHash {
  size_t operator()(const Formula& f) const { return f.hash(); }
};

using FormulaSet = std::set<Formula>;
using Substitution = std::map<std::string, Formula>;

// A derivability judgment Gamma => phi.
struct Consecution {
  FormulaSet premises;
  Formula conclusion;

  friend bool operator==(const Consecution& a, const Consecution& b) {
    return a.premises == b.premises && a.conclusion == b.conclusion;
  }
  friend bool operator<(const Consecution& a, const Consecution& b) {
    if (a.premises != b.premises) return a.premises < b.premises;
    return a.conclusion < b.conclusion;
  }
};

// --- parsing and printing ---------------------------------------------------

// Grammar: atoms [a-z][a-zA-Z0-9_]*, constants `true`/`false`, prefix `!` and
// `[]`, infix `&`, `|`, `~>`, `->` by decreasing binding strength; the two
// implications right-associative, `&`/`|` left-associative.
Formula parse(const std::string& text);
std::string to_string(const Formula& f);

// "{p, p->q} => q" (brace form) or "p; p->q |- q" (turnstile form)
Consecution parse_consecution(const std::string& text);
std::string to_string(const Consecution& c);

std::string to_string(const FormulaSet& s);

// --- syntactic operations ---------------------------------------------------

// smallest superset of s plus truth that is closed under immediate subformulas
FormulaSet subformula_closure(const FormulaSet& s);

// ~phi: strips one negation if phi is one, negates otherwise
Formula single_negation(const Formula& f);

// boxed phi: phi itself when already of box shape, true ~> phi otherwise
Formula single_box(const Formula& f);

FormulaSet close_under_single_negations(FormulaSet s);
FormulaSet close_under_single_boxes(FormulaSet s);

Formula apply_substitution(const Formula& f, const Substitution& sigma);
FormulaSet apply_substitution(const FormulaSet& s, const Substitution& sigma);

// substitution equal to applying `first`, then `then`
Substitution compose(const Substitution& first, const Substitution& then);

// Relativizing translation: commutes with atoms and intuitionistic
// connectives, and maps a ~> b to (p -> tr(a)) ~> (p -> tr(b)).
// Throws if p occurs in f.
Formula stability_translation(const Formula& f, const std::string& p);

std::set<std::string> atoms_of(const Formula& f);
std::set<std::string> atoms_of(const Consecution& c);

// One-way matching of `target` against `schema`, treating the schema's atoms
// as pattern variables. Returns the witnessing substitution if any.
std::optional<Substitution> match_instance(const Formula& schema, const Formula& target);

}  // namespace hlf
