#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hlf/syntax.hpp"

namespace hlf {

// Axioms available to every derivation: an intuitionistic Hilbert base
// (i1..i10 plus "top"), and the two strict-implication axioms
//   ka: ((p ~> q) & (p ~> r)) -> (p ~> (q & r))
//   tr: ((p ~> q) & (q ~> r)) -> (p ~> r)
const std::map<std::string, Formula>& core_axioms();

// Named extension axioms: em, tbox, 4a, str, pa, di.
const std::map<std::string, Formula>& extension_axioms();

struct AxiomBase {
  std::set<std::string> named;          // subset of extension_axioms()
  std::map<std::string, Formula> user;  // extra axioms by label

  static AxiomBase of(std::initializer_list<std::string> names);
  std::vector<std::pair<std::string, Formula>> formulas() const;  // named + user
  std::string key() const;  // stable cache key
};

// parses "4a,tbox" or "em, myax = p ~> q"
AxiomBase parse_axiom_base(const std::string& text);

// resolves a name against the core axioms, the base's named axioms, and the
// base's user axioms; throws on unknown names
Formula axiom_formula(const std::string& name, const AxiomBase& base);

// --- derivations -------------------------------------------------

enum class RuleTag { Ax, El, MP, Na, Weaken, Cut, Subst, DedIntro, DedElim };

const char* rule_name(RuleTag t);
bool is_macro(RuleTag t);

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

// One node of a derivation tree. Leaves are Ax (an axiom instance, with the
// witnessing substitution) and El (a premise of the context). MP and Na are
// the primitive inference rules; the remaining tags are admissible-rule
// macros that elaborate_macro removes.
struct Derivation {
  RuleTag tag = RuleTag::El;
  std::optional<Consecution> declared;  // :concl, mandatory at the root
  std::string axiom;                    // Ax
  Substitution sigma;                   // Ax, Subst
  Formula member;                       // El
  std::vector<DerivPtr> children;

  static DerivPtr ax(std::string name, Substitution sigma,
                     std::optional<Consecution> concl = {});
  static DerivPtr el(Formula member, std::optional<Consecution> concl = {});
  static DerivPtr mp(DerivPtr minor, DerivPtr major, std::optional<Consecution> concl = {});
  static DerivPtr na(DerivPtr child, std::optional<Consecution> concl = {});
  static DerivPtr weaken(DerivPtr child, Consecution concl);
  static DerivPtr cut(std::vector<DerivPtr> children, Consecution concl);
  static DerivPtr subst(Substitution sigma, DerivPtr child, Consecution concl);
  static DerivPtr ded_intro(DerivPtr child, Consecution concl);
  static DerivPtr ded_elim(DerivPtr child, Consecution concl);
};

struct CheckResult {
  bool ok = false;
  std::string message;
  std::vector<int> path;  // child indices from the root to the offending node
  DerivPtr annotated;     // on success: same tree with every conclusion filled in

  explicit operator bool() const { return ok; }
  std::string path_string() const;
};

// Verifies that every node instantiates its rule schema, re-deriving Ax
// conclusions from the named axiom and witness substitution. Conclusions are
// checked against what the parent requires; they are never trusted blindly.
// With allow_macros = false any macro node is an error.
CheckResult check(const DerivPtr& d, const AxiomBase& base, bool allow_macros = true);

// Rewrites macro nodes into Ax/El/MP/Na only, keeping the root conclusion.
// Throws on macro misuse (e.g. deduction introduction on a non-implication).
DerivPtr elaborate_macro(const DerivPtr& d, const AxiomBase& base);

// applies sigma to every node of a checked macro-free derivation
DerivPtr substitute_derivation(const DerivPtr& d, const Substitution& sigma,
                               const AxiomBase& base);

// --- derivation files --------------------------------------------
//
// One s-expression per node, e.g.
//   (mp (el "p") (el "p -> q") :concl "{p, p -> q} => q")
// Tags: ax el mp na weaken cut subst ded-intro ded-elim. Substitutions are
// alists of dotted pairs: ((p . "q & r")). The root must declare :concl.

DerivPtr parse_derivation(const std::string& text);
DerivPtr read_derivation_file(const std::string& path);
std::string write_derivation(const DerivPtr& d);

// --- fixtures ----------------------------------------------------

struct Fixture {
  std::string name;
  AxiomBase base;
  DerivPtr derivation;
  Consecution root;
};

// Checked derivations shipped with the workbench: "bl", "lb", the two halves
// of the box-idempotence equivalence ("5.8a" under tbox, "5.8b" under 4a),
// and the reusable chaining rule "trchain" under 4a.
std::vector<Fixture> fixture_library(const std::string& fixtures_dir);

}  // namespace hlf
