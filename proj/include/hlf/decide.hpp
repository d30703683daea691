#pragma once

#include <map>
#include <mutex>
#include <variant>

#include "hlf/canonical.hpp"
#include "hlf/kripke.hpp"
#include "hlf/proof.hpp"

namespace hlf {

struct Budget {
  int max_worlds = 4;
  int max_saturation_depth = 3;
  int max_frames = 200000;   // candidate frames per world count
  int wall_clock_ms = 60000;
  int workers = 1;           // parallel countermodel search when > 1

  void validate() const;  // throws unless all fields are positive
};

struct Valid {
  DerivPtr derivation;  // passes check() against the query's base
};

struct Invalid {
  FlatModel model;  // frame validates the base
  int world;        // refutes the consecution here
};

struct Exhausted {
  std::string report;
  int frames_tried = 0;
  int deepest_worlds = 0;
  int saturation_formulas = 0;
};

using Verdict = std::variant<Valid, Invalid, Exhausted>;

// Bounded decision procedure: certificate lookup (axiom instances, premise
// membership, fixture roots under substitution), then forward saturation for
// a proof, then iterative-deepening countermodel search over upward-flat
// frames. Both definite answers are re-verified before being returned;
// Exhausted is an honest give-up, not an error.
Verdict decide(const Consecution& c, const AxiomBase& base, const Budget& b = {});

// refutation side only; searches frames that validate the base
std::optional<Invalid> countermodel_search(const Consecution& c, const AxiomBase& base,
                                           const Budget& b = {});

// Forward closure of gamma plus axiom instances under MP and Na, with schema
// variables ranging over subformulas of the goal set. Every entry carries a
// checkable derivation. Sound and deliberately incomplete.
std::vector<std::pair<Formula, DerivPtr>> saturate(const FormulaSet& gamma, const AxiomBase& base,
                                                   int depth, const FormulaSet& goals = {});

// Default oracle: runs decide() per query and caches answers behind a lock.
class DecideOracle : public DerivabilityOracle {
public:
  explicit DecideOracle(Budget b = oracle_budget(), std::string fixtures_dir = "");
  OracleAnswer query(const AxiomBase& base, const FormulaSet& gamma,
                     const Formula& phi) override;

  // Countermodels for oracle duty are small, so three worlds keep queries
  // quick; proof chains through Na and curried instances run deeper than the
  // general default, so allow more inference depth.
  static Budget oracle_budget() {
    Budget b;
    b.max_worlds = 3;
    b.max_saturation_depth = 6;
    return b;
  }

private:
  Budget budget_;
  std::vector<Fixture> fixtures_;
  std::mutex mu_;
  std::map<std::string, OracleAnswer> cache_;
};

}  // namespace hlf
