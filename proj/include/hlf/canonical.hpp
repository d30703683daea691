#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hlf/kripke.hpp"
#include "hlf/proof.hpp"

namespace hlf {

struct OracleAnswer {
  enum class Kind { Yes, No, Unknown } kind = Kind::Unknown;
  DerivPtr derivation;                              // Yes: checked proof
  std::optional<std::pair<FlatModel, int>> counter; // No: refuting model and world

  static OracleAnswer yes(DerivPtr d) { return {Kind::Yes, std::move(d), {}}; }
  static OracleAnswer no(FlatModel m, int w) {
    return {Kind::No, nullptr, std::make_pair(std::move(m), w)};
  }
  static OracleAnswer unknown() { return {}; }
};

// Decides derivability queries on demand. Yes answers carry a derivation that
// passes check(); No answers carry a flat model that validates the base and
// refutes the consecution. Implementations must be safe to query concurrently.
class DerivabilityOracle {
public:
  virtual ~DerivabilityOracle() = default;
  virtual OracleAnswer query(const AxiomBase& base, const FormulaSet& gamma,
                             const Formula& phi) = 0;
};

class OracleIncomplete : public Error {
public:
  OracleIncomplete(const FormulaSet& gamma, const Formula& phi)
      : Error("oracle cannot settle " + to_string(Consecution{gamma, phi})) {}
};

class BudgetExceeded : public Error {
public:
  using Error::Error;
};

// Subset of sigma that is deductively closed, consistent, and prime for
// disjunctions of sigma members, all certified against the oracle.
struct PrimeTheory {
  FormulaSet members;

  friend bool operator==(const PrimeTheory& a, const PrimeTheory& b) {
    return a.members == b.members;
  }
  friend bool operator<(const PrimeTheory& a, const PrimeTheory& b) {
    return a.members < b.members;
  }
};

// A theory together with an up-closed family of theories encoding its modal
// successors; the family transfers derivable strict implications (S2).
struct Segment {
  int theory = 0;              // index into CanonicalModel::theories
  std::vector<int> successors; // sorted theory indices forming U
  std::optional<Formula> point;  // the generating formula, for pointed segments
};

struct CanonicalModel {
  FormulaSet sigma;
  AxiomBase base;
  std::vector<PrimeTheory> theories;
  std::vector<Segment> segments;
  FlatModel model;  // world i is segments[i]; valuation from atom membership
  bool pointed = false;

  int find_segment(const FormulaSet& theory, const std::vector<FormulaSet>& u) const;
};

struct CanonicalOptions {
  int max_segments = 20000;
  int max_theories = 20;      // guards the power-set stage
  int primeness_arity = 3;    // longest disjunction checked for primeness
};

// All subsets of sigma satisfying the three theory conditions. sigma must be
// finite, subformula-closed and contain truth; the oracle must settle every
// query (Unknown raises OracleIncomplete).
std::vector<PrimeTheory> enumerate_prime_theories(const FormulaSet& sigma, const AxiomBase& base,
                                                  DerivabilityOracle& oracle,
                                                  const CanonicalOptions& opts = {});

// The segment (gamma, U_{gamma,phi}) whose family collects every theory
// containing all psi with gamma |- phi ~> psi. Checks on construction that the
// segment laws hold, that phi lands in every member, and that each
// non-derivable phi ~> theta leaves theta out of some member.
Segment u_gamma_phi(const PrimeTheory& gamma, const Formula& phi, const FormulaSet& sigma,
                    const std::vector<PrimeTheory>& theories, const AxiomBase& base,
                    DerivabilityOracle& oracle);

// Full canonical model: every pair (theory, up-closed family) satisfying S2.
CanonicalModel build_full_canonical(const FormulaSet& sigma, const AxiomBase& base,
                                    DerivabilityOracle& oracle, const CanonicalOptions& opts = {});

// Pointed variant: only segments of shape (gamma, U_{gamma, phi}). When 4a is
// in the base, sigma is first closed under single boxes; that closure is what
// makes the modal relation transitive at finite sigma.
CanonicalModel build_pointed_canonical(const FormulaSet& sigma, const AxiomBase& base,
                                       DerivabilityOracle& oracle,
                                       const CanonicalOptions& opts = {});

struct TruthLemmaReport {
  int checks = 0;
  struct Violation {
    int segment;
    Formula formula;
    bool forced;
    bool member;
  };
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

// forcing at each segment must coincide with membership, for every formula in sigma
TruthLemmaReport verify_truth_lemma(const CanonicalModel& m);

}  // namespace hlf
