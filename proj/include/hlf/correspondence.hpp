#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hlf/kripke.hpp"

namespace hlf {

// First-order frame conditions matching the named axioms on upward-flat
// frames (4a also has a condition valid on arbitrary flat frames).
bool cond_em(const FlatFrame& f);         // pre symmetric
bool cond_tbox(const FlatFrame& f);       // every w has some v above it with v R w
bool cond_4a_upward(const FlatFrame& f);  // R transitive
bool cond_4a_flat(const FlatFrame& f);    // x R y <= z R w implies some x R v <= w
bool cond_str(const FlatFrame& f);        // R contained in pre
bool cond_pa(const FlatFrame& f);  // w R v R s gives u above w with u R s, R[u] inside R[v]

struct FrameCondition {
  std::string axiom;  // em, tbox, 4a, str, pa
  FrameMode mode;     // frames the condition is stated for
  std::function<bool(const FlatFrame&)> predicate;
};

// one row per (axiom, mode) pair covered above
const std::vector<FrameCondition>& condition_table();

struct CorrespondenceReport {
  std::string axiom;
  FrameMode mode;
  int frames_checked = 0;
  struct Discrepancy {
    FlatFrame frame;
    bool axiom_valid = false;
    bool condition_holds = false;
  };
  std::vector<Discrepancy> discrepancies;

  bool ok() const { return discrepancies.empty(); }
};

// Sweeps every enumerated frame of the mode with up to max_worlds worlds and
// compares axiom validity with the frame condition.
CorrespondenceReport correspondence_harness(const std::string& axiom, FrameMode mode,
                                            int max_worlds, const EnumOptions& opts = {});

struct CollapseReport {
  int frames_checked = 0;
  struct Discrepancy {
    FlatFrame frame;
    std::string which;  // "em+str" or "str+tbox"
  };
  std::vector<Discrepancy> discrepancies;

  bool ok() const { return discrepancies.empty(); }
};

// Over upward-flat frames: where pre is symmetric and R is inside pre, strict
// implication must match (p -> q) | []false; where R is inside pre and
// pre-then-R is reflexive, it must collapse to plain implication.
CollapseReport collapse_checks(int max_worlds, const EnumOptions& opts = {});

}  // namespace hlf
