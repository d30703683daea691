#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hlf/bits.hpp"
#include "hlf/syntax.hpp"

namespace hlf {

// (W, pre, R): pre is a preorder stored as successor rows (up[w] = all v with
// w below v, reflexive-transitively closed), R as arbitrary rows.
struct FlatFrame {
  std::vector<std::string> names;
  std::vector<Bits> up;
  std::vector<Bits> rel;

  int size() const { return static_cast<int>(names.size()); }
  bool leq(int w, int v) const { return up[static_cast<size_t>(w)].test(v); }
  int world_index(const std::string& name) const;
  const std::string& world_name(int w) const { return names[static_cast<size_t>(w)]; }

  // Builds from generator pairs; the preorder is the reflexive-transitive
  // closure of `pre_pairs`.
  static FlatFrame make(std::vector<std::string> names,
                        const std::vector<std::pair<int, int>>& pre_pairs,
                        const std::vector<std::pair<int, int>>& rel_pairs);
};

// Partial order variant: antisymmetric, and w <= v implies R[v] subset R[w]
// (so below-and-then-R factors through R).
struct SharpFrame {
  std::vector<std::string> names;
  std::vector<Bits> up;
  std::vector<Bits> rel;

  int size() const { return static_cast<int>(names.size()); }
  bool leq(int w, int v) const { return up[static_cast<size_t>(w)].test(v); }

  static SharpFrame make(std::vector<std::string> names,
                         const std::vector<std::pair<int, int>>& order_pairs,
                         const std::vector<std::pair<int, int>>& rel_pairs);
  FlatFrame as_flat() const { return FlatFrame{names, up, rel}; }
};

using Valuation = std::map<std::string, Bits>;

struct FlatModel {
  FlatFrame frame;
  Valuation val;

  // throws unless every value set is an upset of the frame
  static FlatModel make(FlatFrame f, Valuation v);
};

struct SharpModel {
  SharpFrame frame;
  Valuation val;

  static SharpModel make(SharpFrame f, Valuation v);
};

struct TruthSet {
  Formula formula;
  Bits worlds;  // always an upset
};

// --- semantics ----------------------------------------------------------------

// Forcing per the flat clause for ~>: true at w iff every v above w whose
// R-successors all satisfy the antecedent has all R-successors satisfy the
// consequent. Intuitionistic clauses otherwise. Atoms missing from the
// valuation are read as empty.
bool forces(const FlatModel& m, int w, const Formula& f);
TruthSet truth_set(const FlatModel& m, const Formula& f);

bool forces_sharp(const SharpModel& m, int w, const Formula& f);
Bits truth_set_sharp(const SharpModel& m, const Formula& f);

// batch variants sharing one subformula cache across the whole battery
std::vector<Bits> truth_sets(const FlatModel& m, const std::vector<Formula>& fs);
std::vector<Bits> truth_sets_sharp(const SharpModel& m, const std::vector<Formula>& fs);

// all upsets of the frame's preorder (frame must have at most 16 worlds)
std::vector<Bits> enumerate_upsets(const FlatFrame& f);

// Quantifies over all valuations of the atoms occurring in the consecution
// (each atom ranging over all upsets) and all worlds.
bool validates_consecution(const FlatFrame& f, const Consecution& c);
bool validates_formula(const FlatFrame& f, const Formula& phi);

// --- frame structure -----------------------------------------------------------

bool is_upward_flat(const FlatFrame& f);     // R then up stays inside R
FlatFrame upward_close(const FlatFrame& f);  // replaces R by its up-closure

// every pair in R[w] has a lower bound inside R[w]
bool is_pointwise_downward_directed(const FlatFrame& f);

// Cluster construction: worlds are pairs (w, v) with w R v, plus (w, *) for
// R-empty w; each pair can modally access exactly the worlds above its second
// component. Truth-preserving, and the image is upward-flat and pointwise
// downward directed.
struct SharpToFlat {
  FlatModel model;
  // source indices per image world: (w, v), with v = -1 for the dummy target
  std::vector<std::pair<int, int>> origin;
};
SharpToFlat sharp_to_flat(const SharpModel& m);

// --- enumeration ----------------------------------------------------------------

enum class FrameMode { Flat, UpwardFlat, Sharp };

struct EnumOptions {
  int sample_target = 600;        // distinct classes wanted when sampling
  uint64_t seed = 0x5eed2026;
  uint64_t max_samples = 400000;  // raw draws before giving up
};

// All frames with n worlds in the given mode, one representative per
// isomorphism class; exhaustive for n <= 3, canonical-form deduplicated
// sampling for n == 4. Sorted by (R size, strict pre size, code) so small
// frames come first.
std::vector<FlatFrame> enumerate_frames(int n, FrameMode mode, const EnumOptions& opts = {});

// Minimal matrix encoding over all world permutations; equal codes mean
// isomorphic frames (n <= 5).
uint64_t canonical_code(const FlatFrame& f);

SharpFrame as_sharp(const FlatFrame& f);  // throws if the invariants fail

// --- model file format -----------------------------------------------------------
//
//   # comment
//   worlds: w v u
//   pre: w<=v, z<=u
//   R: w->v, w->u
//   val p: v u

FlatModel read_model(std::istream& in);
FlatModel read_model_file(const std::string& path);
// set upclose to repair valuations by upward closure instead of rejecting
FlatModel read_model(std::istream& in, bool upclose);
std::string write_model(const FlatModel& m);

SharpModel read_sharp_model_file(const std::string& path);

}  // namespace hlf
