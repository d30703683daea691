#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hlf/kripke.hpp"
#include "hlf/syntax.hpp"

namespace hlf {

// Algebra of all upsets of a frame's preorder. Meet/join are intersection and
// union; the two implications are computed pointwise from the frame:
//   a -> b  = worlds whose whole upset maps a into b
//   a ~> b  = worlds none of whose up-neighbours have R-successors all in a
//             but not all in b
struct UpsetAlgebra {
  FlatFrame frame;
  std::vector<Bits> carrier;  // sorted, canonical order

  Bits top() const { return Bits::all(frame.size()); }
  Bits bottom() const { return Bits(frame.size()); }
  Bits meet(const Bits& a, const Bits& b) const { return a & b; }
  Bits join(const Bits& a, const Bits& b) const { return a | b; }
  Bits heyting_imp(const Bits& a, const Bits& b) const;
  Bits strict_imp(const Bits& a, const Bits& b) const;

  bool in_carrier(const Bits& a) const;
  std::string element_name(const Bits& a) const;  // e.g. "{w, v}"
};

UpsetAlgebra complex_algebra(const FlatFrame& f);

using Assignment = std::map<std::string, Bits>;

Bits algebra_eval(const UpsetAlgebra& alg, const Formula& f, const Assignment& v);

// true iff every assignment of carrier elements to the atoms of f evaluates to top
bool algebra_validates(const UpsetAlgebra& alg, const Formula& f);

struct LawReport {
  struct Entry {
    std::string law;  // CK, CT, CI, CD
    bool pass = true;
    std::optional<std::array<Bits, 3>> witness;  // (a, b, c) of the first failure
  };
  std::vector<Entry> entries;

  bool law_passes(const std::string& name) const;
  bool lhae_ok() const;  // CK, CT and CI
};

// Exhaustive check of the expansion laws over all element tuples. CD is
// reported as well; it holds exactly when strict implication turns joins in
// the first slot into meets, which complex algebras of flat frames need not
// satisfy.
LawReport check_lhae_laws(const UpsetAlgebra& alg);

// identical carriers and identical tables for every operation
bool same_algebra(const UpsetAlgebra& a, const UpsetAlgebra& b);

}  // namespace hlf
