#include "hlf/algebra.hpp"

#include <algorithm>
#include <array>

namespace hlf {

Bits UpsetAlgebra::heyting_imp(const Bits& a, const Bits& b) const {
  int n = frame.size();
  Bits bad = a - b, r(n);
  for (int w = 0; w < n; ++w)
    if ((frame.up[static_cast<size_t>(w)] & bad).none()) r.set(w);
  return r;
}

Bits UpsetAlgebra::strict_imp(const Bits& a, const Bits& b) const {
  int n = frame.size();
  Bits bad(n), r(n);
  for (int v = 0; v < n; ++v) {
    const Bits& rv = frame.rel[static_cast<size_t>(v)];
    if (rv.subset_of(a) && !rv.subset_of(b)) bad.set(v);
  }
  for (int w = 0; w < n; ++w)
    if ((frame.up[static_cast<size_t>(w)] & bad).none()) r.set(w);
  return r;
}

bool UpsetAlgebra::in_carrier(const Bits& a) const {
  return std::binary_search(carrier.begin(), carrier.end(), a);
}

std::string UpsetAlgebra::element_name(const Bits& a) const {
  std::string out = "{";
  bool first = true;
  a.for_each([&](int w) {
    if (!first) out += ", ";
    first = false;
    out += frame.world_name(w);
  });
  return out + "}";
}

UpsetAlgebra complex_algebra(const FlatFrame& f) {
  UpsetAlgebra alg{f, enumerate_upsets(f)};
  std::sort(alg.carrier.begin(), alg.carrier.end());
  return alg;
}

Bits algebra_eval(const UpsetAlgebra& alg, const Formula& f, const Assignment& v) {
  switch (f.kind()) {
    case Kind::Atom: {
      auto it = v.find(f.atom_name());
      return it == v.end() ? alg.bottom() : it->second;
    }
    case Kind::Top: return alg.top();
    case Kind::Bot: return alg.bottom();
    case Kind::And: return alg.meet(algebra_eval(alg, f.lhs(), v), algebra_eval(alg, f.rhs(), v));
    case Kind::Or: return alg.join(algebra_eval(alg, f.lhs(), v), algebra_eval(alg, f.rhs(), v));
    case Kind::Imp:
      return alg.heyting_imp(algebra_eval(alg, f.lhs(), v), algebra_eval(alg, f.rhs(), v));
    case Kind::Sto:
      return alg.strict_imp(algebra_eval(alg, f.lhs(), v), algebra_eval(alg, f.rhs(), v));
  }
  return alg.bottom();
}

bool algebra_validates(const UpsetAlgebra& alg, const Formula& f) {
  std::vector<std::string> atoms;
  for (const auto& a : atoms_of(f)) atoms.push_back(a);
  size_t k = atoms.size(), m = alg.carrier.size();
  std::vector<size_t> idx(k, 0);
  Bits top = alg.top();
  for (;;) {
    Assignment v;
    for (size_t i = 0; i < k; ++i) v[atoms[i]] = alg.carrier[idx[i]];
    if (algebra_eval(alg, f, v) != top) return false;
    size_t i = 0;
    for (; i < k; ++i) {
      if (++idx[i] < m) break;
      idx[i] = 0;
    }
    if (i == k) break;
  }
  return true;
}

LawReport check_lhae_laws(const UpsetAlgebra& alg) {
  LawReport rep;
  LawReport::Entry ck{"CK", true, {}}, ct{"CT", true, {}}, ci{"CI", true, {}},
      cd{"CD", true, {}};

  for (const auto& a : alg.carrier) {
    if (ci.pass && alg.strict_imp(a, a) != alg.top()) {
      ci.pass = false;
      ci.witness = std::array<Bits, 3>{a, a, a};
    }
    for (const auto& b : alg.carrier) {
      for (const auto& c : alg.carrier) {
        if (ck.pass &&
            alg.meet(alg.strict_imp(a, b), alg.strict_imp(a, c)) !=
                alg.strict_imp(a, alg.meet(b, c))) {
          ck.pass = false;
          ck.witness = std::array<Bits, 3>{a, b, c};
        }
        if (ct.pass &&
            !alg.meet(alg.strict_imp(a, b), alg.strict_imp(b, c))
                 .subset_of(alg.strict_imp(a, c))) {
          ct.pass = false;
          ct.witness = std::array<Bits, 3>{a, b, c};
        }
        if (cd.pass &&
            alg.meet(alg.strict_imp(a, c), alg.strict_imp(b, c)) !=
                alg.strict_imp(alg.join(a, b), c)) {
          cd.pass = false;
          cd.witness = std::array<Bits, 3>{a, b, c};
        }
      }
    }
  }
  rep.entries = {ck, ct, ci, cd};
  return rep;
}

bool LawReport::law_passes(const std::string& name) const {
  for (const auto& e : entries)
    if (e.law == name) return e.pass;
  return false;
}

bool LawReport::lhae_ok() const {
  return law_passes("CK") && law_passes("CT") && law_passes("CI");
}

bool same_algebra(const UpsetAlgebra& a, const UpsetAlgebra& b) {
  if (a.carrier != b.carrier) return false;
  for (const auto& x : a.carrier)
    for (const auto& y : a.carrier) {
      if (a.meet(x, y) != b.meet(x, y)) return false;
      if (a.join(x, y) != b.join(x, y)) return false;
      if (a.heyting_imp(x, y) != b.heyting_imp(x, y)) return false;
      if (a.strict_imp(x, y) != b.strict_imp(x, y)) return false;
    }
  return a.top() == b.top() && a.bottom() == b.bottom();
}

}  // namespace hlf
