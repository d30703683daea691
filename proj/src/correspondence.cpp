#include "hlf/correspondence.hpp"

#include "hlf/proof.hpp"

namespace hlf {

bool cond_em(const FlatFrame& f) {
  for (int w = 0; w < f.size(); ++w)
    for (int v = 0; v < f.size(); ++v)
      if (f.leq(w, v) && !f.leq(v, w)) return false;
  return true;
}

bool cond_tbox(const FlatFrame& f) {
  for (int w = 0; w < f.size(); ++w) {
    bool found = false;
    for (int v = 0; !found && v < f.size(); ++v)
      if (f.leq(w, v) && f.rel[static_cast<size_t>(v)].test(w)) found = true;
    if (!found) return false;
  }
  return true;
}

bool cond_4a_upward(const FlatFrame& f) {
  for (int w = 0; w < f.size(); ++w)
    for (int v = f.rel[static_cast<size_t>(w)].next(0); v >= 0;
         v = f.rel[static_cast<size_t>(w)].next(v + 1))
      if (!f.rel[static_cast<size_t>(v)].subset_of(f.rel[static_cast<size_t>(w)])) return false;
  return true;
}

bool cond_4a_flat(const FlatFrame& f) {
  int n = f.size();
  for (int x = 0; x < n; ++x)
    for (int y = f.rel[static_cast<size_t>(x)].next(0); y >= 0;
         y = f.rel[static_cast<size_t>(x)].next(y + 1))
      for (int z = 0; z < n; ++z) {
        if (!f.leq(y, z)) continue;
        for (int w = f.rel[static_cast<size_t>(z)].next(0); w >= 0;
             w = f.rel[static_cast<size_t>(z)].next(w + 1)) {
          bool found = false;
          for (int v = f.rel[static_cast<size_t>(x)].next(0); !found && v >= 0;
               v = f.rel[static_cast<size_t>(x)].next(v + 1))
            if (f.leq(v, w)) found = true;
          if (!found) return false;
        }
      }
  return true;
}

bool cond_str(const FlatFrame& f) {
  for (int w = 0; w < f.size(); ++w)
    if (!f.rel[static_cast<size_t>(w)].subset_of(f.up[static_cast<size_t>(w)])) return false;
  return true;
}

bool cond_pa(const FlatFrame& f) {
  int n = f.size();
  for (int w = 0; w < n; ++w)
    for (int v = f.rel[static_cast<size_t>(w)].next(0); v >= 0;
         v = f.rel[static_cast<size_t>(w)].next(v + 1))
      for (int s = f.rel[static_cast<size_t>(v)].next(0); s >= 0;
           s = f.rel[static_cast<size_t>(v)].next(s + 1)) {
        bool found = false;
        for (int u = 0; !found && u < n; ++u)
          if (f.leq(w, u) && f.rel[static_cast<size_t>(u)].test(s) &&
              f.rel[static_cast<size_t>(u)].subset_of(f.rel[static_cast<size_t>(v)]))
            found = true;
        if (!found) return false;
      }
  return true;
}

const std::vector<FrameCondition>& condition_table() {
  static const std::vector<FrameCondition> table = {
      {"em", FrameMode::UpwardFlat, cond_em},
      {"tbox", FrameMode::UpwardFlat, cond_tbox},
      {"4a", FrameMode::UpwardFlat, cond_4a_upward},
      {"4a", FrameMode::Flat, cond_4a_flat},
      {"str", FrameMode::UpwardFlat, cond_str},
      {"pa", FrameMode::UpwardFlat, cond_pa},
  };
  return table;
}

CorrespondenceReport correspondence_harness(const std::string& axiom, FrameMode mode,
                                            int max_worlds, const EnumOptions& opts) {
  const FrameCondition* row = nullptr;
  for (const auto& c : condition_table())
    if (c.axiom == axiom && c.mode == mode) row = &c;
  if (!row) throw Error("no condition registered for axiom '" + axiom + "' in this mode");

  Formula ax = extension_axioms().at(axiom);
  CorrespondenceReport rep{axiom, mode, 0, {}};
  for (int n = 1; n <= max_worlds; ++n) {
    for (const auto& frame : enumerate_frames(n, mode, opts)) {
      bool valid = validates_formula(frame, ax);
      bool cond = row->predicate(frame);
      ++rep.frames_checked;
      if (valid != cond)
        rep.discrepancies.push_back(CorrespondenceReport::Discrepancy{frame, valid, cond});
    }
  }
  return rep;
}

CollapseReport collapse_checks(int max_worlds, const EnumOptions& opts) {
  Formula p = Formula::atom("p"), q = Formula::atom("q");
  Formula sto = Formula::sto(p, q);
  // p ~> q  <->  (p -> q) | []false, under em + str
  Formula em_str = Formula::iff(sto, Formula::disj(Formula::imp(p, q), Formula::box(Formula::bot())));
  // p ~> q  <->  p -> q, under str + tbox
  Formula str_tbox = Formula::iff(sto, Formula::imp(p, q));

  CollapseReport rep;
  for (int n = 1; n <= max_worlds; ++n) {
    for (const auto& frame : enumerate_frames(n, FrameMode::UpwardFlat, opts)) {
      ++rep.frames_checked;
      if (cond_em(frame) && cond_str(frame) && !validates_formula(frame, em_str))
        rep.discrepancies.push_back(CollapseReport::Discrepancy{frame, "em+str"});
      if (cond_str(frame) && cond_tbox(frame) && !validates_formula(frame, str_tbox))
        rep.discrepancies.push_back(CollapseReport::Discrepancy{frame, "str+tbox"});
    }
  }
  return rep;
}

}  // namespace hlf
