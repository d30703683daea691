#include "hlf/kripke.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace hlf {

int FlatFrame::world_index(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

std::vector<Bits> closure_rows(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Bits> up(static_cast<size_t>(n), Bits(n));
  for (int i = 0; i < n; ++i) up[static_cast<size_t>(i)].set(i);
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw Error("relation pair out of range");
    up[static_cast<size_t>(a)].set(b);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int w = 0; w < n; ++w)
      for (int v = 0; v < n; ++v)
        if (up[static_cast<size_t>(w)].test(v) &&
            !up[static_cast<size_t>(v)].subset_of(up[static_cast<size_t>(w)])) {
          up[static_cast<size_t>(w)] |= up[static_cast<size_t>(v)];
          changed = true;
        }
  }
  return up;
}

std::vector<Bits> rows_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Bits> rel(static_cast<size_t>(n), Bits(n));
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw Error("relation pair out of range");
    rel[static_cast<size_t>(a)].set(b);
  }
  return rel;
}

}  // namespace

FlatFrame FlatFrame::make(std::vector<std::string> names,
                          const std::vector<std::pair<int, int>>& pre_pairs,
                          const std::vector<std::pair<int, int>>& rel_pairs) {
  if (names.empty()) throw Error("a frame needs at least one world");
  int n = static_cast<int>(names.size());
  FlatFrame f;
  f.names = std::move(names);
  f.up = closure_rows(n, pre_pairs);
  f.rel = rows_from_pairs(n, rel_pairs);
  return f;
}

SharpFrame SharpFrame::make(std::vector<std::string> names,
                            const std::vector<std::pair<int, int>>& order_pairs,
                            const std::vector<std::pair<int, int>>& rel_pairs) {
  if (names.empty()) throw Error("a frame needs at least one world");
  int n = static_cast<int>(names.size());
  SharpFrame f;
  f.names = std::move(names);
  f.up = closure_rows(n, order_pairs);
  f.rel = rows_from_pairs(n, rel_pairs);
  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v) {
      if (w != v && f.leq(w, v) && f.leq(v, w))
        throw Error("order is not antisymmetric: " + f.names[static_cast<size_t>(w)] +
                    " and " + f.names[static_cast<size_t>(v)]);
      if (f.leq(w, v) && !f.rel[static_cast<size_t>(v)].subset_of(f.rel[static_cast<size_t>(w)]))
        throw Error("below-then-R does not factor through R at " +
                    f.names[static_cast<size_t>(w)]);
    }
  return f;
}

namespace {

void check_upsets(const std::vector<std::string>& names, const std::vector<Bits>& up,
                  const Valuation& val) {
  int n = static_cast<int>(names.size());
  for (const auto& [p, ws] : val) {
    if (ws.universe() != n) throw Error("valuation of '" + p + "' has wrong universe");
    for (int w = 0; w < n; ++w)
      if (ws.test(w) && !up[static_cast<size_t>(w)].subset_of(ws))
        throw Error("valuation of '" + p + "' is not an upset (fails above " +
                    names[static_cast<size_t>(w)] + "); use --upclose to repair");
  }
}

}  // namespace

FlatModel FlatModel::make(FlatFrame f, Valuation v) {
  check_upsets(f.names, f.up, v);
  return FlatModel{std::move(f), std::move(v)};
}

SharpModel SharpModel::make(SharpFrame f, Valuation v) {
  check_upsets(f.names, f.up, v);
  return SharpModel{std::move(f), std::move(v)};
}

// --- semantics ----------------------------------------------------------------

namespace {

struct Evaluator {
  const std::vector<Bits>& up;
  const std::vector<Bits>& rel;
  const Valuation& val;
  int n;
  std::unordered_map<Formula, Bits, FormulaHash> memo;

  Bits eval(const Formula& f) {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    Bits r(n);
    switch (f.kind()) {
      case Kind::Atom: {
        auto v = val.find(f.atom_name());
        r = v == val.end() ? Bits(n) : v->second;
        break;
      }
      case Kind::Top: r = Bits::all(n); break;
      case Kind::Bot: break;
      case Kind::And: r = eval(f.lhs()) & eval(f.rhs()); break;
      case Kind::Or: r = eval(f.lhs()) | eval(f.rhs()); break;
      case Kind::Imp: {
        Bits bad = eval(f.lhs()) - eval(f.rhs());
        for (int w = 0; w < n; ++w)
          if ((up[static_cast<size_t>(w)] & bad).none()) r.set(w);
        break;
      }
      case Kind::Sto: {
        Bits a = eval(f.lhs()), b = eval(f.rhs());
        Bits bad(n);  // worlds whose R-successors are all in a but not all in b
        for (int v = 0; v < n; ++v) {
          const Bits& rv = rel[static_cast<size_t>(v)];
          if (rv.subset_of(a) && !rv.subset_of(b)) bad.set(v);
        }
        for (int w = 0; w < n; ++w)
          if ((up[static_cast<size_t>(w)] & bad).none()) r.set(w);
        break;
      }
    }
    memo.emplace(f, r);
    return r;
  }
};

}  // namespace

TruthSet truth_set(const FlatModel& m, const Formula& f) {
  Evaluator ev{m.frame.up, m.frame.rel, m.val, m.frame.size(), {}};
  Bits r = ev.eval(f);
#ifndef NDEBUG
  for (int w = 0; w < m.frame.size(); ++w)  // heredity
    assert(!r.test(w) || m.frame.up[static_cast<size_t>(w)].subset_of(r));
#endif
  return TruthSet{f, r};
}

bool forces(const FlatModel& m, int w, const Formula& f) {
  if (w < 0 || w >= m.frame.size()) throw Error("unknown world index " + std::to_string(w));
  return truth_set(m, f).worlds.test(w);
}

Bits truth_set_sharp(const SharpModel& m, const Formula& f) {
  return truth_sets_sharp(m, {f}).front();
}

bool forces_sharp(const SharpModel& m, int w, const Formula& f) {
  if (w < 0 || w >= m.frame.size()) throw Error("unknown world index " + std::to_string(w));
  return truth_set_sharp(m, f).test(w);
}

std::vector<Bits> truth_sets(const FlatModel& m, const std::vector<Formula>& fs) {
  Evaluator ev{m.frame.up, m.frame.rel, m.val, m.frame.size(), {}};
  std::vector<Bits> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(ev.eval(f));
  return out;
}

std::vector<Bits> truth_sets_sharp(const SharpModel& m, const std::vector<Formula>& fs) {
  int n = m.frame.size();
  std::unordered_map<Formula, Bits, FormulaHash> memo;
  std::vector<Bits> out;
  out.reserve(fs.size());
  auto rec = [&](const auto& self, const Formula& g) -> Bits {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    Bits r(n);
    switch (g.kind()) {
      case Kind::Atom: {
        auto v = m.val.find(g.atom_name());
        r = v == m.val.end() ? Bits(n) : v->second;
        break;
      }
      case Kind::Top: r = Bits::all(n); break;
      case Kind::Bot: break;
      case Kind::And: r = self(self, g.lhs()) & self(self, g.rhs()); break;
      case Kind::Or: r = self(self, g.lhs()) | self(self, g.rhs()); break;
      case Kind::Imp: {
        Bits bad = self(self, g.lhs()) - self(self, g.rhs());
        for (int w = 0; w < n; ++w)
          if ((m.frame.up[static_cast<size_t>(w)] & bad).none()) r.set(w);
        break;
      }
      case Kind::Sto: {
        Bits bad = self(self, g.lhs()) - self(self, g.rhs());
        for (int w = 0; w < n; ++w)
          if ((m.frame.rel[static_cast<size_t>(w)] & bad).none()) r.set(w);
        break;
      }
    }
    memo.emplace(g, r);
    return r;
  };
  for (const auto& f : fs) out.push_back(rec(rec, f));
  return out;
}

std::vector<Bits> enumerate_upsets(const FlatFrame& f) {
  int n = f.size();
  if (n > 16) throw Error("refusing to enumerate upsets of a frame with more than 16 worlds");
  std::vector<Bits> out;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    Bits s(n);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.set(i);
    bool ok = true;
    for (int w = 0; ok && w < n; ++w)
      if (s.test(w) && !f.up[static_cast<size_t>(w)].subset_of(s)) ok = false;
    if (ok) out.push_back(std::move(s));
  }
  return out;
}

bool validates_consecution(const FlatFrame& f, const Consecution& c) {
  std::vector<std::string> atoms;
  for (const auto& a : atoms_of(c)) atoms.push_back(a);
  std::vector<Bits> ups = enumerate_upsets(f);
  size_t k = atoms.size(), m = ups.size();

  std::vector<size_t> idx(k, 0);
  for (;;) {
    Valuation val;
    for (size_t i = 0; i < k; ++i) val[atoms[i]] = ups[idx[i]];
    FlatModel model{f, std::move(val)};
    Bits prem = Bits::all(f.size());
    for (const auto& g : c.premises) prem &= truth_set(model, g).worlds;
    if (!prem.subset_of(truth_set(model, c.conclusion).worlds)) return false;
    size_t i = 0;
    for (; i < k; ++i) {
      if (++idx[i] < m) break;
      idx[i] = 0;
    }
    if (i == k) break;  // odometer wrapped (also handles k == 0)
  }
  return true;
}

bool validates_formula(const FlatFrame& f, const Formula& phi) {
  return validates_consecution(f, Consecution{{}, phi});
}

// --- frame structure -----------------------------------------------------------

bool is_upward_flat(const FlatFrame& f) {
  for (int w = 0; w < f.size(); ++w)
    for (int v = f.rel[static_cast<size_t>(w)].next(0); v >= 0;
         v = f.rel[static_cast<size_t>(w)].next(v + 1))
      if (!f.up[static_cast<size_t>(v)].subset_of(f.rel[static_cast<size_t>(w)])) return false;
  return true;
}

FlatFrame upward_close(const FlatFrame& f) {
  FlatFrame g = f;
  for (int w = 0; w < f.size(); ++w) {
    Bits row(f.size());
    f.rel[static_cast<size_t>(w)].for_each([&](int v) { row |= f.up[static_cast<size_t>(v)]; });
    g.rel[static_cast<size_t>(w)] = row;
  }
  return g;
}

bool is_pointwise_downward_directed(const FlatFrame& f) {
  for (int w = 0; w < f.size(); ++w) {
    const Bits& rw = f.rel[static_cast<size_t>(w)];
    for (int v = rw.next(0); v >= 0; v = rw.next(v + 1))
      for (int u = rw.next(0); u >= 0; u = rw.next(u + 1)) {
        bool found = false;
        for (int s = rw.next(0); !found && s >= 0; s = rw.next(s + 1))
          if (f.leq(s, v) && f.leq(s, u)) found = true;
        if (!found) return false;
      }
  }
  return true;
}

SharpToFlat sharp_to_flat(const SharpModel& m) {
  int n = m.frame.size();
  std::vector<std::pair<int, int>> origin;
  for (int w = 0; w < n; ++w) {
    const Bits& rw = m.frame.rel[static_cast<size_t>(w)];
    if (rw.none())
      origin.emplace_back(w, -1);
    else
      rw.for_each([&](int v) { origin.emplace_back(w, v); });
  }
  int k = static_cast<int>(origin.size());
  FlatFrame frame;
  for (auto [w, v] : origin)
    frame.names.push_back(m.frame.names[static_cast<size_t>(w)] + "." +
                          (v < 0 ? "_" : m.frame.names[static_cast<size_t>(v)]));
  frame.up.assign(static_cast<size_t>(k), Bits(k));
  frame.rel.assign(static_cast<size_t>(k), Bits(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (m.frame.leq(origin[static_cast<size_t>(i)].first, origin[static_cast<size_t>(j)].first))
        frame.up[static_cast<size_t>(i)].set(j);
      int v = origin[static_cast<size_t>(i)].second;
      if (v >= 0 && m.frame.leq(v, origin[static_cast<size_t>(j)].first))
        frame.rel[static_cast<size_t>(i)].set(j);
    }
  Valuation val;
  for (const auto& [p, ws] : m.val) {
    Bits b(k);
    for (int i = 0; i < k; ++i)
      if (ws.test(origin[static_cast<size_t>(i)].first)) b.set(i);
    val[p] = b;
  }
  return SharpToFlat{FlatModel{std::move(frame), std::move(val)}, std::move(origin)};
}

// --- enumeration ----------------------------------------------------------------

uint64_t canonical_code(const FlatFrame& f) {
  int n = f.size();
  if (n > 5) throw Error("canonical codes only implemented for frames with at most 5 worlds");
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  uint64_t best = ~uint64_t{0};
  do {
    uint64_t code = 0;
    int bit = 0;
    for (int w = 0; w < n; ++w)
      for (int v = 0; v < n; ++v, ++bit)
        if (f.leq(perm[static_cast<size_t>(w)], perm[static_cast<size_t>(v)]))
          code |= uint64_t{1} << bit;
    for (int w = 0; w < n; ++w)
      for (int v = 0; v < n; ++v, ++bit)
        if (f.rel[static_cast<size_t>(perm[static_cast<size_t>(w)])].test(
                perm[static_cast<size_t>(v)]))
          code |= uint64_t{1} << bit;
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace {

const char* kWorldNames[] = {"w", "v", "u", "z", "y"};

std::vector<std::string> world_names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.emplace_back(kWorldNames[i]);
  return out;
}

FlatFrame frame_from_rows(int n, const std::vector<Bits>& up, const std::vector<Bits>& rel) {
  return FlatFrame{world_names(n), up, rel};
}

// all reflexive-transitive successor matrices on n labeled points
std::vector<std::vector<Bits>> all_preorders(int n, bool antisymmetric) {
  std::vector<std::pair<int, int>> off;
  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v)
      if (w != v) off.emplace_back(w, v);
  std::vector<std::vector<Bits>> out;
  for (uint32_t mask = 0; mask < (1u << off.size()); ++mask) {
    std::vector<Bits> up(static_cast<size_t>(n), Bits(n));
    for (int i = 0; i < n; ++i) up[static_cast<size_t>(i)].set(i);
    for (size_t i = 0; i < off.size(); ++i)
      if (mask & (1u << i)) up[static_cast<size_t>(off[i].first)].set(off[i].second);
    bool ok = true;
    for (int w = 0; ok && w < n; ++w)
      for (int v = 0; ok && v < n; ++v)
        if (up[static_cast<size_t>(w)].test(v)) {
          if (!up[static_cast<size_t>(v)].subset_of(up[static_cast<size_t>(w)])) ok = false;
          if (antisymmetric && w != v && up[static_cast<size_t>(v)].test(w)) ok = false;
        }
    if (ok) out.push_back(std::move(up));
  }
  return out;
}

std::vector<Bits> upsets_of_rows(int n, const std::vector<Bits>& up) {
  std::vector<Bits> out;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    Bits s(n);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.set(i);
    bool ok = true;
    for (int w = 0; ok && w < n; ++w)
      if (s.test(w) && !up[static_cast<size_t>(w)].subset_of(s)) ok = false;
    if (ok) out.push_back(std::move(s));
  }
  return out;
}

bool sharp_rows_ok(int n, const std::vector<Bits>& up, const std::vector<Bits>& rel) {
  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v)
      if (up[static_cast<size_t>(w)].test(v) &&
          !rel[static_cast<size_t>(v)].subset_of(rel[static_cast<size_t>(w)]))
        return false;
  return true;
}

struct FrameSink {
  std::unordered_set<uint64_t> seen;
  std::vector<FlatFrame> frames;

  void offer(FlatFrame f) {
    if (seen.insert(canonical_code(f)).second) frames.push_back(std::move(f));
  }
};

void enumerate_rels_exhaustive(int n, const std::vector<Bits>& up, FrameMode mode,
                               FrameSink& sink) {
  if (mode == FrameMode::UpwardFlat) {
    std::vector<Bits> ups = upsets_of_rows(n, up);
    std::vector<size_t> idx(static_cast<size_t>(n), 0);
    for (;;) {
      std::vector<Bits> rel;
      for (int w = 0; w < n; ++w) rel.push_back(ups[idx[static_cast<size_t>(w)]]);
      sink.offer(frame_from_rows(n, up, rel));
      int i = 0;
      for (; i < n; ++i) {
        if (++idx[static_cast<size_t>(i)] < ups.size()) break;
        idx[static_cast<size_t>(i)] = 0;
      }
      if (i == n) break;
    }
    return;
  }
  uint64_t total = uint64_t{1} << (n * n);
  for (uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Bits> rel(static_cast<size_t>(n), Bits(n));
    for (int w = 0; w < n; ++w)
      for (int v = 0; v < n; ++v)
        if (mask & (uint64_t{1} << (w * n + v))) rel[static_cast<size_t>(w)].set(v);
    if (mode == FrameMode::Sharp && !sharp_rows_ok(n, up, rel)) continue;
    sink.offer(frame_from_rows(n, up, rel));
  }
}

}  // namespace

std::vector<FlatFrame> enumerate_frames(int n, FrameMode mode, const EnumOptions& opts) {
  if (n < 1) throw Error("world count must be positive");
  if (n > 4) throw Error("frame enumeration supports at most 4 worlds");

  std::vector<std::vector<Bits>> pres = all_preorders(n, mode == FrameMode::Sharp);
  FrameSink sink;

  if (n <= 3) {
    for (const auto& up : pres) enumerate_rels_exhaustive(n, up, mode, sink);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<size_t> pre_pick(0, pres.size() - 1);
    // per-preorder upset tables, built on demand
    std::vector<std::vector<Bits>> upset_tab(pres.size());
    for (uint64_t draws = 0;
         draws < opts.max_samples && sink.frames.size() < static_cast<size_t>(opts.sample_target);
         ++draws) {
      size_t pi = pre_pick(rng);
      const auto& up = pres[pi];
      std::vector<Bits> rel(static_cast<size_t>(n), Bits(n));
      if (mode == FrameMode::UpwardFlat) {
        auto& ups = upset_tab[pi];
        if (ups.empty()) ups = upsets_of_rows(n, up);
        std::uniform_int_distribution<size_t> up_pick(0, ups.size() - 1);
        for (int w = 0; w < n; ++w) rel[static_cast<size_t>(w)] = ups[up_pick(rng)];
      } else {
        std::uniform_int_distribution<uint64_t> row(0, (uint64_t{1} << n) - 1);
        for (int w = 0; w < n; ++w) {
          uint64_t mask = row(rng);
          for (int v = 0; v < n; ++v)
            if (mask & (uint64_t{1} << v)) rel[static_cast<size_t>(w)].set(v);
        }
        if (mode == FrameMode::Sharp && !sharp_rows_ok(n, up, rel)) continue;
      }
      sink.offer(frame_from_rows(n, up, rel));
    }
  }

  auto weight = [](const FlatFrame& f) {
    int r = 0, p = 0;
    for (const auto& b : f.rel) r += b.count();
    for (const auto& b : f.up) p += b.count();
    return std::pair<int, int>(r, p);
  };
  std::sort(sink.frames.begin(), sink.frames.end(), [&](const FlatFrame& a, const FlatFrame& b) {
    auto wa = weight(a), wb = weight(b);
    if (wa != wb) return wa < wb;
    return canonical_code(a) < canonical_code(b);
  });
  return sink.frames;
}

SharpFrame as_sharp(const FlatFrame& f) {
  SharpFrame s{f.names, f.up, f.rel};
  for (int w = 0; w < f.size(); ++w)
    for (int v = 0; v < f.size(); ++v) {
      if (w != v && f.leq(w, v) && f.leq(v, w)) throw Error("order is not antisymmetric");
      if (f.leq(w, v) && !f.rel[static_cast<size_t>(v)].subset_of(f.rel[static_cast<size_t>(w)]))
        throw Error("below-then-R does not factor through R");
    }
  return s;
}

// --- model file format -----------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else
      cur += c;
  }
  out.push_back(cur);
  return out;
}

struct RawModel {
  std::vector<std::string> worlds;
  std::vector<std::pair<int, int>> pre, rel;
  std::map<std::string, std::vector<int>> val;

  int index(const std::string& w, int line) const {
    for (size_t i = 0; i < worlds.size(); ++i)
      if (worlds[i] == w) return static_cast<int>(i);
    throw Error("line " + std::to_string(line) + ": unknown world '" + w + "'");
  }
};

RawModel read_raw(std::istream& in) {
  RawModel raw;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw Error("line " + std::to_string(lineno) + ": expected 'key: ...'");
    std::string key = trim(line.substr(0, colon));
    std::string rest = trim(line.substr(colon + 1));
    if (key == "worlds") {
      std::istringstream ws(rest);
      std::string w;
      while (ws >> w) raw.worlds.push_back(w);
    } else if (key == "pre" || key == "R") {
      const std::string sep = key == "pre" ? "<=" : "->";
      for (const auto& item : split(rest, ',')) {
        std::string t = trim(item);
        if (t.empty()) continue;
        size_t s = t.find(sep);
        if (s == std::string::npos)
          throw Error("line " + std::to_string(lineno) + ": expected '" + sep + "' in '" + t + "'");
        int a = raw.index(trim(t.substr(0, s)), lineno);
        int b = raw.index(trim(t.substr(s + sep.size())), lineno);
        (key == "pre" ? raw.pre : raw.rel).emplace_back(a, b);
      }
    } else if (key.rfind("val ", 0) == 0) {
      std::string atom = trim(key.substr(4));
      if (atom.empty()) throw Error("line " + std::to_string(lineno) + ": missing atom name");
      auto& worlds = raw.val[atom];
      std::istringstream ws(rest);
      std::string w;
      while (ws >> w) worlds.push_back(raw.index(w, lineno));
    } else {
      throw Error("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (raw.worlds.empty()) throw Error("model file has no 'worlds:' line");
  return raw;
}

Valuation raw_valuation(const RawModel& raw) {
  Valuation val;
  int n = static_cast<int>(raw.worlds.size());
  for (const auto& [p, ws] : raw.val) {
    Bits b(n);
    for (int w : ws) b.set(w);
    val[p] = b;
  }
  return val;
}

}  // namespace

FlatModel read_model(std::istream& in, bool upclose) {
  RawModel raw = read_raw(in);
  FlatFrame frame = FlatFrame::make(raw.worlds, raw.pre, raw.rel);
  Valuation val = raw_valuation(raw);
  if (upclose)
    for (auto& [p, ws] : val) {
      Bits closed(frame.size());
      ws.for_each([&](int w) { closed |= frame.up[static_cast<size_t>(w)]; });
      ws = closed;
    }
  return FlatModel::make(std::move(frame), std::move(val));
}

FlatModel read_model(std::istream& in) { return read_model(in, false); }

FlatModel read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file: " + path);
  return read_model(in);
}

SharpModel read_sharp_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file: " + path);
  RawModel raw = read_raw(in);
  SharpFrame frame = SharpFrame::make(raw.worlds, raw.pre, raw.rel);
  return SharpModel::make(std::move(frame), raw_valuation(raw));
}

std::string write_model(const FlatModel& m) {
  std::ostringstream out;
  out << "worlds:";
  for (const auto& w : m.frame.names) out << " " << w;
  out << "\npre:";
  bool first = true;
  for (int w = 0; w < m.frame.size(); ++w)
    for (int v = 0; v < m.frame.size(); ++v)
      if (w != v && m.frame.leq(w, v)) {
        out << (first ? " " : ", ") << m.frame.world_name(w) << "<=" << m.frame.world_name(v);
        first = false;
      }
  out << "\nR:";
  first = true;
  for (int w = 0; w < m.frame.size(); ++w)
    m.frame.rel[static_cast<size_t>(w)].for_each([&](int v) {
      out << (first ? " " : ", ") << m.frame.world_name(w) << "->" << m.frame.world_name(v);
      first = false;
    });
  out << "\n";
  for (const auto& [p, ws] : m.val) {
    out << "val " << p << ":";
    ws.for_each([&](int w) { out << " " << m.frame.world_name(w); });
    out << "\n";
  }
  return out.str();
}

}  // namespace hlf
