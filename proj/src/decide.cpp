#include "hlf/decide.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace hlf {

void Budget::validate() const {
  if (max_worlds < 1 || max_saturation_depth < 1 || max_frames < 1 || wall_clock_ms < 1 ||
      workers < 1)
    throw Error("budget fields must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

// --- saturation ------------------------------------------------------------

size_t formula_size(const Formula& f) {
  switch (f.kind()) {
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
    case Kind::Sto:
      return 1 + formula_size(f.lhs()) + formula_size(f.rhs());
    default:
      return 1;
  }
}

struct SatEngine {
  enum class Via { Premise, AxInst, CurriedAx, MP, Na };
  struct Entry {
    Formula f;
    bool theorem;
    Via via;
    std::string axiom;
    Substitution sigma;
    int a = -1, b = -1;  // MP: minor, major; Na: a = source
    int depth = 0;       // inference height above the seeds
  };

  FormulaSet gamma;
  const AxiomBase& base;
  std::vector<Entry> entries;
  std::vector<Entry> seeds;
  std::unordered_map<Formula, int, FormulaHash> in_theo, in_hyp;
  std::unordered_map<Formula, std::vector<int>, FormulaHash> majors;  // implications by antecedent
  std::vector<int> queue;
  int max_depth = 0;
  FormulaSet sto_targets;  // strict implications Na may introduce
  std::unordered_map<int, DerivPtr> built;

  SatEngine(const FormulaSet& g, const AxiomBase& b, const FormulaSet& goals)
      : gamma(g), base(b) {
    FormulaSet seed = g;
    for (const auto& f : goals) seed.insert(f);
    FormulaSet candidates = subformula_closure(seed);
    for (const auto& f : candidates)
      if (f.kind() == Kind::Sto) sto_targets.insert(f);

    // Instantiation domain, capped by formula size to bound the instance count.
    std::vector<Formula> domain(candidates.begin(), candidates.end());
    std::sort(domain.begin(), domain.end(), [](const Formula& a, const Formula& b) {
      size_t sa = formula_size(a), sb = formula_size(b);
      if (sa != sb) return sa < sb;
      return a < b;
    });
    if (domain.size() > 24) domain.resize(24);

    // Na may also introduce strict implications between any two domain
    // formulas; chains through intermediates like (a ~> b) ~> true need them.
    for (const auto& a : domain)
      for (const auto& b : domain) sto_targets.insert(Formula::sto(a, b));

    for (const auto& f : g) seeds.push_back(Entry{f, false, Via::Premise, {}, {}, -1, -1, 0});

    std::vector<std::pair<std::string, Formula>> schemas;
    for (const auto& [name, f] : core_axioms()) schemas.emplace_back(name, f);
    for (const auto& [name, f] : base.formulas()) schemas.emplace_back(name, f);

    for (const auto& [name, schema] : schemas) {
      std::vector<std::string> vars;
      for (const auto& a : atoms_of(schema)) vars.push_back(a);
      if (vars.size() > 3) continue;  // user axioms with many atoms: skip instantiation
      bool curry = schema.kind() == Kind::Imp && schema.lhs().kind() == Kind::And;
      std::vector<size_t> idx(vars.size(), 0);
      for (;;) {
        Substitution sigma;
        for (size_t i = 0; i < vars.size(); ++i) sigma[vars[i]] = domain[idx[i]];
        Formula inst = apply_substitution(schema, sigma);
        seeds.push_back(Entry{inst, true, Via::AxInst, name, sigma, -1, -1, 0});
        if (curry) {
          Formula curried = Formula::imp(
              inst.lhs().lhs(), Formula::imp(inst.lhs().rhs(), inst.rhs()));
          seeds.push_back(Entry{curried, true, Via::CurriedAx, name, sigma, -1, -1, 0});
        }
        size_t i = 0;
        for (; i < vars.size(); ++i) {
          if (++idx[i] < domain.size()) break;
          idx[i] = 0;
        }
        if (i == vars.size()) break;
        if (vars.empty()) break;
      }
    }
  }

  void add(Entry e) {
    if (e.depth > max_depth) return;
    auto& primary = e.theorem ? in_theo : in_hyp;
    if (primary.count(e.f)) return;
    if (!e.theorem && in_theo.count(e.f)) return;
    entries.push_back(std::move(e));
    int idx = static_cast<int>(entries.size()) - 1;
    primary[entries[static_cast<size_t>(idx)].f] = idx;
    queue.push_back(idx);
  }

  int lookup(const Formula& f) const {  // any tier, theorems preferred
    if (auto it = in_theo.find(f); it != in_theo.end()) return it->second;
    if (auto it = in_hyp.find(f); it != in_hyp.end()) return it->second;
    return -1;
  }

  void consider_mp(int minor_idx, int major_idx) {
    const Entry& minor = entries[static_cast<size_t>(minor_idx)];
    const Entry& major = entries[static_cast<size_t>(major_idx)];
    add(Entry{major.f.rhs(), minor.theorem && major.theorem, Via::MP, {}, {}, minor_idx,
              major_idx, std::max(minor.depth, major.depth) + 1});
  }

  // worklist cascade: every rule fires as soon as its inputs exist, gated by
  // the inference depth
  void run(int depth) {
    max_depth = depth;
    for (const auto& s : seeds) add(s);
    while (!queue.empty()) {
      int idx = queue.back();
      queue.pop_back();
      Entry e = entries[static_cast<size_t>(idx)];  // copy: entries may grow
      if (e.f.kind() == Kind::Imp) {
        majors[e.f.lhs()].push_back(idx);
        if (int minor = lookup(e.f.lhs()); minor >= 0) consider_mp(minor, idx);
        if (e.theorem) {
          Formula sto = Formula::sto(e.f.lhs(), e.f.rhs());
          if (sto_targets.count(sto))
            add(Entry{sto, true, Via::Na, {}, {}, idx, -1, e.depth + 1});
        }
      }
      if (auto it = majors.find(e.f); it != majors.end()) {
        std::vector<int> ms = it->second;  // copy: firing may extend the list
        for (int major : ms) consider_mp(idx, major);
      }
    }
  }

  // wraps a theorem-tier derivation for use under gamma
  DerivPtr in_context(DerivPtr d, bool want_hyp) const {
    if (!want_hyp || gamma.empty()) return d;
    const Consecution& c = *d->declared;
    if (!c.premises.empty()) return d;
    return Derivation::weaken(std::move(d), Consecution{gamma, c.conclusion});
  }

  DerivPtr build(int idx) {
    if (auto it = built.find(idx); it != built.end()) return it->second;
    const Entry& e = entries[static_cast<size_t>(idx)];
    Consecution c{e.theorem ? FormulaSet{} : gamma, e.f};
    DerivPtr d;
    switch (e.via) {
      case Via::Premise:
        d = Derivation::el(e.f, c);
        break;
      case Via::AxInst:
        d = Derivation::ax(e.axiom, e.sigma, c);
        break;
      case Via::CurriedAx:
        d = curried(e.axiom, e.sigma);
        break;
      case Via::MP: {
        DerivPtr minor = build(e.a), major = build(e.b);
        if (!e.theorem) {
          minor = in_context(minor, true);
          major = in_context(major, true);
        }
        d = Derivation::mp(std::move(minor), std::move(major), c);
        break;
      }
      case Via::Na:
        d = Derivation::na(build(e.a), c);
        break;
    }
    built[idx] = d;
    return d;
  }

  // (A & B) -> D as an axiom instance, repackaged as A -> (B -> D)
  DerivPtr curried(const std::string& name, const Substitution& sigma) {
    Formula inst = apply_substitution(axiom_formula(name, base), sigma);
    Formula a = inst.lhs().lhs(), b = inst.lhs().rhs(), dd = inst.rhs();
    FormulaSet ab{a, b};
    DerivPtr s1 = Derivation::mp(
        Derivation::el(a, Consecution{ab, a}),
        Derivation::ax("i5", {{"p", a}, {"q", b}},
                       Consecution{ab, Formula::imp(a, Formula::imp(b, inst.lhs()))}),
        Consecution{ab, Formula::imp(b, inst.lhs())});
    DerivPtr s2 = Derivation::mp(Derivation::el(b, Consecution{ab, b}), std::move(s1),
                                 Consecution{ab, inst.lhs()});
    DerivPtr md = Derivation::mp(std::move(s2), Derivation::ax(name, sigma, Consecution{ab, inst}),
                                 Consecution{ab, dd});
    DerivPtr d1 = Derivation::ded_intro(std::move(md),
                                        Consecution{FormulaSet{a}, Formula::imp(b, dd)});
    return Derivation::ded_intro(std::move(d1),
                                 Consecution{{}, Formula::imp(a, Formula::imp(b, dd))});
  }
};

// --- certificates ------------------------------------------------------------

std::optional<DerivPtr> membership_certificate(const Consecution& c) {
  if (c.premises.count(c.conclusion)) return Derivation::el(c.conclusion, c);
  return std::nullopt;
}

std::optional<DerivPtr> axiom_certificate(const Consecution& c, const AxiomBase& base) {
  std::vector<std::pair<std::string, Formula>> schemas;
  for (const auto& [name, f] : core_axioms()) schemas.emplace_back(name, f);
  for (const auto& [name, f] : base.formulas()) schemas.emplace_back(name, f);
  for (const auto& [name, schema] : schemas)
    if (auto sigma = match_instance(schema, c.conclusion))
      return Derivation::ax(name, *sigma, c);
  return std::nullopt;
}

std::optional<DerivPtr> fixture_certificate(const Consecution& c, const AxiomBase& base,
                                            const std::vector<Fixture>* fixtures) {
  if (!fixtures) return std::nullopt;
  for (const auto& fx : *fixtures) {
    if (!fx.root.premises.empty()) continue;
    bool usable = std::includes(base.named.begin(), base.named.end(), fx.base.named.begin(),
                                fx.base.named.end()) &&
                  fx.base.user.empty();
    if (!usable) continue;
    auto sigma = match_instance(fx.root.conclusion, c.conclusion);
    if (!sigma) continue;
    DerivPtr d = Derivation::subst(*sigma, fx.derivation, Consecution{{}, c.conclusion});
    if (!c.premises.empty()) d = Derivation::weaken(std::move(d), c);
    return d;
  }
  return std::nullopt;
}

// --- countermodel search -------------------------------------------------------

// frame validity of the whole base, cached per (frame, base) across a run
bool frame_validates_base(const FlatFrame& f, const AxiomBase& base) {
  static std::mutex mu;
  static std::unordered_map<std::string, bool> cache;
  std::string key = base.key() + "#" + std::to_string(f.size()) + ":" +
                    std::to_string(canonical_code(f));
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  bool ok = true;
  for (const auto& [name, ax] : base.formulas())
    if (!validates_formula(f, ax)) {
      ok = false;
      break;
    }
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = ok;
  return ok;
}

// bundled candidate frames mirroring the shapes that refute the usual axioms
std::vector<FlatFrame> seed_frames() {
  std::vector<FlatFrame> out;
  // a fork: one world sees an incomparable pair
  out.push_back(FlatFrame::make({"w", "v", "u"}, {}, {{0, 1}, {0, 2}}));
  // a two-world cluster, each side with its own R-edge
  out.push_back(FlatFrame::make({"w", "v", "u", "s"}, {{0, 1}, {1, 0}}, {{0, 2}, {1, 3}}));
  // a fork with a shared lower bound inside the R-image
  out.push_back(
      FlatFrame::make({"w", "v", "u", "z"}, {{3, 1}, {3, 2}}, {{0, 1}, {0, 2}, {0, 3}}));
  return out;
}

struct SearchState {
  const Consecution& c;
  const AxiomBase& base;
  Clock::time_point deadline;
  std::vector<std::string> atoms;
  int frames_tried = 0;

  std::optional<Invalid> try_frame(const FlatFrame& frame) {
    ++frames_tried;
    if (!frame_validates_base(frame, base)) return std::nullopt;
    std::vector<Bits> ups = enumerate_upsets(frame);
    std::sort(ups.begin(), ups.end(), [](const Bits& a, const Bits& b) {
      if (a.count() != b.count()) return a.count() < b.count();
      return a < b;
    });
    size_t k = atoms.size(), m = ups.size();
    std::vector<size_t> idx(k, 0);
    for (;;) {
      Valuation val;
      for (size_t i = 0; i < k; ++i) val[atoms[i]] = ups[idx[i]];
      FlatModel model{frame, std::move(val)};
      Bits prem = Bits::all(frame.size());
      for (const auto& g : c.premises) prem &= truth_set(model, g).worlds;
      Bits bad = prem - truth_set(model, c.conclusion).worlds;
      if (bad.any()) return Invalid{std::move(model), bad.next(0)};
      size_t i = 0;
      for (; i < k; ++i) {
        if (++idx[i] < m) break;
        idx[i] = 0;
      }
      if (i == k) break;
    }
    return std::nullopt;
  }
};

std::optional<Invalid> scan_frames(SearchState& st, const std::vector<FlatFrame>& frames,
                                   int workers) {
  if (frames.empty()) return std::nullopt;
  if (workers <= 1 || frames.size() < 8) {
    for (const auto& f : frames) {
      if (Clock::now() > st.deadline) return std::nullopt;
      if (auto hit = st.try_frame(f)) return hit;
    }
    return std::nullopt;
  }

  // Parallel scan; the hit with the smallest index wins so results stay
  // deterministic regardless of scheduling.
  std::atomic<size_t> next{0};
  std::atomic<size_t> best_idx{frames.size()};
  std::mutex mu;
  std::optional<Invalid> best;
  std::atomic<int> tried{0};

  auto work = [&] {
    SearchState local{st.c, st.base, st.deadline, st.atoms, 0};
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= frames.size() || i > best_idx.load()) break;
      if (Clock::now() > local.deadline) break;
      if (auto hit = local.try_frame(frames[i])) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < best_idx.load()) {
          best_idx.store(i);
          best = std::move(hit);
        }
      }
    }
    tried.fetch_add(local.frames_tried);
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  st.frames_tried += tried.load();
  return best;
}

}  // namespace

std::optional<Invalid> countermodel_search(const Consecution& c, const AxiomBase& base,
                                           const Budget& b) {
  b.validate();
  SearchState st{c, base, Clock::now() + std::chrono::milliseconds(b.wall_clock_ms), {}, 0};
  for (const auto& a : atoms_of(c)) st.atoms.push_back(a);

  for (int n = 1; n <= std::min(b.max_worlds, 3); ++n) {
    if (auto hit = scan_frames(st, enumerate_frames(n, FrameMode::UpwardFlat), b.workers))
      return hit;
  }
  if (b.max_worlds >= 4) {
    std::vector<FlatFrame> seeds;
    for (auto& f : seed_frames())
      if (f.size() <= b.max_worlds) seeds.push_back(std::move(f));
    if (auto hit = scan_frames(st, seeds, 1)) return hit;

    EnumOptions opts;
    opts.sample_target = b.max_frames;
    if (auto hit = scan_frames(st, enumerate_frames(4, FrameMode::UpwardFlat, opts), b.workers))
      return hit;
  }
  return std::nullopt;
}

namespace {

bool certify_invalid(const Invalid& inv, const Consecution& c, const AxiomBase& base) {
  if (!frame_validates_base(inv.model.frame, base)) return false;
  for (const auto& g : c.premises)
    if (!forces(inv.model, inv.world, g)) return false;
  return !forces(inv.model, inv.world, c.conclusion);
}

std::optional<Valid> certify_valid(DerivPtr d, const AxiomBase& base) {
  CheckResult res = check(d, base, true);
  if (!res) return std::nullopt;
  return Valid{res.annotated};
}

Verdict decide_impl(const Consecution& c, const AxiomBase& base, const Budget& b,
                    const std::vector<Fixture>* fixtures) {
  b.validate();

  if (auto d = membership_certificate(c))
    if (auto v = certify_valid(*d, base)) return *v;
  if (auto d = axiom_certificate(c, base))
    if (auto v = certify_valid(*d, base)) return *v;
  if (auto d = fixture_certificate(c, base, fixtures))
    if (auto v = certify_valid(*d, base)) return *v;

  SatEngine engine(c.premises, base, FormulaSet{c.conclusion});
  engine.run(b.max_saturation_depth);
  if (int idx = engine.lookup(c.conclusion); idx >= 0) {
    DerivPtr d = engine.in_context(engine.build(idx), true);
    if (auto v = certify_valid(d, base)) return *v;
  }

  if (auto hit = countermodel_search(c, base, b)) {
    if (certify_invalid(*hit, c, base)) return *hit;
    throw Error("countermodel failed re-verification");  // would be a search bug
  }

  Exhausted ex;
  ex.deepest_worlds = b.max_worlds;
  ex.saturation_formulas = static_cast<int>(engine.entries.size());
  ex.report = "no proof within saturation depth " + std::to_string(b.max_saturation_depth) +
              ", no countermodel with at most " + std::to_string(b.max_worlds) + " worlds";
  return ex;
}

}  // namespace

Verdict decide(const Consecution& c, const AxiomBase& base, const Budget& b) {
  return decide_impl(c, base, b, nullptr);
}

std::vector<std::pair<Formula, DerivPtr>> saturate(const FormulaSet& gamma, const AxiomBase& base,
                                                   int depth, const FormulaSet& goals) {
  SatEngine engine(gamma, base, goals);
  engine.run(depth);
  std::vector<std::pair<Formula, DerivPtr>> out;
  out.reserve(engine.entries.size());
  for (size_t i = 0; i < engine.entries.size(); ++i)
    out.emplace_back(engine.entries[i].f,
                     engine.in_context(engine.build(static_cast<int>(i)),
                                       !engine.entries[i].theorem));
  return out;
}

DecideOracle::DecideOracle(Budget b, std::string fixtures_dir) : budget_(b) {
  budget_.validate();
  if (!fixtures_dir.empty()) fixtures_ = fixture_library(fixtures_dir);
}

OracleAnswer DecideOracle::query(const AxiomBase& base, const FormulaSet& gamma,
                                 const Formula& phi) {
  std::string key = base.key() + "|" + to_string(Consecution{gamma, phi});
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  Verdict v = decide_impl(Consecution{gamma, phi}, base, budget_,
                          fixtures_.empty() ? nullptr : &fixtures_);
  OracleAnswer ans = OracleAnswer::unknown();
  if (auto* ok = std::get_if<Valid>(&v))
    ans = OracleAnswer::yes(ok->derivation);
  else if (auto* no = std::get_if<Invalid>(&v))
    ans = OracleAnswer::no(no->model, no->world);
  std::lock_guard<std::mutex> lock(mu_);
  cache_[key] = ans;
  return ans;
}

}  // namespace hlf
