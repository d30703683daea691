#include "hlf/canonical.hpp"

#include <algorithm>

namespace hlf {

namespace {

bool ask(DerivabilityOracle& oracle, const AxiomBase& base, const FormulaSet& gamma,
         const Formula& phi) {
  OracleAnswer a = oracle.query(base, gamma, phi);
  if (a.kind == OracleAnswer::Kind::Unknown) throw OracleIncomplete(gamma, phi);
  return a.kind == OracleAnswer::Kind::Yes;
}

void require_sigma(const FormulaSet& sigma) {
  if (!sigma.count(Formula::top())) throw Error("sigma must contain truth");
  if (subformula_closure(sigma) != sigma) throw Error("sigma must be closed under subformulas");
}

// right-associated disjunction of a nonempty canonical-order list
Formula big_or(const std::vector<Formula>& fs) {
  Formula out = fs.back();
  for (size_t i = fs.size() - 1; i-- > 0;) out = Formula::disj(fs[i], out);
  return out;
}

}  // namespace

std::vector<PrimeTheory> enumerate_prime_theories(const FormulaSet& sigma, const AxiomBase& base,
                                                  DerivabilityOracle& oracle,
                                                  const CanonicalOptions& opts) {
  require_sigma(sigma);
  std::vector<Formula> sig(sigma.begin(), sigma.end());
  int k = static_cast<int>(sig.size());
  if (k > opts.max_theories)
    throw BudgetExceeded("sigma has " + std::to_string(k) + " formulas; theory enumeration capped at " +
                         std::to_string(opts.max_theories));

  std::vector<PrimeTheory> out;
  for (uint64_t mask = 0; mask < (uint64_t{1} << k); ++mask) {
    FormulaSet gamma;
    for (int i = 0; i < k; ++i)
      if (mask & (uint64_t{1} << i)) gamma.insert(sig[static_cast<size_t>(i)]);

    bool ok = true;
    // deductively closed within sigma
    for (int i = 0; ok && i < k; ++i) {
      const Formula& psi = sig[static_cast<size_t>(i)];
      if (!gamma.count(psi) && ask(oracle, base, gamma, psi)) ok = false;
    }
    // consistent
    if (ok && ask(oracle, base, gamma, Formula::bot())) ok = false;
    // prime for disjunctions of sigma members outside gamma
    if (ok) {
      std::vector<Formula> outside;
      for (const auto& f : sigma)
        if (!gamma.count(f)) outside.push_back(f);
      int m = static_cast<int>(outside.size());
      for (uint64_t dm = 0; ok && dm < (uint64_t{1} << m); ++dm) {
        int bits = __builtin_popcountll(dm);
        if (bits < 2 || bits > opts.primeness_arity) continue;
        std::vector<Formula> ds;
        for (int i = 0; i < m; ++i)
          if (dm & (uint64_t{1} << i)) ds.push_back(outside[static_cast<size_t>(i)]);
        if (ask(oracle, base, gamma, big_or(ds))) ok = false;
      }
    }
    if (ok) out.push_back(PrimeTheory{std::move(gamma)});
  }
  return out;
}

namespace {

struct SegmentContext {
  const FormulaSet& sigma;
  const std::vector<PrimeTheory>& theories;
  const AxiomBase& base;
  DerivabilityOracle& oracle;
  // derivable strict implications per theory: sto[t] = { (phi, psi) | theory t |- phi ~> psi }
  std::vector<std::vector<std::pair<Formula, Formula>>> sto;

  SegmentContext(const FormulaSet& s, const std::vector<PrimeTheory>& th, const AxiomBase& b,
                 DerivabilityOracle& o)
      : sigma(s), theories(th), base(b), oracle(o) {
    sto.resize(theories.size());
    for (size_t t = 0; t < theories.size(); ++t)
      for (const auto& phi : sigma)
        for (const auto& psi : sigma)
          if (ask(oracle, base, theories[t].members, Formula::sto(phi, psi)))
            sto[t].emplace_back(phi, psi);
  }

  bool all_contain(const std::vector<int>& u, const Formula& f) const {
    for (int i : u)
      if (!theories[static_cast<size_t>(i)].members.count(f)) return false;
    return true;
  }

  bool satisfies_s2(int theory, const std::vector<int>& u) const {
    for (const auto& [phi, psi] : sto[static_cast<size_t>(theory)])
      if (all_contain(u, phi) && !all_contain(u, psi)) return false;
    return true;
  }

  bool up_closed(const std::vector<int>& u) const {
    for (int i : u)
      for (size_t j = 0; j < theories.size(); ++j)
        if (std::includes(theories[j].members.begin(), theories[j].members.end(),
                          theories[static_cast<size_t>(i)].members.begin(),
                          theories[static_cast<size_t>(i)].members.end()) &&
            std::find(u.begin(), u.end(), static_cast<int>(j)) == u.end())
          return false;
    return true;
  }
};

CanonicalModel assemble(const FormulaSet& sigma, const AxiomBase& base,
                        std::vector<PrimeTheory> theories, std::vector<Segment> segments,
                        bool pointed) {
  int n = static_cast<int>(segments.size());
  if (n == 0) throw Error("canonical construction produced no segments");
  FlatFrame frame;
  for (int i = 0; i < n; ++i) frame.names.push_back("s" + std::to_string(i));
  frame.up.assign(static_cast<size_t>(n), Bits(n));
  frame.rel.assign(static_cast<size_t>(n), Bits(n));
  auto members = [&](int i) -> const FormulaSet& {
    return theories[static_cast<size_t>(segments[static_cast<size_t>(i)].theory)].members;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (std::includes(members(j).begin(), members(j).end(), members(i).begin(),
                        members(i).end()))
        frame.up[static_cast<size_t>(i)].set(j);
      const auto& succ = segments[static_cast<size_t>(i)].successors;
      if (std::binary_search(succ.begin(), succ.end(), segments[static_cast<size_t>(j)].theory))
        frame.rel[static_cast<size_t>(i)].set(j);
    }
  Valuation val;
  for (const auto& f : sigma)
    if (f.kind() == Kind::Atom) {
      Bits b(n);
      for (int i = 0; i < n; ++i)
        if (members(i).count(f)) b.set(i);
      val[f.atom_name()] = b;
    }
  FlatModel model = FlatModel::make(std::move(frame), std::move(val));
  if (!is_upward_flat(model.frame))
    throw Error("canonical frame is not upward-flat");  // construction bug if ever hit
  return CanonicalModel{sigma, base, std::move(theories), std::move(segments), std::move(model),
                        pointed};
}

}  // namespace

Segment u_gamma_phi(const PrimeTheory& gamma, const Formula& phi, const FormulaSet& sigma,
                    const std::vector<PrimeTheory>& theories, const AxiomBase& base,
                    DerivabilityOracle& oracle) {
  require_sigma(sigma);
  if (!sigma.count(phi)) throw Error("the generating formula must lie in sigma");
  int gi = -1;
  for (size_t i = 0; i < theories.size(); ++i)
    if (theories[i].members == gamma.members) gi = static_cast<int>(i);
  if (gi < 0) throw Error("gamma is not among the supplied theories");

  FormulaSet derivable;
  for (const auto& psi : sigma)
    if (ask(oracle, base, gamma.members, Formula::sto(phi, psi))) derivable.insert(psi);

  Segment seg;
  seg.theory = gi;
  seg.point = phi;
  for (size_t i = 0; i < theories.size(); ++i)
    if (std::includes(theories[i].members.begin(), theories[i].members.end(), derivable.begin(),
                      derivable.end()))
      seg.successors.push_back(static_cast<int>(i));

  SegmentContext ctx(sigma, theories, base, oracle);
  if (!ctx.up_closed(seg.successors) || !ctx.satisfies_s2(gi, seg.successors))
    throw Error("generated family violates the segment laws");
  if (!ctx.all_contain(seg.successors, phi))
    throw Error("generating formula missing from a family member");
  for (const auto& theta : sigma)
    if (!derivable.count(theta)) {
      bool witnessed = false;
      for (int i : seg.successors)
        if (!theories[static_cast<size_t>(i)].members.count(theta)) witnessed = true;
      if (!witnessed)
        throw Error("no family member omits " + to_string(theta) +
                    "; theory enumeration is incomplete");
    }
  return seg;
}

CanonicalModel build_full_canonical(const FormulaSet& sigma, const AxiomBase& base,
                                    DerivabilityOracle& oracle, const CanonicalOptions& opts) {
  require_sigma(sigma);
  std::vector<PrimeTheory> theories = enumerate_prime_theories(sigma, base, oracle, opts);
  int t = static_cast<int>(theories.size());
  if (t > 20) throw BudgetExceeded("too many prime theories for the power-set stage");

  SegmentContext ctx(sigma, theories, base, oracle);

  // up-closure as bitmask rows over theory indices
  std::vector<uint32_t> super(static_cast<size_t>(t), 0);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      if (std::includes(theories[static_cast<size_t>(j)].members.begin(),
                        theories[static_cast<size_t>(j)].members.end(),
                        theories[static_cast<size_t>(i)].members.begin(),
                        theories[static_cast<size_t>(i)].members.end()))
        super[static_cast<size_t>(i)] |= uint32_t{1} << j;

  std::vector<Segment> segments;
  for (uint32_t family = 0; family < (uint32_t{1} << t); ++family) {
    bool closed = true;
    for (int i = 0; closed && i < t; ++i)
      if ((family >> i) & 1)
        if ((super[static_cast<size_t>(i)] & ~family) != 0) closed = false;
    if (!closed) continue;
    std::vector<int> u;
    for (int i = 0; i < t; ++i)
      if ((family >> i) & 1) u.push_back(i);
    for (int g = 0; g < t; ++g) {
      if (!ctx.satisfies_s2(g, u)) continue;
      segments.push_back(Segment{g, u, std::nullopt});
      if (static_cast<int>(segments.size()) > opts.max_segments)
        throw BudgetExceeded("segment count exceeds " + std::to_string(opts.max_segments));
    }
  }
  return assemble(sigma, base, std::move(theories), std::move(segments), false);
}

CanonicalModel build_pointed_canonical(const FormulaSet& sigma, const AxiomBase& base,
                                       DerivabilityOracle& oracle, const CanonicalOptions& opts) {
  require_sigma(sigma);
  // With 4a in the base, the transitivity argument moves boxed formulas across
  // segments, which needs sigma closed under single boxes.
  FormulaSet sig = base.named.count("4a") ? close_under_single_boxes(sigma) : sigma;
  std::vector<PrimeTheory> theories = enumerate_prime_theories(sig, base, oracle, opts);

  std::vector<Segment> segments;
  for (const auto& gamma : theories)
    for (const auto& phi : sig) {
      Segment seg = u_gamma_phi(gamma, phi, sig, theories, base, oracle);
      bool dup = false;
      for (const auto& other : segments)
        if (other.theory == seg.theory && other.successors == seg.successors) dup = true;
      if (!dup) segments.push_back(std::move(seg));
      if (static_cast<int>(segments.size()) > opts.max_segments)
        throw BudgetExceeded("segment count exceeds " + std::to_string(opts.max_segments));
    }
  return assemble(sig, base, std::move(theories), std::move(segments), true);
}

int CanonicalModel::find_segment(const FormulaSet& theory,
                                 const std::vector<FormulaSet>& u) const {
  for (size_t i = 0; i < segments.size(); ++i) {
    if (theories[static_cast<size_t>(segments[i].theory)].members != theory) continue;
    std::vector<FormulaSet> fam;
    for (int t : segments[i].successors)
      fam.push_back(theories[static_cast<size_t>(t)].members);
    std::vector<FormulaSet> want = u;
    std::sort(fam.begin(), fam.end());
    std::sort(want.begin(), want.end());
    if (fam == want) return static_cast<int>(i);
  }
  return -1;
}

TruthLemmaReport verify_truth_lemma(const CanonicalModel& m) {
  TruthLemmaReport rep;
  for (const auto& phi : m.sigma) {
    TruthSet ts = truth_set(m.model, phi);
    for (size_t i = 0; i < m.segments.size(); ++i) {
      bool forced = ts.worlds.test(static_cast<int>(i));
      bool member =
          m.theories[static_cast<size_t>(m.segments[i].theory)].members.count(phi) > 0;
      ++rep.checks;
      if (forced != member)
        rep.violations.push_back(
            TruthLemmaReport::Violation{static_cast<int>(i), phi, forced, member});
    }
  }
  return rep;
}

}  // namespace hlf
