// Acceptance suite: every criterion below runs against the library exactly as
// shipped and prints one pass/fail line. Time limits are asserted where the
// criterion states one. Exit status is nonzero if anything fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "hlf/algebra.hpp"
#include "hlf/canonical.hpp"
#include "hlf/correspondence.hpp"
#include "hlf/decide.hpp"
#include "hlf/kripke.hpp"
#include "hlf/proof.hpp"
#include "oracle.hpp"

using namespace hlf;
using namespace hlf::testing;

namespace {

const std::string kFixtures = HLF_FIXTURE_DIR;

struct Harness {
  int failures = 0;

  template <class F>
  void criterion(int num, const std::string& name, double limit_s, F body) {
    std::vector<std::string> notes;
    bool ok = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
      ok = body(notes);
    } catch (const std::exception& e) {
      notes.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) {
      ok = false;
      notes.push_back("over the time limit of " + std::to_string(limit_s) + " s");
    }
    std::printf("criterion %2d (%s): %s [%.3f s]\n", num, name.c_str(),
                ok ? "PASS" : "FAIL", secs);
    for (const auto& n : notes) std::printf("    - %s\n", n.c_str());
    if (!ok) ++failures;
  }
};

Formula fdi() { return extension_axioms().at("di"); }

std::vector<Formula> validity_battery() {
  std::vector<Formula> out;
  for (const char* s :
       {"p | !p", "[]p -> p", "p ~> []p", "(p -> q) -> (p ~> q)", "(p ~> q) -> [](p ~> q)",
        "(p ~> r) & (q ~> r) -> ((p | q) ~> r)", "(p ~> q) & (q ~> r) -> (p ~> r)",
        "(p ~> q) & (p ~> r) -> (p ~> q & r)", "[](p -> q) -> (p ~> q)",
        "(p ~> q) -> ([]p -> []q)", "p ~> p", "!!p -> p", "((p | q) ~> r) -> (p ~> r)",
        "p -> (q -> p)", "false ~> p", "p ~> true", "[]p & []q -> [](p & q)", "p -> !!p",
        "(p ~> q) | (q ~> p)", "[]p -> [][]p", "(p -> q) | (q -> p)", "true ~> true"})
    out.push_back(parse(s));
  return out;
}

int count_four_world(const std::string& axiom, FrameMode mode) {
  CorrespondenceReport upto3 = correspondence_harness(axiom, mode, 3);
  CorrespondenceReport upto4 = correspondence_harness(axiom, mode, 4);
  if (!upto3.ok() || !upto4.ok()) return -1;
  return upto4.frames_checked - upto3.frames_checked;
}

}  // namespace

int main() {
  Harness h;

  h.criterion(1, "fork model forcing facts", 1.0, [](std::vector<std::string>& notes) {
    FlatModel m = read_model_file(kFixtures + "/ex3.2/model.fm");
    int w = m.frame.world_index("w");
    bool ok = forces(m, w, parse("p ~> r")) && forces(m, w, parse("q ~> r")) &&
              !forces(m, w, parse("(p | q) ~> r"));
    if (!ok) notes.push_back("forcing facts do not match");
    return ok;
  });

  h.criterion(2, "cluster model forcing facts", 1.0, [](std::vector<std::string>& notes) {
    FlatModel m = read_model_file(kFixtures + "/ex3.3/model.fm");
    int w = m.frame.world_index("w");
    bool ok = forces(m, w, parse("[]p -> []q")) && !forces(m, w, parse("p ~> q"));
    if (!ok) notes.push_back("forcing facts do not match");
    return ok;
  });

  h.criterion(3, "correspondence sweep, exhaustive <=3 plus sampled 4-world", 300.0,
              [](std::vector<std::string>& notes) {
                bool ok = true;
                for (const auto& row : condition_table()) {
                  int extra = count_four_world(row.axiom, row.mode);
                  if (extra < 0) {
                    notes.push_back(row.axiom + std::string(": discrepancies found"));
                    ok = false;
                  } else if (extra < 500) {
                    notes.push_back(row.axiom + std::string(": only ") +
                                    std::to_string(extra) + " four-world frames sampled");
                    ok = false;
                  } else {
                    notes.push_back(row.axiom + std::string(" (") +
                                    (row.mode == FrameMode::Flat ? "flat" : "upward-flat") +
                                    "): clean, " + std::to_string(extra) + " four-world frames");
                  }
                }
                return ok;
              });

  h.criterion(4, "complex algebra laws, validity transfer, closure invariance", 0,
              [](std::vector<std::string>& notes) {
                auto battery = validity_battery();
                int frames = 0, law_fail = 0, transfer_fail = 0, closure_fail = 0;
                for (int n = 1; n <= 3; ++n)
                  for (const auto& f : enumerate_frames(n, FrameMode::Flat)) {
                    ++frames;
                    UpsetAlgebra alg = complex_algebra(f);
                    if (!check_lhae_laws(alg).lhae_ok()) ++law_fail;
                    for (const auto& phi : battery)
                      if (validates_formula(f, phi) != algebra_validates(alg, phi))
                        ++transfer_fail;
                    if (!same_algebra(alg, complex_algebra(upward_close(f)))) ++closure_fail;
                  }
                notes.push_back(std::to_string(frames) + " flat frames, " +
                                std::to_string(battery.size()) + " battery formulas");
                if (law_fail) notes.push_back(std::to_string(law_fail) + " law failures");
                if (transfer_fail)
                  notes.push_back(std::to_string(transfer_fail) + " validity mismatches");
                if (closure_fail)
                  notes.push_back(std::to_string(closure_fail) + " closure mismatches");
                return law_fail + transfer_fail + closure_fail == 0;
              });

  h.criterion(5, "cluster construction preserves truth (all sharp models, depth-3 battery)", 0,
              [](std::vector<std::string>& notes) {
                auto battery = depth3_battery();
                long models = 0, mismatches = 0, structure_fail = 0;
                for (int n = 1; n <= 3; ++n)
                  for (const auto& raw : enumerate_frames(n, FrameMode::Sharp)) {
                    SharpFrame sf = as_sharp(raw);
                    auto ups = enumerate_upsets(raw);
                    for (const auto& pv : ups)
                      for (const auto& qv : ups) {
                        SharpModel sm = SharpModel::make(sf, {{"p", pv}, {"q", qv}});
                        SharpToFlat img = sharp_to_flat(sm);
                        ++models;
                        if (!is_upward_flat(img.model.frame) ||
                            !is_pointwise_downward_directed(img.model.frame))
                          ++structure_fail;
                        auto sharp_truth = truth_sets_sharp(sm, battery);
                        auto flat_truth = truth_sets(img.model, battery);
                        int k = img.model.frame.size();
                        for (size_t fi = 0; fi < battery.size(); ++fi) {
                          Bits expect(k);
                          for (int i = 0; i < k; ++i)
                            if (sharp_truth[fi].test(img.origin[static_cast<size_t>(i)].first))
                              expect.set(i);
                          if (expect != flat_truth[fi]) ++mismatches;
                        }
                      }
                  }
                notes.push_back(std::to_string(models) + " sharp models, " +
                                std::to_string(battery.size()) + " formulas each");
                if (structure_fail)
                  notes.push_back(std::to_string(structure_fail) + " malformed images");
                if (mismatches) notes.push_back(std::to_string(mismatches) + " truth mismatches");
                return structure_fail + mismatches == 0;
              });

  h.criterion(6, "canonical models over {true, q} with 4a", 0,
              [](std::vector<std::string>& notes) {
                DecideOracle oracle(DecideOracle::oracle_budget(), kFixtures);
                FormulaSet sigma{Formula::top(), parse("q")};
                AxiomBase base = AxiomBase::of({"4a"});

                CanonicalModel full = build_full_canonical(sigma, base, oracle);
                bool ok = full.theories.size() == 2;
                if (!ok) notes.push_back("expected exactly 2 prime theories");

                FormulaSet g{Formula::top()}, d{Formula::top(), parse("q")};
                int a = full.find_segment(g, {d});
                int b = full.find_segment(d, {g, d});
                int c = full.find_segment(g, {});
                if (a < 0 || b < 0 || c < 0) {
                  ok = false;
                  notes.push_back("witness segments missing");
                } else if (!full.model.frame.rel[static_cast<size_t>(a)].test(b) ||
                           !full.model.frame.rel[static_cast<size_t>(b)].test(c) ||
                           full.model.frame.rel[static_cast<size_t>(a)].test(c)) {
                  ok = false;
                  notes.push_back("witness triple does not break transitivity as expected");
                }
                if (cond_4a_upward(full.model.frame)) {
                  ok = false;
                  notes.push_back("full modal relation unexpectedly transitive");
                }
                if (!verify_truth_lemma(full).ok()) {
                  ok = false;
                  notes.push_back("full truth lemma violated");
                }

                CanonicalModel pointed = build_pointed_canonical(sigma, base, oracle);
                if (!cond_4a_upward(pointed.model.frame)) {
                  ok = false;
                  notes.push_back("pointed modal relation not transitive");
                }
                if (!verify_truth_lemma(pointed).ok()) {
                  ok = false;
                  notes.push_back("pointed truth lemma violated");
                }
                notes.push_back("full: " + std::to_string(full.segments.size()) +
                                " segments; pointed: " + std::to_string(pointed.segments.size()) +
                                " segments over " + std::to_string(pointed.theories.size()) +
                                " theories");
                return ok;
              });

  h.criterion(7, "directed fork validates di and refutes its relativization", 0,
              [](std::vector<std::string>& notes) {
                FlatModel m = read_model_file(kFixtures + "/ex6.1/model.fm");
                bool ok = validates_formula(m.frame, fdi());
                if (!ok) notes.push_back("frame fails di");
                Formula goal =
                    Formula::imp(Formula::atom("s"), stability_translation(fdi(), "s"));
                int w = m.frame.world_index("w");
                if (forces(m, w, goal)) {
                  ok = false;
                  notes.push_back("relativized distribution not refuted at w");
                }
                return ok;
              });

  h.criterion(8, "collapse sweeps over upward-flat frames", 0,
              [](std::vector<std::string>& notes) {
                CollapseReport rep = collapse_checks(3);
                notes.push_back(std::to_string(rep.frames_checked) + " frames");
                for (const auto& d : rep.discrepancies)
                  notes.push_back("discrepancy under " + d.which);
                return rep.ok();
              });

  h.criterion(9, "proof fixtures check and are semantically sound", 0,
              [](std::vector<std::string>& notes) {
                auto lib = fixture_library(kFixtures);
                std::set<std::string> names;
                bool ok = true;
                for (const auto& fx : lib) {
                  names.insert(fx.name);
                  if (!check(fx.derivation, fx.base)) {
                    ok = false;
                    notes.push_back(fx.name + " does not check");
                  }
                  for (int n = 1; n <= 3; ++n)
                    for (const auto& f : enumerate_frames(n, FrameMode::Flat)) {
                      bool base_ok = true;
                      for (const auto& [name, ax] : fx.base.formulas())
                        if (!validates_formula(f, ax)) base_ok = false;
                      if (base_ok && !validates_consecution(f, fx.root)) {
                        ok = false;
                        notes.push_back(fx.name + " fails on a frame validating its base");
                      }
                    }
                }
                for (const char* need : {"bl", "lb", "5.8a", "5.8b"})
                  if (!names.count(need)) {
                    ok = false;
                    notes.push_back(std::string("missing fixture ") + need);
                  }
                return ok;
              });

  h.criterion(10, "decision procedure end to end", 0, [](std::vector<std::string>& notes) {
    bool ok = true;
    using Clock = std::chrono::steady_clock;

    auto timed = [](auto fn) {
      auto t0 = Clock::now();
      auto result = fn();
      double secs = std::chrono::duration<double>(Clock::now() - t0).count();
      return std::make_pair(result, secs);
    };

    {
      auto [v, secs] = timed([] { return decide(Consecution{{}, fdi()}, {}); });
      const Invalid* inv = std::get_if<Invalid>(&v);
      if (!inv || inv->model.frame.size() > 3 || secs > 10.0) {
        ok = false;
        notes.push_back("distribution axiom: expected Invalid(<=3 worlds) within 10 s");
      } else {
        notes.push_back("distribution axiom refuted on " +
                        std::to_string(inv->model.frame.size()) + " worlds in " +
                        std::to_string(secs) + " s");
      }
    }
    {
      auto [v, secs] =
          timed([] { return decide(parse_consecution("|- ([]p -> []q) -> (p ~> q)"), {}); });
      const Invalid* inv = std::get_if<Invalid>(&v);
      if (!inv || secs > 30.0) {
        ok = false;
        notes.push_back("reverse lb: expected Invalid within 30 s");
      } else {
        notes.push_back("reverse lb refuted on " + std::to_string(inv->model.frame.size()) +
                        " worlds in " + std::to_string(secs) + " s");
      }
    }
    {
      Formula ka_inst = apply_substitution(core_axioms().at("ka"),
                                           {{"p", parse("a & b")}, {"q", parse("!c")}});
      Formula tr_inst = apply_substitution(core_axioms().at("tr"), {{"q", parse("a | b")}});
      auto t0 = Clock::now();
      bool all_valid = true;
      for (const Formula& f : {parse("p ~> p"), ka_inst, tr_inst}) {
        Verdict v = decide(Consecution{{}, f}, {});
        const Valid* ok_v = std::get_if<Valid>(&v);
        if (!ok_v || !check(ok_v->derivation, {})) all_valid = false;
      }
      double secs = std::chrono::duration<double>(Clock::now() - t0).count();
      if (!all_valid || secs > 1.0) {
        ok = false;
        notes.push_back("certificate lookups: expected three Valid verdicts within 1 s");
      } else {
        notes.push_back("reflexivity, ka and tr instances certified in " +
                        std::to_string(secs) + " s");
      }
    }
    {
      Budget b;
      b.max_worlds = 3;
      int contradictions = 0;
      for (const auto& [name, ax] : extension_axioms()) {
        Verdict v = decide(Consecution{{}, ax}, {}, b);
        auto refuted = countermodel_search(Consecution{{}, ax}, {}, b);
        if (std::get_if<Valid>(&v) && refuted.has_value()) ++contradictions;
      }
      for (const char* name : {"ka", "tr"}) {
        Verdict v = decide(Consecution{{}, core_axioms().at(name)}, {}, b);
        auto refuted = countermodel_search(Consecution{{}, core_axioms().at(name)}, {}, b);
        if (std::get_if<Valid>(&v) && refuted.has_value()) ++contradictions;
      }
      if (contradictions) {
        ok = false;
        notes.push_back(std::to_string(contradictions) + " valid-and-refuted contradictions");
      } else {
        notes.push_back("no contradictions across the named-axiom battery");
      }
    }
    return ok;
  });

  if (h.failures) {
    std::printf("%d criterion(s) FAILED\n", h.failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
