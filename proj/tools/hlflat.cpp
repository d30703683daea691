// hlflat: workbench for flat Heyting-Lewis logic. Parse formulas, evaluate
// models, sweep frame classes for correspondence and collapse facts, build
// canonical models, decide consecutions within a budget, and re-run the
// bundled reproduction fixtures.

#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hlf/algebra.hpp"
#include "hlf/canonical.hpp"
#include "hlf/correspondence.hpp"
#include "hlf/decide.hpp"
#include "hlf/kripke.hpp"
#include "hlf/proof.hpp"
#include "hlf/syntax.hpp"

using json = nlohmann::json;
using namespace hlf;

namespace {

#ifndef HLF_FIXTURE_DIR
#define HLF_FIXTURE_DIR "fixtures"
#endif

std::string g_fixtures = HLF_FIXTURE_DIR;

// formula arguments: plain text, or @name for a registered axiom
Formula arg_formula(const std::string& text) {
  if (!text.empty() && text[0] == '@') {
    std::string name = text.substr(1);
    if (auto it = core_axioms().find(name); it != core_axioms().end()) return it->second;
    if (auto it = extension_axioms().find(name); it != extension_axioms().end())
      return it->second;
    throw Error("unknown axiom name: " + name);
  }
  return parse(text);
}

const char* mode_name(FrameMode m) {
  switch (m) {
    case FrameMode::Flat: return "flat";
    case FrameMode::UpwardFlat: return "upward-flat";
    case FrameMode::Sharp: return "sharp";
  }
  return "?";
}

json frame_json(const FlatFrame& f) {
  json j;
  j["worlds"] = f.names;
  std::vector<std::string> pre, rel;
  for (int w = 0; w < f.size(); ++w)
    for (int v = 0; v < f.size(); ++v) {
      if (w != v && f.leq(w, v)) pre.push_back(f.world_name(w) + "<=" + f.world_name(v));
      if (f.rel[static_cast<size_t>(w)].test(v))
        rel.push_back(f.world_name(w) + "->" + f.world_name(v));
    }
  j["pre"] = pre;
  j["R"] = rel;
  return j;
}

json model_json(const FlatModel& m) {
  json j = frame_json(m.frame);
  json val = json::object();
  for (const auto& [p, ws] : m.val) {
    std::vector<std::string> worlds;
    ws.for_each([&](int w) { worlds.push_back(m.frame.world_name(w)); });
    val[p] = worlds;
  }
  j["val"] = val;
  return j;
}

struct Reproduction {
  std::string name;
  bool ok = true;
  std::vector<std::pair<std::string, bool>> facts;

  void expect(const std::string& what, bool got) {
    facts.emplace_back(what, got);
    ok = ok && got;
  }
};

void print_reproduction(const Reproduction& r, bool as_json) {
  if (as_json) {
    json j;
    j["name"] = r.name;
    j["ok"] = r.ok;
    json facts = json::array();
    for (const auto& [what, got] : r.facts) facts.push_back({{"fact", what}, {"holds", got}});
    j["facts"] = facts;
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto& [what, got] : r.facts)
    std::cout << "  " << (got ? "ok   " : "FAIL ") << what << "\n";
  std::cout << r.name << ": " << (r.ok ? "pass" : "FAIL") << "\n";
}

FlatModel fixture_model(const std::string& name) {
  return read_model_file(g_fixtures + "/" + name + "/model.fm");
}

Formula fdi() { return extension_axioms().at("di"); }

Reproduction reproduce_ex32() {
  Reproduction r{"ex3.2"};
  FlatModel m = fixture_model("ex3.2");
  int w = m.frame.world_index("w");
  r.expect("w forces p ~> r", forces(m, w, parse("p ~> r")));
  r.expect("w forces q ~> r", forces(m, w, parse("q ~> r")));
  r.expect("w does not force (p | q) ~> r", !forces(m, w, parse("(p | q) ~> r")));
  return r;
}

Reproduction reproduce_ex33() {
  Reproduction r{"ex3.3"};
  FlatModel m = fixture_model("ex3.3");
  int w = m.frame.world_index("w");
  r.expect("w forces []p -> []q", forces(m, w, parse("[]p -> []q")));
  r.expect("w does not force p ~> q", !forces(m, w, parse("p ~> q")));
  return r;
}

Reproduction reproduce_ex51() {
  Reproduction r{"ex5.1"};
  DecideOracle oracle(DecideOracle::oracle_budget(), g_fixtures);
  FormulaSet sigma{Formula::top(), parse("q")};
  AxiomBase base = AxiomBase::of({"4a"});

  CanonicalModel full = build_full_canonical(sigma, base, oracle);
  r.expect("exactly two prime theories", full.theories.size() == 2);
  FormulaSet g{Formula::top()}, d{Formula::top(), parse("q")};
  int a = full.find_segment(g, {d});
  int b = full.find_segment(d, {g, d});
  int c = full.find_segment(g, {});
  r.expect("the witness segments exist", a >= 0 && b >= 0 && c >= 0);
  if (a >= 0 && b >= 0 && c >= 0) {
    r.expect("(gamma,{delta}) R (delta,{gamma,delta}) R (gamma,{})",
             full.model.frame.rel[static_cast<size_t>(a)].test(b) &&
                 full.model.frame.rel[static_cast<size_t>(b)].test(c));
    r.expect("(gamma,{delta}) does not reach (gamma,{})",
             !full.model.frame.rel[static_cast<size_t>(a)].test(c));
  }
  r.expect("full modal relation is not transitive", !cond_4a_upward(full.model.frame));
  r.expect("full truth lemma holds", verify_truth_lemma(full).ok());

  CanonicalModel pointed = build_pointed_canonical(sigma, base, oracle);
  r.expect("pointed modal relation is transitive", cond_4a_upward(pointed.model.frame));
  r.expect("pointed truth lemma holds", verify_truth_lemma(pointed).ok());
  return r;
}

Reproduction reproduce_ex61() {
  Reproduction r{"ex6.1"};
  FlatModel m = fixture_model("ex6.1");
  r.expect("frame is upward-flat", is_upward_flat(m.frame));
  r.expect("frame is pointwise downward directed", is_pointwise_downward_directed(m.frame));
  r.expect("frame validates di", validates_formula(m.frame, fdi()));
  return r;
}

Reproduction reproduce_thm62() {
  Reproduction r{"thm6.2"};
  FlatModel m = fixture_model("ex6.1");
  r.expect("frame validates di", validates_formula(m.frame, fdi()));
  Formula goal = Formula::imp(Formula::atom("s"), stability_translation(fdi(), "s"));
  int w = m.frame.world_index("w");
  r.expect("w forces s", forces(m, w, Formula::atom("s")));
  r.expect("w does not force s -> st_s(di)", !forces(m, w, goal));
  return r;
}

Reproduction reproduce_rem56() {
  Reproduction r{"rem5.6"};
  CollapseReport rep = collapse_checks(3);
  bool clean = true;
  for (const auto& d : rep.discrepancies)
    if (d.which == "em+str") clean = false;
  r.expect("strict implication matches (p -> q) | []false under em+str", clean);
  return r;
}

Reproduction reproduce_rem57() {
  Reproduction r{"rem5.7"};
  CollapseReport rep = collapse_checks(3);
  bool clean = true;
  for (const auto& d : rep.discrepancies)
    if (d.which == "str+tbox") clean = false;
  r.expect("strict implication collapses to -> under str+tbox", clean);
  return r;
}

Reproduction reproduce_lem39() {
  Reproduction r{"lem3.9"};
  bool clean = true;
  for (int n = 1; n <= 3 && clean; ++n)
    for (const auto& f : enumerate_frames(n, FrameMode::Flat))
      if (is_pointwise_downward_directed(f) && !validates_formula(f, fdi())) clean = false;
  r.expect("pointwise downward directed frames validate di (all flat frames <= 3 worlds)",
           clean);
  r.expect("the bundled 4-world frame is an instance",
           is_pointwise_downward_directed(fixture_model("ex6.1").frame));
  return r;
}

Reproduction reproduce_table1(int max_worlds) {
  Reproduction r{"table1"};
  for (const auto& row : condition_table()) {
    CorrespondenceReport rep = correspondence_harness(row.axiom, row.mode, max_worlds);
    r.expect(row.axiom + std::string(" on ") + mode_name(row.mode) + " frames (" +
                 std::to_string(rep.frames_checked) + " frames)",
             rep.ok());
  }
  return r;
}

int run_reproduce(const std::string& name, int max_worlds, bool as_json) {
  std::vector<Reproduction> runs;
  auto dispatch = [&](const std::string& n) {
    if (n == "ex3.2") return reproduce_ex32();
    if (n == "ex3.3") return reproduce_ex33();
    if (n == "ex5.1") return reproduce_ex51();
    if (n == "ex6.1") return reproduce_ex61();
    if (n == "thm6.2") return reproduce_thm62();
    if (n == "rem5.6") return reproduce_rem56();
    if (n == "rem5.7") return reproduce_rem57();
    if (n == "lem3.9") return reproduce_lem39();
    if (n == "table1") return reproduce_table1(max_worlds);
    throw Error("unknown reproduction fixture: " + n);
  };
  const std::vector<std::string> all = {"ex3.2",  "ex3.3",  "ex5.1",  "ex6.1", "thm6.2",
                                        "rem5.6", "rem5.7", "lem3.9", "table1"};
  if (name == "all")
    for (const auto& n : all) runs.push_back(dispatch(n));
  else
    runs.push_back(dispatch(name));
  bool ok = true;
  for (const auto& r : runs) {
    print_reproduction(r, as_json);
    ok = ok && r.ok;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for flat Heyting-Lewis logic"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--fixtures", g_fixtures, "fixture directory")->envname("HLF_FIXTURES");

  auto* cmd_parse = app.add_subcommand("parse", "parse a formula and print it back");
  std::string parse_text;
  cmd_parse->add_option("formula", parse_text)->required();

  auto* cmd_eval = app.add_subcommand("eval", "evaluate a formula on a model file");
  std::string eval_file, eval_formula, eval_world;
  bool eval_upclose = false;
  cmd_eval->add_option("model", eval_file)->required();
  cmd_eval->add_option("formula", eval_formula)->required();
  cmd_eval->add_option("--world", eval_world, "report only this world");
  cmd_eval->add_flag("--upclose", eval_upclose, "repair non-upset valuations");

  auto* cmd_validate = app.add_subcommand("validate", "frame validity of a consecution");
  std::string val_file, val_consecution;
  cmd_validate->add_option("model", val_file)->required();
  cmd_validate->add_option("consecution", val_consecution, "e.g. \"p; p -> q |- q\"")
      ->required();

  auto* cmd_algebra = app.add_subcommand("algebra", "complex algebra of a frame");
  std::string alg_file;
  cmd_algebra->add_option("model", alg_file)->required();

  auto* cmd_corr = app.add_subcommand("correspond", "axiom/frame-condition sweep");
  std::string corr_axiom, corr_mode = "upward-flat";
  int corr_max = 3;
  cmd_corr->add_option("--axiom", corr_axiom, "em, tbox, 4a, str or pa")->required();
  cmd_corr->add_option("--mode", corr_mode, "upward-flat or flat");
  cmd_corr->add_option("--max-worlds", corr_max)->check(CLI::Range(1, 4));

  auto* cmd_canon = app.add_subcommand("canonical", "finite canonical model");
  std::string canon_sigma, canon_axioms;
  bool canon_pointed = false;
  std::string canon_dot;
  cmd_canon
      ->add_option("--sigma", canon_sigma, "comma-separated formulas; closed automatically")
      ->required();
  cmd_canon->add_option("--axioms", canon_axioms, "e.g. 4a,tbox");
  cmd_canon->add_flag("--pointed", canon_pointed);
  cmd_canon->add_option("--dot", canon_dot, "write a graph description here");

  auto* cmd_decide = app.add_subcommand("decide", "prove or refute a consecution");
  std::string dec_consecution, dec_axioms, dec_emit;
  Budget dec_budget;
  cmd_decide->add_option("consecution", dec_consecution)->required();
  cmd_decide->add_option("--axioms", dec_axioms);
  cmd_decide->add_option("--max-worlds", dec_budget.max_worlds)->check(CLI::Range(1, 4));
  cmd_decide->add_option("--depth", dec_budget.max_saturation_depth);
  cmd_decide->add_option("--workers", dec_budget.workers);
  cmd_decide->add_option("--emit-model", dec_emit, "write a refutation model file");

  auto* cmd_trans = app.add_subcommand("translate", "sharp2flat or stability");
  std::string trans_kind, trans_input, trans_fresh = "s", trans_out;
  cmd_trans->add_option("kind", trans_kind, "sharp2flat | stability")->required();
  cmd_trans->add_option("input", trans_input, "model file, or formula text")->required();
  cmd_trans->add_option("--fresh", trans_fresh, "fresh atom for stability");
  cmd_trans->add_option("-o,--out", trans_out, "output file (default stdout)");

  auto* cmd_repro = app.add_subcommand("reproduce", "re-run a bundled fixture");
  std::string repro_name;
  int repro_max = 3;
  cmd_repro
      ->add_option("name", repro_name,
                   "ex3.2 ex3.3 ex5.1 ex6.1 thm6.2 rem5.6 rem5.7 lem3.9 table1 all")
      ->required();
  cmd_repro->add_option("--max-worlds", repro_max)->check(CLI::Range(1, 4));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_parse) {
      Formula f = arg_formula(parse_text);
      if (as_json) {
        json j;
        j["formula"] = to_string(f);
        j["atoms"] = atoms_of(f);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << to_string(f) << "\n";
      }
      return 0;
    }

    if (*cmd_eval) {
      std::ifstream in(eval_file);
      if (!in) throw Error("cannot open model file: " + eval_file);
      FlatModel m = read_model(in, eval_upclose);
      Formula f = arg_formula(eval_formula);
      TruthSet t = truth_set(m, f);
      if (!eval_world.empty()) {
        int w = m.frame.world_index(eval_world);
        if (w < 0) throw Error("unknown world: " + eval_world);
        bool holds = t.worlds.test(w);
        if (as_json) {
          json j{{"formula", to_string(f)}, {"world", eval_world}, {"forces", holds}};
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << eval_world << (holds ? " forces " : " does not force ") << to_string(f)
                    << "\n";
        }
        return holds ? 0 : 1;
      }
      std::vector<std::string> where;
      t.worlds.for_each([&](int w) { where.push_back(m.frame.world_name(w)); });
      if (as_json) {
        json j{{"formula", to_string(f)}, {"truth_set", where}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "truth set of " << to_string(f) << ":";
        for (const auto& w : where) std::cout << " " << w;
        std::cout << "\n";
      }
      return 0;
    }

    if (*cmd_validate) {
      FlatModel m = read_model_file(val_file);
      Consecution c = parse_consecution(val_consecution);
      bool ok = validates_consecution(m.frame, c);
      if (as_json) {
        json j{{"consecution", to_string(c)}, {"valid", ok}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "frame " << (ok ? "validates " : "does not validate ") << to_string(c)
                  << "\n";
      }
      return ok ? 0 : 1;
    }

    if (*cmd_algebra) {
      FlatModel m = read_model_file(alg_file);
      UpsetAlgebra alg = complex_algebra(m.frame);
      LawReport rep = check_lhae_laws(alg);
      if (as_json) {
        json j;
        j["carrier_size"] = alg.carrier.size();
        json laws = json::object();
        for (const auto& e : rep.entries) laws[e.law] = e.pass;
        j["laws"] = laws;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "carrier size: " << alg.carrier.size() << "\n";
        for (const auto& e : rep.entries) {
          std::cout << "law " << e.law << ": " << (e.pass ? "pass" : "fail");
          if (!e.pass && e.witness) {
            const auto& w = *e.witness;
            std::cout << "  (a=" << alg.element_name(w[0]) << " b=" << alg.element_name(w[1])
                      << " c=" << alg.element_name(w[2]) << ")";
          }
          std::cout << "\n";
        }
      }
      return rep.lhae_ok() ? 0 : 1;
    }

    if (*cmd_corr) {
      FrameMode mode;
      if (corr_mode == "upward-flat")
        mode = FrameMode::UpwardFlat;
      else if (corr_mode == "flat")
        mode = FrameMode::Flat;
      else
        throw Error("mode must be upward-flat or flat");
      CorrespondenceReport rep = correspondence_harness(corr_axiom, mode, corr_max);
      if (as_json) {
        json j{{"axiom", rep.axiom},
               {"mode", mode_name(rep.mode)},
               {"frames_checked", rep.frames_checked},
               {"discrepancies", json::array()}};
        for (const auto& d : rep.discrepancies)
          j["discrepancies"].push_back({{"frame", frame_json(d.frame)},
                                        {"axiom_valid", d.axiom_valid},
                                        {"condition_holds", d.condition_holds}});
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << corr_axiom << " on " << corr_mode << " frames: checked "
                  << rep.frames_checked << ", " << rep.discrepancies.size()
                  << " discrepancies\n";
        for (const auto& d : rep.discrepancies) {
          std::cout << "discrepancy (axiom " << (d.axiom_valid ? "valid" : "invalid")
                    << ", condition " << (d.condition_holds ? "holds" : "fails") << "):\n"
                    << write_model(FlatModel{d.frame, {}});
        }
      }
      return rep.ok() ? 0 : 1;
    }

    if (*cmd_canon) {
      FormulaSet sigma{Formula::top()};
      std::string cur;
      auto flush = [&] {
        bool blank = true;
        for (char ch : cur)
          if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
        if (!blank) sigma.insert(arg_formula(cur));
        cur.clear();
      };
      for (char ch : canon_sigma) {
        if (ch == ',')
          flush();
        else
          cur += ch;
      }
      flush();
      sigma = subformula_closure(sigma);
      AxiomBase base = parse_axiom_base(canon_axioms);
      DecideOracle oracle(DecideOracle::oracle_budget(), g_fixtures);
      CanonicalModel m = canon_pointed ? build_pointed_canonical(sigma, base, oracle)
                                       : build_full_canonical(sigma, base, oracle);
      TruthLemmaReport tl = verify_truth_lemma(m);

      if (!canon_dot.empty()) {
        std::ofstream out(canon_dot);
        out << "digraph canonical {\n";
        for (size_t i = 0; i < m.segments.size(); ++i)
          out << "  s" << i << " [label=\""
              << to_string(m.theories[static_cast<size_t>(m.segments[i].theory)].members)
              << "\"];\n";
        for (int w = 0; w < m.model.frame.size(); ++w)
          m.model.frame.rel[static_cast<size_t>(w)].for_each(
              [&](int v) { out << "  s" << w << " -> s" << v << ";\n"; });
        out << "}\n";
      }

      if (as_json) {
        json j;
        j["pointed"] = m.pointed;
        j["sigma"] = json::array();
        for (const auto& f : m.sigma) j["sigma"].push_back(to_string(f));
        j["theories"] = json::array();
        for (const auto& t : m.theories) j["theories"].push_back(to_string(t.members));
        j["segments"] = json::array();
        for (const auto& s : m.segments) {
          json seg{{"theory", s.theory}, {"successors", s.successors}};
          if (s.point) seg["point"] = to_string(*s.point);
          j["segments"].push_back(seg);
        }
        j["frame"] = frame_json(m.model.frame);
        j["truth_lemma_ok"] = tl.ok();
        j["truth_lemma_checks"] = tl.checks;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << (m.pointed ? "pointed" : "full") << " canonical model over "
                  << to_string(m.sigma) << "\n";
        std::cout << m.theories.size() << " prime theories:\n";
        for (size_t i = 0; i < m.theories.size(); ++i)
          std::cout << "  t" << i << " = " << to_string(m.theories[i].members) << "\n";
        std::cout << m.segments.size() << " segments:\n";
        for (size_t i = 0; i < m.segments.size(); ++i) {
          std::cout << "  s" << i << " = (t" << m.segments[i].theory << ", {";
          for (size_t k = 0; k < m.segments[i].successors.size(); ++k)
            std::cout << (k ? ", " : "") << "t" << m.segments[i].successors[k];
          std::cout << "})";
          if (m.segments[i].point) std::cout << "  via " << to_string(*m.segments[i].point);
          std::cout << "\n";
        }
        std::cout << "modal edges:\n" << write_model(m.model);
        std::cout << "truth lemma: " << (tl.ok() ? "holds" : "VIOLATED") << " (" << tl.checks
                  << " checks)\n";
      }
      return tl.ok() ? 0 : 1;
    }

    if (*cmd_decide) {
      Consecution c = parse_consecution(dec_consecution);
      AxiomBase base = parse_axiom_base(dec_axioms);
      DecideOracle oracle(dec_budget, g_fixtures);
      OracleAnswer a = oracle.query(base, c.premises, c.conclusion);
      if (a.kind == OracleAnswer::Kind::Yes) {
        if (as_json) {
          json j{{"verdict", "valid"}, {"derivation", write_derivation(a.derivation)}};
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "valid:\n" << write_derivation(a.derivation);
        }
        return 0;
      }
      if (a.kind == OracleAnswer::Kind::No) {
        const auto& [model, world] = *a.counter;
        if (!dec_emit.empty()) {
          std::ofstream out(dec_emit);
          out << write_model(model);
        }
        if (as_json) {
          json j{{"verdict", "invalid"},
                 {"world", model.frame.world_name(world)},
                 {"model", model_json(model)}};
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << "invalid at world " << model.frame.world_name(world) << ":\n"
                    << write_model(model);
        }
        return 1;
      }
      if (as_json) {
        json j{{"verdict", "exhausted"},
               {"max_worlds", dec_budget.max_worlds},
               {"depth", dec_budget.max_saturation_depth}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "exhausted: no proof within depth " << dec_budget.max_saturation_depth
                  << ", no countermodel with at most " << dec_budget.max_worlds << " worlds\n";
      }
      return 2;
    }

    if (*cmd_trans) {
      if (trans_kind == "sharp2flat") {
        SharpModel sm = read_sharp_model_file(trans_input);
        SharpToFlat img = sharp_to_flat(sm);
        std::string text = write_model(img.model);
        if (!trans_out.empty()) {
          std::ofstream out(trans_out);
          out << text;
        } else if (as_json) {
          std::cout << model_json(img.model).dump(2) << "\n";
        } else {
          std::cout << text;
        }
        return 0;
      }
      if (trans_kind == "stability") {
        Formula f = arg_formula(trans_input);
        Formula t = stability_translation(f, trans_fresh);
        std::string text = to_string(t);
        if (!trans_out.empty()) {
          std::ofstream out(trans_out);
          out << text << "\n";
        } else if (as_json) {
          json j{{"input", to_string(f)}, {"fresh", trans_fresh}, {"result", text}};
          std::cout << j.dump(2) << "\n";
        } else {
          std::cout << text << "\n";
        }
        return 0;
      }
      throw Error("translate kind must be sharp2flat or stability");
    }

    if (*cmd_repro) return run_reproduce(repro_name, repro_max, as_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
