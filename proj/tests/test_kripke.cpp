#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "hlf/kripke.hpp"
#include "oracle.hpp"

using namespace hlf;
using namespace hlf::testing;

namespace {

Formula fdi() { return parse("(p ~> r) & (q ~> r) -> ((p | q) ~> r)"); }

std::vector<Formula> small_battery() {
  std::vector<Formula> out;
  for (const char* s :
       {"p ~> p", "p -> q", "p | !p", "[]p -> p", "p ~> []p", "(p -> q) -> (p ~> q)",
        "(p ~> q) -> [](p ~> q)", "(p ~> r) & (q ~> r) -> ((p | q) ~> r)",
        "(p ~> q) & (q ~> r) -> (p ~> r)", "[](p -> q) -> (p ~> q)",
        "(p ~> q) -> ([]p -> []q)", "p & q -> q | r", "!!p -> p", "[]p & []q"})
    out.push_back(parse(s));
  return out;
}

}  // namespace

TEST_CASE("forcing facts on the fork model") {
  FlatModel m = fork_model();
  int w = m.frame.world_index("w");
  CHECK(forces(m, w, parse("p ~> r")));
  CHECK(forces(m, w, parse("q ~> r")));
  CHECK(!forces(m, w, parse("(p | q) ~> r")));
  CHECK(forces(m, w, Formula::top()));
  CHECK(!forces(m, w, Formula::bot()));
  CHECK_THROWS_AS(forces(m, 17, Formula::top()), Error);
}

TEST_CASE("forcing facts on the cluster model") {
  FlatModel m = cluster_model();
  int w = m.frame.world_index("w");
  CHECK(forces(m, w, parse("[]p -> []q")));
  CHECK(!forces(m, w, parse("p ~> q")));
}

TEST_CASE("truth sets on the fork model") {
  FlatModel m = fork_model();
  TruthSet pq = truth_set(m, parse("p | q"));
  Bits expect(3);
  expect.set(1);
  expect.set(2);
  CHECK(pq.worlds == expect);

  // frozen from the clause-by-clause reference evaluator: the ~> clause is
  // vacuously true at v and u (no R-successors) and true at w
  TruthSet pr = truth_set(m, parse("p ~> r"));
  CHECK(pr.worlds == Bits::all(3));
  for (int w = 0; w < 3; ++w) CHECK(naive_forces(m, w, parse("p ~> r")));

  CHECK(truth_set(m, Formula::bot()).worlds == Bits(3));
}

TEST_CASE("evaluator agrees with the reference clauses on random models") {
  std::mt19937_64 rng(23);
  auto frames = enumerate_frames(3, FrameMode::Flat);
  std::uniform_int_distribution<size_t> pick(0, frames.size() - 1);
  for (int round = 0; round < 120; ++round) {
    const FlatFrame& f = frames[pick(rng)];
    auto ups = enumerate_upsets(f);
    std::uniform_int_distribution<size_t> vpick(0, ups.size() - 1);
    FlatModel m{f, {{"p", ups[vpick(rng)]}, {"q", ups[vpick(rng)]}}};
    Formula g = random_formula(rng, 4, {"p", "q"});
    TruthSet t = truth_set(m, g);
    for (int w = 0; w < f.size(); ++w) CHECK(t.worlds.test(w) == naive_forces(m, w, g));
  }
}

TEST_CASE("heredity on enumerated models") {
  auto battery = small_battery();
  for (int n = 1; n <= 3; ++n)
    for (const auto& f : enumerate_frames(n, FrameMode::Flat)) {
      auto ups = enumerate_upsets(f);
      // a couple of valuations per frame is plenty here
      for (size_t vi = 0; vi < ups.size(); vi += 3) {
        FlatModel m{f, {{"p", ups[vi]}, {"q", ups[(vi * 7 + 1) % ups.size()]}}};
        for (const auto& g : battery) {
          TruthSet t = truth_set(m, g);
          for (int w = 0; w < f.size(); ++w)
            if (t.worlds.test(w)) CHECK(f.up[static_cast<size_t>(w)].subset_of(t.worlds));
        }
      }
    }
}

TEST_CASE("forcing ignores atoms that do not occur") {
  std::mt19937_64 rng(29);
  auto frames = enumerate_frames(3, FrameMode::Flat);
  std::uniform_int_distribution<size_t> pick(0, frames.size() - 1);
  for (int round = 0; round < 100; ++round) {
    const FlatFrame& f = frames[pick(rng)];
    auto ups = enumerate_upsets(f);
    std::uniform_int_distribution<size_t> vpick(0, ups.size() - 1);
    Formula g = random_formula(rng, 3, {"p"});
    Bits pv = ups[vpick(rng)];
    FlatModel m1{f, {{"p", pv}, {"q", ups[vpick(rng)]}}};
    FlatModel m2{f, {{"p", pv}, {"q", ups[vpick(rng)]}}};
    CHECK(truth_set(m1, g).worlds == truth_set(m2, g).worlds);
  }
}

TEST_CASE("frame validity") {
  FlatModel fork = fork_model();
  CHECK(!validates_formula(fork.frame, fdi()));
  CHECK(validates_formula(fork.frame, parse("p ~> p")));
  CHECK(validates_formula(directed_fork_frame(), fdi()));
  CHECK(validates_consecution(fork.frame, parse_consecution("p; q |- p & q")));
  CHECK(!validates_consecution(fork.frame, parse_consecution("p | q |- p")));
}

TEST_CASE("upward-flat recognition and closure") {
  FlatModel fork = fork_model();
  CHECK(is_upward_flat(fork.frame));

  FlatFrame bad = FlatFrame::make({"w", "v", "u"}, {{1, 2}}, {{0, 1}});
  CHECK(!is_upward_flat(bad));
  FlatFrame closed = upward_close(bad);
  CHECK(is_upward_flat(closed));
  CHECK(closed.rel[0].test(1));
  CHECK(closed.rel[0].test(2));  // composed through v <= u

  // closure is idempotent and fixes upward-flat frames
  CHECK(upward_close(closed).rel == closed.rel);
  FlatModel cluster = cluster_model();
  CHECK(upward_close(cluster.frame).rel == cluster.frame.rel);
}

TEST_CASE("validity is blind to upward closure") {
  auto battery = small_battery();
  for (int n = 1; n <= 3; ++n)
    for (const auto& f : enumerate_frames(n, FrameMode::Flat)) {
      FlatFrame g = upward_close(f);
      for (const auto& phi : battery)
        CHECK(validates_formula(f, phi) == validates_formula(g, phi));
    }
}

TEST_CASE("pointwise downward directedness") {
  CHECK(is_pointwise_downward_directed(directed_fork_frame()));
  CHECK(!is_pointwise_downward_directed(fork_model().frame));
  FlatFrame empty_rel = FlatFrame::make({"w", "v"}, {{0, 1}}, {});
  CHECK(is_pointwise_downward_directed(empty_rel));
  FlatFrame singletons = FlatFrame::make({"w", "v"}, {}, {{0, 1}, {1, 0}});
  CHECK(is_pointwise_downward_directed(singletons));
}

TEST_CASE("directedness forces di on every enumerated flat frame") {
  Formula d = fdi();
  for (int n = 1; n <= 3; ++n)
    for (const auto& f : enumerate_frames(n, FrameMode::Flat))
      if (is_pointwise_downward_directed(f)) CHECK(validates_formula(f, d));
}

TEST_CASE("cluster construction on tiny orders") {
  SharpFrame one = SharpFrame::make({"w"}, {}, {});
  SharpToFlat t1 = sharp_to_flat(SharpModel::make(one, {}));
  CHECK(t1.model.frame.size() == 1);
  CHECK(t1.origin[0] == std::pair<int, int>(0, -1));
  CHECK(t1.model.frame.rel[0].none());

  SharpFrame two = SharpFrame::make({"w", "v"}, {}, {{0, 1}});
  SharpToFlat t2 = sharp_to_flat(SharpModel::make(two, {}));
  REQUIRE(t2.model.frame.size() == 2);
  CHECK(t2.origin[0] == std::pair<int, int>(0, 1));
  CHECK(t2.origin[1] == std::pair<int, int>(1, -1));
  CHECK(t2.model.frame.rel[0].test(1));
  CHECK(!t2.model.frame.rel[1].test(0));
}

TEST_CASE("cluster construction preserves truth") {
  auto battery = depth3_battery();
  int models = 0;
  for (int n = 1; n <= 3; ++n)
    for (const auto& raw : enumerate_frames(n, FrameMode::Sharp)) {
      SharpFrame sf = as_sharp(raw);
      auto ups = enumerate_upsets(raw);
      // subsample valuations to keep this test quick; the acceptance suite
      // runs the full sweep
      for (size_t a = 0; a < ups.size(); a += 2)
        for (size_t b = 0; b < ups.size(); b += 3) {
          SharpModel sm = SharpModel::make(sf, {{"p", ups[a]}, {"q", ups[b]}});
          SharpToFlat img = sharp_to_flat(sm);
          CHECK(is_upward_flat(img.model.frame));
          CHECK(is_pointwise_downward_directed(img.model.frame));
          ++models;
          for (size_t fi = 0; fi < battery.size(); fi += 17) {
            Bits sharp_truth = truth_set_sharp(sm, battery[fi]);
            TruthSet flat_truth = truth_set(img.model, battery[fi]);
            for (size_t i = 0; i < img.origin.size(); ++i)
              CHECK(flat_truth.worlds.test(static_cast<int>(i)) ==
                    sharp_truth.test(img.origin[i].first));
          }
        }
    }
  CHECK(models > 50);
}

TEST_CASE("frame enumeration, one world") {
  auto flat = enumerate_frames(1, FrameMode::Flat);
  CHECK(flat.size() == 2);  // R empty or the single loop
  auto sharp = enumerate_frames(1, FrameMode::Sharp);
  CHECK(sharp.size() == 2);
}

TEST_CASE("enumerated frames satisfy their mode invariants") {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& f : enumerate_frames(n, FrameMode::UpwardFlat)) CHECK(is_upward_flat(f));
    for (const auto& f : enumerate_frames(n, FrameMode::Sharp)) CHECK_NOTHROW(as_sharp(f));
  }
  EnumOptions opts;
  opts.sample_target = 50;
  for (const auto& f : enumerate_frames(4, FrameMode::UpwardFlat, opts)) CHECK(is_upward_flat(f));
}

TEST_CASE("enumeration covers every labeled 2-world flat frame up to isomorphism") {
  auto frames = enumerate_frames(2, FrameMode::Flat);
  std::set<uint64_t> codes;
  for (const auto& f : frames) CHECK(codes.insert(canonical_code(f)).second);
  for (uint64_t pre = 0; pre < 4; ++pre) {
    std::vector<std::pair<int, int>> pp;
    if (pre & 1) pp.emplace_back(0, 1);
    if (pre & 2) pp.emplace_back(1, 0);
    for (uint64_t rm = 0; rm < 16; ++rm) {
      std::vector<std::pair<int, int>> rp;
      for (int w = 0; w < 2; ++w)
        for (int v = 0; v < 2; ++v)
          if (rm & (uint64_t{1} << (2 * w + v))) rp.emplace_back(w, v);
      CHECK(codes.count(canonical_code(FlatFrame::make({"a", "b"}, pp, rp))) == 1);
    }
  }
}

TEST_CASE("model file round trip") {
  FlatModel m = directed_fork_model();
  std::string text = write_model(m);
  std::istringstream in(text);
  FlatModel back = read_model(in);
  CHECK(back.frame.names == m.frame.names);
  CHECK(back.frame.up == m.frame.up);
  CHECK(back.frame.rel == m.frame.rel);
  CHECK(back.val == m.val);
}

TEST_CASE("model files reject non-upset valuations unless repaired") {
  std::string text =
      "worlds: w v\n"
      "pre: w<=v\n"
      "R:\n"
      "val p: w\n";
  std::istringstream in1(text);
  CHECK_THROWS_AS(read_model(in1), Error);
  std::istringstream in2(text);
  FlatModel m = read_model(in2, true);
  CHECK(m.val.at("p") == Bits::all(2));
}

TEST_CASE("fixture model files match the in-code models") {
  FlatModel ex32 = read_model_file(std::string(HLF_FIXTURE_DIR) + "/ex3.2/model.fm");
  FlatModel code = fork_model();
  CHECK(ex32.frame.up == code.frame.up);
  CHECK(ex32.frame.rel == code.frame.rel);
  CHECK(ex32.val == code.val);

  FlatModel ex33 = read_model_file(std::string(HLF_FIXTURE_DIR) + "/ex3.3/model.fm");
  CHECK(ex33.frame.rel == cluster_model().frame.rel);

  FlatModel ex61 = read_model_file(std::string(HLF_FIXTURE_DIR) + "/ex6.1/model.fm");
  CHECK(ex61.frame.up == directed_fork_model().frame.up);
  CHECK(ex61.val == directed_fork_model().val);
}
