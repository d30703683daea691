#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hlf/kripke.hpp"
#include "hlf/proof.hpp"
#include "oracle.hpp"

using namespace hlf;

namespace {

const std::string kFixtures = HLF_FIXTURE_DIR;

DerivPtr el_proof() {
  return Derivation::el(parse("p"), parse_consecution("{p} => p"));
}

}  // namespace

TEST_CASE("axiom registry") {
  CHECK(core_axioms().at("ka") == parse("(p ~> q) & (p ~> r) -> (p ~> q & r)"));
  CHECK(core_axioms().at("tr") == parse("(p ~> q) & (q ~> r) -> (p ~> r)"));
  CHECK(extension_axioms().at("di") == parse("(p ~> r) & (q ~> r) -> ((p | q) ~> r)"));
  CHECK(extension_axioms().at("4a") == parse("p ~> (true ~> p)"));
  CHECK_THROWS_AS(axiom_formula("di", {}), Error);  // not in the empty base
  CHECK(axiom_formula("di", AxiomBase::of({"di"})) == extension_axioms().at("di"));
  CHECK(axiom_formula("i9", {}) == parse("false -> p"));

  AxiomBase b = parse_axiom_base("4a, tbox, mine = p ~> q | r");
  CHECK(b.named == std::set<std::string>{"4a", "tbox"});
  CHECK(b.user.at("mine") == parse("p ~> (q | r)"));
  CHECK_THROWS_AS(parse_axiom_base("nonsense"), Error);
}

TEST_CASE("a one-node premise proof checks") {
  CHECK(check(el_proof(), {}));
}

TEST_CASE("necessitation over a propositional theorem") {
  // {} => phi -> phi, then any context concludes phi ~> phi
  Formula phi = parse("q & r");
  DerivPtr d = Derivation::na(Derivation::ax("i10", {{"p", phi}}),
                              Consecution{{parse("q")}, Formula::sto(phi, phi)});
  CHECK(check(d, {}));
}

TEST_CASE("mismatched contexts are rejected with a path") {
  // second MP child declares a smaller context than the rule instance needs
  DerivPtr bad = Derivation::mp(
      Derivation::el(parse("p")),
      Derivation::ax("i10", {{"p", parse("p")}}, parse_consecution("{} => p -> p")),
      parse_consecution("{p} => p"));
  CheckResult res = check(bad, {});
  CHECK(!res);
  CHECK(res.path == std::vector<int>{1});
  CHECK(res.path_string() == "root.1");
}

TEST_CASE("rule schema violations are caught") {
  // El witness outside the premises
  CHECK(!check(Derivation::el(parse("p"), parse_consecution("{q} => p")), {}));
  // Ax instance that does not match the declared conclusion
  CHECK(!check(Derivation::ax("i10", {{"p", parse("p")}}, parse_consecution("{} => p -> q")), {}));
  // axiom outside the base
  CHECK(!check(Derivation::ax("di", {}, parse_consecution("{} => p")), {}));
  // Na on a non-strict conclusion
  CHECK(!check(Derivation::na(Derivation::ax("i10", {{"p", parse("p")}}),
                              parse_consecution("{} => p -> p")),
               {}));
  // missing root conclusion
  CHECK(!check(Derivation::el(parse("p")), {}));
}

TEST_CASE("weaken elaborates to a context-wide rebuild") {
  DerivPtr d = Derivation::weaken(el_proof(), parse_consecution("{p, q} => p"));
  CHECK(check(d, {}));
  DerivPtr prim = elaborate_macro(d, {});
  CHECK(check(prim, {}, false));
  CHECK(*prim->declared == parse_consecution("{p, q} => p"));
}

TEST_CASE("deduction introduction") {
  // {phi} => psi becomes {} => phi -> psi
  DerivPtr inner = Derivation::mp(Derivation::el(parse("p")),
                                  Derivation::el(parse("p -> q")),
                                  parse_consecution("{p, p -> q} => q"));
  DerivPtr d = Derivation::ded_intro(
      Derivation::ded_intro(inner, parse_consecution("{p -> q} => p -> q")),
      parse_consecution("{} => (p -> q) -> (p -> q)"));
  CHECK(check(d, {}));
  DerivPtr prim = elaborate_macro(d, {});
  CHECK(check(prim, {}, false));
  CHECK(prim->declared->conclusion == parse("(p -> q) -> (p -> q)"));
}

TEST_CASE("deduction elimination") {
  DerivPtr imp = Derivation::ax("i3", {{"p", parse("p")}, {"q", parse("q")}},
                                parse_consecution("{} => p & q -> p"));
  DerivPtr d = Derivation::ded_elim(imp, parse_consecution("{p & q} => p"));
  CHECK(check(d, {}));
  CHECK(check(elaborate_macro(d, {}), {}, false));
}

TEST_CASE("substitution macro") {
  DerivPtr pp = Derivation::na(Derivation::ax("i10", {{"p", parse("p")}}),
                               parse_consecution("{} => p ~> p"));
  DerivPtr d = Derivation::subst({{"p", parse("q & r")}}, pp,
                                 parse_consecution("{} => (q & r) ~> (q & r)"));
  CHECK(check(d, {}));
  DerivPtr prim = elaborate_macro(d, {});
  CHECK(check(prim, {}, false));
  CHECK(prim->declared->conclusion == parse("(q & r) ~> (q & r)"));
}

TEST_CASE("cut macro") {
  // {p & q} => p and {p & q} => q feed a proof of {p, q} => p & q
  DerivPtr main = Derivation::mp(
      Derivation::el(parse("q")),
      Derivation::mp(Derivation::el(parse("p")),
                     Derivation::ax("i5", {{"p", parse("p")}, {"q", parse("q")}}),
                     parse_consecution("{p, q} => q -> p & q")),
      parse_consecution("{p, q} => p & q"));
  DerivPtr left = Derivation::mp(Derivation::el(parse("p & q")),
                                 Derivation::ax("i3", {{"p", parse("p")}, {"q", parse("q")}}),
                                 parse_consecution("{p & q} => p"));
  DerivPtr right = Derivation::mp(Derivation::el(parse("p & q")),
                                  Derivation::ax("i4", {{"p", parse("p")}, {"q", parse("q")}}),
                                  parse_consecution("{p & q} => q"));
  DerivPtr d = Derivation::cut({main, left, right}, parse_consecution("{p & q} => p & q"));
  CHECK(check(d, {}));
  DerivPtr prim = elaborate_macro(d, {});
  CHECK(check(prim, {}, false));
}

TEST_CASE("macro misuse is an error") {
  CHECK_THROWS_AS(
      elaborate_macro(Derivation::ded_intro(el_proof(), parse_consecution("{} => p & p")), {}),
      Error);
  CheckResult res =
      check(Derivation::ded_intro(el_proof(), parse_consecution("{} => p & p")), {});
  CHECK(!res);
}

TEST_CASE("checking without macros rejects macro nodes") {
  DerivPtr d = Derivation::weaken(el_proof(), parse_consecution("{p, q} => p"));
  CHECK(check(d, {}));
  CHECK(!check(d, {}, false));
}

TEST_CASE("substitution preserves checkability") {
  std::mt19937_64 rng(41);
  DerivPtr pp = Derivation::na(Derivation::ax("i10", {{"p", parse("p")}}),
                               parse_consecution("{q} => p ~> p"));
  CHECK(check(pp, {}));
  for (int i = 0; i < 50; ++i) {
    Substitution sigma{{"p", testing::random_formula(rng, 3, {"p", "q"})},
                       {"q", testing::random_formula(rng, 2, {"r"})}};
    DerivPtr mapped = substitute_derivation(pp, sigma, {});
    CHECK(check(mapped, {}, false));
    CHECK(mapped->declared->conclusion ==
          apply_substitution(parse("p ~> p"), sigma));
  }
}

TEST_CASE("derivation file round trip") {
  DerivPtr d = read_derivation_file(kFixtures + "/derivations/lb.deriv");
  CHECK(check(d, {}));
  DerivPtr back = parse_derivation(write_derivation(check(d, {}).annotated));
  CHECK(check(back, {}));
  CHECK(*back->declared == *d->declared);
}

TEST_CASE("the spec'd file shape parses") {
  DerivPtr d = parse_derivation(
      "(mp (el \"p\") (el \"p -> q\") :concl \"{p, p -> q} => q\")");
  CHECK(check(d, {}));
}

TEST_CASE("fixture library checks and elaborates") {
  auto lib = fixture_library(kFixtures);
  REQUIRE(lib.size() == 5);
  std::set<std::string> names;
  for (const auto& fx : lib) {
    names.insert(fx.name);
    CHECK(check(fx.derivation, fx.base));
    DerivPtr prim = elaborate_macro(fx.derivation, fx.base);
    CHECK(check(prim, fx.base, false));
    CHECK(*prim->declared == fx.root);
  }
  CHECK(names == std::set<std::string>{"bl", "lb", "5.8a", "5.8b", "trchain"});

  for (const auto& fx : lib) {
    if (fx.name == "bl") CHECK(fx.root.conclusion == parse("[](p -> q) -> (p ~> q)"));
    if (fx.name == "lb") CHECK(fx.root.conclusion == parse("(p ~> q) -> ([]p -> []q)"));
    if (fx.name == "5.8a") CHECK(fx.root.conclusion == parse("[][]p -> []p"));
    if (fx.name == "5.8b") CHECK(fx.root.conclusion == parse("[]p -> [][]p"));
    if (fx.name == "trchain") CHECK(fx.root.conclusion == parse("(g ~> s) -> (g ~> []s)"));
  }
}

TEST_CASE("soundness: fixture roots are valid on every small frame of their base") {
  auto lib = fixture_library(kFixtures);
  for (const auto& fx : lib) {
    for (int n = 1; n <= 3; ++n)
      for (const auto& f : enumerate_frames(n, FrameMode::Flat)) {
        bool base_ok = true;
        for (const auto& [name, ax] : fx.base.formulas())
          if (!validates_formula(f, ax)) base_ok = false;
        if (base_ok) CHECK(validates_consecution(f, fx.root));
      }
  }
}

TEST_CASE("the chaining fixture is reusable under substitution") {
  auto lib = fixture_library(kFixtures);
  const Fixture* chain = nullptr;
  for (const auto& fx : lib)
    if (fx.name == "trchain") chain = &fx;
  REQUIRE(chain);
  Substitution sigma{{"g", parse("true")}, {"s", parse("p & q")}};
  DerivPtr inst = Derivation::subst(
      sigma, chain->derivation,
      Consecution{{}, apply_substitution(chain->root.conclusion, sigma)});
  CHECK(check(inst, chain->base));
  CHECK(check(elaborate_macro(inst, chain->base), chain->base, false));
}
