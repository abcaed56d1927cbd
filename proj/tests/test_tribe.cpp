#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "hott/corpus.hpp"
#include "hott/tribe.hpp"

using namespace hott::grpd;

namespace {

// Index of the cardinality-n object in a sets universe.
GFunctor naming(const FibrationMap& u, const Grp& dom, int n) { return constantFunctor(dom, u.base(), n); }

std::size_t countFunctors(const Grp& a, const Grp& b) {
  std::size_t n = 0;
  forEachFunctor(a, b, nullptr, nullptr, [&](const GFunctor&) {
    ++n;
    return true;
  });
  return n;
}

// Two-element fibers over a two-object discrete base: isomorphic codes that
// are not identified.
FibrationMap twoCodes() {
  GFunctor f{discrete(4), discrete(2), {0, 0, 1, 1}, {0, 0, 1, 1}};
  return makeFibration(f);
}

}  // namespace

TEST_CASE("path objects") {
  SUBCASE("discrete over the point") {
    PathObject po = pathObjectFibered(terminalFibration(discrete(3)));
    CHECK(po.P->objects() == 3);
    CHECK(po.P->morphisms() == 3);
    CHECK(po.pairs.g->objects() == 9);
    CHECK(bijective(po.anodyne));
  }
  SUBCASE("BZ2 over the point") {
    PathObject po = pathObjectFibered(terminalFibration(cyclic(2)));
    // objects: the two loops; a morphism u -> u' is a pair (a, u' a u^-1)
    CHECK(po.P->objects() == 2);
    CHECK(po.P->morphisms() == 8);
    CHECK(po.pairs.g->objects() == 1);
    CHECK(po.pairs.g->morphisms() == 4);
    CHECK(equivalenceCheck(po.anodyne).has_value());
  }
  SUBCASE("factorizes the fibered diagonal") {
    for (const auto& choice : {PathChoice::Arrows, PathChoice::Padded}) {
      FibrationMap p = makeFibration(product(codiscrete(2), cyclic(2)).pr1);
      PathObject po = pathObjectFibered(p, choice);
      GFunctor diag = po.pairs.pair(identityFunctor(p.total()), identityFunctor(p.total()));
      CHECK(compose(po.boundary.map, po.anodyne) == diag);
      CHECK(isAnodyne(po.anodyne));
      CHECK(validateFibration(po.boundary));
    }
  }
}

TEST_CASE("factorization") {
  SUBCASE("identity") {
    Factorization f = factorize(identityFunctor(cyclic(2)));
    CHECK(compose(f.fibration.map, f.anodyne) == identityFunctor(cyclic(2)));
    CHECK(isAnodyne(f.anodyne));
  }
  SUBCASE("point into BZ2") {
    GFunctor pt = constantFunctor(terminal(), cyclic(2), 0);
    Factorization f = factorize(pt);
    CHECK(f.fibration.total()->objects() == 2);
    CHECK(f.fibration.total()->componentCount() == 1);
    CHECK(compose(f.fibration.map, f.anodyne) == pt);
    // refactoring the fibration part changes it only up to equivalence over the base
    Factorization g = factorize(f.fibration.map);
    CHECK(g.fibration.total()->objects() == 4);
    CHECK(fiberwiseEquivalent(f.fibration, g.fibration));
    CHECK(fiberwiseEquivalent(g.fibration, f.fibration));
    CHECK(equivalenceCheck(g.anodyne).has_value());
  }
}

TEST_CASE("equivalences") {
  CHECK(equivalenceCheck(identityFunctor(cyclic(3))).has_value());
  CHECK_FALSE(equivalenceCheck(toTerminal(cyclic(2))).has_value());
  auto w = equivalenceCheck(constantFunctor(terminal(), codiscrete(2), 1));
  REQUIRE(w.has_value());
  CHECK(validateNatIso(w->unit));
  CHECK(validateNatIso(w->counit));
  CHECK_FALSE(equivalenceCheck(constantFunctor(terminal(), discrete(2), 0)).has_value());
  CHECK(isAnodyne(constantFunctor(terminal(), codiscrete(2), 0)));
  CHECK_FALSE(isAnodyne(toTerminal(codiscrete(2))));  // equivalence but not injective on objects
}

TEST_CASE("the criterion-based check agrees with exhaustive search") {
  std::vector<Grp> gs{emptyGroupoid(), terminal(), discrete(2), cyclic(2), codiscrete(2), product(codiscrete(2), cyclic(2)).g};
  for (const auto& a : gs)
    for (const auto& b : gs)
      for (const auto& f : allFunctors(a, b)) CHECK(equivalenceCheck(f).has_value() == equivalenceSearch(f).has_value());
}

TEST_CASE("internal hom") {
  SUBCASE("from the point") {
    for (const Grp& b : {cyclic(3), codiscrete(2), discrete(2)}) CHECK(isomorphic(internalHom(terminal(), b).g, b));
  }
  SUBCASE("BZ2 to BZ2") {
    InternalHom h = internalHom(cyclic(2), cyclic(2));
    CHECK(h.g->objects() == 2);
    // Z2 is abelian: each endomorphism has the whole group as automorphisms
    CHECK(h.g->morphisms() == 4);
    CHECK(h.g->componentCount() == 2);
  }
  SUBCASE("discrete 2 to discrete 3") {
    InternalHom h = internalHom(discrete(2), discrete(3));
    CHECK(h.g->objects() == 9);
    CHECK(h.g->isDiscrete());
  }
  SUBCASE("exponential bijection") {
    for (const Grp& x : {terminal(), discrete(2), cyclic(2)}) {
      std::string why;
      CHECK_MESSAGE(checkExponential(x, internalHom(cyclic(2), codiscrete(2)), &why), why);
      CHECK_MESSAGE(checkExponential(x, internalHom(discrete(2), cyclic(2)), &why), why);
    }
  }
  SUBCASE("evaluation") {
    InternalHom h = internalHom(discrete(2), discrete(3));
    for (int o = 0; o < h.g->objects(); ++o)
      for (int a = 0; a < 2; ++a) CHECK(h.eval.at(h.evalDomain.objectOf(o, a)) == h.functors[static_cast<std::size_t>(o)].at(a));
  }
}

TEST_CASE("homotopy classes of maps") {
  for (int n = 0; n <= 4; ++n) CHECK(hoHomClasses(terminal(), discrete(n)) == static_cast<std::size_t>(n));
  CHECK(hoHomClasses(cyclic(2), cyclic(2)) == 2);
  // Z3 has conjugacy-distinct endomorphisms 0, id, -id
  CHECK(hoHomClasses(cyclic(3), cyclic(3)) == 3);
  for (const Grp& a : {terminal(), discrete(3), cyclic(2), codiscrete(2)}) CHECK(hoHomClasses(a, terminal()) == 1);
  CHECK(hoHomClasses(codiscrete(2), discrete(2)) == 2);
}

TEST_CASE("dependent products") {
  SUBCASE("along the identity") {
    FibrationMap q = makeFibration(product(codiscrete(2), cyclic(2)).pr1);
    PiResult pi = piAlongFibration(identityFibration(codiscrete(2)), q);
    CHECK(fibrationsIsomorphic(pi.fib, q));
  }
  SUBCASE("two-fold cover with fiber 3") {
    FibrationMap p = terminalFibration(discrete(2));
    FibrationMap q = makeFibration(product(discrete(2), discrete(3)).pr1);
    PiResult pi = piAlongFibration(p, q);
    CHECK(pi.g()->objects() == 9);
    CHECK(pi.g()->isDiscrete());
    std::size_t n = 0;
    std::string why;
    CHECK_MESSAGE(checkPiAdjunction(pi, identityFunctor(p.base()), &why, &n), why);
    CHECK(n == 9);
  }
  SUBCASE("adjunction on a nontrivial action") {
    FibrationMap p = terminalFibration(codiscrete(2));
    FibrationMap q = makeFibration(product(codiscrete(2), cyclic(2)).pr1);
    PiResult pi = piAlongFibration(p, q);
    // sections of a trivial BZ2 bundle over the codiscrete pair: [codisc2, BZ2]
    CHECK(isomorphic(pi.g(), internalHom(codiscrete(2), cyclic(2)).g));
    CHECK(isomorphic(pi.g(), product(codiscrete(2), cyclic(2)).g));
    std::string why;
    CHECK_MESSAGE(checkPiAdjunction(pi, identityFunctor(p.base()), &why), why);
    CHECK_MESSAGE(checkPiAdjunction(pi, toTerminal(cyclic(2)), &why), why);
  }
  SUBCASE("endpoint mismatch") {
    CHECK_THROWS_AS(piAlongFibration(terminalFibration(discrete(2)), identityFibration(discrete(3))), GroupoidError);
  }
}

TEST_CASE("objects of equivalences") {
  SUBCASE("discrete 2") {
    EqObject e = eqObject(discrete(2), discrete(2));
    CHECK(e.g()->objects() == 2);
    CHECK(e.g()->isDiscrete());
    CHECK(countEquivalenceData(terminal(), discrete(2), discrete(2)) == 2);
  }
  SUBCASE("no equivalence to the point") {
    EqObject e = eqObject(discrete(2), terminal());
    CHECK(e.g()->objects() == 0);
    CHECK(countEquivalenceData(terminal(), discrete(2), terminal()) == 0);
  }
  SUBCASE("BZ2") {
    EqObject e = eqObject(cyclic(2), cyclic(2));
    // f = g = id with two choices each for H and K, all in one class
    CHECK(e.g()->objects() == 4);
    CHECK(e.g()->componentCount() == 1);
    CHECK(countEquivalenceData(terminal(), cyclic(2), cyclic(2)) == 4);
    CHECK(homotopyMonoCheck(e.projection()));
  }
  SUBCASE("projection lands on equivalences only") {
    EqObject e = eqObject(codiscrete(2), terminal());
    std::set<int> hit;
    for (int o = 0; o < e.g()->objects(); ++o) hit.insert(e.projection().map.at(o));
    for (int f : hit) CHECK(equivalenceCheck(e.hab.functors[static_cast<std::size_t>(f)]).has_value());
    CHECK_FALSE(hit.empty());
  }
}

TEST_CASE("fibered objects of equivalences") {
  SUBCASE("identity on the point") {
    FiberedEq eq = eqOfFibration(identityFibration(terminal()));
    CHECK(isomorphic(eq.data.toHab.total(), terminal()));
    CHECK(bijective(eq.delta));
  }
  SUBCASE("sets universe") {
    SetsUniverse u = setsUniverse(2);
    FiberedEq eq = eqOfFibration(u.el);
    // over (n, m) the fiber is the discrete set of bijections
    for (int n = 0; n <= 2; ++n)
      for (int m = 0; m <= 2; ++m) {
        int c = eq.bb.objectOf(n, m);
        int count = 0;
        for (int o = 0; o < eq.data.toBase.total()->objects(); ++o) count += eq.data.toBase.map.at(o) == c ? 1 : 0;
        CHECK(count == (n == m ? (n == 2 ? 2 : 1) : 0));
      }
    // delta then the projection is the diagonal, strictly
    GFunctor diag = eq.bb.pair(identityFunctor(u.el.base()), identityFunctor(u.el.base()));
    CHECK(compose(eq.data.toBase.map, eq.delta) == diag);
  }
}

TEST_CASE("univalence") {
  SetsUniverse u = setsUniverse(2);
  CHECK(univalenceCheck(u.el));
  CHECK(univalenceCheck(u.el, PathChoice::Padded));
  CHECK_FALSE(univalenceCheck(twoCodes()));
  CHECK_FALSE(univalenceCheck(twoCodes(), PathChoice::Padded));
  // point fibers: univalent exactly when the base is a proposition
  for (const Grp& b : {terminal(), codiscrete(2), emptyGroupoid()}) CHECK(univalenceCheck(identityFibration(b)));
  for (const Grp& b : {cyclic(2), discrete(2)}) CHECK_FALSE(univalenceCheck(identityFibration(b)));
  // a single set with a nontrivial automorphism group over the point
  CHECK_FALSE(univalenceCheck(terminalFibration(discrete(2))));
  CHECK(univalenceCheck(setsUniverse(1).el));
  CHECK(univalenceCheck(setsUniverse(0).el));
}

TEST_CASE("homotopy monos") {
  CHECK(homotopyMonoCheck(identityFibration(cyclic(2))));
  CHECK_FALSE(homotopyMonoCheck(terminalFibration(discrete(2))));
  CHECK(homotopyMonoCheck(terminalFibration(codiscrete(2))));
  CHECK(homotopyMonoCheck(terminalFibration(emptyGroupoid())));
  CHECK_FALSE(homotopyMonoCheck(terminalFibration(cyclic(2))));
  CHECK(homotopyMonoCheck(makeFibration(constantFunctor(terminal(), discrete(2), 0))));
  for (const auto& choice : {PathChoice::Arrows, PathChoice::Padded})
    CHECK(homotopyMonoCheck(terminalFibration(codiscrete(2)), choice));
}

TEST_CASE("sets universes") {
  SetsUniverse u0 = setsUniverse(0);
  CHECK(u0.el.base()->objects() == 1);
  CHECK(u0.el.total()->objects() == 0);
  SetsUniverse u = setsUniverse(2);
  CHECK(u.el.base()->objects() == 3);
  for (int n = 0; n <= 2; ++n) CHECK(u.el.base()->hom(n, n).size() == static_cast<std::size_t>(n == 2 ? 2 : 1));
  CHECK(u.el.total()->objects() == 3);
  CHECK(fiberObjects(u.el, 0).empty());
  CHECK(fiberObjects(u.el, 2).size() == 2);
  CHECK(setsUniverse(3).el.base()->morphisms() == 1 + 1 + 2 + 6);
  CHECK_THROWS_AS(setsUniverse(7), ResourceError);
  CHECK_THROWS_AS(setsUniverse(-1), GroupoidError);
}

TEST_CASE("proposition classifier") {
  SetsUniverse u = setsUniverse(2);
  Omega w = omegaClassifier(u.el);
  CHECK(homotopyMonoCheck(w.pr));
  CHECK(homotopyMonoCheck(w.top));
  CHECK(univalenceCheck(w.top));
  // propositions among sets of size <= 2: the empty set and the point
  CHECK(hoHomClasses(terminal(), w.pr.total()) == 2);

  SUBCASE("top classifies itself by a map homotopic to the identity") {
    auto c = classifyHomotopyMono(w.top, w.top);
    REQUIRE(c.has_value());
    CHECK(homotopic(c->names.front(), identityFunctor(w.top.base())));
  }
  SUBCASE("the empty family over the point is named by the empty set") {
    FibrationMap empty = makeFibration(GFunctor{emptyGroupoid(), terminal(), {}, {}});
    auto c = classifyHomotopyMono(w.top, empty);
    REQUIRE(c.has_value());
    for (const auto& chi : c->names) CHECK(w.pr.map.at(chi.at(0)) == 0);
  }
  SUBCASE("not a mono") { CHECK_FALSE(classifyHomotopyMono(w.top, terminalFibration(discrete(2))).has_value()); }
  SUBCASE("all-empty family") {
    FibrationMap p = makeFibration(GFunctor{emptyGroupoid(), cyclic(2), {}, {}});
    Omega e = omegaClassifier(p);
    CHECK(bijective(e.pr.map));
    CHECK(e.top.total()->objects() == 0);
  }
}

TEST_CASE("classification is unique up to homotopy in both directions") {
  Omega w = omegaClassifier(setsUniverse(2).el);
  for (const auto& f : monoCorpus()) {
    CheckResult r = classificationCheck(w.top, f);
    CHECK_MESSAGE(r.result, std::string(r.instance + ": " + r.witness));
  }
}

TEST_CASE("resizing comparison") {
  ResizingResult r = resizingCheck(2);
  CHECK(r.homotopyCommutes);
  CHECK(r.equivalence);
  CHECK(validateFunctor(r.comparison));
}

TEST_CASE("axiom suite") {
  SUBCASE("empty corpus") {
    SuiteReport r = tribeAxiomSuite(corpusByName("empty"));
    CHECK(r.pass());
    CHECK(r.results.empty());
  }
  SUBCASE("small corpus") {
    SuiteReport r = tribeAxiomSuite(smallCorpus());
    CHECK(r.pass());
    std::set<std::string> kinds;
    for (const auto& c : r.results) {
      kinds.insert(c.check);
      if (!c.result) MESSAGE(c.check << " " << c.instance << ": " << c.witness);
    }
    for (const char* k : {"a-terminal", "b-pullback", "b-anodyne-pullback", "c-factorization", "d-lifting", "e-pi-adjunction",
                          "f-pi-path-object"})
      CHECK(kinds.count(k) == 1);
  }
  SUBCASE("a broken table stops the suite before any axiom check") {
    GroupoidBuilder b;
    b.addObject();
    b.addMorphism(0, 0);
    b.addMorphism(0, 0);
    b.setIdentity(0, 0);
    // e.a = e breaks the identity law but the builder does not check
    Grp broken = b.build([](int g, int f) { return g == 0 && f == 1 ? 0 : (g == 1 && f == 1 ? 0 : g + f); }, false, "broken");
    Corpus c = smallCorpus();
    c.groupoids.push_back({"broken", broken});
    SuiteReport r = tribeAxiomSuite(c);
    CHECK_FALSE(r.pass());
    for (const auto& res : r.results) CHECK(res.check == "validate");
    bool named = false;
    for (const auto& res : r.results) named = named || (!res.result && res.instance == "broken");
    CHECK(named);
  }
  SUBCASE("a non-lifting map is caught") {
    // not an isofibration, smuggled in with an empty lift table
    Corpus c{"bad", {}, {}, 0};
    FibrationMap fake;
    fake.map = constantFunctor(terminal(), codiscrete(2), 0);
    fake.liftStart.assign(2, 0);
    c.fibrations.push_back({"fake", fake});
    CHECK_FALSE(tribeAxiomSuite(c).pass());
  }
}

TEST_CASE("representability by counting maps into Eq") {
  std::vector<NamedGroupoid> gs{{"1", terminal()}, {"disc2", discrete(2)}, {"BZ2", cyclic(2)}, {"codisc2", codiscrete(2)}};
  for (const Grp& x : {terminal(), discrete(2), codiscrete(2)})
    for (const auto& a : gs)
      for (const auto& b : gs) {
        CheckResult r = representabilityCheck(x, a, b);
        CHECK_MESSAGE(r.result, std::string(r.instance + ": " + r.witness));
      }
  CheckResult r = representabilityCheck(cyclic(2), gs[2], gs[2]);
  CHECK_MESSAGE(r.result, r.witness);
}

TEST_CASE("path-object independence and projection mono") {
  std::vector<NamedGroupoid> gs{{"1", terminal()}, {"disc2", discrete(2)}, {"BZ2", cyclic(2)}, {"codisc2", codiscrete(2)}};
  for (const auto& a : gs)
    for (const auto& b : gs) {
      CheckResult r = pathIndependenceCheck(a, b);
      CHECK_MESSAGE(r.result, std::string(r.instance + ": " + r.witness));
    }
  std::vector<NamedGroupoid> small{{"1", terminal()}, {"disc2", discrete(2)}, {"disc3", discrete(3)}, {"BZ2", cyclic(2)}};
  for (const auto& a : small)
    for (const auto& b : small) {
      CheckResult m = projectionMonoCheck(a, b);
      CHECK_MESSAGE(m.result, std::string(m.instance + ": " + m.witness));
    }
}

TEST_CASE("post-composition with an equivalence") {
  std::vector<std::pair<std::string, GFunctor>> eqs{
      {"pt->codisc2", constantFunctor(terminal(), codiscrete(2), 0)},
      {"codisc2->pt", toTerminal(codiscrete(2))},
      {"BZ2->BZ2xI", product(cyclic(2), codiscrete(2)).pair(identityFunctor(cyclic(2)), constantFunctor(cyclic(2), codiscrete(2), 1))},
  };
  for (const Grp& x : {terminal(), discrete(2), cyclic(2), codiscrete(2)})
    for (const auto& [name, f] : eqs) {
      CheckResult r = postcompositionCheck(x, f, name);
      CHECK_MESSAGE(r.result, std::string(r.instance + ": " + r.witness));
    }
  // not an equivalence: reported as failing input
  CHECK_FALSE(postcompositionCheck(terminal(), toTerminal(discrete(2)), "fold").result);
}

TEST_CASE("Eq is stable under pullback") {
  SetsUniverse u = setsUniverse(2);
  std::vector<std::pair<std::string, GFunctor>> fs;
  for (int n = 0; n <= 2; ++n) fs.emplace_back("point " + std::to_string(n), naming(u.el, terminal(), n));
  fs.emplace_back("BZ2 acting on 2", allFunctors(cyclic(2), u.el.base()).back());
  fs.emplace_back("pair 1,2", GFunctor{discrete(2), u.el.base(), {1, 2}, {u.el.base()->id(1), u.el.base()->id(2)}});
  for (const auto& [name, f] : fs) {
    REQUIRE(validateFunctor(f));
    CheckResult r = eqPullbackCheck(u.el, f, name);
    CHECK_MESSAGE(r.result, std::string(r.instance + ": " + r.witness));
  }
  CheckResult r = eqPullbackCheck(twoCodes(), constantFunctor(cyclic(2), discrete(2), 1), "two codes along BZ2");
  CHECK_MESSAGE(r.result, r.witness);
}

TEST_CASE("univalence transfers exactly along homotopy monos") {
  SetsUniverse u = setsUniverse(2);
  const Grp& U = u.el.base();
  std::vector<std::pair<std::string, FibrationMap>> fs;
  fs.emplace_back("identity", identityFibration(U));
  fs.emplace_back("empty", makeFibration(GFunctor{emptyGroupoid(), U, {}, {}}));
  for (int n = 0; n <= 2; ++n)
    fs.emplace_back("point " + std::to_string(n), factorize(constantFunctor(terminal(), U, n)).fibration);
  fs.emplace_back("component 2", makeFibration(GFunctor{cyclic(2), U, {2}, {U->hom(2, 2)[0], U->hom(2, 2)[1]}}));
  fs.emplace_back("components 0,1", makeFibration(GFunctor{discrete(2), U, {0, 1}, {U->id(0), U->id(1)}}));
  fs.emplace_back("doubled 1", makeFibration(GFunctor{discrete(2), U, {1, 1}, {U->id(1), U->id(1)}}));
  int monos = 0, non = 0;
  for (const auto& [name, f] : fs) {
    CheckResult r = univalenceTransferCheck(u.el, f, name);
    CHECK_MESSAGE(r.result, std::string(r.instance + ": " + r.witness));
    (homotopyMonoCheck(f) ? monos : non) += 1;
  }
  // both directions are exercised
  CHECK(monos > 0);
  CHECK(non > 0);
}

TEST_CASE("maps into Eq over the point count equivalences up to data") {
  // independent count: for discrete n, Eq(n, n) has n! points
  CHECK(countFunctors(terminal(), eqObject(discrete(3), discrete(3)).g()) == 6);
  CHECK(countEquivalenceData(terminal(), discrete(3), discrete(3)) == 6);
}
