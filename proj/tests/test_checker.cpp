#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "hott/checker.hpp"
#include "hott/stdlib.hpp"

using namespace hott;

namespace {
Term parse(const std::string& s, const Signature& sig, const std::vector<std::string>& scope = {}) {
  return resolveTerm(parseTerm(s), sig.names(), scope);
}

ErrorKind errorOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const TypeError& e) {
    return e.kind();
  }
  FAIL("expected a type error");
  return ErrorKind::Malformed;
}

Signature buildStd(Flags flags) {
  Signature s(flags);
  buildStdlib(s, loadManifest());
  return s;
}
}  // namespace

TEST_CASE("the polymorphic identity checks") {
  Signature sig;
  Term ty = parse("Pi (A : U0) (x : El A) -> El A", sig);
  Term body = parse("\\A x. x", sig);
  CHECK_NOTHROW(check(sig, {}, body, ty));
  Context ctx{mk::univ(0)};
  CHECK_NOTHROW(check(sig, ctx, parse("\\x. x", sig, {"A"}), parse("El A -> El A", sig, {"A"})));
}

TEST_CASE("a universe is not a code") {
  Signature sig;
  CHECK(errorOf([&] { checkType(sig, {}, mk::el(mk::univ(0))); }) == ErrorKind::NotATerm);
  CHECK(errorOf([&] { infer(sig, {}, mk::el(mk::univ(0))); }) == ErrorKind::NotATerm);
}

TEST_CASE("refl needs convertible endpoints") {
  Signature sig;
  Context ctx{mk::univ(0), mk::el(mk::var(0)), mk::el(mk::var(1))};
  Term ty = mk::id(mk::el(mk::var(2)), mk::var(1), mk::var(0));
  CHECK(errorOf([&] { check(sig, ctx, mk::refl(mk::var(1)), ty); }) == ErrorKind::Mismatch);
  Term ok = mk::id(mk::el(mk::var(2)), mk::var(1), mk::var(1));
  CHECK_NOTHROW(check(sig, ctx, mk::refl(mk::var(1)), ok));
}

TEST_CASE("comp checks against its composition type") {
  Signature sig = buildStd(stdlibFlags());
  Term ty = parse("Pi (A B C : U0) -> (El B -> El C) -> (El A -> El B) -> (El A -> El C)", sig);
  CHECK_NOTHROW(check(sig, {}, mk::constant("comp"), ty));
  CHECK_NOTHROW(check(sig, {}, parse("\\A B C g f x. g (f x)", sig), ty));
}

TEST_CASE("univalence has the closed equivalence type") {
  Signature sig = buildStd(stdlibFlags());
  Term inferred = infer(sig, {}, mk::axiom(Axiom::Ua, 0));
  Term stated = parse(
      "Pi (A B : U0) -> El (isEquiv1 (code-id (code-U 0) A B) (lift (Equiv A B)) (\\p. idToEquiv A B p))", sig);
  CHECK(equal(inferred, normalizeTypeIn(sig, {}, stated)));
}

TEST_CASE("resizing checks at the equivalence of the comparison map") {
  Signature sig = buildStd(stdlibFlags());
  Term stated = parse("El (isEquiv2 (lift Prop0) Prop1 propComparison)", sig);
  CHECK_NOTHROW(check(sig, {}, mk::axiom(Axiom::Resize, 0), stated));
  CHECK(equal(infer(sig, {}, parse("Prop0", sig)), mk::univ(1)));
  CHECK(equal(infer(sig, {}, sig.globals().find("Prop0")->body), mk::univ(1)));
}

TEST_CASE("universe closure under code formers") {
  Signature sig;
  Context ctx{mk::univ(0), mk::pi(mk::el(mk::var(0)), mk::univ(0))};
  // El(code-pi a b) is Pi (El a) (El b), and likewise for Sigma, Id, universes
  std::vector<std::pair<std::string, std::string>> pairs = {
      {"El (code-pi (x : A) -> B x)", "Pi (x : El A) -> El (B x)"},
      {"El (code-sg (x : A) . B x)", "Sg (x : El A) . El (B x)"},
      {"El (code-U 0)", "U0"},
      {"El (lift A)", "El A"},
      {"El (code-id (code-U 0) A A)", "Id U0 A A"},
  };
  for (const auto& [code, type] : pairs) {
    Term a = parse(code, sig, {"A", "B"});
    Term b = parse(type, sig, {"A", "B"});
    CHECK_NOTHROW(checkType(sig, ctx, a));
    CHECK(equal(normalizeTypeIn(sig, ctx, a), normalizeTypeIn(sig, ctx, b)));
  }
}

TEST_CASE("level overflow") {
  Signature sig;
  CHECK(errorOf([&] { checkType(sig, {}, mk::univ(3)); }) == ErrorKind::LevelOverflow);
  CHECK(errorOf([&] { infer(sig, {}, mk::codeUniv(2)); }) == ErrorKind::LevelOverflow);
  CHECK(errorOf([&] { infer(sig, {}, mk::axiom(Axiom::Ua, 2)); }) == ErrorKind::LevelOverflow);
  CHECK(equal(infer(sig, {}, mk::codeUniv(1)), mk::univ(2)));
  Flags tall;
  tall.towerHeight = 4;
  Signature sig4(tall);
  CHECK_NOTHROW(infer(sig4, {}, mk::axiom(Axiom::Ua, 2)));
}

TEST_CASE("axiom flags") {
  Flags off;
  off.uaEnabled = false;
  Signature sig(off);
  CHECK(errorOf([&] { infer(sig, {}, mk::axiom(Axiom::Ua, 0)); }) == ErrorKind::AxiomDisabled);
  CHECK(errorOf([&] { infer(sig, {}, mk::axiom(Axiom::Resize, 0)); }) == ErrorKind::AxiomDisabled);
  Flags only1;
  only1.uaLevels = {1};
  Signature sig1(only1);
  CHECK(errorOf([&] { infer(sig1, {}, mk::axiom(Axiom::Ua, 0)); }) == ErrorKind::AxiomDisabled);
  CHECK_NOTHROW(infer(sig1, {}, mk::axiom(Axiom::Ua, 1)));
}

TEST_CASE("lambdas and pairs need a type") {
  Signature sig;
  CHECK(errorOf([&] { infer(sig, {}, mk::lam(mk::var(0))); }) == ErrorKind::CannotInfer);
  CHECK(errorOf([&] { infer(sig, {}, mk::var(0)); }) == ErrorKind::Unbound);
  CHECK(errorOf([&] { checkType(sig, {}, mk::codeUniv(0)); }) == ErrorKind::NotAType);
}

TEST_CASE("J checks its motive and base") {
  Signature sig;
  Context ctx{mk::univ(0), mk::el(mk::var(0)), mk::el(mk::var(1))};
  std::vector<std::string> names{"A", "a", "b"};
  Term good = parse("\\p. J (\\x y q. Id (El A) y x) (\\z. refl z) a b p", sig, names);
  Term ty = parse("Id (El A) a b -> Id (El A) b a", sig, names);
  CHECK_NOTHROW(check(sig, ctx, good, ty));
  Term badBase = parse("\\p. J (\\x y q. Id (El A) y x) (\\z. refl a) a b p", sig, names);
  CHECK(errorOf([&] { check(sig, ctx, badBase, ty); }) == ErrorKind::Mismatch);
  Term badEnds = parse("\\p. J (\\x y q. Id (El A) y x) (\\z. refl z) b a p", sig, names);
  CHECK(errorOf([&] { check(sig, ctx, badEnds, ty); }) == ErrorKind::Mismatch);
}

TEST_CASE("checkModule reports and duplicates") {
  Signature sig;
  Report empty = checkModule(sig, {});
  CHECK(empty.entries.empty());
  CHECK(empty.pass());
  Report r = checkSource(sig, "def a : U1 := code-U 0\ndef a : U1 := code-U 0\ndef b := a", "<t>");
  REQUIRE(r.entries.size() == 3);
  CHECK(r.entries[0].pass);
  CHECK_FALSE(r.entries[1].pass);
  CHECK(r.entries[1].errorKind == ErrorKind::Duplicate);
  CHECK(r.entries[2].pass);
  CHECK(r.entries[0].normalFormSize == 1);
}

TEST_CASE("strict mode stops at the first failure") {
  Signature sig;
  Report r = checkSource(sig, "def a : U0 := code-U 0\ndef b : U1 := code-U 0", "<t>", true);
  CHECK(r.entries.size() == 1);
  CHECK(r.entries[0].errorKind == ErrorKind::Mismatch);
  Signature sig2;
  Report r2 = checkSource(sig2, "def a : U0 := code-U 0\ndef b : U1 := code-U 0", "<t>");
  CHECK(r2.entries.size() == 2);
  CHECK(r2.entries[1].pass);
}

TEST_CASE("syntax errors become a failing report entry") {
  Signature sig;
  Report r = checkSource(sig, "def bad := (", "<t>");
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].errorKind == ErrorKind::Syntax);
  CHECK(r.entries[0].span.column == 12);
}

TEST_CASE("stdlib builds with every required theorem") {
  Signature sig(stdlibFlags());
  Report r = buildStdlib(sig, loadManifest());
  for (const auto& e : r.entries) CHECK_MESSAGE(e.pass, std::string(e.name + ": " + e.error));
  for (const char* n : {"idToEquivRefl", "equivInv", "equivComp", "isPropPi", "isPropIsProp", "transportUa"})
    CHECK(sig.has(n));
}

TEST_CASE("stdlib report is deterministic") {
  Signature a(stdlibFlags()), b(stdlibFlags());
  Report ra = buildStdlib(a, loadManifest());
  Report rb = buildStdlib(b, loadManifest());
  REQUIRE(ra.entries.size() == rb.entries.size());
  for (std::size_t i = 0; i < ra.entries.size(); ++i) {
    CHECK(ra.entries[i].name == rb.entries[i].name);
    CHECK(ra.entries[i].pass == rb.entries[i].pass);
    CHECK(ra.entries[i].normalFormSize == rb.entries[i].normalFormSize);
  }
}

TEST_CASE("with univalence disabled only its dependents fail") {
  Flags f = stdlibFlags();
  f.uaEnabled = false;
  Signature sig(f);
  Report r = buildStdlib(sig, loadManifest());
  std::set<std::string> failed;
  for (const auto& e : r.entries) {
    if (e.pass) continue;
    failed.insert(e.name);
    CHECK_MESSAGE(e.errorKind == ErrorKind::AxiomDisabled, e.name);
  }
  CHECK(failed == std::set<std::string>{"univalence0", "uaPath", "transportUa", "T6"});
}

TEST_CASE("inference is deterministic and subject reduction holds") {
  Signature sig(stdlibFlags());
  buildStdlib(sig, loadManifest());
  for (const auto& [name, e] : sig.globals().defs) {
    Term t1 = infer(sig, {}, e.body.get() && as<term::Lam>(e.body) ? mk::constant(name) : e.body);
    Term t2 = infer(sig, {}, e.body.get() && as<term::Lam>(e.body) ? mk::constant(name) : e.body);
    CHECK(equal(t1, t2));
    Term nf = normalizeIn(sig, {}, e.body, e.type);
    CHECK_NOTHROW(check(sig, {}, nf, e.type));
  }
}

TEST_CASE("error messages print normal forms") {
  Signature sig(stdlibFlags());
  buildStdlib(sig, loadManifest());
  try {
    check(sig, {}, mk::constant("idfun"), parse("Pi (A : U0) -> El (idfun (code-U 0) (code-U 0))", sig));
    FAIL("expected mismatch");
  } catch (const TypeError& e) {
    CHECK(e.kind() == ErrorKind::Mismatch);
  }
  try {
    check(sig, {}, mk::constant("comp"), parse("Pi (A : U0) -> El (idfun1 (code-U 0) A)", sig));
    FAIL("expected mismatch");
  } catch (const TypeError& e) {
    CHECK(e.kind() == ErrorKind::Mismatch);
    std::string msg = e.what();
    CHECK(msg.find("expected: Pi (") != std::string::npos);
    CHECK(msg.find("idfun1") == std::string::npos);
  }
}
