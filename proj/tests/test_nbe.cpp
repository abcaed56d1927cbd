#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "hott/checker.hpp"
#include "hott/nbe.hpp"
#include "hott/stdlib.hpp"
#include "named_oracle.hpp"

using namespace hott;

namespace {
Term parse(const std::string& s, const Signature& sig, const std::vector<std::string>& scope = {}) {
  return resolveTerm(parseTerm(s), sig.names(), scope);
}

Signature& stdlibSig() {
  static Signature sig = [] {
    Signature s(stdlibFlags());
    Report r = buildStdlib(s, loadManifest());
    if (!r.pass()) throw std::runtime_error("stdlib failed to build");
    return s;
  }();
  return sig;
}
}  // namespace

TEST_CASE("beta for functions") {
  Globals g;
  Value v = evaluate(g, mk::app(mk::lam(mk::var(0)), mk::univ(0)));
  auto* u = vas<val::Univ>(v);
  REQUIRE(u != nullptr);
  CHECK(u->level == 0);
}

TEST_CASE("beta for pairs") {
  Globals g;
  Term t = mk::fst(mk::pair(mk::univ(1), mk::univ(2)));
  CHECK(equal(normalizeUntyped(g, t), mk::univ(1)));
  CHECK(equal(normalizeUntyped(g, mk::snd(mk::pair(mk::univ(1), mk::univ(2)))), mk::univ(2)));
}

TEST_CASE("J computes on refl") {
  Globals g;
  // J(C, d, a, a, refl a) evaluates to d[a/z]
  Term d = mk::pair(mk::var(0), mk::var(0));
  Term a = mk::codeUniv(0);
  Term j = mk::j(mk::univ(0), d, a, a, mk::refl(a));
  CHECK(equal(normalizeUntyped(g, j), mk::pair(a, a)));
}

TEST_CASE("axioms block as neutrals") {
  Signature sig;
  Term t = mk::app(mk::axiom(Axiom::Funext, 0), mk::codeUniv(0));
  Value v = evaluate(sig.globals(), t);
  auto* n = vas<val::Ne>(v);
  REQUIRE(n != nullptr);
  CHECK_FALSE(n->ne.head.isVar);
  CHECK(n->ne.head.axiom == Axiom::Funext);
  CHECK(n->ne.spine.size() == 1);
}

TEST_CASE("readback of the identity") {
  Globals g;
  CHECK(equal(readback(0, evaluate(g, mk::lam(mk::var(0))), nullptr), mk::lam(mk::var(0))));
}

TEST_CASE("eta-expansion of a neutral function") {
  // f : U0 -> U0 in context; readback at the Pi type eta-expands
  Value piTy = vmk::pi(vmk::univ(0), [](const Value&) { return vmk::univ(0); });
  Value f = vmk::var(0, piTy);
  Term t = readback(1, f, piTy);
  CHECK(equal(t, mk::lam(mk::app(mk::var(1), mk::var(0)))));
  Env env;
  env = env.extend(f);
  Value etaF = evaluate(env, mk::lam(mk::app(mk::var(1), mk::var(0))));
  CHECK(convertible(1, f, etaF, piTy));
}

TEST_CASE("distinct universes are not convertible") {
  CHECK_FALSE(convertibleTypes(0, vmk::univ(0), vmk::univ(1)));
  CHECK(convertibleTypes(0, vmk::univ(1), vmk::univ(1)));
}

TEST_CASE("idToEquiv at refl is convertible with the identity equivalence") {
  Signature& sig = stdlibSig();
  Context ctx{mk::univ(0)};
  Term lhs = parse("idToEquiv A A (refl A)", sig, {"A"});
  Term rhs = parse("idEquiv A", sig, {"A"});
  Term ty = parse("El (Equiv A A)", sig, {"A"});
  CHECK(convertibleIn(sig, ctx, lhs, rhs, ty));
  // both sides read back to the same eta-long normal form
  CHECK(equal(normalizeIn(sig, ctx, lhs, ty), normalizeIn(sig, ctx, rhs, ty)));
  CHECK(idToEquivReflJudgmental(sig));
}

TEST_CASE("El reduces on codes") {
  Signature& sig = stdlibSig();
  Context ctx{mk::univ(0), mk::univ(0)};
  Term a = parse("El (code-pi (_ : A) -> B)", sig, {"A", "B"});
  Term b = parse("El A -> El B", sig, {"A", "B"});
  CHECK(equal(normalizeTypeIn(sig, ctx, a), normalizeTypeIn(sig, ctx, b)));
  Term c = parse("El (lift (code-sg (x : A) . B))", sig, {"A", "B"});
  Term d = parse("Sg (x : El A) . El B", sig, {"A", "B"});
  CHECK(equal(normalizeTypeIn(sig, ctx, c), normalizeTypeIn(sig, ctx, d)));
  Term e = parse("El (code-U 0)", sig);
  CHECK(equal(normalizeTypeIn(sig, {}, e), mk::univ(0)));
  Term f = parse("El (code-id A x x)", sig, {"A", "x"});
  Context ctx2{mk::univ(0), mk::el(mk::var(0))};
  CHECK(equal(normalizeTypeIn(sig, ctx2, f), mk::id(mk::el(mk::var(1)), mk::var(0), mk::var(0))));
}

TEST_CASE("no eta for pairs") {
  Value sigTy = vmk::sigma(vmk::univ(0), [](const Value&) { return vmk::univ(0); });
  Value p = vmk::var(0, sigTy);
  Value eta = vmk::make(val::Pair{vFst(p), vSnd(p)});
  CHECK_FALSE(convertible(1, p, eta, sigTy));
}

TEST_CASE("readback of evaluation is idempotent on the stdlib corpus") {
  Signature& sig = stdlibSig();
  int checked = 0;
  for (const auto& [name, entry] : sig.globals().defs) {
    Term nf = normalizeIn(sig, {}, entry.body, entry.type);
    Term nf2 = normalizeIn(sig, {}, nf, entry.type);
    CHECK_MESSAGE(equal(nf, nf2), name);
    Term ty = normalizeTypeIn(sig, {}, entry.type);
    CHECK(equal(ty, normalizeTypeIn(sig, {}, ty)));
    // normal forms still typecheck
    CHECK_NOTHROW(check(sig, {}, nf, entry.type));
    ++checked;
  }
  CHECK(checked > 40);
}

TEST_CASE("normalize is idempotent on generated terms") {
  Globals g;
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    std::vector<oracle::STy> ctx;
    Term t = oracle::typedTerm(rng, ctx, oracle::randomType(rng, 2), 5);
    Term nf = normalizeUntyped(g, t);
    CHECK(equal(nf, normalizeUntyped(g, nf)));
  }
}

TEST_CASE("conversion is a congruence") {
  Signature& sig = stdlibSig();
  Context ctx{mk::univ(0)};
  // comp A A A (idfun A) (idfun A) and idfun A are convertible, and stay so
  // under application, pairing and refl
  Term a = parse("comp A A A (idfun A) (idfun A)", sig, {"A"});
  Term b = parse("idfun A", sig, {"A"});
  Term fnTy = parse("El A -> El A", sig, {"A"});
  CHECK(convertibleIn(sig, ctx, a, b, fnTy));
  Context ctx2{mk::univ(0), mk::el(mk::var(0))};
  Term x = mk::var(0);
  CHECK(convertibleIn(sig, ctx2, mk::app(shift(a, 1), x), mk::app(shift(b, 1), x), mk::el(mk::var(1))));
  Term pairTy = parse("Sg (_ : El A -> El A) . El A -> El A", sig, {"A"});
  CHECK(convertibleIn(sig, ctx, mk::pair(a, b), mk::pair(b, a), pairTy));
  Term idTy = mk::id(fnTy, a, a);
  CHECK(convertibleIn(sig, ctx, mk::refl(a), mk::refl(b), idTy));
}
