#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "hott/parser.hpp"
#include "named_oracle.hpp"

using namespace hott;

namespace {
Term resolve(const std::string& src, const std::set<std::string>& globals = {}) {
  return resolveTerm(parseTerm(src), globals);
}
}  // namespace

TEST_CASE("a single declaration parses") {
  auto decls = parseModule("def id : Pi (A : U0) (x : El A) -> El A := \\A x. x");
  REQUIRE(decls.size() == 1);
  CHECK(decls[0].name == "id");
  CHECK(decls[0].annotation.has_value());
}

TEST_CASE("unclosed parenthesis is reported at its column") {
  try {
    parseModule("def bad := (");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.span().line == 1);
    CHECK(e.span().column == 12);
    CHECK_FALSE(e.expected().empty());
  }
}

TEST_CASE("parse errors carry the expected-token set") {
  try {
    parseModule("def x : U0 ) y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.expected().count("':='") == 1);
    CHECK(e.span().column == 12);
  }
}

TEST_CASE("lexical errors carry a span") {
  try {
    parseModule("def x := y\n  # z");
    FAIL("expected a lexical error");
  } catch (const LexError& e) {
    CHECK(e.span().line == 2);
    CHECK(e.span().column == 3);
  }
}

TEST_CASE("name resolution") {
  CHECK(equal(resolve("\\x. x"), mk::lam(mk::var(0))));
  CHECK(equal(resolve("\\x y. x"), mk::lam(mk::lam(mk::var(1)))));
  CHECK_THROWS_AS(resolve("\\x. y"), ResolveError);
  CHECK(equal(resolve("\\x. g x", {"g"}), mk::lam(mk::app(mk::constant("g"), mk::var(0)))));
  // binder types are resolved outside their own group
  CHECK(equal(resolve("Pi (A : U0) (x y : El A) -> El A"),
              mk::pi(mk::univ(0), mk::pi(mk::el(mk::var(0)), mk::pi(mk::el(mk::var(1)), mk::el(mk::var(2)))))));
  CHECK(equal(resolve("U0 -> U1"), mk::pi(mk::univ(0), mk::univ(1))));
  CHECK(equal(resolve("U 2"), mk::univ(2)));
}

TEST_CASE("unbound identifier error carries the span") {
  try {
    resolve("\\x.   y");
    FAIL("expected an unbound identifier");
  } catch (const ResolveError& e) {
    CHECK(e.kind() == "unbound identifier");
    CHECK(e.span().column == 7);
  }
}

TEST_CASE("duplicate definitions are rejected") {
  auto decls = parseModule("def a : U1 := code-U 0\ndef a : U1 := code-U 0");
  CHECK_THROWS_AS(resolveNames(decls), ResolveError);
}

TEST_CASE("pairs, projections and keyword forms") {
  CHECK(equal(resolve("\\p. (p.1, p.2, p)"),
              mk::lam(mk::pair(mk::fst(mk::var(0)), mk::pair(mk::snd(mk::var(0)), mk::var(0))))));
  CHECK(equal(resolve("\\p. p.1.2"), mk::lam(mk::snd(mk::fst(mk::var(0))))));
  CHECK(equal(resolve("ua 0"), mk::axiom(Axiom::Ua, 0)));
  CHECK(equal(resolve("funext"), mk::axiom(Axiom::Funext, 0)));
  CHECK(equal(resolve("funext 1"), mk::axiom(Axiom::Funext, 1)));
  CHECK(equal(resolve("\\A. ua 0 A A", {}), mk::lam(mk::app(mk::axiom(Axiom::Ua, 0), {mk::var(0), mk::var(0)}))));
  CHECK(equal(resolve("code-sg (x : code-U 0) . lift x"),
              mk::codeSigma(mk::codeUniv(0), mk::lift(mk::var(0)))));
  CHECK(equal(resolve("\\a. refl a"), mk::lam(mk::refl(mk::var(0)))));
  CHECK(equal(resolve("Id U0 (code-U 0) (code-U 0)"), mk::id(mk::univ(0), mk::codeUniv(0), mk::codeUniv(0))));
}

TEST_CASE("J motive and base binders") {
  Term t = resolve("\\a p. J (\\x y q. Id U0 x y) (\\z. refl z) a a p");
  Term expected = mk::lam(mk::lam(mk::j(mk::id(mk::univ(0), mk::var(2), mk::var(1)), mk::refl(mk::var(0)),
                                        mk::var(1), mk::var(1), mk::var(0))));
  CHECK(equal(t, expected));
  // a motive that is not a three-argument lambda is applied to the bound variables
  Term u = resolve("\\C d a p. J C d a a p");
  auto* j = as<term::J>(as<term::Lam>(as<term::Lam>(as<term::Lam>(as<term::Lam>(u)->body)->body)->body)->body);
  REQUIRE(j != nullptr);
  CHECK(equal(j->motive, mk::el(mk::app(mk::var(6), {mk::var(2), mk::var(1), mk::var(0)}))));
  CHECK(equal(j->base, mk::app(mk::var(3), mk::var(0))));
}

TEST_CASE("comments and hyphenated identifiers") {
  auto decls = parseModule("-- a comment\ndef is-prop-thing : U1 := code-U 0 -- trailing\n");
  REQUIRE(decls.size() == 1);
  CHECK(decls[0].name == "is-prop-thing");
  CHECK(equal(resolve("Pi (a : U0) -> U0"), resolve("U0->U0")));
}

TEST_CASE("printing roundtrips to an alpha-equal term") {
  std::mt19937 rng(11);
  std::set<std::string> globals = {"k0", "k1", "k2"};
  for (int i = 0; i < 500; ++i) {
    Term t = oracle::randomTerm(rng, 0, 6);
    std::string text = printTerm(t, {}, globals);
    Term back = resolveTerm(parseTerm(text), globals);
    CHECK_MESSAGE(equal(t, back), text);
    // parse . print . parse = parse
    CHECK(printTerm(back, {}, globals) == text);
  }
}

TEST_CASE("printing with free variables in scope") {
  Term t = mk::lam(mk::app(mk::var(1), mk::var(0)));
  std::string text = printTerm(t, {"f"});
  CHECK(equal(resolveTerm(parseTerm(text), {}, {"f"}), t));
  std::string code = printTerm(resolve("code-pi (x : code-U 0) -> lift x"));
  CHECK(code.find("code-pi") == 0);
}
