#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "hott/syntax.hpp"
#include "named_oracle.hpp"

using namespace hott;

TEST_CASE("shift examples") {
  CHECK(equal(shift(mk::var(0), 1, 0), mk::var(1)));
  CHECK(equal(shift(mk::lam(mk::var(0)), 5, 0), mk::lam(mk::var(0))));
  // oracle-frozen: Lam(Var 1) shifted by one is Lam(Var 2)
  CHECK(equal(oracle::shift(mk::lam(mk::var(1)), 1, 0), mk::lam(mk::var(2))));
  CHECK(equal(shift(mk::lam(mk::var(1)), 1, 0), mk::lam(mk::var(2))));
}

TEST_CASE("shift underflow is a malformed-term error") {
  CHECK_THROWS_AS(shift(mk::var(0), -1, 0), MalformedTerm);
  CHECK(equal(shift(mk::var(3), -2, 0), mk::var(1)));
  CHECK(equal(shift(mk::var(0), -1, 1), mk::var(0)));
}

TEST_CASE("substitute examples") {
  CHECK(equal(substitute(mk::var(0), 0, mk::univ(0)), mk::univ(0)));
  CHECK(equal(substitute(mk::lam(mk::var(1)), 0, mk::univ(0)), mk::lam(mk::univ(0))));
  Term t = mk::app(mk::var(0), mk::lam(mk::var(1)));
  Term expected = mk::app(mk::lam(mk::var(0)), mk::lam(mk::lam(mk::var(0))));
  CHECK(equal(oracle::substitute(t, 0, mk::lam(mk::var(0))), expected));
  CHECK(equal(substitute(t, 0, mk::lam(mk::var(0))), expected));
}

TEST_CASE("substitute decrements indices above the target") {
  CHECK(equal(substitute(mk::var(2), 0, mk::univ(0)), mk::var(1)));
  CHECK(equal(substitute(mk::var(0), 1, mk::univ(0)), mk::var(0)));
  CHECK(equal(substitute(mk::lam(mk::var(2)), 0, mk::var(0)), mk::lam(mk::var(1))));
}

TEST_CASE("J binds three variables in the motive and one in the base") {
  Term j = mk::j(mk::var(3), mk::var(1), mk::var(0), mk::var(0), mk::var(0));
  Term s = shift(j, 1, 0);
  CHECK(equal(s, mk::j(mk::var(4), mk::var(2), mk::var(1), mk::var(1), mk::var(1))));
  CHECK(freeBound(j) == 1);
  CHECK(equal(oracle::shift(j, 1, 0), s));
}

TEST_CASE("structural equality is alpha-equality and a congruence") {
  Term a = mk::lam(mk::app(mk::var(0), mk::var(1)));
  Term b = mk::lam(mk::app(mk::var(0), mk::var(1)));
  CHECK(equal(a, b));
  CHECK(equal(mk::pair(a, a), mk::pair(b, b)));
  CHECK_FALSE(equal(a, mk::lam(mk::app(mk::var(1), mk::var(0)))));
  CHECK_FALSE(equal(mk::univ(0), mk::univ(1)));
  CHECK_FALSE(equal(mk::axiom(Axiom::Ua, 0), mk::axiom(Axiom::Ua, 1)));
}

TEST_CASE("instantiate agrees with iterated substitution") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Term t = oracle::randomTerm(rng, 3, 4);
    Term a = oracle::randomTerm(rng, 1, 2);
    Term b = oracle::randomTerm(rng, 1, 2);
    // vals[0] replaces index 0, vals[1] replaces index 1
    Term viaSubst = substitute(substitute(t, 0, shift(a, 1, 0)), 0, b);
    CHECK(equal(instantiate(t, {a, b}), viaSubst));
  }
}

TEST_CASE("nameless operations agree with the named oracle on random terms") {
  std::mt19937 rng(20240611);
  for (int i = 0; i < 300; ++i) {
    Term t = oracle::randomTerm(rng, 3, 5);
    Term s = oracle::randomTerm(rng, 2, 3);
    CHECK(equal(shift(t, 2, 1), oracle::shift(t, 2, 1)));
    CHECK(equal(substitute(t, 1, s), oracle::substitute(t, 1, s)));
  }
}

TEST_CASE("shift then substitute cancels") {
  std::mt19937 rng(99);
  for (int i = 0; i < 300; ++i) {
    Term t = oracle::randomTerm(rng, 3, 5);
    Term s = oracle::randomTerm(rng, 3, 3);
    CHECK(equal(substitute(shift(t, 1, 0), 0, s), t));
  }
}

TEST_CASE("substitution lemma") {
  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    Term t = oracle::randomTerm(rng, 3, 5);
    Term a = oracle::randomTerm(rng, 2, 3);
    Term b = oracle::randomTerm(rng, 2, 3);
    Term lhs = substitute(substitute(t, 0, a), 0, b);
    Term rhs = substitute(substitute(t, 1, shift(b, 1, 0)), 0, substitute(a, 0, b));
    CHECK(equal(lhs, rhs));
    Term olhs = oracle::substitute(oracle::substitute(t, 0, a), 0, b);
    CHECK(equal(lhs, olhs));
  }
}

TEST_CASE("size and constants") {
  Term t = mk::app(mk::constant("f"), mk::lam(mk::constant("g")));
  CHECK(size(t) == 4);
  CHECK(constantsOf(t) == std::vector<std::string>{"f", "g"});
  CHECK(show(mk::lam(mk::app(mk::var(1), mk::var(0)))) == "Lam(App(Var 1, Var 0))");
}
