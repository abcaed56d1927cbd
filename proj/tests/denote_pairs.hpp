// Fragment list and convertible term pairs shared by the denotation tests
// and the acceptance run.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "hott/checker.hpp"

namespace pairs {

using namespace hott;

// Declarations that denote at k = 2. The rest need nested universes or
// function-set codes larger than the bound.
inline const std::set<std::string> kFragment{
    "Equiv", "LInv", "RInv", "ap", "comp", "concat", "concatSymLeft", "equivFun", "equivInv", "equivInvLeft",
    "idEquiv", "idToEquiv", "idToEquivAtRefl", "idToEquivRefl", "idfun", "isEquiv", "isProp", "isPropIsProp",
    "isPropPi", "propIsSet", "propPathCanon", "sym", "transport", "uaPath", "univalence0"};

struct ConvPair {
  Context ctx;
  Term a, b, ty;
};

inline Term applyVars(Term f, std::size_t n) {
  for (std::size_t i = n; i-- > 0;) f = mk::app(f, mk::var(i));
  return f;
}

inline std::vector<ConvPair> convertiblePairs(const Signature& sig) {
  auto v = [](std::size_t i) { return mk::var(i); };
  auto c = [](const std::string& n) { return mk::constant(n); };
  Term U0 = mk::univ(0);
  std::vector<ConvPair> out;
  for (const auto& name : kFragment) {
    const GlobalEntry* e = sig.globals().find(name);
    Term ty = normalizeTypeIn(sig, {}, e->type);
    Context tel;
    while (const auto* p = as<term::Pi>(ty)) {
      tel.push_back(p->dom);
      ty = p->cod;
    }
    Term applied = applyVars(c(name), tel.size());
    // full normal form
    out.push_back({tel, applied, normalizeIn(sig, tel, applied, ty), ty});
    // one unfolding: the body under its lambdas
    Term body = e->body;
    std::size_t lams = 0;
    while (lams < tel.size() && as<term::Lam>(body)) {
      body = as<term::Lam>(body)->body;
      ++lams;
    }
    if (lams == tel.size() && !tel.empty()) out.push_back({tel, applied, body, ty});
  }
  // eta for functions
  Context fctx{U0, U0, mk::pi(mk::el(v(1)), mk::el(v(1)))};
  out.push_back({fctx, v(0), mk::lam(mk::app(v(1), v(0))), shift(fctx.back(), 1)});
  // projections out of a pair
  Context e1{U0};
  Term endo = mk::pi(mk::el(v(0)), mk::el(v(1)));
  out.push_back({e1, mk::fst(mk::app(c("idEquiv"), v(0))), mk::app(c("idfun"), v(0)), endo});
  out.push_back({e1, mk::fst(mk::fst(mk::snd(mk::app(c("idEquiv"), v(0))))), mk::app(c("idfun"), v(0)), endo});
  out.push_back({e1, mk::app(c("equivInv"), {v(0), v(0), mk::app(c("idEquiv"), v(0))}), mk::lam(v(0)), endo});
  // J on refl
  Context xctx{U0, mk::el(v(0))};
  Term xx = mk::id(mk::el(v(1)), v(0), v(0));
  out.push_back({xctx, mk::app(c("sym"), {v(1), v(0), v(0), mk::refl(v(0))}), mk::refl(v(0)), xx});
  out.push_back({xctx, mk::app(c("concat"), {v(1), v(0), v(0), v(0), mk::refl(v(0)), mk::refl(v(0))}), mk::refl(v(0)), xx});
  Context pctx{U0, mk::pi(mk::el(v(0)), mk::el(v(1))), mk::el(v(1))};
  Term fxfx = mk::id(mk::el(v(2)), mk::app(v(1), v(0)), mk::app(v(1), v(0)));
  out.push_back({pctx, mk::app(c("ap"), {v(2), v(2), v(1), v(0), v(0), mk::refl(v(0))}), mk::refl(mk::app(v(1), v(0))), fxfx});
  // the computation rule behind idToEquiv at refl
  Context actx{U0};
  Term eqAA = mk::el(mk::app(c("Equiv"), {v(0), v(0)}));
  out.push_back({actx, mk::app(c("idToEquiv"), {v(0), v(0), mk::refl(v(0))}), mk::app(c("idEquiv"), v(0)), eqAA});
  out.push_back({actx, mk::app(c("idToEquivAtRefl"), v(0)), mk::app(c("idEquiv"), v(0)), eqAA});
  out.push_back({actx, mk::app(c("comp"), {v(0), v(0), v(0), mk::app(c("idfun"), v(0)), mk::app(c("idfun"), v(0))}),
                 mk::app(c("idfun"), v(0)), mk::pi(mk::el(v(0)), mk::el(v(1)))});
  return out;
}

}  // namespace pairs
