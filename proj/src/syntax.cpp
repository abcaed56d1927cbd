#include "hott/syntax.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hott {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Term make(TermNode::Variant v) { return std::make_shared<const TermNode>(TermNode{std::move(v)}); }

// Rebuilds t, replacing each variable by onVar(index, depth), where depth is
// the number of binders passed on the way down.
using VarFn = std::function<Term(std::size_t, std::size_t)>;

Term mapVars(const Term& t, std::size_t d, const VarFn& onVar) {
  auto go = [&](const Term& s, std::size_t extra) { return mapVars(s, d + extra, onVar); };
  return std::visit(
      overloaded{
          [&](const term::Var& v) { return onVar(v.index, d); },
          [&](const term::Const&) { return t; },
          [&](const term::Pi& x) { return make(term::Pi{go(x.dom, 0), go(x.cod, 1)}); },
          [&](const term::Lam& x) { return make(term::Lam{go(x.body, 1)}); },
          [&](const term::App& x) { return make(term::App{go(x.fn, 0), go(x.arg, 0)}); },
          [&](const term::Sigma& x) { return make(term::Sigma{go(x.fst, 0), go(x.snd, 1)}); },
          [&](const term::Pair& x) { return make(term::Pair{go(x.a, 0), go(x.b, 0)}); },
          [&](const term::Fst& x) { return make(term::Fst{go(x.p, 0)}); },
          [&](const term::Snd& x) { return make(term::Snd{go(x.p, 0)}); },
          [&](const term::IdTy& x) {
            return make(term::IdTy{go(x.ty, 0), go(x.lhs, 0), go(x.rhs, 0)});
          },
          [&](const term::Refl& x) { return make(term::Refl{go(x.t, 0)}); },
          [&](const term::J& x) {
            return make(term::J{go(x.motive, 3), go(x.base, 1), go(x.lhs, 0), go(x.rhs, 0),
                                go(x.path, 0)});
          },
          [&](const term::Univ&) { return t; },
          [&](const term::El& x) { return make(term::El{go(x.code, 0)}); },
          [&](const term::CodePi& x) { return make(term::CodePi{go(x.dom, 0), go(x.cod, 1)}); },
          [&](const term::CodeSigma& x) {
            return make(term::CodeSigma{go(x.dom, 0), go(x.cod, 1)});
          },
          [&](const term::CodeId& x) {
            return make(term::CodeId{go(x.code, 0), go(x.lhs, 0), go(x.rhs, 0)});
          },
          [&](const term::CodeUniv&) { return t; },
          [&](const term::Lift& x) { return make(term::Lift{go(x.code, 0)}); },
          [&](const term::Ax&) { return t; },
      },
      t->node);
}

// Children with the number of binders each one sits under.
std::vector<std::pair<const Term*, std::size_t>> children(const TermNode& n) {
  return std::visit(
      overloaded{
          [](const term::Var&) { return std::vector<std::pair<const Term*, std::size_t>>{}; },
          [](const term::Const&) { return std::vector<std::pair<const Term*, std::size_t>>{}; },
          [](const term::Pi& x) {
            return std::vector<std::pair<const Term*, std::size_t>>{{&x.dom, 0}, {&x.cod, 1}};
          },
          [](const term::Lam& x) {
            return std::vector<std::pair<const Term*, std::size_t>>{{&x.body, 1}};
          },
          [](const term::App& x) {
            return std::vector<std::pair<const Term*, std::size_t>>{{&x.fn, 0}, {&x.arg, 0}};
          },
          [](const term::Sigma& x) {
            return std::vector<std::pair<const Term*, std::size_t>>{{&x.fst, 0}, {&x.snd, 1}};
          },
          [](const term::Pair& x) {
            return std::vector<std::pair<const Term*, std::size_t>>{{&x.a, 0}, {&x.b, 0}};
          },
          [](const term::Fst& x) {
            return std::vector<std::pair<const Term*, std::size_t>>{{&x.p, 0}};
          },
          [](const term::Snd& x) {
            return std::vector<std::pair<const Term*, std::size_t>>{{&x.p, 0}};
          },
          [](const term::IdTy& x) {
            return std::vector<std::pair<const Term*, std::size_t>>{
                {&x.ty, 0}, {&x.lhs, 0}, {&x.rhs, 0}};
          },
          [](const term::Refl& x) {
            return std::vector<std::pair<const Term*, std::size_t>>{{&x.t, 0}};
          },
          [](const term::J& x) {
            return std::vector<std::pair<const Term*, std::size_t>>{
                {&x.motive, 3}, {&x.base, 1}, {&x.lhs, 0}, {&x.rhs, 0}, {&x.path, 0}};
          },
          [](const term::Univ&) { return std::vector<std::pair<const Term*, std::size_t>>{}; },
          [](const term::El& x) {
            return std::vector<std::pair<const Term*, std::size_t>>{{&x.code, 0}};
          },
          [](const term::CodePi& x) {
            return std::vector<std::pair<const Term*, std::size_t>>{{&x.dom, 0}, {&x.cod, 1}};
          },
          [](const term::CodeSigma& x) {
            return std::vector<std::pair<const Term*, std::size_t>>{{&x.dom, 0}, {&x.cod, 1}};
          },
          [](const term::CodeId& x) {
            return std::vector<std::pair<const Term*, std::size_t>>{
                {&x.code, 0}, {&x.lhs, 0}, {&x.rhs, 0}};
          },
          [](const term::CodeUniv&) {
            return std::vector<std::pair<const Term*, std::size_t>>{};
          },
          [](const term::Lift& x) {
            return std::vector<std::pair<const Term*, std::size_t>>{{&x.code, 0}};
          },
          [](const term::Ax&) { return std::vector<std::pair<const Term*, std::size_t>>{}; },
      },
      n.node);
}

}  // namespace

namespace mk {
Term var(std::size_t i) { return make(term::Var{i}); }
Term constant(std::string name) { return make(term::Const{std::move(name)}); }
Term pi(Term dom, Term cod) { return make(term::Pi{std::move(dom), std::move(cod)}); }
Term lam(Term body) { return make(term::Lam{std::move(body)}); }
Term app(Term fn, Term arg) { return make(term::App{std::move(fn), std::move(arg)}); }
Term app(Term fn, std::initializer_list<Term> args) {
  for (const auto& a : args) fn = app(fn, a);
  return fn;
}
Term sigma(Term fst, Term snd) { return make(term::Sigma{std::move(fst), std::move(snd)}); }
Term pair(Term a, Term b) { return make(term::Pair{std::move(a), std::move(b)}); }
Term fst(Term p) { return make(term::Fst{std::move(p)}); }
Term snd(Term p) { return make(term::Snd{std::move(p)}); }
Term id(Term ty, Term lhs, Term rhs) {
  return make(term::IdTy{std::move(ty), std::move(lhs), std::move(rhs)});
}
Term refl(Term t) { return make(term::Refl{std::move(t)}); }
Term j(Term motive, Term base, Term lhs, Term rhs, Term path) {
  return make(term::J{std::move(motive), std::move(base), std::move(lhs), std::move(rhs),
                      std::move(path)});
}
Term univ(int level) { return make(term::Univ{level}); }
Term el(Term code) { return make(term::El{std::move(code)}); }
Term codePi(Term dom, Term cod) { return make(term::CodePi{std::move(dom), std::move(cod)}); }
Term codeSigma(Term dom, Term cod) {
  return make(term::CodeSigma{std::move(dom), std::move(cod)});
}
Term codeId(Term code, Term lhs, Term rhs) {
  return make(term::CodeId{std::move(code), std::move(lhs), std::move(rhs)});
}
Term codeUniv(int level) { return make(term::CodeUniv{level}); }
Term lift(Term code) { return make(term::Lift{std::move(code)}); }
Term axiom(Axiom kind, int level) { return make(term::Ax{kind, level}); }
}  // namespace mk

bool equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->node.index() != b->node.index()) return false;
  bool leafEqual = std::visit(
      overloaded{
          [&](const term::Var& x) { return x.index == std::get<term::Var>(b->node).index; },
          [&](const term::Const& x) { return x.name == std::get<term::Const>(b->node).name; },
          [&](const term::Univ& x) { return x.level == std::get<term::Univ>(b->node).level; },
          [&](const term::CodeUniv& x) {
            return x.level == std::get<term::CodeUniv>(b->node).level;
          },
          [&](const term::Ax& x) {
            const auto& y = std::get<term::Ax>(b->node);
            return x.kind == y.kind && x.level == y.level;
          },
          [](const auto&) { return true; },
      },
      a->node);
  if (!leafEqual) return false;
  auto ca = children(*a);
  auto cb = children(*b);
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (!equal(*ca[i].first, *cb[i].first)) return false;
  return true;
}

Term shift(const Term& t, long amount, std::size_t cutoff) {
  if (amount == 0) return t;
  return mapVars(t, 0, [&](std::size_t i, std::size_t d) {
    if (i < cutoff + d) return mk::var(i);
    long moved = static_cast<long>(i) + amount;
    if (moved < static_cast<long>(cutoff + d))
      throw MalformedTerm("shift drives free variable " + std::to_string(i) + " out of scope");
    return mk::var(static_cast<std::size_t>(moved));
  });
}

Term substitute(const Term& t, std::size_t target, const Term& s) {
  return mapVars(t, 0, [&](std::size_t i, std::size_t d) {
    if (i == target + d) return shift(s, static_cast<long>(d), 0);
    if (i > target + d) return mk::var(i - 1);
    return mk::var(i);
  });
}

Term instantiate(const Term& t, const std::vector<Term>& vals) {
  const std::size_t n = vals.size();
  return mapVars(t, 0, [&](std::size_t i, std::size_t d) {
    if (i < d) return mk::var(i);
    if (i < d + n) return shift(vals[i - d], static_cast<long>(d), 0);
    return mk::var(i - n);
  });
}

std::size_t freeBound(const Term& t) {
  if (const auto* v = as<term::Var>(t)) return v->index + 1;
  std::size_t bound = 0;
  for (auto [child, binders] : children(*t)) {
    std::size_t b = freeBound(*child);
    if (b > binders) bound = std::max(bound, b - binders);
  }
  return bound;
}

std::vector<std::string> constantsOf(const Term& t) {
  std::vector<std::string> out;
  std::function<void(const Term&)> go = [&](const Term& x) {
    if (const auto* c = as<term::Const>(x)) {
      if (std::find(out.begin(), out.end(), c->name) == out.end()) out.push_back(c->name);
      return;
    }
    for (auto [child, binders] : children(*x)) go(*child);
  };
  go(t);
  return out;
}

std::size_t size(const Term& t) {
  std::size_t n = 1;
  for (auto [child, binders] : children(*t)) n += size(*child);
  return n;
}

const char* axiomName(Axiom a) {
  switch (a) {
    case Axiom::Funext: return "funext";
    case Axiom::Ua: return "ua";
    case Axiom::Resize: return "resize";
  }
  return "?";
}

std::string show(const Term& t) {
  std::ostringstream os;
  std::function<void(const Term&)> go = [&](const Term& x) {
    auto args = [&](const char* name, std::initializer_list<const Term*> kids) {
      os << name << '(';
      bool first = true;
      for (const Term* k : kids) {
        if (!first) os << ", ";
        first = false;
        go(*k);
      }
      os << ')';
    };
    std::visit(overloaded{
                   [&](const term::Var& v) { os << "Var " << v.index; },
                   [&](const term::Const& c) { os << "Const " << c.name; },
                   [&](const term::Pi& p) { args("Pi", {&p.dom, &p.cod}); },
                   [&](const term::Lam& l) { args("Lam", {&l.body}); },
                   [&](const term::App& a) { args("App", {&a.fn, &a.arg}); },
                   [&](const term::Sigma& s) { args("Sigma", {&s.fst, &s.snd}); },
                   [&](const term::Pair& p) { args("Pair", {&p.a, &p.b}); },
                   [&](const term::Fst& p) { args("Fst", {&p.p}); },
                   [&](const term::Snd& p) { args("Snd", {&p.p}); },
                   [&](const term::IdTy& i) { args("Id", {&i.ty, &i.lhs, &i.rhs}); },
                   [&](const term::Refl& r) { args("Refl", {&r.t}); },
                   [&](const term::J& j) {
                     args("J", {&j.motive, &j.base, &j.lhs, &j.rhs, &j.path});
                   },
                   [&](const term::Univ& u) { os << "Univ " << u.level; },
                   [&](const term::El& e) { args("El", {&e.code}); },
                   [&](const term::CodePi& p) { args("CodePi", {&p.dom, &p.cod}); },
                   [&](const term::CodeSigma& s) { args("CodeSigma", {&s.dom, &s.cod}); },
                   [&](const term::CodeId& i) { args("CodeId", {&i.code, &i.lhs, &i.rhs}); },
                   [&](const term::CodeUniv& u) { os << "CodeUniv " << u.level; },
                   [&](const term::Lift& l) { args("Lift", {&l.code}); },
                   [&](const term::Ax& a) { os << axiomName(a.kind) << ' ' << a.level; },
               },
               x->node);
  };
  go(t);
  return os.str();
}

}  // namespace hott
