#include "hott/checker.hpp"

#include <chrono>

namespace hott {

namespace detail {
std::map<std::pair<int, int>, Term> elaborateAxiomTypes(int height);
}

const char* errorKindName(ErrorKind k) {
  switch (k) {
    case ErrorKind::Mismatch: return "type-mismatch";
    case ErrorKind::Unbound: return "unbound";
    case ErrorKind::LevelOverflow: return "level-overflow";
    case ErrorKind::AxiomDisabled: return "axiom-disabled";
    case ErrorKind::NotAType: return "not-a-type";
    case ErrorKind::NotATerm: return "not-a-term";
    case ErrorKind::CannotInfer: return "cannot-infer";
    case ErrorKind::Duplicate: return "duplicate-definition";
    case ErrorKind::Malformed: return "malformed";
    case ErrorKind::Syntax: return "syntax";
  }
  return "?";
}

Signature::Signature(Flags flags, Bare)
    : flags_(flags),
      globals_(std::make_shared<Globals>()),
      axiomTerms_(std::make_shared<std::map<std::pair<int, int>, Term>>()),
      failed_(std::make_shared<std::map<std::string, ErrorKind>>()) {
  if (flags_.towerHeight < 1) throw std::invalid_argument("tower height must be at least 1");
}

Signature::Signature(Flags flags) : Signature(flags, Bare{}) {
  *axiomTerms_ = detail::elaborateAxiomTypes(flags_.towerHeight);
  for (const auto& [key, ty] : *axiomTerms_) globals_->axiomTypes[key] = evaluate(*globals_, ty);
}

std::set<std::string> Signature::names() const {
  std::set<std::string> out;
  for (const auto& [n, e] : globals_->defs) out.insert(n);
  return out;
}

void Signature::add(const std::string& name, const Term& type, const Term& body) {
  GlobalEntry e;
  e.type = type;
  e.body = body;
  e.typeValue = evaluate(*globals_, type);
  e.bodyValue = evaluate(*globals_, body);
  globals_->defs[name] = std::move(e);
}

Term Signature::axiomType(Axiom a, int level) const {
  auto it = axiomTerms_->find({static_cast<int>(a), level});
  if (it == axiomTerms_->end())
    throw TypeError(ErrorKind::LevelOverflow, std::string(axiomName(a)) + " " + std::to_string(level) +
                                                  " does not fit in a tower of height " +
                                                  std::to_string(flags_.towerHeight));
  return it->second;
}

void Signature::markFailed(const std::string& name, ErrorKind kind) { (*failed_)[name] = kind; }

std::optional<ErrorKind> Signature::failedKind(const std::string& name) const {
  auto it = failed_->find(name);
  if (it == failed_->end()) return std::nullopt;
  return it->second;
}

std::set<std::string> Signature::failedNames() const {
  std::set<std::string> out;
  for (const auto& [n, k] : *failed_) out.insert(n);
  return out;
}

bool Report::pass() const { return failures() == 0; }

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.pass ? 0 : 1;
  return n;
}

namespace {

struct Ctx {
  Env env;
  std::vector<Value> types;
  std::vector<std::string> names;

  std::size_t depth() const { return types.size(); }
  Ctx bind(const Value& ty) const {
    Ctx c = *this;
    c.env = env.extend(vmk::var(depth(), ty));
    c.types.push_back(ty);
    c.names.push_back("v" + std::to_string(depth()));
    return c;
  }
};

class Checker {
 public:
  explicit Checker(const Signature& sig) : sig_(sig) {}

  Ctx context(const Context& ctx) {
    Ctx c;
    c.env.globals = &sig_.globals();
    for (const Term& ty : ctx) {
      checkType(c, ty);
      c = c.bind(evaluate(c.env, ty));
    }
    return c;
  }

  void checkType(const Ctx& c, const Term& t) {
    using namespace term;
    if (auto* p = as<term::Pi>(t)) {
      checkType(c, p->dom);
      checkType(c.bind(evaluate(c.env, p->dom)), p->cod);
    } else if (auto* s = as<term::Sigma>(t)) {
      checkType(c, s->fst);
      checkType(c.bind(evaluate(c.env, s->fst)), s->snd);
    } else if (auto* i = as<IdTy>(t)) {
      checkType(c, i->ty);
      Value a = evaluate(c.env, i->ty);
      check(c, i->lhs, a);
      check(c, i->rhs, a);
    } else if (auto* u = as<term::Univ>(t)) {
      levelFits(u->level, "universe U" + std::to_string(u->level));
    } else if (auto* e = as<term::El>(t)) {
      universeOf(c, e->code);
    } else {
      throw TypeError(ErrorKind::NotAType, "expected a type, got the term " + show(c, t));
    }
  }

  // Level of the universe a code lives in.
  int universeOf(const Ctx& c, const Term& code) {
    Value ty = infer(c, code);
    if (auto* u = vas<val::Univ>(ty)) return u->level;
    throw TypeError(ErrorKind::Mismatch, "expected a code in a universe, but " + show(c, code) +
                                             " has type " + showType(c, ty));
  }

  Value infer(const Ctx& c, const Term& t) {
    using namespace term;
    if (auto* v = as<Var>(t)) {
      if (v->index >= c.depth())
        throw TypeError(ErrorKind::Unbound, "variable index " + std::to_string(v->index) + " is unbound");
      return c.types[c.depth() - 1 - v->index];
    }
    if (auto* k = as<Const>(t)) {
      const GlobalEntry* e = sig_.globals().find(k->name);
      if (!e) throw TypeError(ErrorKind::Unbound, "unknown constant '" + k->name + "'");
      return e->typeValue;
    }
    if (auto* a = as<App>(t)) {
      Value fty = infer(c, a->fn);
      auto* p = vas<val::Pi>(fty);
      if (!p)
        throw TypeError(ErrorKind::Mismatch, "cannot apply " + show(c, a->fn) + " of non-function type " +
                                                 showType(c, fty));
      check(c, a->arg, p->dom);
      return p->cod.apply(evaluate(c.env, a->arg));
    }
    if (auto* f = as<Fst>(t)) {
      Value pty = infer(c, f->p);
      auto* s = vas<val::Sigma>(pty);
      if (!s) throw TypeError(ErrorKind::Mismatch, "projection from non-pair type " + showType(c, pty));
      return s->fst;
    }
    if (auto* f = as<Snd>(t)) {
      Value pty = infer(c, f->p);
      auto* s = vas<val::Sigma>(pty);
      if (!s) throw TypeError(ErrorKind::Mismatch, "projection from non-pair type " + showType(c, pty));
      return s->snd.apply(vFst(evaluate(c.env, f->p)));
    }
    if (auto* r = as<term::Refl>(t)) {
      Value a = infer(c, r->t);
      Value v = evaluate(c.env, r->t);
      return vmk::id(a, v, v);
    }
    if (auto* j = as<J>(t)) return inferJ(c, *j);
    if (auto* p = as<CodePi>(t)) return inferCodeBinder(c, p->dom, p->cod);
    if (auto* s = as<CodeSigma>(t)) return inferCodeBinder(c, s->dom, s->cod);
    if (auto* i = as<CodeId>(t)) {
      int n = universeOf(c, i->code);
      Value el = vEl(evaluate(c.env, i->code));
      check(c, i->lhs, el);
      check(c, i->rhs, el);
      return vmk::univ(n);
    }
    if (auto* u = as<CodeUniv>(t)) {
      levelFits(u->level + 1, "code-U " + std::to_string(u->level) + " (lives in U" +
                                  std::to_string(u->level + 1) + ")");
      return vmk::univ(u->level + 1);
    }
    if (auto* l = as<term::Lift>(t)) {
      int n = universeOf(c, l->code);
      levelFits(n + 1, "lift of a code in U" + std::to_string(n));
      return vmk::univ(n + 1);
    }
    if (auto* ax = as<Ax>(t)) return inferAxiom(*ax);
    if (as<Lam>(t) || as<term::Pair>(t))
      throw TypeError(ErrorKind::CannotInfer, "cannot infer the type of " + show(c, t) + "; add an annotation");
    throw TypeError(ErrorKind::NotATerm, show(c, t) + " is a type, not a code or term");
  }

  void check(const Ctx& c, const Term& t, const Value& ty) {
    using namespace term;
    if (auto* l = as<Lam>(t)) {
      auto* p = vas<val::Pi>(ty);
      if (!p) throw TypeError(ErrorKind::Mismatch, "a function was given where " + showType(c, ty) + " was expected");
      Ctx inner = c.bind(p->dom);
      check(inner, l->body, p->cod.apply(vmk::var(c.depth(), p->dom)));
      return;
    }
    if (auto* q = as<term::Pair>(t)) {
      auto* s = vas<val::Sigma>(ty);
      if (!s) throw TypeError(ErrorKind::Mismatch, "a pair was given where " + showType(c, ty) + " was expected");
      check(c, q->a, s->fst);
      check(c, q->b, s->snd.apply(evaluate(c.env, q->a)));
      return;
    }
    if (auto* r = as<term::Refl>(t)) {
      auto* i = vas<val::Id>(ty);
      if (!i) throw TypeError(ErrorKind::Mismatch, "refl was given where " + showType(c, ty) + " was expected");
      check(c, r->t, i->ty);
      Value v = evaluate(c.env, r->t);
      if (!convertible(c.depth(), v, i->lhs, i->ty) || !convertible(c.depth(), v, i->rhs, i->ty))
        throw TypeError(ErrorKind::Mismatch, "refl " + show(c, r->t) + " does not inhabit " + showType(c, ty));
      return;
    }
    Value got = infer(c, t);
    if (!convertibleTypes(c.depth(), got, ty))
      throw TypeError(ErrorKind::Mismatch, "type mismatch for " + show(c, t) + "\n  expected: " + showType(c, ty) +
                                               "\n  inferred: " + showType(c, got));
  }

  std::string show(const Ctx& c, const Term& t) const {
    try {
      return printTerm(t, c.names, sig_.names());
    } catch (const std::exception&) {
      return hott::show(t);
    }
  }

  std::string showType(const Ctx& c, const Value& ty) const {
    try {
      return printTerm(readbackType(c.depth(), ty), c.names, sig_.names());
    } catch (const std::exception&) {
      return "<type>";
    }
  }

 private:
  const Signature& sig_;

  void levelFits(int level, const std::string& what) {
    if (level < 0 || level >= sig_.flags().towerHeight)
      throw TypeError(ErrorKind::LevelOverflow, what + " exceeds the universe tower of height " +
                                                    std::to_string(sig_.flags().towerHeight));
  }

  Value inferCodeBinder(const Ctx& c, const Term& dom, const Term& cod) {
    int n = universeOf(c, dom);
    Ctx inner = c.bind(vEl(evaluate(c.env, dom)));
    check(inner, cod, vmk::univ(n));
    return vmk::univ(n);
  }

  Value inferJ(const Ctx& c, const term::J& j) {
    Value pty = infer(c, j.path);
    auto* id = vas<val::Id>(pty);
    if (!id) throw TypeError(ErrorKind::Mismatch, "J eliminates a path, but the path has type " + showType(c, pty));
    const Value& a = id->ty;
    check(c, j.lhs, a);
    check(c, j.rhs, a);
    Value lhs = evaluate(c.env, j.lhs);
    Value rhs = evaluate(c.env, j.rhs);
    if (!convertible(c.depth(), lhs, id->lhs, a) || !convertible(c.depth(), rhs, id->rhs, a))
      throw TypeError(ErrorKind::Mismatch, "J endpoints " + show(c, j.lhs) + ", " + show(c, j.rhs) +
                                               " do not match the path type " + showType(c, pty));
    Ctx cx = c.bind(a);
    Ctx cxy = cx.bind(a);
    Value x = vmk::var(c.depth(), a);
    Value y = vmk::var(c.depth() + 1, a);
    Ctx cxyp = cxy.bind(vmk::id(a, x, y));
    checkType(cxyp, j.motive);
    Value z = vmk::var(c.depth(), a);
    Env motiveEnv = c.env.extend(z).extend(z).extend(vmk::make(val::Refl{z}));
    Value baseTy = evaluate(motiveEnv, j.motive);
    check(cx, j.base, baseTy);
    Env resultEnv = c.env.extend(lhs).extend(rhs).extend(evaluate(c.env, j.path));
    return evaluate(resultEnv, j.motive);
  }

  Value inferAxiom(const term::Ax& ax) {
    const Flags& f = sig_.flags();
    std::string name = std::string(axiomName(ax.kind)) + " " + std::to_string(ax.level);
    if (ax.kind == Axiom::Ua && !f.uaAt(ax.level))
      throw TypeError(ErrorKind::AxiomDisabled, "univalence axiom " + name + " is disabled");
    if (ax.kind == Axiom::Resize && !f.resizing)
      throw TypeError(ErrorKind::AxiomDisabled, "propositional resizing " + name + " is disabled");
    Value ty = sig_.globals().axiomType(ax.kind, ax.level);
    if (!ty) {
      if (sig_.globals().axiomTypes.empty())
        throw TypeError(ErrorKind::AxiomDisabled, name + " is unavailable in this signature");
      throw TypeError(ErrorKind::LevelOverflow, name + " does not fit in a tower of height " +
                                                    std::to_string(f.towerHeight));
    }
    return ty;
  }
};

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const EvalError& e) {
    throw TypeError(ErrorKind::Malformed, e.what());
  } catch (const MalformedTerm& e) {
    throw TypeError(ErrorKind::Malformed, e.what());
  }
}

}  // namespace

Term infer(const Signature& sig, const Context& ctx, const Term& t) {
  return guarded([&] {
    Checker ch(sig);
    Ctx c = ch.context(ctx);
    return readbackType(c.depth(), ch.infer(c, t));
  });
}

void check(const Signature& sig, const Context& ctx, const Term& t, const Term& ty) {
  guarded([&] {
    Checker ch(sig);
    Ctx c = ch.context(ctx);
    ch.checkType(c, ty);
    ch.check(c, t, evaluate(c.env, ty));
    return 0;
  });
}

void checkType(const Signature& sig, const Context& ctx, const Term& ty) {
  guarded([&] {
    Checker ch(sig);
    Ctx c = ch.context(ctx);
    ch.checkType(c, ty);
    return 0;
  });
}

namespace {
Ctx valueContext(const Signature& sig, const Context& ctx) {
  Ctx c;
  c.env.globals = &sig.globals();
  for (const Term& ty : ctx) c = c.bind(evaluate(c.env, ty));
  return c;
}
}  // namespace

Term normalizeIn(const Signature& sig, const Context& ctx, const Term& t, const Term& ty) {
  Ctx c = valueContext(sig, ctx);
  return readback(c.depth(), evaluate(c.env, t), evaluate(c.env, ty));
}

Term normalizeTypeIn(const Signature& sig, const Context& ctx, const Term& ty) {
  Ctx c = valueContext(sig, ctx);
  return readbackType(c.depth(), evaluate(c.env, ty));
}

bool convertibleIn(const Signature& sig, const Context& ctx, const Term& a, const Term& b, const Term& ty) {
  Ctx c = valueContext(sig, ctx);
  return convertible(c.depth(), evaluate(c.env, a), evaluate(c.env, b), evaluate(c.env, ty));
}

namespace {

void checkOne(Signature& sig, const ResolvedDecl& d, DeclResult& r) {
  if (sig.has(d.name)) throw TypeError(ErrorKind::Duplicate, "'" + d.name + "' is already defined");
  for (const auto& dep : constantsOf(d.body)) {
    if (auto k = sig.failedKind(dep))
      throw TypeError(*k, "depends on '" + dep + "', which failed (" + errorKindName(*k) + ")");
  }
  if (d.type) {
    for (const auto& dep : constantsOf(*d.type)) {
      if (auto k = sig.failedKind(dep))
        throw TypeError(*k, "depends on '" + dep + "', which failed (" + errorKindName(*k) + ")");
    }
  }
  Term ty;
  if (d.type) {
    checkType(sig, {}, *d.type);
    check(sig, {}, d.body, *d.type);
    ty = *d.type;
  } else {
    ty = infer(sig, {}, d.body);
  }
  r.normalFormSize = size(normalizeIn(sig, {}, d.body, ty));
  sig.add(d.name, ty, d.body);
}

}  // namespace

Report checkModule(Signature& sig, const std::vector<ResolvedDecl>& decls, bool strict) {
  Report rep;
  for (const auto& d : decls) {
    DeclResult r;
    r.name = d.name;
    r.span = d.span;
    auto start = std::chrono::steady_clock::now();
    try {
      checkOne(sig, d, r);
      r.pass = true;
    } catch (const TypeError& e) {
      r.error = e.what();
      r.errorKind = e.kind();
    }
    r.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (!r.pass && r.errorKind != ErrorKind::Duplicate) sig.markFailed(d.name, *r.errorKind);
    rep.entries.push_back(r);
    if (strict && !r.pass) break;
  }
  return rep;
}

Report checkSource(Signature& sig, const std::string& source, const std::string& file, bool strict) {
  Report rep;
  std::vector<SurfaceDecl> decls;
  try {
    decls = parseModule(source, file);
  } catch (const SourceError& e) {
    DeclResult r;
    r.name = "<parse>";
    r.error = e.what();
    r.errorKind = ErrorKind::Syntax;
    r.span = e.span();
    rep.entries.push_back(r);
    return rep;
  }
  for (const auto& d : decls) {
    std::set<std::string> known = sig.names();
    for (const auto& f : sig.failedNames()) known.insert(f);
    known.erase(d.name);
    std::vector<ResolvedDecl> resolved;
    try {
      resolved = resolveNames({d}, known);
    } catch (const ResolveError& e) {
      DeclResult r;
      r.name = d.name;
      r.error = e.what();
      r.errorKind = e.kind() == "unbound identifier" ? ErrorKind::Unbound : ErrorKind::Syntax;
      r.span = e.span();
      sig.markFailed(d.name, *r.errorKind);
      rep.entries.push_back(r);
      if (strict) break;
      continue;
    }
    Report part = checkModule(sig, resolved, strict);
    for (auto& e : part.entries) {
      if (!e.pass && e.error.rfind(file, 0) != 0) e.error = d.span.str() + ": " + e.error;
      rep.entries.push_back(e);
    }
    if (strict && !part.pass()) break;
  }
  return rep;
}

}  // namespace hott
