#include "hott/nbe.hpp"

namespace hott {

Env Env::extend(Value v) const {
  Env e;
  e.head = std::make_shared<const EnvNode>(EnvNode{std::move(v), head});
  e.size = size + 1;
  e.globals = globals;
  return e;
}

const Value& Env::lookup(std::size_t index) const {
  if (index >= size) throw EvalError("variable " + std::to_string(index) + " out of scope");
  const EnvNode* n = head.get();
  for (std::size_t k = 0; k < index; ++k) n = n->next.get();
  return n->value;
}

Value Closure::apply(const std::vector<Value>& args) const {
  if (native) return native(args);
  Env e = env;
  for (const auto& a : args) e = e.extend(a);
  return evaluate(e, body);
}

const GlobalEntry* Globals::find(const std::string& name) const {
  auto it = defs.find(name);
  return it == defs.end() ? nullptr : &it->second;
}

Value Globals::axiomType(Axiom a, int level) const {
  auto it = axiomTypes.find({static_cast<int>(a), level});
  return it == axiomTypes.end() ? nullptr : it->second;
}

namespace vmk {
Value make(decltype(ValueNode::node) n) { return std::make_shared<const ValueNode>(ValueNode{std::move(n)}); }
Value univ(int level) { return make(val::Univ{level}); }
Value var(std::size_t level, Value type) {
  Neutral n;
  n.head.isVar = true;
  n.head.level = level;
  n.headType = std::move(type);
  return make(val::Ne{std::move(n)});
}
Value pi(Value dom, std::function<Value(const Value&)> cod) {
  Closure c;
  c.native = [cod](const std::vector<Value>& a) { return cod(a.at(0)); };
  return make(val::Pi{std::move(dom), std::move(c)});
}
Value sigma(Value dom, std::function<Value(const Value&)> cod) {
  Closure c;
  c.native = [cod](const std::vector<Value>& a) { return cod(a.at(0)); };
  return make(val::Sigma{std::move(dom), std::move(c)});
}
Value id(Value ty, Value lhs, Value rhs) {
  return make(val::Id{std::move(ty), std::move(lhs), std::move(rhs)});
}
}  // namespace vmk

namespace {

Value extendSpine(const Neutral& n, Frame f) {
  Neutral m = n;
  m.spine.push_back(std::move(f));
  return vmk::make(val::Ne{std::move(m)});
}

Closure elOf(const Closure& codeFamily) {
  Closure c;
  c.native = [codeFamily](const std::vector<Value>& a) { return vEl(codeFamily.apply(a)); };
  return c;
}

}  // namespace

Value vApp(const Value& f, const Value& a) {
  if (auto* l = vas<val::Lam>(f)) return l->body.apply(a);
  if (auto* n = vas<val::Ne>(f)) {
    Frame fr{Frame::Kind::App, a, {}, {}, nullptr, nullptr};
    return extendSpine(n->ne, std::move(fr));
  }
  throw EvalError("application of a non-function");
}

Value vFst(const Value& p) {
  if (auto* q = vas<val::Pair>(p)) return q->a;
  if (auto* n = vas<val::Ne>(p)) return extendSpine(n->ne, Frame{Frame::Kind::Fst, nullptr, {}, {}, nullptr, nullptr});
  throw EvalError("first projection of a non-pair");
}

Value vSnd(const Value& p) {
  if (auto* q = vas<val::Pair>(p)) return q->b;
  if (auto* n = vas<val::Ne>(p)) return extendSpine(n->ne, Frame{Frame::Kind::Snd, nullptr, {}, {}, nullptr, nullptr});
  throw EvalError("second projection of a non-pair");
}

Value vEl(const Value& code) {
  if (auto* c = vas<val::CPi>(code)) return vmk::make(val::Pi{vEl(c->dom), elOf(c->cod)});
  if (auto* c = vas<val::CSigma>(code)) return vmk::make(val::Sigma{vEl(c->dom), elOf(c->cod)});
  if (auto* c = vas<val::CId>(code)) return vmk::id(vEl(c->code), c->lhs, c->rhs);
  if (auto* c = vas<val::CUniv>(code)) return vmk::univ(c->level);
  if (auto* c = vas<val::Lift>(code)) return vEl(c->code);
  if (vas<val::Ne>(code)) return vmk::make(val::El{code});
  throw EvalError("El applied to a non-code");
}

Value vJ(const Closure& motive, const Closure& base, const Value& lhs, const Value& rhs,
         const Value& path) {
  if (auto* r = vas<val::Refl>(path)) return base.apply(r->t);
  if (auto* n = vas<val::Ne>(path))
    return extendSpine(n->ne, Frame{Frame::Kind::J, nullptr, motive, base, lhs, rhs});
  throw EvalError("J on a non-path");
}

Value evaluate(const Globals& g, const Term& t) {
  Env e;
  e.globals = &g;
  return evaluate(e, t);
}

Value evaluate(const Env& env, const Term& t) {
  using namespace term;
  const auto& n = t->node;
  if (auto* v = std::get_if<Var>(&n)) return env.lookup(v->index);
  if (auto* c = std::get_if<Const>(&n)) {
    const GlobalEntry* e = env.globals ? env.globals->find(c->name) : nullptr;
    if (!e) throw EvalError("unknown constant " + c->name);
    return e->bodyValue;
  }
  if (auto* p = std::get_if<term::Pi>(&n)) return vmk::make(val::Pi{evaluate(env, p->dom), Closure{env, p->cod, {}}});
  if (auto* l = std::get_if<Lam>(&n)) return vmk::make(val::Lam{Closure{env, l->body, {}}});
  if (auto* a = std::get_if<App>(&n)) return vApp(evaluate(env, a->fn), evaluate(env, a->arg));
  if (auto* s = std::get_if<term::Sigma>(&n)) return vmk::make(val::Sigma{evaluate(env, s->fst), Closure{env, s->snd, {}}});
  if (auto* p = std::get_if<term::Pair>(&n)) return vmk::make(val::Pair{evaluate(env, p->a), evaluate(env, p->b)});
  if (auto* p = std::get_if<Fst>(&n)) return vFst(evaluate(env, p->p));
  if (auto* p = std::get_if<Snd>(&n)) return vSnd(evaluate(env, p->p));
  if (auto* i = std::get_if<IdTy>(&n)) return vmk::id(evaluate(env, i->ty), evaluate(env, i->lhs), evaluate(env, i->rhs));
  if (auto* r = std::get_if<term::Refl>(&n)) return vmk::make(val::Refl{evaluate(env, r->t)});
  if (auto* j = std::get_if<J>(&n))
    return vJ(Closure{env, j->motive, {}}, Closure{env, j->base, {}}, evaluate(env, j->lhs),
              evaluate(env, j->rhs), evaluate(env, j->path));
  if (auto* u = std::get_if<term::Univ>(&n)) return vmk::univ(u->level);
  if (auto* e = std::get_if<term::El>(&n)) return vEl(evaluate(env, e->code));
  if (auto* c = std::get_if<CodePi>(&n)) return vmk::make(val::CPi{evaluate(env, c->dom), Closure{env, c->cod, {}}});
  if (auto* c = std::get_if<CodeSigma>(&n)) return vmk::make(val::CSigma{evaluate(env, c->dom), Closure{env, c->cod, {}}});
  if (auto* c = std::get_if<CodeId>(&n))
    return vmk::make(val::CId{evaluate(env, c->code), evaluate(env, c->lhs), evaluate(env, c->rhs)});
  if (auto* u = std::get_if<CodeUniv>(&n)) return vmk::make(val::CUniv{u->level});
  if (auto* l = std::get_if<term::Lift>(&n)) return vmk::make(val::Lift{evaluate(env, l->code)});
  if (auto* a = std::get_if<Ax>(&n)) {
    Neutral ne;
    ne.head.isVar = false;
    ne.head.axiom = a->kind;
    ne.head.axiomLevel = a->level;
    ne.headType = env.globals ? env.globals->axiomType(a->kind, a->level) : nullptr;
    return vmk::make(val::Ne{std::move(ne)});
  }
  throw EvalError("unknown term node");
}

namespace {

Term headTerm(std::size_t depth, const Head& h) {
  if (!h.isVar) return mk::axiom(h.axiom, h.axiomLevel);
  if (h.level >= depth) throw EvalError("variable level escapes readback depth");
  return mk::var(depth - 1 - h.level);
}

Term readbackNeutral(std::size_t depth, const Neutral& ne) {
  Term t = headTerm(depth, ne.head);
  Value type = ne.headType;
  Neutral prefix;
  prefix.head = ne.head;
  prefix.headType = ne.headType;
  for (const Frame& f : ne.spine) {
    Value cur = vmk::make(val::Ne{prefix});
    switch (f.kind) {
      case Frame::Kind::App: {
        const val::Pi* p = type ? vas<val::Pi>(type) : nullptr;
        t = mk::app(t, readback(depth, f.arg, p ? p->dom : nullptr));
        type = p ? p->cod.apply(f.arg) : nullptr;
        break;
      }
      case Frame::Kind::Fst: {
        const val::Sigma* s = type ? vas<val::Sigma>(type) : nullptr;
        t = mk::fst(t);
        type = s ? s->fst : nullptr;
        break;
      }
      case Frame::Kind::Snd: {
        const val::Sigma* s = type ? vas<val::Sigma>(type) : nullptr;
        t = mk::snd(t);
        type = s ? s->snd.apply(vFst(cur)) : nullptr;
        break;
      }
      case Frame::Kind::J: {
        const val::Id* id = type ? vas<val::Id>(type) : nullptr;
        Value a = id ? id->ty : nullptr;
        Value x = vmk::var(depth, a);
        Value y = vmk::var(depth + 1, a);
        Value p = vmk::var(depth + 2, a ? vmk::id(a, x, y) : nullptr);
        Value motiveBody = f.motive.apply({x, y, p});
        Term motive = a ? readbackType(depth + 3, motiveBody) : readbackUntyped(depth + 3, motiveBody);
        Value z = vmk::var(depth, a);
        Value baseType = a ? f.motive.apply({z, z, vmk::make(val::Refl{z})}) : nullptr;
        Term base = readback(depth + 1, f.base.apply(z), baseType);
        t = mk::j(motive, base, readback(depth, f.lhs, a), readback(depth, f.rhs, a), t);
        type = a ? f.motive.apply({f.lhs, f.rhs, cur}) : nullptr;
        break;
      }
    }
    prefix.spine.push_back(f);
  }
  return t;
}

}  // namespace

Term readbackUntyped(std::size_t depth, const Value& v) {
  const auto& n = v->node;
  auto fresh = [&](std::size_t d) { return vmk::var(d, nullptr); };
  if (auto* l = std::get_if<val::Lam>(&n)) return mk::lam(readbackUntyped(depth + 1, l->body.apply(fresh(depth))));
  if (auto* p = std::get_if<val::Pair>(&n)) return mk::pair(readbackUntyped(depth, p->a), readbackUntyped(depth, p->b));
  if (auto* r = std::get_if<val::Refl>(&n)) return mk::refl(readbackUntyped(depth, r->t));
  if (auto* p = std::get_if<val::Pi>(&n))
    return mk::pi(readbackUntyped(depth, p->dom), readbackUntyped(depth + 1, p->cod.apply(fresh(depth))));
  if (auto* s = std::get_if<val::Sigma>(&n))
    return mk::sigma(readbackUntyped(depth, s->fst), readbackUntyped(depth + 1, s->snd.apply(fresh(depth))));
  if (auto* i = std::get_if<val::Id>(&n))
    return mk::id(readbackUntyped(depth, i->ty), readbackUntyped(depth, i->lhs), readbackUntyped(depth, i->rhs));
  if (auto* u = std::get_if<val::Univ>(&n)) return mk::univ(u->level);
  if (auto* e = std::get_if<val::El>(&n)) return mk::el(readbackUntyped(depth, e->code));
  if (auto* c = std::get_if<val::CPi>(&n))
    return mk::codePi(readbackUntyped(depth, c->dom), readbackUntyped(depth + 1, c->cod.apply(fresh(depth))));
  if (auto* c = std::get_if<val::CSigma>(&n))
    return mk::codeSigma(readbackUntyped(depth, c->dom), readbackUntyped(depth + 1, c->cod.apply(fresh(depth))));
  if (auto* c = std::get_if<val::CId>(&n))
    return mk::codeId(readbackUntyped(depth, c->code), readbackUntyped(depth, c->lhs), readbackUntyped(depth, c->rhs));
  if (auto* u = std::get_if<val::CUniv>(&n)) return mk::codeUniv(u->level);
  if (auto* l = std::get_if<val::Lift>(&n)) return mk::lift(readbackUntyped(depth, l->code));
  return readbackNeutral(depth, std::get<val::Ne>(n).ne);
}

Term readback(std::size_t depth, const Value& v, const Value& type) {
  if (!type) return readbackUntyped(depth, v);
  if (auto* p = vas<val::Pi>(type)) {
    Value x = vmk::var(depth, p->dom);
    return mk::lam(readback(depth + 1, vApp(v, x), p->cod.apply(x)));
  }
  if (auto* ne = vas<val::Ne>(v)) return readbackNeutral(depth, ne->ne);
  if (auto* s = vas<val::Sigma>(type)) {
    if (auto* q = vas<val::Pair>(v)) return mk::pair(readback(depth, q->a, s->fst), readback(depth, q->b, s->snd.apply(q->a)));
  } else if (auto* i = vas<val::Id>(type)) {
    if (auto* r = vas<val::Refl>(v)) return mk::refl(readback(depth, r->t, i->ty));
  } else if (auto* u = vas<val::Univ>(type)) {
    Value un = type;
    if (auto* c = vas<val::CPi>(v)) {
      Value x = vmk::var(depth, vEl(c->dom));
      return mk::codePi(readback(depth, c->dom, un), readback(depth + 1, c->cod.apply(x), un));
    }
    if (auto* c = vas<val::CSigma>(v)) {
      Value x = vmk::var(depth, vEl(c->dom));
      return mk::codeSigma(readback(depth, c->dom, un), readback(depth + 1, c->cod.apply(x), un));
    }
    if (auto* c = vas<val::CId>(v)) {
      Value el = vEl(c->code);
      return mk::codeId(readback(depth, c->code, un), readback(depth, c->lhs, el), readback(depth, c->rhs, el));
    }
    if (auto* l = vas<val::Lift>(v))
      return mk::lift(readback(depth, l->code, u->level > 0 ? vmk::univ(u->level - 1) : nullptr));
  }
  return readbackUntyped(depth, v);
}

Term readbackType(std::size_t depth, const Value& ty) {
  const auto& n = ty->node;
  if (auto* p = std::get_if<val::Pi>(&n)) {
    Value x = vmk::var(depth, p->dom);
    return mk::pi(readbackType(depth, p->dom), readbackType(depth + 1, p->cod.apply(x)));
  }
  if (auto* s = std::get_if<val::Sigma>(&n)) {
    Value x = vmk::var(depth, s->fst);
    return mk::sigma(readbackType(depth, s->fst), readbackType(depth + 1, s->snd.apply(x)));
  }
  if (auto* i = std::get_if<val::Id>(&n))
    return mk::id(readbackType(depth, i->ty), readback(depth, i->lhs, i->ty), readback(depth, i->rhs, i->ty));
  if (auto* u = std::get_if<val::Univ>(&n)) return mk::univ(u->level);
  if (auto* e = std::get_if<val::El>(&n)) return mk::el(readbackUntyped(depth, e->code));
  throw EvalError("readback of a non-type at type position");
}

bool convertible(std::size_t depth, const Value& a, const Value& b, const Value& type) {
  return equal(readback(depth, a, type), readback(depth, b, type));
}

bool convertibleTypes(std::size_t depth, const Value& a, const Value& b) {
  return equal(readbackType(depth, a), readbackType(depth, b));
}

Term normalize(const Globals& g, const Term& t, const Term& type) {
  return readback(0, evaluate(g, t), evaluate(g, type));
}

Term normalizeType(const Globals& g, const Term& ty) { return readbackType(0, evaluate(g, ty)); }

Term normalizeUntyped(const Globals& g, const Term& t) { return readbackUntyped(0, evaluate(g, t)); }

}  // namespace hott
