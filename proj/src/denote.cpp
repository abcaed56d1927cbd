#include "hott/denote.hpp"

#include <chrono>
#include <mutex>
#include <numeric>

namespace hott::denote {

using namespace grpd;

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

Grp discreteCached(int n) {
  static std::mutex mu;
  static std::map<int, Grp> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  return cache[n] = discrete(n);
}

std::size_t hashInts(std::size_t h, const std::vector<int>& v) {
  for (int x : v) h = (h ^ static_cast<std::size_t>(x + 0x9e37)) * 1099511628211ULL;
  return h * 31 + v.size();
}

std::shared_ptr<const std::vector<int>> composeMap(const std::shared_ptr<const std::vector<int>>& inner,
                                                   const std::vector<int>& along) {
  auto out = std::make_shared<std::vector<int>>();
  out->reserve(along.size());
  for (int x : along) out->push_back(inner ? (*inner)[idx(x)] : x);
  return out;
}

}  // namespace

const Grp& Family::fiber(int x) const { return node->fibers[idx(o(x))]; }
const GFunctor& Family::action(int g) const { return node->actions[idx(m(g))]; }

Integral integral(const Family& f) {
  const FinGroupoid& X = *f.base;
  Integral r;
  std::size_t objs = 0, mors = 0;
  for (int x = 0; x < X.objects(); ++x) {
    r.objStart.push_back(static_cast<int>(objs));
    objs += idx(f.fiber(x)->objects());
  }
  for (int g = 0; g < X.morphisms(); ++g) {
    r.morStart.push_back(static_cast<int>(mors));
    mors += idx(f.fiber(X.dst(g))->morphisms());
  }
  checkCaps(objs, mors, "Grothendieck construction");
  GroupoidBuilder b;
  for (int x = 0; x < X.objects(); ++x)
    for (int a = 0; a < f.fiber(x)->objects(); ++a) {
      b.addObject();
      r.objPair.emplace_back(x, a);
    }
  std::vector<int> pre;
  for (int g = 0; g < X.morphisms(); ++g) {
    const Grp& fd = f.fiber(X.dst(g));
    const GFunctor& act = f.action(g);
    pre.assign(idx(fd->objects()), -1);
    for (std::size_t a = 0; a < act.obj.size(); ++a) pre[idx(act.obj[a])] = static_cast<int>(a);
    for (int alpha = 0; alpha < fd->morphisms(); ++alpha) {
      b.addMorphism(r.objectOf(X.src(g), pre[idx(fd->src(alpha))]), r.objectOf(X.dst(g), fd->dst(alpha)));
      r.morPair.emplace_back(g, alpha);
    }
  }
  for (int x = 0; x < X.objects(); ++x)
    for (int a = 0; a < f.fiber(x)->objects(); ++a) b.setIdentity(r.objectOf(x, a), r.morphismOf(X.id(x), f.fiber(x)->id(a)));
  r.g = b.build([&](int h, int k) {
    auto [g2, a2] = r.morPair[idx(h)];
    auto [g1, a1] = r.morPair[idx(k)];
    int alpha = f.fiber(X.dst(g2))->comp(a2, f.action(g2).mor[idx(a1)]);
    return r.morphismOf(X.comp(g2, g1), alpha);
  });
  r.proj = GFunctor{r.g, f.base, {}, {}};
  for (auto [x, a] : r.objPair) r.proj.obj.push_back(x);
  for (auto [g, a] : r.morPair) r.proj.mor.push_back(g);
  return r;
}

Family reindex(const Family& f, const GFunctor& along) {
  Family r;
  r.node = f.node;
  r.base = along.dom;
  r.objMap = composeMap(f.objMap, along.obj);
  r.morMap = composeMap(f.morMap, along.mor);
  return r;
}

Section reindex(const Section& s, const GFunctor& along) {
  Section r;
  for (int x : along.obj) r.obj.push_back(s.obj[idx(x)]);
  for (int g : along.mor) r.mor.push_back(s.mor[idx(g)]);
  return r;
}

bool sameFamily(const Family& a, const Family& b) {
  if (!sameGroupoid(a.base, b.base)) return false;
  for (int x = 0; x < a.base->objects(); ++x)
    if (!sameGroupoid(a.fiber(x), b.fiber(x))) return false;
  for (int g = 0; g < a.base->morphisms(); ++g)
    if (a.action(g).obj != b.action(g).obj || a.action(g).mor != b.action(g).mor) return false;
  return true;
}

bool validSection(const Family& f, const Section& s, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  const FinGroupoid& X = *f.base;
  if (s.obj.size() != idx(X.objects()) || s.mor.size() != idx(X.morphisms())) return fail("table sizes");
  for (int x = 0; x < X.objects(); ++x)
    if (s.obj[idx(x)] < 0 || s.obj[idx(x)] >= f.fiber(x)->objects()) return fail("object out of fiber");
  for (int g = 0; g < X.morphisms(); ++g) {
    const Grp& fd = f.fiber(X.dst(g));
    int m = s.mor[idx(g)];
    if (m < 0 || m >= fd->morphisms()) return fail("morphism out of fiber");
    if (fd->src(m) != f.action(g).at(s.obj[idx(X.src(g))]) || fd->dst(m) != s.obj[idx(X.dst(g))])
      return fail("endpoints at morphism " + std::to_string(g));
  }
  for (int x = 0; x < X.objects(); ++x)
    if (s.mor[idx(X.id(x))] != f.fiber(x)->id(s.obj[idx(x)])) return fail("identity not preserved");
  for (int g1 = 0; g1 < X.morphisms(); ++g1)
    for (int g2 : X.out(X.dst(g1))) {
      const Grp& fd = f.fiber(X.dst(g2));
      int lhs = s.mor[idx(X.comp(g2, g1))];
      int rhs = fd->comp(s.mor[idx(g2)], f.action(g2).mor[idx(s.mor[idx(g1)])]);
      if (lhs != rhs) return fail("composition not preserved");
    }
  return true;
}

// ---------------------------------------------------------------- evaluator

struct Closure {
  Term body;  // binds one variable
  Context ctx;
  Env env;
  Ctx D;
  Term dom, cod;  // normalized Pi parts
  std::uint64_t serial = 0;
  mutable std::shared_ptr<const Section> cached;
};

namespace {

struct Scope {
  Context ctx;
  Env env;
  Ctx D;
};

Value secValue(Section s) { return Value{std::make_shared<const Section>(std::move(s)), nullptr}; }

}  // namespace

struct Model::Impl {
  Signature sig;
  int k;
  SetsUniverse U;
  std::map<std::vector<int>, int> permToMor;
  Ctx root;
  std::uint64_t serials = 0;

  std::unordered_map<std::string, Family> families;
  std::map<std::tuple<const CtxNode*, const FamilyNode*, const std::vector<int>*>, Ctx> exts;
  std::vector<Family> keepAlive;
  std::unordered_map<std::string, Scope> scopes;
  std::map<std::string, Section> closedConsts;
  std::map<std::pair<int, int>, Section> axioms;
  std::unordered_map<const CtxNode*, Family> universes;

  Impl(const Signature& s, int bound) : sig(s), k(bound), U(setsUniverse(bound)) {
    for (int m = 0; m < U.el.base()->morphisms(); ++m) {
      std::vector<int> key{static_cast<int>(U.perms[idx(m)].size())};
      key.insert(key.end(), U.perms[idx(m)].begin(), U.perms[idx(m)].end());
      permToMor[key] = m;
    }
    auto r = std::make_shared<CtxNode>();
    r->g = terminal();
    root = r;
  }

  // ------------------------------------------------------------ contexts

  Ctx extend(const Ctx& D, const Family& F) {
    auto key = std::make_tuple(D.get(), F.node.get(), F.objMap.get());
    auto it = exts.find(key);
    if (it != exts.end()) return it->second;
    auto n = std::make_shared<CtxNode>();
    n->parent = D;
    n->fam = F;
    n->ext = integral(F);
    n->g = n->ext.g;
    n->depth = D->depth + 1;
    keepAlive.push_back(F);
    exts[key] = n;
    return n;
  }

  Value reindexValue(const Value& v, const GFunctor& along, const Ctx& D2) {
    if (v.sec) return secValue(reindex(*v.sec, along));
    auto c = std::make_shared<Closure>(*v.clo);
    for (auto& e : c->env) e = reindexValue(e, along, D2);
    c->D = D2;
    c->serial = ++serials;
    if (v.clo->cached) c->cached = std::make_shared<const Section>(reindex(*v.clo->cached, along));
    return Value{nullptr, c};
  }

  Value var0(const Ctx& E) {
    Section s;
    for (auto [x, a] : E->ext.objPair) s.obj.push_back(a);
    for (auto [g, alpha] : E->ext.morPair) s.mor.push_back(alpha);
    return secValue(std::move(s));
  }

  Scope extendScope(const Scope& s, const Term& T) {
    Family F = evalType(s, T);
    Ctx E = extend(s.D, F);
    Scope r;
    r.ctx = s.ctx;
    r.ctx.push_back(T);
    for (const auto& v : s.env) r.env.push_back(reindexValue(v, E->ext.proj, E));
    r.env.push_back(var0(E));
    r.D = E;
    return r;
  }

  Scope scopeOf(const Context& ctx) {
    std::string key;
    Scope s{{}, {}, root};
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      key += show(ctx[i]) + ";";
      auto it = scopes.find(key);
      if (it != scopes.end()) {
        s = it->second;
        continue;
      }
      s = extendScope(s, ctx[i]);
      scopes[key] = s;
    }
    return s;
  }

  Scope rootScope() { return Scope{{}, {}, root}; }

  // ------------------------------------------------------------ families

  std::string fingerprint(const Scope& s, const Term& N) {
    std::size_t bound = freeBound(N);
    std::string out = std::to_string(reinterpret_cast<std::uintptr_t>(s.D.get())) + "|" + show(N);
    for (std::size_t i = 0; i < bound && i < s.env.size(); ++i) {
      const Value& v = s.env[s.env.size() - 1 - i];
      if (v.sec)
        out += "|s" + std::to_string(hashInts(hashInts(1469598103934665603ULL, v.sec->obj), v.sec->mor));
      else
        out += "|c" + std::to_string(v.clo->serial);
    }
    return out;
  }

  Family universeFamily(const Ctx& D) {
    auto it = universes.find(D.get());
    if (it != universes.end()) return it->second;
    auto n = std::make_shared<FamilyNode>();
    n->kind = FamilyKind::Universe;
    n->base = D->g;
    const Grp& u = U.el.base();
    n->fibers.assign(idx(D->g->objects()), u);
    n->actions.assign(idx(D->g->morphisms()), identityFunctor(u));
    Family f{n, D->g, nullptr, nullptr};
    universes[D.get()] = f;
    return f;
  }

  Family elFamily(const Ctx& D, const Section& c) {
    auto n = std::make_shared<FamilyNode>();
    n->kind = FamilyKind::El;
    n->base = D->g;
    for (int x = 0; x < D->g->objects(); ++x) n->fibers.push_back(discreteCached(U.card[idx(c.obj[idx(x)])]));
    for (int g = 0; g < D->g->morphisms(); ++g) {
      const auto& perm = U.perms[idx(c.mor[idx(g)])];
      GFunctor a{n->fibers[idx(D->g->src(g))], n->fibers[idx(D->g->dst(g))], perm, perm};
      n->actions.push_back(std::move(a));
    }
    return Family{n, D->g, nullptr, nullptr};
  }

  Section familyToCode(const Family& F) {
    Section c;
    const FinGroupoid& X = *F.base;
    for (int x = 0; x < X.objects(); ++x) {
      const Grp& f = F.fiber(x);
      if (!f->isDiscrete()) throw Unsupported("a universe code denotes a family with non-discrete fibers");
      if (f->objects() > k)
        throw Unsupported("a universe code has a fiber of size " + std::to_string(f->objects()) +
                          ", above the bound k = " + std::to_string(k));
      c.obj.push_back(f->objects());
    }
    for (int g = 0; g < X.morphisms(); ++g) {
      const auto& perm = F.action(g).obj;
      std::vector<int> key{static_cast<int>(perm.size())};
      key.insert(key.end(), perm.begin(), perm.end());
      c.mor.push_back(permToMor.at(key));
    }
    return c;
  }

  Family piFamily(const Scope& s, const Term& A, const Term& B) {
    Family FA = evalType(s, A);
    Scope s1 = extendScope(s, A);
    Family FB = evalType(s1, B);
    const Ctx& E = s1.D;
    const FinGroupoid& X = *s.D->g;
    auto n = std::make_shared<FamilyNode>();
    n->kind = FamilyKind::Pi;
    n->base = s.D->g;
    n->dom = FA;
    n->ext = E;
    n->cod = FB;
    std::vector<std::vector<GFunctor>> functors(idx(X.objects()));
    for (int x = 0; x < X.objects(); ++x) {
      const Grp& ax = FA.fiber(x);
      GFunctor incl{ax, E->g, {}, {}};
      for (int a = 0; a < ax->objects(); ++a) incl.obj.push_back(E->ext.objectOf(x, a));
      for (int al = 0; al < ax->morphisms(); ++al) incl.mor.push_back(E->ext.morphismOf(X.id(x), al));
      PiFiber pf;
      pf.restricted = reindex(FB, incl);
      pf.integ = integral(pf.restricted);
      GFunctor idA = identityFunctor(ax);
      auto& fs = functors[idx(x)];
      forEachFunctor(ax, pf.integ.g, &pf.integ.proj, &idA, [&](const GFunctor& S) {
        if (fs.size() >= Limits::current().maxObjects) throw ResourceError("Pi fiber exceeds the object cap");
        std::vector<int> key = S.obj;
        key.insert(key.end(), S.mor.begin(), S.mor.end());
        pf.sectionIndex.insert(key);
        Section sec;
        for (int e : S.obj) sec.obj.push_back(pf.integ.objPair[idx(e)].second);
        for (int e : S.mor) sec.mor.push_back(pf.integ.morPair[idx(e)].second);
        pf.sections.push_back(std::move(sec));
        fs.push_back(S);
        return true;
      });
      GroupoidBuilder b;
      b.addObjects(static_cast<int>(fs.size()));
      for (std::size_t si = 0; si < fs.size(); ++si)
        for (std::size_t ti = 0; ti < fs.size(); ++ti)
          forEachNatIso(
              fs[si], fs[ti],
              [&](const NatIso& h) {
                if (pf.isos.size() >= Limits::current().maxMorphisms)
                  throw ResourceError("Pi fiber exceeds the morphism cap");
                pf.isoIndex.insert(h.components);
                pf.isos.push_back(h.components);
                b.addMorphism(static_cast<int>(si), static_cast<int>(ti));
                return true;
              },
              &pf.integ.proj);
      for (std::size_t si = 0; si < fs.size(); ++si) {
        std::vector<int> comps;
        for (int e : fs[si].obj) comps.push_back(pf.integ.g->id(e));
        b.setIdentity(static_cast<int>(si), pf.isoIndex.find(comps));
      }
      const Integral& in = pf.integ;
      const auto& isos = pf.isos;
      const auto& isoIndex = pf.isoIndex;
      n->fibers.push_back(b.build([&](int h, int f) {
        std::vector<int> comps(isos[idx(h)].size());
        for (std::size_t a = 0; a < comps.size(); ++a) comps[a] = in.g->comp(isos[idx(h)][a], isos[idx(f)][a]);
        return isoIndex.find(comps);
      }));
      n->pi.push_back(std::move(pf));
    }
    for (int g = 0; g < X.morphisms(); ++g) {
      int x = X.src(g), y = X.dst(g);
      const PiFiber& from = n->pi[idx(x)];
      const PiFiber& to = n->pi[idx(y)];
      const Grp& ay = FA.fiber(y);
      const GFunctor& back = FA.action(X.inv(g));
      // B((g, id_a')) for each a' over y
      std::vector<const GFunctor*> over;
      for (int a = 0; a < ay->objects(); ++a) over.push_back(&FB.action(E->ext.morphismOf(g, ay->id(a))));
      GFunctor act{n->fibers[idx(x)], n->fibers[idx(y)], {}, {}};
      for (const Section& sec : from.sections) {
        std::vector<int> key;
        for (int a = 0; a < ay->objects(); ++a)
          key.push_back(to.integ.objectOf(a, over[idx(a)]->at(sec.obj[idx(back.at(a))])));
        for (int al = 0; al < ay->morphisms(); ++al)
          key.push_back(to.integ.morphismOf(al, (*over[idx(ay->dst(al))])(sec.mor[idx(back(al))])));
        int found = to.sectionIndex.find(key);
        if (found < 0) throw std::logic_error("Pi action left the section set");
        act.obj.push_back(found);
      }
      for (const auto& comps : from.isos) {
        std::vector<int> key;
        for (int a = 0; a < ay->objects(); ++a) {
          int beta = from.integ.morPair[idx(comps[idx(back.at(a))])].second;
          key.push_back(to.integ.morphismOf(ay->id(a), (*over[idx(a)])(beta)));
        }
        int found = to.isoIndex.find(key);
        if (found < 0) throw std::logic_error("Pi action left the iso set");
        act.mor.push_back(found);
      }
      n->actions.push_back(std::move(act));
    }
    return Family{n, s.D->g, nullptr, nullptr};
  }

  Family sigmaFamily(const Scope& s, const Term& A, const Term& B) {
    Family FA = evalType(s, A);
    Scope s1 = extendScope(s, A);
    Family FB = evalType(s1, B);
    const Ctx& E = s1.D;
    const FinGroupoid& X = *s.D->g;
    auto n = std::make_shared<FamilyNode>();
    n->kind = FamilyKind::Sigma;
    n->base = s.D->g;
    n->dom = FA;
    n->ext = E;
    n->cod = FB;
    for (int x = 0; x < X.objects(); ++x) {
      const Grp& ax = FA.fiber(x);
      GFunctor incl{ax, E->g, {}, {}};
      for (int a = 0; a < ax->objects(); ++a) incl.obj.push_back(E->ext.objectOf(x, a));
      for (int al = 0; al < ax->morphisms(); ++al) incl.mor.push_back(E->ext.morphismOf(X.id(x), al));
      SigmaFiber sf;
      sf.restricted = reindex(FB, incl);
      sf.integ = integral(sf.restricted);
      n->fibers.push_back(sf.integ.g);
      n->sigma.push_back(std::move(sf));
    }
    for (int g = 0; g < X.morphisms(); ++g) {
      int x = X.src(g), y = X.dst(g);
      const Integral& from = n->sigma[idx(x)].integ;
      const Integral& to = n->sigma[idx(y)].integ;
      const GFunctor& fa = FA.action(g);
      const Grp& ay = FA.fiber(y);
      GFunctor act{n->fibers[idx(x)], n->fibers[idx(y)], {}, {}};
      for (auto [a, b] : from.objPair) {
        int a2 = fa.at(a);
        act.obj.push_back(to.objectOf(a2, FB.action(E->ext.morphismOf(g, ay->id(a2))).at(b)));
      }
      for (auto [al, beta] : from.morPair) {
        int al2 = fa(al);
        act.mor.push_back(to.morphismOf(al2, FB.action(E->ext.morphismOf(g, ay->id(ay->dst(al2))))(beta)));
      }
      n->actions.push_back(std::move(act));
    }
    return Family{n, s.D->g, nullptr, nullptr};
  }

  Family idFamily(const Scope& s, const Term& A, const Term& lhs, const Term& rhs) {
    Family FA = evalType(s, A);
    Section x = materialize(eval(s, lhs, A));
    Section y = materialize(eval(s, rhs, A));
    const FinGroupoid& X = *s.D->g;
    auto n = std::make_shared<FamilyNode>();
    n->kind = FamilyKind::Id;
    n->base = s.D->g;
    n->dom = FA;
    for (int c = 0; c < X.objects(); ++c) {
      auto h = FA.fiber(c)->hom(x.obj[idx(c)], y.obj[idx(c)]);
      n->homs.emplace_back(h.begin(), h.end());
      n->fibers.push_back(discreteCached(static_cast<int>(h.size())));
    }
    for (int g = 0; g < X.morphisms(); ++g) {
      int c = X.src(g), d = X.dst(g);
      const Grp& fd = FA.fiber(d);
      const GFunctor& fa = FA.action(g);
      GFunctor act{n->fibers[idx(c)], n->fibers[idx(d)], {}, {}};
      const auto& target = n->homs[idx(d)];
      for (int u : n->homs[idx(c)]) {
        int v = fd->comp(y.mor[idx(g)], fd->comp(fa(u), fd->inv(x.mor[idx(g)])));
        auto pos = std::find(target.begin(), target.end(), v);
        if (pos == target.end()) throw std::logic_error("Id action left the hom set");
        act.obj.push_back(static_cast<int>(pos - target.begin()));
      }
      act.mor = act.obj;
      n->actions.push_back(std::move(act));
    }
    return Family{n, s.D->g, nullptr, nullptr};
  }

  Family evalType(const Scope& s, const Term& T) {
    Term N = normalizeTypeIn(sig, s.ctx, T);
    if (freeBound(N) == 0 && s.D != root) {
      std::string key = fingerprint(s, N);
      auto it = families.find(key);
      if (it != families.end()) return it->second;
      Family closed = evalType(rootScope(), N);
      Family f = reindex(closed, toTerminal(s.D->g));
      families[key] = f;
      return f;
    }
    std::string key = fingerprint(s, N);
    auto it = families.find(key);
    if (it != families.end()) return it->second;
    Family f;
    if (const auto* u = as<term::Univ>(N)) {
      if (u->level != 0) throw Unsupported("universe U" + std::to_string(u->level) + " is outside the fragment");
      f = universeFamily(s.D);
    } else if (const auto* e = as<term::El>(N)) {
      f = elFamily(s.D, materialize(eval(s, e->code, mk::univ(0))));
    } else if (const auto* p = as<term::Pi>(N)) {
      f = piFamily(s, p->dom, p->cod);
    } else if (const auto* sg = as<term::Sigma>(N)) {
      f = sigmaFamily(s, sg->fst, sg->snd);
    } else if (const auto* id = as<term::IdTy>(N)) {
      f = idFamily(s, id->ty, id->lhs, id->rhs);
    } else {
      throw Unsupported("cannot interpret " + show(N) + " as a type");
    }
    families[key] = f;
    return f;
  }

  // ------------------------------------------------------------ terms

  Section materialize(const Value& v) {
    if (v.sec) return *v.sec;
    const Closure& c = *v.clo;
    if (c.cached) return *c.cached;
    Scope s{c.ctx, c.env, c.D};
    Family P = evalType(s, mk::pi(c.dom, c.cod));
    Scope s1 = extendScope(s, c.dom);
    Section b = materialize(eval(s1, c.body, c.cod));
    const Integral& E = s1.D->ext;
    const FinGroupoid& X = *c.D->g;
    const Family& FA = s1.D->fam;
    Section out;
    for (int x = 0; x < X.objects(); ++x) {
      const PiFiber& pf = P.node->pi[idx(P.o(x))];
      const Grp& ax = FA.fiber(x);
      std::vector<int> key;
      for (int a = 0; a < ax->objects(); ++a) key.push_back(pf.integ.objectOf(a, b.obj[idx(E.objectOf(x, a))]));
      for (int al = 0; al < ax->morphisms(); ++al)
        key.push_back(pf.integ.morphismOf(al, b.mor[idx(E.morphismOf(X.id(x), al))]));
      int found = pf.sectionIndex.find(key);
      if (found < 0) throw std::logic_error("lambda body is not a section of the Pi fiber");
      out.obj.push_back(found);
    }
    for (int g = 0; g < X.morphisms(); ++g) {
      int y = X.dst(g);
      const PiFiber& pf = P.node->pi[idx(P.o(y))];
      const Grp& ay = FA.fiber(y);
      std::vector<int> key;
      for (int a = 0; a < ay->objects(); ++a)
        key.push_back(pf.integ.morphismOf(ay->id(a), b.mor[idx(E.morphismOf(g, ay->id(a)))]));
      int found = pf.isoIndex.find(key);
      if (found < 0) throw std::logic_error("lambda body gives no natural iso");
      out.mor.push_back(found);
    }
    c.cached = std::make_shared<const Section>(out);
    return out;
  }

  Value constValue(const Scope& s, const std::string& name) {
    const GlobalEntry* e = sig.globals().find(name);
    if (!e) throw Unsupported("unknown constant " + name);
    if (const auto* lam = as<term::Lam>(e->body)) {
      Term N = normalizeTypeIn(sig, {}, e->type);
      const auto* p = as<term::Pi>(N);
      if (!p) throw std::logic_error("lambda constant " + name + " without a Pi type");
      auto c = std::make_shared<Closure>();
      c->body = lam->body;
      c->D = s.D;
      c->dom = p->dom;
      c->cod = p->cod;
      c->serial = ++serials;
      return Value{nullptr, c};
    }
    auto it = closedConsts.find(name);
    if (it == closedConsts.end()) {
      Section sec = materialize(eval(rootScope(), e->body, e->type));
      it = closedConsts.emplace(name, std::move(sec)).first;
    }
    return secValue(reindex(it->second, toTerminal(s.D->g)));
  }

  Section witness(Axiom kind, int level) {
    auto key = std::make_pair(static_cast<int>(kind), level);
    auto it = axioms.find(key);
    if (it != axioms.end()) return it->second;
    if (kind == Axiom::Resize) throw Unsupported("propositional resizing is not interpreted");
    if (level != 0) throw Unsupported(std::string(axiomName(kind)) + " at level " + std::to_string(level) +
                                      " mentions nested universes");
    Family F = evalType(rootScope(), sig.axiomType(kind, level));
    const Grp& f = F.fiber(0);
    if (f->objects() == 0)
      throw WitnessNotFound(std::string(axiomName(kind)) + " " + std::to_string(level) +
                            " has no inhabitant at universe bound k = " + std::to_string(k));
    Section w{{0}, {f->id(0)}};
    axioms[key] = w;
    return w;
  }

  Value apply(const Scope& s, const Value& fn, const Value& arg, const Term& A, const Term& B) {
    if (fn.clo) {
      const Closure& c = *fn.clo;
      Scope inner{c.ctx, c.env, c.D};
      inner.ctx.push_back(c.dom);
      inner.env.push_back(arg);
      return eval(inner, c.body, c.cod);
    }
    Family P = evalType(s, mk::pi(A, B));
    Section a = materialize(arg);
    const Section& f = *fn.sec;
    const FamilyNode& n = *P.node;
    const FinGroupoid& X = *s.D->g;
    const Integral& E = n.ext->ext;
    Section out;
    for (int x = 0; x < X.objects(); ++x) {
      const PiFiber& pf = n.pi[idx(P.o(x))];
      out.obj.push_back(pf.sections[idx(f.obj[idx(x)])].obj[idx(a.obj[idx(x)])]);
    }
    for (int g = 0; g < X.morphisms(); ++g) {
      int x = X.src(g), y = X.dst(g);
      int y0 = P.o(y);
      const PiFiber& pf = n.pi[idx(y0)];
      const Section& S = pf.sections[idx(f.obj[idx(y)])];
      const auto& phi = pf.isos[idx(f.mor[idx(g)])];
      int moved = n.dom.action(P.m(g)).at(a.obj[idx(x)]);
      int phiA = pf.integ.morPair[idx(phi[idx(moved)])].second;
      int alpha = a.mor[idx(g)];
      const GFunctor& bm = n.cod.action(E.morphismOf(n.base->id(y0), alpha));
      const Grp& fib = n.cod.fiber(E.objectOf(y0, a.obj[idx(y)]));
      out.mor.push_back(fib->comp(S.mor[idx(alpha)], bm(phiA)));
    }
    return secValue(std::move(out));
  }

  Term piOf(const Scope& s, const Term& t) {
    Term N = normalizeTypeIn(sig, s.ctx, infer(sig, s.ctx, t));
    if (!as<term::Pi>(N)) throw std::logic_error("applied term without a Pi type");
    return N;
  }

  Value eval(const Scope& s, const Term& t, const Term& T) {
    if (const auto* v = as<term::Var>(t)) return s.env[s.env.size() - 1 - v->index];
    if (const auto* c = as<term::Const>(t)) return constValue(s, c->name);
    if (const auto* lam = as<term::Lam>(t)) {
      Term N = normalizeTypeIn(sig, s.ctx, T);
      const auto* p = as<term::Pi>(N);
      if (!p) throw std::logic_error("lambda checked against a non-Pi type");
      auto c = std::make_shared<Closure>();
      c->body = lam->body;
      c->ctx = s.ctx;
      c->env = s.env;
      c->D = s.D;
      c->dom = p->dom;
      c->cod = p->cod;
      c->serial = ++serials;
      return Value{nullptr, c};
    }
    if (const auto* app = as<term::App>(t)) {
      Term FT = piOf(s, app->fn);
      const auto& p = *as<term::Pi>(FT);
      Value fn = eval(s, app->fn, FT);
      Value arg = eval(s, app->arg, p.dom);
      return apply(s, fn, arg, p.dom, p.cod);
    }
    if (const auto* pr = as<term::Pair>(t)) {
      Term N = normalizeTypeIn(sig, s.ctx, T);
      const auto* sg = as<term::Sigma>(N);
      if (!sg) throw std::logic_error("pair checked against a non-Sigma type");
      Section a = materialize(eval(s, pr->a, sg->fst));
      Section b = materialize(eval(s, pr->b, instantiate(sg->snd, {pr->a})));
      Family F = evalType(s, N);
      const FinGroupoid& X = *s.D->g;
      Section out;
      for (int x = 0; x < X.objects(); ++x)
        out.obj.push_back(F.node->sigma[idx(F.o(x))].integ.objectOf(a.obj[idx(x)], b.obj[idx(x)]));
      for (int g = 0; g < X.morphisms(); ++g)
        out.mor.push_back(F.node->sigma[idx(F.o(X.dst(g)))].integ.morphismOf(a.mor[idx(g)], b.mor[idx(g)]));
      return secValue(std::move(out));
    }
    if (const auto* f = as<term::Fst>(t)) return projection(s, f->p, true);
    if (const auto* f = as<term::Snd>(t)) return projection(s, f->p, false);
    if (const auto* r = as<term::Refl>(t)) {
      Term N = normalizeTypeIn(sig, s.ctx, T);
      const auto* id = as<term::IdTy>(N);
      if (!id) throw std::logic_error("refl checked against a non-Id type");
      Section x = materialize(eval(s, r->t, id->ty));
      Family F = evalType(s, N);
      const Family& FA = F.node->dom;
      const FinGroupoid& X = *s.D->g;
      Section out;
      for (int c = 0; c < X.objects(); ++c) {
        const auto& h = F.node->homs[idx(F.o(c))];
        auto pos = std::find(h.begin(), h.end(), FA.fiber(F.o(c))->id(x.obj[idx(c)]));
        out.obj.push_back(static_cast<int>(pos - h.begin()));
      }
      for (int g = 0; g < X.morphisms(); ++g) out.mor.push_back(F.fiber(X.dst(g))->id(out.obj[idx(X.dst(g))]));
      return secValue(std::move(out));
    }
    if (const auto* j = as<term::J>(t)) return evalJ(s, *j);
    if (as<term::CodePi>(t) || as<term::CodeSigma>(t) || as<term::CodeId>(t)) {
      Term ty;
      if (const auto* c = as<term::CodePi>(t)) ty = mk::pi(mk::el(c->dom), mk::el(c->cod));
      if (const auto* c = as<term::CodeSigma>(t)) ty = mk::sigma(mk::el(c->dom), mk::el(c->cod));
      if (const auto* c = as<term::CodeId>(t)) ty = mk::id(mk::el(c->code), c->lhs, c->rhs);
      return secValue(familyToCode(evalType(s, ty)));
    }
    if (const auto* ax = as<term::Ax>(t)) return secValue(reindex(witness(ax->kind, ax->level), toTerminal(s.D->g)));
    if (as<term::CodeUniv>(t)) throw Unsupported("codes for universes are outside the fragment");
    if (as<term::Lift>(t)) throw Unsupported("universe lifting is outside the fragment");
    throw Unsupported("cannot interpret " + show(t) + " as a term");
  }

  Value projection(const Scope& s, const Term& p, bool first) {
    Term N = normalizeTypeIn(sig, s.ctx, infer(sig, s.ctx, p));
    if (!as<term::Sigma>(N)) throw std::logic_error("projection from a non-Sigma type");
    Section v = materialize(eval(s, p, N));
    Family F = evalType(s, N);
    const FinGroupoid& X = *s.D->g;
    Section out;
    for (int x = 0; x < X.objects(); ++x) {
      auto pr = F.node->sigma[idx(F.o(x))].integ.objPair[idx(v.obj[idx(x)])];
      out.obj.push_back(first ? pr.first : pr.second);
    }
    for (int g = 0; g < X.morphisms(); ++g) {
      auto pr = F.node->sigma[idx(F.o(X.dst(g)))].integ.morPair[idx(v.mor[idx(g)])];
      out.mor.push_back(first ? pr.first : pr.second);
    }
    return secValue(std::move(out));
  }

  Value evalJ(const Scope& s, const term::J& j) {
    Term PT = normalizeTypeIn(sig, s.ctx, infer(sig, s.ctx, j.path));
    const auto* id = as<term::IdTy>(PT);
    if (!id) throw std::logic_error("J on a non-path");
    const Term& A = id->ty;
    Section x = materialize(eval(s, j.lhs, A));
    Section y = materialize(eval(s, j.rhs, A));
    Section p = materialize(eval(s, j.path, PT));
    Family FA = evalType(s, A);
    Scope s1 = extendScope(s, A);
    Scope s2 = extendScope(s1, shift(A, 1));
    Scope s3 = extendScope(s2, mk::id(shift(A, 2), mk::var(1), mk::var(0)));
    Family M = evalType(s3, j.motive);
    Term baseTy = instantiate(shift(j.motive, 1, 3), {mk::refl(mk::var(0)), mk::var(0), mk::var(0)});
    Section d = materialize(eval(s1, j.base, baseTy));
    const Integral& E1 = s1.D->ext;
    const Integral& E2 = s2.D->ext;
    const Integral& E3 = s3.D->ext;
    const Family& F3 = s3.D->fam;
    const FinGroupoid& X = *s.D->g;
    std::vector<int> transport;
    for (int c = 0; c < X.objects(); ++c) {
      int e1 = E1.objectOf(c, x.obj[idx(c)]);
      int hom = FA.fiber(c)->hom(x.obj[idx(c)], y.obj[idx(c)])[idx(p.obj[idx(c)])];
      int e2m = E2.morphismOf(s1.D->g->id(e1), hom);
      int tgt = s2.D->g->dst(e2m);
      transport.push_back(E3.morphismOf(e2m, F3.fiber(tgt)->id(p.obj[idx(c)])));
    }
    Section out;
    for (int c = 0; c < X.objects(); ++c)
      out.obj.push_back(M.action(transport[idx(c)]).at(d.obj[idx(E1.objectOf(c, x.obj[idx(c)]))]));
    for (int g = 0; g < X.morphisms(); ++g)
      out.mor.push_back(M.action(transport[idx(X.dst(g))])(d.mor[idx(E1.morphismOf(g, x.mor[idx(g)]))]));
    return secValue(std::move(out));
  }
};

Model::Model(const Signature& sig, int k) : impl_(std::make_unique<Impl>(sig, k)) {}
Model::~Model() = default;

int Model::bound() const { return impl_->k; }
const SetsUniverse& Model::universe() const { return impl_->U; }
Ctx Model::empty() const { return impl_->root; }
Ctx Model::context(const Context& ctx) { return impl_->scopeOf(ctx).D; }

Family Model::type(const Context& ctx, const Term& ty) {
  checkType(impl_->sig, ctx, ty);
  return impl_->evalType(impl_->scopeOf(ctx), ty);
}

Section Model::term(const Context& ctx, const Term& t, const Term& ty) {
  check(impl_->sig, ctx, t, ty);
  return impl_->materialize(impl_->eval(impl_->scopeOf(ctx), t, ty));
}

Section Model::axiomWitness(Axiom kind, int level) { return impl_->witness(kind, level); }

Denotation Model::declaration(const std::string& name) {
  const GlobalEntry* e = impl_->sig.globals().find(name);
  if (!e) throw Unsupported("unknown declaration " + name);
  Denotation d;
  Term N = normalizeTypeIn(impl_->sig, {}, e->type);
  while (const auto* p = as<term::Pi>(N)) {
    d.telescope.push_back(p->dom);
    N = p->cod;
  }
  std::vector<Term> vars;
  for (std::size_t i = d.telescope.size(); i-- > 0;) vars.push_back(mk::var(i));
  Term t = mk::constant(name);
  for (const auto& v : vars) t = mk::app(t, v);
  Scope s = impl_->scopeOf(d.telescope);
  d.context = s.D;
  d.type = impl_->evalType(s, N);
  d.section = impl_->materialize(impl_->eval(s, t, N));
  return d;
}

const char* declStatusName(DeclStatus s) {
  switch (s) {
    case DeclStatus::Ok: return "ok";
    case DeclStatus::Unsupported: return "unsupported";
    case DeclStatus::WitnessNotFound: return "witness-not-found";
    case DeclStatus::ResourceCap: return "resource-cap";
    case DeclStatus::Error: return "error";
  }
  return "error";
}

DeclReport denoteDecl(Model& model, const std::string& name) {
  DeclReport r;
  r.name = name;
  auto start = std::chrono::steady_clock::now();
  try {
    Denotation d = model.declaration(name);
    r.status = DeclStatus::Ok;
    r.telescope = static_cast<int>(d.telescope.size());
    r.contextObjects = d.context->g->objects();
    r.contextMorphisms = d.context->g->morphisms();
    r.section = std::move(d.section);
    std::string why;
    if (!validSection(d.type, r.section, &why)) {
      r.status = DeclStatus::Error;
      r.message = "not a section: " + why;
    }
  } catch (const Unsupported& e) {
    r.status = DeclStatus::Unsupported;
    r.message = e.what();
  } catch (const WitnessNotFound& e) {
    r.status = DeclStatus::WitnessNotFound;
    r.message = e.what();
  } catch (const ResourceError& e) {
    r.status = DeclStatus::ResourceCap;
    r.message = e.what();
  } catch (const std::exception& e) {
    r.status = DeclStatus::Error;
    r.message = e.what();
  }
  r.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

CheckResult equivDenotationCheck(const Signature& sig, int n, int m, int k) {
  CheckResult r;
  r.check = "equiv-denotation";
  r.instance = "n=" + std::to_string(n) + ",m=" + std::to_string(m) + ",k=" + std::to_string(k);
  auto start = std::chrono::steady_clock::now();
  try {
    if (n < 0 || m < 0 || n > k || m > k) throw Unsupported("code sizes must lie in 0..k");
    Model model(sig, k);
    Context ctx{mk::univ(0), mk::univ(0)};
    Family F = model.type(ctx, mk::el(mk::app(mk::constant("Equiv"), {mk::var(1), mk::var(0)})));
    Ctx D = model.context(ctx);
    int point = D->ext.objectOf(D->parent->ext.objectOf(0, n), m);
    Grp fiber = F.fiber(point);
    EqObject eq = eqObject(discreteCached(n), discreteCached(m));
    bool found = false;
    forEachFunctor(fiber, eq.g(), nullptr, nullptr, [&](const GFunctor& f) {
      found = equivalenceCheck(f).has_value();
      return !found;
    });
    r.result = found;
    if (!found)
      r.witness = "fiber has " + std::to_string(fiber->objects()) + " objects, Eq has " +
                  std::to_string(eq.g()->objects()) + "; no equivalence between them";
  } catch (const std::exception& e) {
    r.result = false;
    r.witness = e.what();
  }
  r.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

CheckResult univalenceCoherence(const Signature& sig, int k) {
  CheckResult r;
  r.check = "univalence-coherence";
  r.instance = "k=" + std::to_string(k);
  auto start = std::chrono::steady_clock::now();
  try {
    Model model(sig, k);
    Ctx D = model.context({mk::univ(0), mk::el(mk::var(0))});
    FibrationMap p = makeFibration(D->ext.proj);
    bool matches = isomorphic(p.total(), model.universe().el.total()) &&
                   isomorphic(p.base(), model.universe().el.base());
    bool univalent = univalenceCheck(p);
    r.result = matches && univalent;
    if (!matches) r.witness = "El over Univ 0 does not match setsUniverse";
    else if (!univalent) r.witness = "El over Univ 0 is not univalent";
  } catch (const std::exception& e) {
    r.result = false;
    r.witness = e.what();
  }
  r.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace hott::denote
