#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "hott/tribe.hpp"

namespace hott::grpd {

namespace {
std::size_t idx(int i) { return static_cast<std::size_t>(i); }

std::vector<int> functorKey(const GFunctor& f) {
  std::vector<int> k = f.obj;
  k.insert(k.end(), f.mor.begin(), f.mor.end());
  return k;
}
}  // namespace

// ---------------------------------------------------------------- path objects

PathObject pathObjectFibered(const FibrationMap& p, PathChoice choice) {
  const FinGroupoid& E = *p.total();
  const FinGroupoid& B = *p.base();
  PathObject po;
  po.choice = PathChoice::Arrows;
  {
    auto [fib, pb] = pullbackFibration(p, p.map);
    po.pairsFib = std::move(fib);
    po.pairs = std::move(pb);
  }
  po.pairsOverBase = composeFibrations(po.pairsFib, p);

  auto vertical = [&](int m) { return B.isIdentity(p.map(m)); };
  std::vector<int> vobj(idx(E.morphisms()), -1), verts;
  GroupoidBuilder b;
  for (int u = 0; u < E.morphisms(); ++u)
    if (vertical(u)) {
      vobj[idx(u)] = b.addObject();
      verts.push_back(u);
    }
  KeyIndex mors;  // [u, a, b]
  for (int u : verts)
    for (int a : E.out(E.src(u)))
      for (int u2 : E.out(E.dst(a))) {
        if (!vertical(u2)) continue;
        int bb = E.comp(u2, E.comp(a, E.inv(u)));
        int id = mors.insert({u, a, bb});
        if (id == b.morphisms()) b.addMorphism(vobj[idx(u)], vobj[idx(u2)]);
      }
  for (int u : verts) b.setIdentity(vobj[idx(u)], mors.find({u, E.id(E.src(u)), E.id(E.dst(u))}));
  po.P = b.build(
      [&](int h, int f) {
        const auto& kf = mors.key(f);
        const auto& kh = mors.key(h);
        return mors.find({kf[0], E.comp(kh[1], kf[1]), E.comp(kh[2], kf[2])});
      },
      false, "P");
  GFunctor bd{po.P, po.pairs.g, {}, {}};
  for (int u : verts) bd.obj.push_back(po.pairs.objectOf(E.src(u), E.dst(u)));
  for (std::size_t m = 0; m < mors.size(); ++m) {
    const auto& k = mors.key(static_cast<int>(m));
    bd.mor.push_back(po.pairs.morphismOf(k[1], k[2]));
  }
  po.boundary = makeFibration(bd);
  po.anodyne = GFunctor{p.total(), po.P, {}, {}};
  for (int e = 0; e < E.objects(); ++e) po.anodyne.obj.push_back(vobj[idx(E.id(e))]);
  for (int m = 0; m < E.morphisms(); ++m) po.anodyne.mor.push_back(mors.find({E.id(E.src(m)), m, m}));

  if (choice == PathChoice::Padded) {
    Grp I = codiscrete(2);
    auto [prFib, prod] = pullbackFibration(terminalFibration(I), toTerminal(po.P));
    GFunctor an{p.total(), prod.g, {}, {}};
    for (int e = 0; e < E.objects(); ++e) an.obj.push_back(prod.objectOf(po.anodyne.at(e), 0));
    for (int m = 0; m < E.morphisms(); ++m) an.mor.push_back(prod.morphismOf(po.anodyne(m), I->id(0)));
    po.boundary = composeFibrations(prFib, po.boundary);
    po.P = prod.g;
    po.anodyne = std::move(an);
    po.choice = PathChoice::Padded;
  }
  return po;
}

Factorization factorize(const GFunctor& f) {
  const FinGroupoid& X = *f.dom;
  const FinGroupoid& Y = *f.cod;
  KeyIndex objs;  // [x, v]
  GroupoidBuilder b;
  for (int x = 0; x < X.objects(); ++x)
    for (int v : Y.out(f.at(x))) {
      objs.insert({x, v});
      b.addObject();
    }
  KeyIndex mors;  // [source object, a, b]
  for (std::size_t o = 0; o < objs.size(); ++o) {
    int x = objs.key(static_cast<int>(o))[0], v = objs.key(static_cast<int>(o))[1];
    for (int a : X.out(x))
      for (int bb : Y.out(Y.dst(v))) {
        int v2 = Y.comp(bb, Y.comp(v, Y.inv(f(a))));
        mors.insert({static_cast<int>(o), a, bb});
        b.addMorphism(static_cast<int>(o), objs.find({X.dst(a), v2}));
      }
  }
  for (std::size_t o = 0; o < objs.size(); ++o) {
    const auto& k = objs.key(static_cast<int>(o));
    b.setIdentity(static_cast<int>(o), mors.find({static_cast<int>(o), X.id(k[0]), Y.id(Y.dst(k[1]))}));
  }
  Grp M = b.build(
      [&](int h, int g) {
        const auto& kg = mors.key(g);
        const auto& kh = mors.key(h);
        return mors.find({kg[0], X.comp(kh[1], kg[1]), Y.comp(kh[2], kg[2])});
      },
      false, "mapping path");
  Factorization r;
  r.anodyne = GFunctor{f.dom, M, {}, {}};
  for (int x = 0; x < X.objects(); ++x) r.anodyne.obj.push_back(objs.find({x, Y.id(f.at(x))}));
  for (int a = 0; a < X.morphisms(); ++a)
    r.anodyne.mor.push_back(mors.find({r.anodyne.at(X.src(a)), a, f(a)}));
  GFunctor q{M, f.cod, {}, {}};
  for (std::size_t o = 0; o < objs.size(); ++o) q.obj.push_back(Y.dst(objs.key(static_cast<int>(o))[1]));
  for (std::size_t m = 0; m < mors.size(); ++m) q.mor.push_back(mors.key(static_cast<int>(m))[2]);
  r.fibration = makeFibration(q);
  return r;
}

// ---------------------------------------------------------------- homotopies

std::vector<NatIso> homotopiesBetween(const GFunctor& f, const GFunctor& g) {
  std::vector<NatIso> r;
  forEachNatIso(f, g, [&](const NatIso& h) {
    r.push_back(h);
    return true;
  });
  return r;
}

bool homotopic(const GFunctor& f, const GFunctor& g, const GFunctor* over) {
  bool found = false;
  forEachNatIso(
      f, g,
      [&](const NatIso&) {
        found = true;
        return false;
      },
      over);
  return found;
}

bool fullyFaithful(const GFunctor& f) {
  const FinGroupoid& A = *f.dom;
  const FinGroupoid& B = *f.cod;
  for (int x = 0; x < A.objects(); ++x) {
    auto ax = A.hom(x, x);
    auto bx = B.hom(f.at(x), f.at(x));
    if (ax.size() != bx.size()) return false;
    std::set<int> images;
    for (int m : ax) images.insert(f(m));
    if (images.size() != ax.size()) return false;
  }
  // injective on components
  std::map<int, int> seen;
  for (int x = 0; x < A.objects(); ++x) {
    int ca = A.components()[idx(x)], cb = B.components()[idx(f.at(x))];
    auto [it, fresh] = seen.emplace(cb, ca);
    if (!fresh && it->second != ca) return false;
  }
  return true;
}

bool essentiallySurjective(const GFunctor& f) {
  std::vector<char> hit(idx(f.cod->componentCount()), 0);
  for (int y : f.obj) hit[idx(f.cod->components()[idx(y)])] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

std::optional<EquivalenceWitness> equivalenceCheck(const GFunctor& f) {
  if (!fullyFaithful(f) || !essentiallySurjective(f)) return std::nullopt;
  const FinGroupoid& A = *f.dom;
  const FinGroupoid& B = *f.cod;
  std::vector<int> preimage(idx(B.componentCount()), -1);
  for (int x = 0; x < A.objects(); ++x) {
    int c = B.components()[idx(f.at(x))];
    if (preimage[idx(c)] < 0) preimage[idx(c)] = x;
  }
  GFunctor g{f.cod, f.dom, {}, {}};
  std::vector<int> eps;
  for (int y = 0; y < B.objects(); ++y) {
    int x = preimage[idx(B.components()[idx(y)])];
    g.obj.push_back(x);
    eps.push_back(B.hom(f.at(x), y)[0]);
  }
  auto preimageOf = [&](int a, int b, int target) {
    for (int k : A.hom(a, b))
      if (f(k) == target) return k;
    throw GroupoidError("functor is not full");
  };
  for (int m = 0; m < B.morphisms(); ++m) {
    int y = B.src(m), y2 = B.dst(m);
    int t = B.comp(B.inv(eps[idx(y2)]), B.comp(m, eps[idx(y)]));
    g.mor.push_back(preimageOf(g.at(y), g.at(y2), t));
  }
  EquivalenceWitness w{g, {compose(g, f), identityFunctor(f.dom), {}}, {compose(f, g), identityFunctor(f.cod), eps}};
  for (int x = 0; x < A.objects(); ++x) w.unit.components.push_back(preimageOf(g.at(f.at(x)), x, eps[idx(f.at(x))]));
  if (!validateFunctor(g) || !validateNatIso(w.unit) || !validateNatIso(w.counit))
    throw GroupoidError("inverse construction produced invalid witness data");
  return w;
}

std::optional<EquivalenceWitness> equivalenceSearch(const GFunctor& f) {
  std::optional<EquivalenceWitness> found;
  forEachFunctor(f.cod, f.dom, nullptr, nullptr, [&](const GFunctor& g) {
    GFunctor gf = compose(g, f), fg = compose(f, g);
    std::optional<NatIso> unit, counit;
    forEachNatIso(gf, identityFunctor(f.dom), [&](const NatIso& h) {
      unit = h;
      return false;
    });
    if (!unit) return true;
    forEachNatIso(fg, identityFunctor(f.cod), [&](const NatIso& h) {
      counit = h;
      return false;
    });
    if (!counit) return true;
    found = EquivalenceWitness{g, *unit, *counit};
    return false;
  });
  return found;
}

bool isAnodyne(const GFunctor& f) { return injectiveOnObjects(f) && equivalenceCheck(f).has_value(); }

namespace {
Grp automorphisms(const Grp& g, int x) {
  return subgroupoid(g, {x}, [](int) { return true; });
}

bool groupsIsomorphic(const Grp& a, const Grp& b) {
  if (a->morphisms() != b->morphisms()) return false;
  bool found = false;
  forEachFunctor(a, b, nullptr, nullptr, [&](const GFunctor& f) {
    found = bijective(f);
    return !found;
  });
  return found;
}

struct ComponentInfo {
  int size = 0;
  std::size_t autSize = 0;
  Grp aut;
};

std::vector<ComponentInfo> componentInfo(const Grp& g) {
  std::vector<ComponentInfo> r(idx(g->componentCount()));
  for (int x = 0; x < g->objects(); ++x) {
    ComponentInfo& c = r[idx(g->components()[idx(x)])];
    if (c.size++ == 0) {
      c.aut = automorphisms(g, x);
      c.autSize = idx(c.aut->morphisms());
    }
  }
  return r;
}
}  // namespace

bool isomorphic(const Grp& a, const Grp& b) {
  if (a->objects() != b->objects() || a->morphisms() != b->morphisms() || a->componentCount() != b->componentCount())
    return false;
  auto ca = componentInfo(a), cb = componentInfo(b);
  std::vector<char> used(cb.size(), 0);
  std::function<bool(std::size_t)> match = [&](std::size_t i) {
    if (i == ca.size()) return true;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      if (used[j] || cb[j].size != ca[i].size || cb[j].autSize != ca[i].autSize) continue;
      if (!groupsIsomorphic(ca[i].aut, cb[j].aut)) continue;
      used[j] = 1;
      if (match(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return match(0);
}

bool fibrationsIsomorphic(const FibrationMap& p, const FibrationMap& q) {
  if (!sameGroupoid(p.base(), q.base())) return false;
  if (p.total()->objects() != q.total()->objects() || p.total()->morphisms() != q.total()->morphisms()) return false;
  bool found = false;
  forEachFunctor(p.total(), q.total(), &q.map, &p.map, [&](const GFunctor& h) {
    found = bijective(h);
    return !found;
  });
  return found;
}

bool fiberwiseEquivalent(const FibrationMap& p, const FibrationMap& q) {
  if (!sameGroupoid(p.base(), q.base())) return false;
  bool found = false;
  forEachFunctor(p.total(), q.total(), &q.map, &p.map, [&](const GFunctor& h) {
    found = equivalenceCheck(h).has_value();
    return !found;
  });
  return found;
}

// ---------------------------------------------------------------- internal hom

int InternalHom::objectOf(const GFunctor& f) const { return functorKeys.find(functorKey(f)); }

int InternalHom::morphismOf(int src, int dst, const std::vector<int>& comps) const {
  std::vector<int> k{src, dst};
  k.insert(k.end(), comps.begin(), comps.end());
  return isoKeys.find(k);
}

InternalHom internalHom(const Grp& a, const Grp& b) {
  InternalHom h;
  h.A = a;
  h.B = b;
  h.functors = allFunctors(a, b);
  GroupoidBuilder bld;
  for (const GFunctor& f : h.functors) {
    h.functorKeys.insert(functorKey(f));
    bld.addObject();
  }
  const int n = static_cast<int>(h.functors.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      forEachNatIso(h.functors[idx(i)], h.functors[idx(j)], [&](const NatIso& t) {
        std::vector<int> k{i, j};
        k.insert(k.end(), t.components.begin(), t.components.end());
        h.isoKeys.insert(k);
        h.components.push_back(t.components);
        bld.addMorphism(i, j);
        checkCaps(idx(n), idx(bld.morphisms()), "internal hom");
        return true;
      });
  for (int i = 0; i < n; ++i) {
    std::vector<int> ids;
    for (int x : h.functors[idx(i)].obj) ids.push_back(b->id(x));
    bld.setIdentity(i, h.morphismOf(i, i, ids));
  }
  h.g = bld.build(
      [&](int g2, int g1) {
        const auto& k1 = h.isoKeys.key(g1);
        const auto& k2 = h.isoKeys.key(g2);
        std::vector<int> comps;
        for (std::size_t x = 0; x < k1.size() - 2; ++x) comps.push_back(b->comp(k2[x + 2], k1[x + 2]));
        return h.morphismOf(k1[0], k2[1], comps);
      },
      false, "[" + a->name + "," + b->name + "]");
  h.evalDomain = product(h.g, a);
  h.eval = GFunctor{h.evalDomain.g, b, {}, {}};
  for (auto [i, x] : h.evalDomain.objPair) h.eval.obj.push_back(h.functors[idx(i)].at(x));
  for (auto [al, m] : h.evalDomain.morPair) {
    int j = h.isoKeys.key(al)[1];
    h.eval.mor.push_back(b->comp(h.functors[idx(j)](m), h.components[idx(al)][idx(a->src(m))]));
  }
  return h;
}

bool checkExponential(const Grp& x, const InternalHom& h, std::string* why) {
  Pullback xa = product(x, h.A);
  KeyIndex lhs;
  forEachFunctor(xa.g, h.B, nullptr, nullptr, [&](const GFunctor& f) {
    lhs.insert(functorKey(f));
    return true;
  });
  KeyIndex seen;
  bool ok = true;
  forEachFunctor(x, h.g, nullptr, nullptr, [&](const GFunctor& G) {
    GFunctor paired = h.evalDomain.pair(compose(G, xa.pr1), xa.pr2);
    GFunctor t = compose(h.eval, paired);
    auto k = functorKey(t);
    if (lhs.find(k) < 0 || seen.find(k) >= 0) {
      ok = false;
      if (why) *why = "transpose is not injective into Hom(X x A, B)";
      return false;
    }
    seen.insert(k);
    return true;
  });
  if (ok && seen.size() != lhs.size()) {
    ok = false;
    if (why) *why = "transpose misses " + std::to_string(lhs.size() - seen.size()) + " maps";
  }
  return ok;
}

GFunctor postcompose(const InternalHom& from, const InternalHom& to, const GFunctor& f) {
  GFunctor r{from.g, to.g, {}, {}};
  for (const GFunctor& F : from.functors) r.obj.push_back(to.objectOf(compose(f, F)));
  for (int m = 0; m < from.g->morphisms(); ++m) {
    std::vector<int> comps;
    for (int c : from.components[idx(m)]) comps.push_back(f(c));
    r.mor.push_back(to.morphismOf(r.at(from.g->src(m)), r.at(from.g->dst(m)), comps));
  }
  return r;
}

std::size_t hoHomClasses(const Grp& a, const Grp& b) {
  auto fs = allFunctors(a, b);
  std::vector<std::size_t> parent(fs.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  std::size_t classes = fs.size();
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      std::size_t ri = find(i), rj = find(j);
      if (ri == rj) continue;
      if (homotopic(fs[i], fs[j])) {
        parent[rj] = ri;
        --classes;
      }
    }
  return classes;
}

bool homotopyMonoCheck(const FibrationMap& p, PathChoice choice) {
  PathObject po = pathObjectFibered(p, choice);
  GFunctor id = identityFunctor(po.pairs.g);
  bool found = false;
  forEachFunctor(po.pairs.g, po.P, &po.boundary.map, &id, [&](const GFunctor&) {
    found = true;
    return false;
  });
  return found;
}

}  // namespace hott::grpd
