#include "hott/tribe.hpp"

namespace hott::grpd {

namespace {
std::size_t idx(int i) { return static_cast<std::size_t>(i); }

std::vector<int> functorKey(const GFunctor& f) {
  std::vector<int> k = f.obj;
  k.insert(k.end(), f.mor.begin(), f.mor.end());
  return k;
}

std::vector<int> withHeader(std::initializer_list<int> head, const std::vector<int>& data) {
  std::vector<int> k(head);
  k.insert(k.end(), data.begin(), data.end());
  return k;
}
}  // namespace

int PiResult::sectionObj(int o, int e) const { return objData[idx(o)][idx(posInFiber[idx(e)])]; }

int PiResult::sectionMor(int o, int v) const {
  int b = objBase[idx(o)];
  return objData[idx(o)][fiberObjs[idx(b)].size() + idx(posInOver[idx(v)])];
}

int PiResult::family(int m, int phi) const { return morData[idx(m)][idx(posInOver[idx(phi)])]; }

int PiResult::findObject(int b, const std::vector<int>& data) const { return objKeys.find(withHeader({b}, data)); }

int PiResult::findMorphism(int beta, int src, int dst, const std::vector<int>& data) const {
  return morKeys.find(withHeader({beta, src, dst}, data));
}

PiResult piAlongFibration(const FibrationMap& p, const FibrationMap& q) {
  if (!sameGroupoid(q.base(), p.total())) throw GroupoidError("Pi: q must live over the total space of p");
  std::string why;
  if (!validateFibration(p, &why) || !validateFibration(q, &why)) throw GroupoidError("Pi: " + why);
  const FinGroupoid& E = *p.total();
  const FinGroupoid& B = *p.base();
  const FinGroupoid& X = *q.total();
  PiResult r;
  r.p = p;
  r.q = q;
  r.fiberObjs.assign(idx(B.objects()), {});
  r.over.assign(idx(B.morphisms()), {});
  r.posInFiber.assign(idx(E.objects()), -1);
  r.posInOver.assign(idx(E.morphisms()), -1);
  for (int e = 0; e < E.objects(); ++e) {
    auto& f = r.fiberObjs[idx(p.map.at(e))];
    r.posInFiber[idx(e)] = static_cast<int>(f.size());
    f.push_back(e);
  }
  for (int m = 0; m < E.morphisms(); ++m) {
    auto& o = r.over[idx(p.map(m))];
    r.posInOver[idx(m)] = static_cast<int>(o.size());
    o.push_back(m);
  }

  GroupoidBuilder bld;
  std::vector<std::vector<int>> byBase(idx(B.objects()));
  for (int b = 0; b < B.objects(); ++b) {
    const auto& verts = r.over[idx(B.id(b))];
    GFunctor incl;
    Grp fiber = subgroupoid(p.total(), r.fiberObjs[idx(b)], [&](int m) { return p.map(m) == B.id(b); }, &incl);
    forEachFunctor(fiber, q.total(), &q.map, &incl, [&](const GFunctor& s) {
      std::vector<int> data = s.obj;
      // s's morphisms follow subgroupoid order; store them in `over` order
      std::vector<int> morPart(verts.size(), -1);
      for (std::size_t i = 0; i < incl.mor.size(); ++i) morPart[idx(r.posInOver[idx(incl.mor[i])])] = s.mor[i];
      data.insert(data.end(), morPart.begin(), morPart.end());
      int id = r.objKeys.insert(withHeader({b}, data));
      r.objBase.push_back(b);
      r.objData.push_back(std::move(data));
      byBase[idx(b)].push_back(id);
      bld.addObject();
      return true;
    });
  }
  checkCaps(r.objData.size(), 0, "dependent product");

  for (int beta = 0; beta < B.morphisms(); ++beta) {
    int b = B.src(beta), b2 = B.dst(beta);
    const auto& target = r.fiberObjs[idx(b2)];
    // reference morphisms phi_{e'}: e0 -> e' over beta
    std::vector<int> ref;
    for (int e2 : target) ref.push_back(E.inv(p.lift(e2, B.inv(beta))));
    for (int s : byBase[idx(b)])
      for (int s2 : byBase[idx(b2)]) {
        std::vector<int> choice(target.size(), -1);
        std::function<void(std::size_t)> go = [&](std::size_t i) {
          if (i < target.size()) {
            int phi = ref[i];
            int from = r.sectionObj(s, E.src(phi)), to = r.objData[idx(s2)][i];
            for (int mu : X.hom(from, to))
              if (q.map(mu) == phi) {
                choice[i] = mu;
                go(i + 1);
              }
            return;
          }
          const auto& overs = r.over[idx(beta)];
          std::vector<int> fam(overs.size(), -1);
          for (std::size_t k = 0; k < overs.size(); ++k) {
            int phi = overs[k];
            std::size_t i2 = idx(r.posInFiber[idx(E.dst(phi))]);
            int v = E.comp(E.inv(ref[i2]), phi);  // vertical, e -> e0
            fam[k] = X.comp(choice[i2], r.sectionMor(s, v));
          }
          // naturality against vertical morphisms in the target fiber
          for (std::size_t k = 0; k < overs.size(); ++k) {
            int phi = overs[k];
            for (int v2 : E.out(E.dst(phi))) {
              if (p.map(v2) != B.id(b2)) continue;
              int lhs = fam[idx(r.posInOver[idx(E.comp(v2, phi))])];
              int rhs = X.comp(r.sectionMor(s2, v2), fam[k]);
              if (lhs != rhs) return;
            }
          }
          r.morKeys.insert(withHeader({beta, s, s2}, fam));
          r.morBase.push_back(beta);
          r.morData.push_back(std::move(fam));
          bld.addMorphism(s, s2);
          if (r.morData.size() % 4096 == 0) checkCaps(r.objData.size(), r.morData.size(), "dependent product");
        };
        go(0);
      }
  }
  for (std::size_t o = 0; o < r.objData.size(); ++o) {
    int b = r.objBase[o];
    std::vector<int> fam(r.objData[o].begin() + static_cast<long>(r.fiberObjs[idx(b)].size()), r.objData[o].end());
    bld.setIdentity(static_cast<int>(o), r.findMorphism(B.id(b), static_cast<int>(o), static_cast<int>(o), fam));
  }
  std::vector<std::pair<int, int>> ends;
  ends.reserve(r.morData.size());
  for (std::size_t m = 0; m < r.morData.size(); ++m) {
    const auto& k = r.morKeys.key(static_cast<int>(m));
    ends.emplace_back(k[1], k[2]);
  }
  Grp g = bld.build(
      [&](int nu, int mu) {
        int beta = r.morBase[idx(mu)], beta2 = r.morBase[idx(nu)];
        int gamma = B.comp(beta2, beta);
        std::vector<int> fam;
        for (int psi : r.over[idx(gamma)]) {
          int phi = p.lift(E.src(psi), beta);
          int phi2 = E.comp(psi, E.inv(phi));
          fam.push_back(X.comp(r.family(nu, phi2), r.family(mu, phi)));
        }
        return r.findMorphism(gamma, ends[idx(mu)].first, ends[idx(nu)].second, fam);
      },
      false, "Pi");
  GFunctor proj{g, p.base(), r.objBase, r.morBase};
  r.fib = makeFibration(proj);

  r.evalDomain = pullback(p.map, proj);
  r.eval = GFunctor{r.evalDomain.g, q.total(), {}, {}};
  for (auto [e, o] : r.evalDomain.objPair) r.eval.obj.push_back(r.sectionObj(o, e));
  for (auto [phi, m] : r.evalDomain.morPair) r.eval.mor.push_back(r.family(m, phi));
  return r;
}

bool checkPiAdjunction(const PiResult& pi, const GFunctor& r, std::string* why, std::size_t* count) {
  if (!sameGroupoid(r.cod, pi.p.base())) throw GroupoidError("adjunction test map must land in the base");
  Pullback pY = pullback(pi.p.map, r);  // objects (e, y)
  KeyIndex rhs;
  forEachFunctor(pY.g, pi.q.total(), &pi.q.map, &pY.pr1, [&](const GFunctor& f) {
    rhs.insert(functorKey(f));
    return true;
  });
  KeyIndex seen;
  bool ok = true;
  forEachFunctor(r.dom, pi.g(), &pi.fib.map, &r, [&](const GFunctor& G) {
    GFunctor t{pY.g, pi.q.total(), {}, {}};
    for (auto [e, y] : pY.objPair) t.obj.push_back(pi.sectionObj(G.at(y), e));
    for (auto [phi, u] : pY.morPair) t.mor.push_back(pi.family(G(u), phi));
    auto k = functorKey(t);
    if (rhs.find(k) < 0 || seen.find(k) >= 0) {
      ok = false;
      if (why) *why = "transpose is not an injection into maps over E";
      return false;
    }
    seen.insert(k);
    return true;
  });
  if (ok && seen.size() != rhs.size()) {
    ok = false;
    if (why) *why = "transpose misses " + std::to_string(rhs.size() - seen.size()) + " maps over E";
  }
  if (count) *count = seen.size();
  return ok;
}

GFunctor piMap(const PiResult& from, const PiResult& to, const GFunctor& g) {
  if (!sameGroupoid(from.p.total(), to.p.total())) throw GroupoidError("piMap needs a common fibration p");
  GFunctor r{from.g(), to.g(), {}, {}};
  for (std::size_t o = 0; o < from.objData.size(); ++o) {
    int b = from.objBase[o];
    std::size_t nObj = from.fiberObjs[idx(b)].size();
    std::vector<int> data;
    for (std::size_t i = 0; i < from.objData[o].size(); ++i)
      data.push_back(i < nObj ? g.at(from.objData[o][i]) : g(from.objData[o][i]));
    int img = to.findObject(b, data);
    if (img < 0) throw GroupoidError("piMap: image section not found");
    r.obj.push_back(img);
  }
  for (std::size_t m = 0; m < from.morData.size(); ++m) {
    std::vector<int> fam;
    for (int mu : from.morData[m]) fam.push_back(g(mu));
    const FinGroupoid& P = *from.g();
    int img = to.findMorphism(from.morBase[m], r.at(P.src(static_cast<int>(m))), r.at(P.dst(static_cast<int>(m))), fam);
    if (img < 0) throw GroupoidError("piMap: image family not found");
    r.mor.push_back(img);
  }
  return r;
}

// ---------------------------------------------------------------- fibered hom

int FiberHom::yObject(int o, int xobj) const { return xy.objPair[idx(pi.sectionObj(o, xobj))].second; }

int FiberHom::yVertical(int o, int v) const { return xy.morPair[idx(pi.sectionMor(o, v))].second; }

int FiberHom::yMorphism(int m, int xmor) const { return xy.morPair[idx(pi.family(m, xmor))].second; }

int FiberHom::encodeObject(int c, const std::function<int(int)>& onObj, const std::function<int(int)>& onMor) const {
  std::vector<int> data;
  for (int e : pi.fiberObjs[idx(c)]) {
    int o = xy.objectOf(e, onObj(e));
    if (o < 0) return -1;
    data.push_back(o);
  }
  for (int v : pi.over[idx(x.base()->id(c))]) {
    int m = xy.morphismOf(v, onMor(v));
    if (m < 0) return -1;
    data.push_back(m);
  }
  return pi.findObject(c, data);
}

int FiberHom::encodeMorphism(int gamma, int src, int dst, const std::function<int(int)>& onMor) const {
  std::vector<int> fam;
  for (int phi : pi.over[idx(gamma)]) {
    int m = xy.morphismOf(phi, onMor(phi));
    if (m < 0) return -1;
    fam.push_back(m);
  }
  return pi.findMorphism(gamma, src, dst, fam);
}

FiberHom fiberHom(const FibrationMap& x, const FibrationMap& y) {
  if (!sameGroupoid(x.base(), y.base())) throw GroupoidError("fibered hom needs a common base");
  FiberHom h;
  h.x = x;
  h.y = y;
  auto [q, pb] = pullbackFibration(y, x.map);  // objects (xobj, yobj) over X
  h.xy = std::move(pb);
  h.pi = piAlongFibration(x, q);
  return h;
}

}  // namespace hott::grpd
