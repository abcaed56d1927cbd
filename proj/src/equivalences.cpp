#include "hott/tribe.hpp"

namespace hott::grpd {

namespace {
std::size_t idx(int i) { return static_cast<std::size_t>(i); }

int need(int v, const char* what) {
  if (v < 0) throw GroupoidError(std::string("lookup failed: ") + what);
  return v;
}
}  // namespace

EqData constructEq(const HomSide& side, PathChoice choice) {
  EqData d;
  d.l0 = pullbackFibration(side.hba, side.hab.map);  // (f, g)
  const Pullback& L0 = d.l0.second;
  GFunctor l0ToC = compose(side.hab.map, d.l0.first.map);
  d.pathA = pathObjectFibered(side.haa, choice);
  d.pathB = pathObjectFibered(side.hbb, choice);
  GFunctor mapL = d.pathA.pairs.pair(side.compL(L0), compose(side.idA, l0ToC));
  GFunctor mapR = d.pathB.pairs.pair(side.compR(L0), compose(side.idB, l0ToC));
  d.linv = pullbackFibration(d.pathA.boundary, mapL);
  d.rinv = pullbackFibration(d.pathB.boundary, mapR);
  d.linvToHab = composeFibrations(d.linv.first, d.l0.first);
  d.rinvToHab = composeFibrations(d.rinv.first, d.l0.first);
  d.eq = pullbackFibration(d.rinvToHab, d.linvToHab.map);  // (linv, rinv)
  d.toHab = composeFibrations(d.eq.first, d.linvToHab);
  d.toBase = composeFibrations(d.toHab, side.hab);
  return d;
}

// ---------------------------------------------------------------- absolute

namespace {
/// (f, g) to g.f with horizontal composites on morphisms; f in `first`, g in `second`.
GFunctor horizontal(const Pullback& L0, const InternalHom& first, const InternalHom& second, const InternalHom& out) {
  GFunctor c{L0.g, out.g, {}, {}};
  const FinGroupoid& Z = *out.B;
  for (auto [i, j] : L0.objPair)
    c.obj.push_back(need(out.objectOf(compose(second.functors[idx(j)], first.functors[idx(i)])), "composite functor"));
  for (std::size_t m = 0; m < L0.morPair.size(); ++m) {
    auto [al, be] = L0.morPair[m];
    int f2 = first.isoKeys.key(al)[1];
    int g = second.isoKeys.key(be)[0];
    const GFunctor& F2 = first.functors[idx(f2)];
    const GFunctor& G = second.functors[idx(g)];
    std::vector<int> comps;
    for (int x = 0; x < first.A->objects(); ++x)
      comps.push_back(Z.comp(second.components[idx(be)][idx(F2.at(x))], G(first.components[idx(al)][idx(x)])));
    int src = c.at(L0.g->src(static_cast<int>(m))), dst = c.at(L0.g->dst(static_cast<int>(m)));
    c.mor.push_back(need(out.morphismOf(src, dst, comps), "horizontal composite"));
  }
  return c;
}

GFunctor identityPoint(const InternalHom& h) {
  GFunctor id{terminal(), h.g, {}, {}};
  GFunctor I = identityFunctor(h.A);
  int o = need(h.objectOf(I), "identity functor");
  std::vector<int> ids;
  for (int x = 0; x < h.A->objects(); ++x) ids.push_back(h.A->id(x));
  id.obj.push_back(o);
  id.mor.push_back(need(h.morphismOf(o, o, ids), "identity transformation"));
  return id;
}
}  // namespace

EqObject eqObject(const Grp& a, const Grp& b, PathChoice choice) {
  EqObject e{internalHom(a, b), internalHom(b, a), internalHom(a, a), internalHom(b, b), {}};
  HomSide side;
  side.C = terminal();
  side.hab = terminalFibration(e.hab.g);
  side.hba = terminalFibration(e.hba.g);
  side.haa = terminalFibration(e.haa.g);
  side.hbb = terminalFibration(e.hbb.g);
  side.compL = [&](const Pullback& L0) { return horizontal(L0, e.hab, e.hba, e.haa); };
  side.compR = [&](const Pullback& L0) {
    // objects (f, h): f.h uses h first
    Pullback swapped;
    swapped.g = L0.g;
    for (auto [i, j] : L0.objPair) swapped.objPair.emplace_back(j, i);
    for (auto [i, j] : L0.morPair) swapped.morPair.emplace_back(j, i);
    return horizontal(swapped, e.hba, e.hab, e.hbb);
  };
  side.idA = identityPoint(e.haa);
  side.idB = identityPoint(e.hbb);
  e.data = constructEq(side, choice);
  return e;
}

std::size_t countEquivalenceData(const Grp& x, const Grp& a, const Grp& b) {
  Pullback xa = product(x, a), xb = product(x, b);
  auto fs = liftsOver(xa.g, xb.pr1, xa.pr1);
  auto gs = liftsOver(xb.g, xa.pr1, xb.pr1);
  GFunctor idA = identityFunctor(xa.g), idB = identityFunctor(xb.g);
  auto count = [](const GFunctor& f, const GFunctor& g, const GFunctor& over) {
    std::size_t n = 0;
    forEachNatIso(
        f, g,
        [&](const NatIso&) {
          ++n;
          return true;
        },
        &over);
    return n;
  };
  std::size_t total = 0;
  for (const GFunctor& f : fs) {
    std::size_t left = 0, right = 0;
    for (const GFunctor& g : gs) {
      left += count(compose(g, f), idA, xa.pr1);
      right += count(compose(f, g), idB, xb.pr1);
    }
    total += left * right;
  }
  return total;
}

// ---------------------------------------------------------------- fibered

FiberedEq eqOfFibration(const FibrationMap& p, PathChoice choice) {
  const Grp& B = p.base();
  FiberedEq r;
  r.bb = product(B, B);
  auto [xf, xpb] = pullbackFibration(p, r.bb.pr1);
  auto [yf, ypb] = pullbackFibration(p, r.bb.pr2);
  r.x = xf;
  r.y = yf;
  r.hxy = fiberHom(r.x, r.y);
  r.hyx = fiberHom(r.y, r.x);
  r.hxx = fiberHom(r.x, r.x);
  r.hyy = fiberHom(r.y, r.y);
  const Grp& C = r.bb.g;

  auto identitySection = [&](const FiberHom& h) {
    GFunctor id{C, h.fib().total(), {}, {}};
    auto same = [](int v) { return v; };
    for (int c = 0; c < C->objects(); ++c) id.obj.push_back(need(h.encodeObject(c, same, same), "identity section"));
    for (int g = 0; g < C->morphisms(); ++g)
      id.mor.push_back(need(h.encodeMorphism(g, id.at(C->src(g)), id.at(C->dst(g)), same), "identity family"));
    return id;
  };
  // (f, g) in first x second to g.f in out
  auto composite = [&](const Pullback& L0, const FiberHom& first, const FiberHom& second, const FiberHom& out,
                       bool swap) {
    GFunctor c{L0.g, out.fib().total(), {}, {}};
    for (auto pr : L0.objPair) {
      auto [f, g] = swap ? std::make_pair(pr.second, pr.first) : pr;
      int base = first.pi.objBase[idx(f)];
      c.obj.push_back(need(out.encodeObject(
                               base, [&](int o) { return second.yObject(g, first.yObject(f, o)); },
                               [&](int v) { return second.yVertical(g, first.yVertical(f, v)); }),
                           "fibered composite"));
    }
    for (std::size_t m = 0; m < L0.morPair.size(); ++m) {
      auto pr = L0.morPair[m];
      auto [mu, nu] = swap ? std::make_pair(pr.second, pr.first) : pr;
      int gamma = first.pi.morBase[idx(mu)];
      int src = c.at(L0.g->src(static_cast<int>(m))), dst = c.at(L0.g->dst(static_cast<int>(m)));
      c.mor.push_back(need(
          out.encodeMorphism(gamma, src, dst, [&](int phi) { return second.yMorphism(nu, first.yMorphism(mu, phi)); }),
          "fibered composite family"));
    }
    return c;
  };

  HomSide side;
  side.C = C;
  side.hab = r.hxy.fib();
  side.hba = r.hyx.fib();
  side.haa = r.hxx.fib();
  side.hbb = r.hyy.fib();
  side.compL = [&](const Pullback& L0) { return composite(L0, r.hxy, r.hyx, r.hxx, false); };
  side.compR = [&](const Pullback& L0) { return composite(L0, r.hyx, r.hxy, r.hyy, true); };
  side.idA = identitySection(r.hxx);
  side.idB = identitySection(r.hyy);
  r.data = constructEq(side, choice);

  // delta: b to the identity equivalence data over (b, b)
  const FinGroupoid& Bg = *B;
  r.delta = GFunctor{B, r.data.toHab.total(), {}, {}};
  auto xToY = [&](int o) { return ypb.objectOf(xpb.objPair[idx(o)].first, xpb.objPair[idx(o)].second); };
  auto xToYm = [&](int m) { return ypb.morphismOf(xpb.morPair[idx(m)].first, xpb.morPair[idx(m)].second); };
  auto yToX = [&](int o) { return xpb.objectOf(ypb.objPair[idx(o)].first, ypb.objPair[idx(o)].second); };
  auto yToXm = [&](int m) { return xpb.morphismOf(ypb.morPair[idx(m)].first, ypb.morPair[idx(m)].second); };
  std::vector<int> F, G;
  for (int b = 0; b < Bg.objects(); ++b) {
    int c = r.bb.objectOf(b, b);
    F.push_back(need(r.hxy.encodeObject(c, xToY, xToYm), "delta f"));
    G.push_back(need(r.hyx.encodeObject(c, yToX, yToXm), "delta g"));
    int l0 = need(r.data.l0.second.objectOf(F.back(), G.back()), "delta pair");
    int l = need(r.data.linv.second.objectOf(l0, r.data.pathA.anodyne.at(side.idA.at(c))), "delta left inverse");
    int rr = need(r.data.rinv.second.objectOf(l0, r.data.pathB.anodyne.at(side.idB.at(c))), "delta right inverse");
    r.delta.obj.push_back(need(r.data.eq.second.objectOf(l, rr), "delta point"));
  }
  for (int beta = 0; beta < Bg.morphisms(); ++beta) {
    int gamma = r.bb.morphismOf(beta, beta);
    int b = Bg.src(beta), b2 = Bg.dst(beta);
    int fm = need(r.hxy.encodeMorphism(gamma, F[idx(b)], F[idx(b2)], xToYm), "delta f on morphisms");
    int gm = need(r.hyx.encodeMorphism(gamma, G[idx(b)], G[idx(b2)], yToXm), "delta g on morphisms");
    int l0 = need(r.data.l0.second.morphismOf(fm, gm), "delta pair on morphisms");
    int l = need(r.data.linv.second.morphismOf(l0, r.data.pathA.anodyne(side.idA(gamma))), "delta left on morphisms");
    int rr = need(r.data.rinv.second.morphismOf(l0, r.data.pathB.anodyne(side.idB(gamma))), "delta right on morphisms");
    r.delta.mor.push_back(need(r.data.eq.second.morphismOf(l, rr), "delta on morphisms"));
  }
  std::string why;
  if (!validateFunctor(r.delta, &why)) throw GroupoidError("delta is not a functor: " + why);
  return r;
}

bool univalenceCheck(const FibrationMap& p, PathChoice choice) {
  return equivalenceCheck(eqOfFibration(p, choice).delta).has_value();
}

}  // namespace hott::grpd
