#include <algorithm>
#include <map>
#include <numeric>

#include "hott/tribe.hpp"

namespace hott::grpd {

namespace {
std::size_t idx(int i) { return static_cast<std::size_t>(i); }
}  // namespace

SetsUniverse setsUniverse(int k) {
  if (k < 0) throw GroupoidError("setsUniverse needs k >= 0");
  if (k > 6) throw ResourceError("setsUniverse(" + std::to_string(k) + ") exceeds the supported bound 6");
  SetsUniverse u;
  GroupoidBuilder base;
  std::map<std::vector<int>, int> permId;  // keyed by [n, perm...]
  for (int n = 0; n <= k; ++n) {
    base.addObject();
    u.card.push_back(n);
    std::vector<int> perm(idx(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> key{n};
      key.insert(key.end(), perm.begin(), perm.end());
      permId[key] = base.addMorphism(n, n);
      u.perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  auto lookup = [&](const std::vector<int>& perm) {
    std::vector<int> key{static_cast<int>(perm.size())};
    key.insert(key.end(), perm.begin(), perm.end());
    return permId.at(key);
  };
  for (int n = 0; n <= k; ++n) {
    std::vector<int> id(idx(n));
    std::iota(id.begin(), id.end(), 0);
    base.setIdentity(n, lookup(id));
  }
  auto composePerm = [&](int g, int f) {
    const auto& sg = u.perms[idx(g)];
    const auto& sf = u.perms[idx(f)];
    std::vector<int> r(sf.size());
    for (std::size_t i = 0; i < sf.size(); ++i) r[i] = sg[idx(sf[i])];
    return lookup(r);
  };
  Grp U = base.build(composePerm, false, "U" + std::to_string(k));

  GroupoidBuilder el;
  std::map<std::pair<int, int>, int> pointId;
  for (int n = 0; n <= k; ++n)
    for (int i = 0; i < n; ++i) pointId[{n, i}] = el.addObject();
  std::map<std::pair<int, int>, int> arrowId;  // (perm, i)
  std::vector<std::pair<int, int>> arrows;
  for (int s = 0; s < U->morphisms(); ++s) {
    int n = U->src(s);
    for (int i = 0; i < n; ++i) {
      arrowId[{s, i}] = el.addMorphism(pointId[{n, i}], pointId[{n, u.perms[idx(s)][idx(i)]}]);
      arrows.emplace_back(s, i);
    }
  }
  for (auto [key, o] : pointId) el.setIdentity(o, arrowId[{U->id(key.first), key.second}]);
  Grp El = el.build(
      [&](int h, int f) { return arrowId.at({composePerm(arrows[idx(h)].first, arrows[idx(f)].first), arrows[idx(f)].second}); },
      false, "El" + std::to_string(k));
  GFunctor proj{El, U, {}, {}};
  proj.obj.resize(idx(El->objects()));
  for (auto [key, o] : pointId) proj.obj[idx(o)] = key.first;
  for (auto [s, i] : arrows) proj.mor.push_back(s);
  u.el = makeFibration(proj);
  return u;
}

Omega omegaClassifier(const FibrationMap& p) {
  Omega w;
  w.source = p;
  w.path = pathObjectFibered(p);
  w.pairsOverBase = w.path.pairsOverBase;
  w.pi = piAlongFibration(w.pairsOverBase, w.path.boundary);
  w.pr = w.pi.fib;
  auto [top, pb] = pullbackFibration(p, w.pr.map);
  w.top = std::move(top);
  w.topPullback = std::move(pb);
  return w;
}

std::optional<Classification> classifyHomotopyMono(const FibrationMap& top, const FibrationMap& f) {
  if (!homotopyMonoCheck(f)) return std::nullopt;
  Classification c;
  forEachFunctor(f.base(), top.base(), nullptr, nullptr, [&](const GFunctor& chi) {
    auto pulled = pullbackFibration(top, chi).first;
    if (fiberwiseEquivalent(f, pulled)) c.names.push_back(chi);
    return true;
  });
  if (c.names.empty()) return std::nullopt;
  return c;
}

ResizingResult resizingCheck(int k) {
  SetsUniverse small = setsUniverse(k), big = setsUniverse(k + 1);
  Omega a = omegaClassifier(small.el), b = omegaClassifier(big.el);
  auto names = classifyHomotopyMono(b.top, a.top);
  if (!names) throw GroupoidError("the smaller classifier's top map is not classified by the larger one");
  ResizingResult r;
  r.comparison = names->names.front();
  // inclusion U_k -> U_{k+1}: same cardinality, same permutation
  const Grp& Us = small.el.base();
  const Grp& Ub = big.el.base();
  GFunctor incl{Us, Ub, {}, {}};
  for (int n = 0; n < Us->objects(); ++n) incl.obj.push_back(n);
  for (int s = 0; s < Us->morphisms(); ++s) {
    int n = Us->src(s);
    int found = -1;
    for (int t : Ub->hom(n, n))
      if (big.perms[idx(t)] == small.perms[idx(s)]) found = t;
    incl.mor.push_back(found);
  }
  r.homotopyCommutes = homotopic(compose(b.pr.map, r.comparison), compose(incl, a.pr.map));
  r.equivalence = equivalenceCheck(r.comparison).has_value();
  return r;
}

}  // namespace hott::grpd
