#include "hott/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <optional>

namespace hott::grpd {

namespace {

using Witness = std::optional<std::string>;  // nullopt means the check passed

template <class Body>
CheckResult timed(std::string check, std::string instance, Body body) {
  CheckResult r;
  r.check = std::move(check);
  r.instance = std::move(instance);
  auto t0 = std::chrono::steady_clock::now();
  try {
    Witness w = body();
    r.result = !w.has_value();
    if (w) r.witness = *w;
  } catch (const std::exception& e) {
    r.result = false;
    r.witness = std::string("exception: ") + e.what();
  }
  r.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<NamedGroupoid> baseGroupoids(bool small) {
  std::vector<NamedGroupoid> v;
  for (int n = 0; n <= (small ? 2 : 4); ++n) v.push_back({"disc" + std::to_string(n), discrete(n)});
  v.push_back({"BZ2", cyclic(2)});
  if (!small) v.push_back({"BZ3", cyclic(3)});
  v.push_back({"codisc2", codiscrete(2)});
  return v;
}

Corpus buildCorpus(std::string name, bool small) {
  Corpus c;
  c.name = std::move(name);
  c.groupoids = baseGroupoids(small);
  c.baseCount = c.groupoids.size();
  std::vector<NamedGroupoid> base = c.groupoids;
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i; j < base.size(); ++j) {
      Pullback pr = product(base[i].g, base[j].g);
      std::string nm = base[i].name + "*" + base[j].name;
      c.groupoids.push_back({nm, pr.g});
      c.fibrations.push_back({"pr1:" + nm, makeFibration(pr.pr1)});
      c.fibrations.push_back({"pr2:" + nm, makeFibration(pr.pr2)});
    }
  for (const auto& a : base)
    for (const auto& b : base) {
      int k = 0;
      for (const GFunctor& f : allFunctors(a.g, b.g)) {
        if (auto p = tryFibration(f)) c.fibrations.push_back({a.name + "->" + b.name + "#" + std::to_string(k), *p});
        ++k;
      }
    }
  return c;
}

std::string describe(const GFunctor& f) {
  std::string s = "obj[";
  for (std::size_t i = 0; i < f.obj.size(); ++i) s += (i ? "," : "") + std::to_string(f.obj[i]);
  s += "] mor[";
  for (std::size_t i = 0; i < f.mor.size(); ++i) s += (i ? "," : "") + std::to_string(f.mor[i]);
  return s + "]";
}

struct NamedFunctor {
  std::string name;
  GFunctor f;
};

/// Every functor from a test domain into B.
std::vector<NamedFunctor> probesInto(const NamedGroupoid& b, const std::vector<NamedGroupoid>& domains) {
  std::vector<NamedFunctor> v;
  for (const auto& t : domains) {
    int k = 0;
    for (const GFunctor& f : allFunctors(t.g, b.g)) v.push_back({t.name + "->" + b.name + "#" + std::to_string(k++), f});
  }
  return v;
}

/// Anodyne maps with small codomain: anodyne halves of factorizations between
/// test domains, plus the endpoint inclusions of the codiscrete pair.
std::vector<NamedFunctor> anodyneSamples(const std::vector<NamedGroupoid>& domains) {
  std::vector<NamedFunctor> v;
  for (const auto& a : domains)
    for (const auto& b : domains) {
      int k = 0;
      for (const GFunctor& f : allFunctors(a.g, b.g)) {
        Factorization fz = factorize(f);
        if (fz.anodyne.cod->objects() <= 4)
          v.push_back({"factor(" + a.name + "->" + b.name + "#" + std::to_string(k) + ")", fz.anodyne});
        ++k;
      }
    }
  Grp pt = terminal(), I = codiscrete(2);
  for (int e = 0; e < 2; ++e) v.push_back({"endpoint" + std::to_string(e), constantFunctor(pt, I, e)});
  return v;
}

Witness liftingWitness(const GFunctor& j, const FibrationMap& p) {
  Witness w;
  forEachFunctor(j.cod, p.base(), nullptr, nullptr, [&](const GFunctor& v) {
    GFunctor vj = compose(v, j);
    forEachFunctor(j.dom, p.total(), &p.map, &vj, [&](const GFunctor& u) {
      bool found = false;
      forEachFunctor(j.cod, p.total(), &p.map, &v, [&](const GFunctor& d) {
        found = compose(d, j) == u;
        return !found;
      });
      if (!found) w = "no diagonal for square u=" + describe(u) + " v=" + describe(v);
      return found;
    });
    return !w.has_value();
  });
  return w;
}

/// Q-families over E used to exercise dependent products.
std::vector<std::pair<std::string, FibrationMap>> familiesOver(const Grp& e) {
  std::vector<std::pair<std::string, FibrationMap>> v;
  v.emplace_back("id", identityFibration(e));
  v.emplace_back("x disc2", makeFibration(product(e, discrete(2)).pr1));
  v.emplace_back("x BZ2", makeFibration(product(e, cyclic(2)).pr1));
  return v;
}

Witness piPathWitness(const FibrationMap& p, const FibrationMap& q) {
  PathObject po = pathObjectFibered(q);
  FibrationMap overE = composeFibrations(po.boundary, po.pairsOverBase);
  PiResult piQ = piAlongFibration(p, q);
  PiResult piP = piAlongFibration(p, overE);
  PiResult piPairs = piAlongFibration(p, po.pairsOverBase);

  GFunctor refl = piMap(piQ, piP, po.anodyne);
  if (!equivalenceCheck(refl)) return "Pi of the reflexivity map is not an equivalence";
  GFunctor bdry = piMap(piP, piPairs, po.boundary.map);
  if (!tryFibration(bdry)) return "Pi of the boundary map is not an isofibration";
  Pullback twice = pullback(piQ.fib.map, piQ.fib.map);
  GFunctor cmp = twice.pair(piMap(piPairs, piQ, po.pairs.pr1), piMap(piPairs, piQ, po.pairs.pr2));
  if (!bijective(cmp)) return "Pi of the pair object is not the pair object of Pi";
  if (!(compose(bdry, refl) == piMap(piQ, piPairs, compose(po.boundary.map, po.anodyne))))
    return "Pi does not preserve the factorization of the diagonal";

  // vertical homotopies go to vertical homotopies
  std::vector<GFunctor> endos;
  forEachFunctor(q.total(), q.total(), &q.map, &q.map, [&](const GFunctor& g) {
    endos.push_back(g);
    return endos.size() < 6;
  });
  for (std::size_t i = 0; i < endos.size(); ++i)
    for (std::size_t k = i + 1; k < endos.size(); ++k) {
      if (!homotopic(endos[i], endos[k], &q.map)) continue;
      if (!homotopic(piMap(piQ, piQ, endos[i]), piMap(piQ, piQ, endos[k]), &piQ.fib.map))
        return "homotopic endomorphisms " + std::to_string(i) + "," + std::to_string(k) + " give non-homotopic Pi maps";
    }
  return std::nullopt;
}

}  // namespace

std::vector<NamedGroupoid> testDomains() {
  return {{"1", terminal()}, {"disc2", discrete(2)}, {"BZ2", cyclic(2)}, {"codisc2", codiscrete(2)}};
}

Corpus defaultCorpus() { return buildCorpus("default", false); }
Corpus smallCorpus() { return buildCorpus("small", true); }

Corpus corpusByName(const std::string& name) {
  if (name == "default") return defaultCorpus();
  if (name == "small") return smallCorpus();
  if (name == "empty") return Corpus{"empty", {}, {}, 0};
  throw GroupoidError("unknown corpus '" + name + "'");
}

bool SuiteReport::pass() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return !r.result; }));
}

SuiteReport tribeAxiomSuite(const Corpus& corpus) {
  SuiteReport rep;
  auto add = [&](CheckResult r) { rep.results.push_back(std::move(r)); };

  // validation gate
  for (const auto& g : corpus.groupoids)
    add(timed("validate", g.name, [&]() -> Witness {
      std::string why;
      if (!g.g || !g.g->validate(&why)) return why.empty() ? "null groupoid" : why;
      return std::nullopt;
    }));
  for (const auto& f : corpus.fibrations)
    add(timed("validate", f.name, [&]() -> Witness {
      std::string why;
      if (!validateFibration(f.p, &why)) return why;
      return std::nullopt;
    }));
  if (!rep.pass()) return rep;

  const auto domains = testDomains();
  const std::vector<Grp> coneTesters{terminal(), cyclic(2)};

  // (a)
  for (const auto& g : corpus.groupoids)
    add(timed("a-terminal", g.name, [&]() -> Witness {
      if (!tryFibration(toTerminal(g.g))) return "map to the point is not an isofibration";
      return std::nullopt;
    }));

  // (b), (c)
  for (const auto& nf : corpus.fibrations) {
    const FibrationMap& p = nf.p;
    NamedGroupoid base{"base", p.base()};
    for (const auto& probe : probesInto(base, domains)) {
      std::string inst = nf.name + " along " + probe.name;
      add(timed("b-pullback", inst, [&]() -> Witness {
        auto [fib, sq] = pullbackAlongFibration(p, probe.f);
        std::string why;
        if (!validateFibration(fib, &why)) return "pulled-back map: " + why;
        if (!sq.commutes()) return "square does not commute";
        if (!checkPullbackSquare(sq, coneTesters, &why)) return "universal property: " + why;
        return std::nullopt;
      }));
      add(timed("c-factorization", inst, [&]() -> Witness {
        Factorization fz = factorize(probe.f);
        if (!(compose(fz.fibration.map, fz.anodyne) == probe.f)) return "factors do not compose to the map";
        if (!isAnodyne(fz.anodyne)) return "first factor is not anodyne";
        std::string why;
        if (!validateFibration(fz.fibration, &why)) return "second factor: " + why;
        return std::nullopt;
      }));
    }
    // anodyne maps into the base, pulled back along p
    std::vector<NamedFunctor> anodyne{{"id", identityFunctor(p.base())}};
    for (auto& probe : probesInto(base, domains))
      if (isAnodyne(probe.f)) anodyne.push_back(std::move(probe));
    for (const auto& j : anodyne)
      add(timed("b-anodyne-pullback", nf.name + " against " + j.name, [&]() -> Witness {
        Pullback pb = pullback(j.f, p.map);  // objects (a, e)
        if (!isAnodyne(pb.pr2)) return "pulled-back anodyne map is not anodyne";
        return std::nullopt;
      }));
    add(timed("c-factorization", nf.name, [&]() -> Witness {
      Factorization fz = factorize(p.map);
      if (!(compose(fz.fibration.map, fz.anodyne) == p.map)) return "factors do not compose to the map";
      if (!isAnodyne(fz.anodyne)) return "first factor is not anodyne";
      return std::nullopt;
    }));
  }

  // (d)
  if (!corpus.fibrations.empty()) {
    auto samples = anodyneSamples(domains);
    for (const auto& j : samples)
      add(timed("d-anodyne", j.name, [&]() -> Witness {
        if (!isAnodyne(j.f)) return "sample is not anodyne";
        return std::nullopt;
      }));
    for (const auto& nf : corpus.fibrations)
      add(timed("d-lifting", nf.name, [&]() -> Witness {
        for (const auto& j : samples)
          if (auto w = liftingWitness(j.f, nf.p)) return j.name + ": " + *w;
        return std::nullopt;
      }));
  }

  // (e), (f)
  for (const auto& nf : corpus.fibrations) {
    const FibrationMap& p = nf.p;
    for (const auto& [qname, q] : familiesOver(p.total())) {
      std::string inst = nf.name + " of " + qname;
      add(timed("e-pi-adjunction", inst, [&]() -> Witness {
        PiResult pi = piAlongFibration(p, q);
        std::string why;
        std::vector<GFunctor> tests{identityFunctor(p.base())};
        for (int b = 0; b < p.base()->objects(); ++b) tests.push_back(constantFunctor(terminal(), p.base(), b));
        for (const auto& r : tests)
          if (!checkPiAdjunction(pi, r, &why)) return why;
        return std::nullopt;
      }));
      add(timed("f-pi-path-object", inst, [&]() { return piPathWitness(p, q); }));
    }
  }
  return rep;
}

// ---------------------------------------------------------------- invariants

CheckResult representabilityCheck(const Grp& x, const NamedGroupoid& a, const NamedGroupoid& b) {
  return timed("representability", a.name + "," + b.name + " over " + x->name, [&]() -> Witness {
    EqObject e = eqObject(a.g, b.g);
    std::size_t maps = 0;
    forEachFunctor(x, e.g(), nullptr, nullptr, [&](const GFunctor&) {
      ++maps;
      return true;
    });
    std::size_t data = countEquivalenceData(x, a.g, b.g);
    if (maps != data) return std::to_string(maps) + " maps into Eq but " + std::to_string(data) + " equivalence data";
    return std::nullopt;
  });
}

CheckResult pathIndependenceCheck(const NamedGroupoid& a, const NamedGroupoid& b) {
  return timed("path-independence", a.name + "," + b.name, [&]() -> Witness {
    EqObject e1 = eqObject(a.g, b.g, PathChoice::Arrows);
    EqObject e2 = eqObject(a.g, b.g, PathChoice::Padded);
    if (!fiberwiseEquivalent(e1.projection(), e2.projection())) return "no equivalence over the hom groupoid";
    return std::nullopt;
  });
}

CheckResult postcompositionCheck(const Grp& x, const GFunctor& f, const std::string& name) {
  return timed("postcomposition", name + " over " + x->name, [&]() -> Witness {
    if (!equivalenceCheck(f)) return "input map is not an equivalence";
    InternalHom from = internalHom(x, f.dom), to = internalHom(x, f.cod);
    if (!equivalenceCheck(postcompose(from, to, f))) return "post-composition is not an equivalence";
    return std::nullopt;
  });
}

CheckResult projectionMonoCheck(const NamedGroupoid& a, const NamedGroupoid& b) {
  return timed("projection-mono", a.name + "," + b.name, [&]() -> Witness {
    if (!homotopyMonoCheck(eqObject(a.g, b.g).projection())) return "Eq -> hom is not a homotopy mono";
    return std::nullopt;
  });
}

CheckResult eqPullbackCheck(const FibrationMap& p, const GFunctor& f, const std::string& name) {
  return timed("eq-pullback", name, [&]() -> Witness {
    FiberedEq eq = eqOfFibration(p);
    Pullback xx = product(f.dom, f.dom);
    GFunctor ff = eq.bb.pair(compose(f, xx.pr1), compose(f, xx.pr2));
    FibrationMap pulled = pullbackFibration(eq.data.toBase, ff).first;
    FiberedEq eq2 = eqOfFibration(pullbackFibration(p, f).first);
    if (!fiberwiseEquivalent(pulled, eq2.data.toBase)) return "pulled-back Eq differs from Eq of the pullback";
    return std::nullopt;
  });
}

CheckResult univalenceTransferCheck(const FibrationMap& p, const FibrationMap& f, const std::string& name) {
  return timed("univalence-transfer", name, [&]() -> Witness {
    bool u = univalenceCheck(pullbackFibration(p, f.map).first);
    bool m = homotopyMonoCheck(f);
    if (u != m)
      return std::string("pullback ") + (u ? "univalent" : "not univalent") + " but map " + (m ? "is" : "is not") +
             " a homotopy mono";
    return std::nullopt;
  });
}

std::vector<NamedFibration> monoCorpus() {
  std::vector<NamedFibration> v;
  auto doms = testDomains();
  doms.insert(doms.begin(), {"disc0", emptyGroupoid()});
  doms.push_back({"disc3", discrete(3)});
  std::vector<NamedGroupoid> bases{{"1", terminal()}, {"disc2", discrete(2)}, {"BZ2", cyclic(2)}, {"codisc2", codiscrete(2)}};
  for (const auto& b : bases)
    for (const auto& a : doms) {
      int k = 0;
      for (const GFunctor& f : allFunctors(a.g, b.g)) {
        auto p = tryFibration(f);
        if (p && homotopyMonoCheck(*p)) v.push_back({a.name + "->" + b.name + "#" + std::to_string(k), *p});
        ++k;
      }
    }
  return v;
}

CheckResult classificationCheck(const FibrationMap& top, const NamedFibration& f) {
  return timed("classification", f.name, [&]() -> Witness {
    auto c = classifyHomotopyMono(top, f.p);
    if (!c) return "not classified";
    const GFunctor& chi = c->names.front();
    for (const auto& other : c->names)
      if (!homotopic(chi, other)) return "two names are not homotopic";
    Witness w;
    forEachFunctor(f.p.base(), top.base(), nullptr, nullptr, [&](const GFunctor& psi) {
      bool named = std::find(c->names.begin(), c->names.end(), psi) != c->names.end();
      if (homotopic(chi, psi) != named) w = "homotopy class of the name differs from the set of names at " + describe(psi);
      return !w.has_value();
    });
    return w;
  });
}

}  // namespace hott::grpd
