#include "hott/groupoid.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <sstream>

namespace hott::grpd {

namespace {
std::size_t idx(int i) { return static_cast<std::size_t>(i); }

std::string str(const std::ostringstream& o) { return o.str(); }
}  // namespace

Limits& Limits::current() {
  static Limits limits = [] {
    Limits l;
    if (const char* env = std::getenv("HOTT_MAX_OBJECTS")) {
      long v = std::strtol(env, nullptr, 10);
      if (v > 0) {
        l.maxObjects = static_cast<std::size_t>(v);
        l.maxMorphisms = static_cast<std::size_t>(v) * 20;
      }
    }
    return l;
  }();
  return limits;
}

void checkCaps(std::size_t objects, std::size_t morphisms, const char* what) {
  const Limits& l = Limits::current();
  if (objects > l.maxObjects || morphisms > l.maxMorphisms) {
    std::ostringstream o;
    o << what << " needs " << objects << " objects and " << morphisms << " morphisms (caps " << l.maxObjects
      << ", " << l.maxMorphisms << "); raise HOTT_MAX_OBJECTS";
    throw ResourceError(o.str());
  }
}

// ---------------------------------------------------------------- groupoids

int FinGroupoid::comp(int g, int f) const {
  if (dst(f) != src(g)) throw GroupoidError("composing non-composable morphisms");
  return compose_[compStart_[idx(f)] + idx(outPos_[idx(g)])];
}

std::span<const int> FinGroupoid::hom(int a, int b) const {
  const auto& o = out_[idx(a)];
  auto lo = std::lower_bound(o.begin(), o.end(), b, [&](int m, int t) { return dst(m) < t; });
  auto hi = std::upper_bound(lo, o.end(), b, [&](int t, int m) { return t < dst(m); });
  return {o.data() + (lo - o.begin()), static_cast<std::size_t>(hi - lo)};
}

bool FinGroupoid::validate(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  for (int x = 0; x < n_; ++x) {
    int i = id(x);
    if (i < 0 || src(i) != x || dst(i) != x) return fail("identity of object " + std::to_string(x) + " is not a loop");
  }
  for (int f = 0; f < morphisms(); ++f) {
    if (comp(id(dst(f)), f) != f || comp(f, id(src(f))) != f)
      return fail("identity law fails at morphism " + std::to_string(f));
    int g = inverse_[idx(f)];
    if (g < 0) return fail("morphism " + std::to_string(f) + " has no inverse");
    if (comp(g, f) != id(src(f)) || comp(f, g) != id(dst(f)))
      return fail("inverse law fails at morphism " + std::to_string(f));
  }
  for (int f = 0; f < morphisms(); ++f)
    for (int g : out(dst(f)))
      for (int h : out(dst(g)))
        if (comp(h, comp(g, f)) != comp(comp(h, g), f)) {
          std::ostringstream o;
          o << "associativity fails at (" << h << ", " << g << ", " << f << ")";
          return fail(str(o));
        }
  return true;
}

int GroupoidBuilder::addObject() {
  ident_.push_back(-1);
  return n_++;
}

int GroupoidBuilder::addObjects(int count) {
  int first = n_;
  for (int i = 0; i < count; ++i) addObject();
  return first;
}

int GroupoidBuilder::addMorphism(int src, int dst) {
  arrows_.push_back({src, dst});
  return static_cast<int>(arrows_.size()) - 1;
}

void GroupoidBuilder::setIdentity(int x, int m) { ident_[idx(x)] = m; }

Grp GroupoidBuilder::build(const std::function<int(int, int)>& compose, bool check, std::string name) {
  checkCaps(idx(n_), arrows_.size(), name.empty() ? "groupoid" : name.c_str());
  auto g = std::make_shared<FinGroupoid>();
  g->name = std::move(name);
  g->n_ = n_;
  g->arrows_ = arrows_;
  g->ident_ = ident_;
  for (int x = 0; x < n_; ++x)
    if (ident_[idx(x)] < 0) throw GroupoidError("object " + std::to_string(x) + " has no identity");
  const int m = static_cast<int>(arrows_.size());
  g->out_.assign(idx(n_), {});
  for (int f = 0; f < m; ++f) {
    const Arrow& a = arrows_[idx(f)];
    if (a.src < 0 || a.src >= n_ || a.dst < 0 || a.dst >= n_)
      throw GroupoidError("morphism " + std::to_string(f) + " has an endpoint out of range");
    g->out_[idx(a.src)].push_back(f);
  }
  g->outPos_.assign(idx(m), 0);
  for (auto& o : g->out_) {
    std::stable_sort(o.begin(), o.end(), [&](int a, int b) { return arrows_[idx(a)].dst < arrows_[idx(b)].dst; });
    for (std::size_t i = 0; i < o.size(); ++i) g->outPos_[idx(o[i])] = static_cast<int>(i);
  }
  g->compStart_.assign(idx(m) + 1, 0);
  std::size_t total = 0;
  for (int f = 0; f < m; ++f) {
    g->compStart_[idx(f)] = total;
    total += g->out_[idx(arrows_[idx(f)].dst)].size();
  }
  g->compStart_[idx(m)] = total;
  g->compose_.assign(total, -1);
  for (int f = 0; f < m; ++f)
    for (int h : g->out_[idx(arrows_[idx(f)].dst)]) {
      int r = compose(h, f);
      if (r < 0 || r >= m || arrows_[idx(r)].src != arrows_[idx(f)].src || arrows_[idx(r)].dst != arrows_[idx(h)].dst) {
        std::ostringstream o;
        o << "composite of " << h << " after " << f << " is missing or has wrong endpoints";
        throw GroupoidError(o.str());
      }
      g->compose_[g->compStart_[idx(f)] + idx(g->outPos_[idx(h)])] = r;
    }
  g->inverse_.assign(idx(m), -1);
  for (int f = 0; f < m; ++f) {
    const Arrow& a = arrows_[idx(f)];
    for (int h : g->hom(a.dst, a.src))
      if (g->comp(h, f) == ident_[idx(a.src)]) {
        g->inverse_[idx(f)] = h;
        break;
      }
    if (g->inverse_[idx(f)] < 0 && !check) throw GroupoidError("morphism " + std::to_string(f) + " is not invertible");
  }
  g->component_.assign(idx(n_), -1);
  for (int x = 0; x < n_; ++x) {
    if (g->component_[idx(x)] >= 0) continue;
    int c = g->componentCount_++;
    std::deque<int> queue{x};
    g->component_[idx(x)] = c;
    while (!queue.empty()) {
      int y = queue.front();
      queue.pop_front();
      for (int f : g->out_[idx(y)])
        if (g->component_[idx(arrows_[idx(f)].dst)] < 0) {
          g->component_[idx(arrows_[idx(f)].dst)] = c;
          queue.push_back(arrows_[idx(f)].dst);
        }
    }
  }
  if (check) {
    std::string why;
    if (!g->validate(&why)) throw GroupoidError("invalid groupoid " + g->name + ": " + why);
  }
  return g;
}

Grp fromTables(int objects, const std::vector<Arrow>& arrows, const std::vector<int>& identities,
               const std::vector<std::array<int, 3>>& compose, std::string name) {
  if (static_cast<int>(identities.size()) != objects) throw GroupoidError("identity table has the wrong length");
  GroupoidBuilder b;
  b.addObjects(objects);
  for (const Arrow& a : arrows) b.addMorphism(a.src, a.dst);
  for (int x = 0; x < objects; ++x) {
    if (identities[idx(x)] < 0 || identities[idx(x)] >= static_cast<int>(arrows.size()))
      throw GroupoidError("identity out of range");
    b.setIdentity(x, identities[idx(x)]);
  }
  std::map<std::pair<int, int>, int> table;
  for (const auto& t : compose) {
    auto [it, fresh] = table.emplace(std::make_pair(t[0], t[1]), t[2]);
    if (!fresh && it->second != t[2]) throw GroupoidError("composition table lists two composites for one pair");
  }
  return b.build(
      [&](int g, int f) {
        auto it = table.find({g, f});
        if (it == table.end()) {
          std::ostringstream o;
          o << "composition table is not total: missing " << g << " after " << f;
          throw GroupoidError(o.str());
        }
        return it->second;
      },
      true, std::move(name));
}

bool sameGroupoid(const Grp& a, const Grp& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->objects() != b->objects() || a->morphisms() != b->morphisms()) return false;
  for (int x = 0; x < a->objects(); ++x)
    if (a->id(x) != b->id(x)) return false;
  for (int f = 0; f < a->morphisms(); ++f) {
    if (a->src(f) != b->src(f) || a->dst(f) != b->dst(f)) return false;
    for (int g : a->out(a->dst(f)))
      if (a->comp(g, f) != b->comp(g, f)) return false;
  }
  return true;
}

Grp discrete(int n) {
  GroupoidBuilder b;
  for (int x = 0; x < n; ++x) b.setIdentity(b.addObject(), b.addMorphism(x, x));
  return b.build([](int g, int) { return g; }, false, "disc" + std::to_string(n));
}

Grp terminal() {
  static Grp t = [] {
    GroupoidBuilder b;
    b.setIdentity(b.addObject(), b.addMorphism(0, 0));
    return b.build([](int, int) { return 0; }, false, "1");
  }();
  return t;
}

Grp emptyGroupoid() { return discrete(0); }

Grp codiscrete(int n) {
  GroupoidBuilder b;
  b.addObjects(n);
  // morphism a->b has id a*n+b
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) b.addMorphism(a, c);
  for (int a = 0; a < n; ++a) b.setIdentity(a, a * n + a);
  return b.build([n](int g, int f) { return (f / n) * n + (g % n); }, false, "codisc" + std::to_string(n));
}

Grp cyclic(int k) {
  GroupoidBuilder b;
  b.addObject();
  for (int i = 0; i < k; ++i) b.addMorphism(0, 0);
  b.setIdentity(0, 0);
  return b.build([k](int g, int f) { return (g + f) % k; }, false, "BZ" + std::to_string(k));
}

// ---------------------------------------------------------------- functors

bool operator==(const GFunctor& a, const GFunctor& b) {
  return sameGroupoid(a.dom, b.dom) && sameGroupoid(a.cod, b.cod) && a.obj == b.obj && a.mor == b.mor;
}

bool validateFunctor(const GFunctor& f, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const FinGroupoid& D = *f.dom;
  const FinGroupoid& C = *f.cod;
  if (static_cast<int>(f.obj.size()) != D.objects() || static_cast<int>(f.mor.size()) != D.morphisms())
    return fail("functor tables have the wrong length");
  for (int x = 0; x < D.objects(); ++x)
    if (f.at(x) < 0 || f.at(x) >= C.objects()) return fail("object image out of range");
  for (int m = 0; m < D.morphisms(); ++m) {
    int i = f(m);
    if (i < 0 || i >= C.morphisms()) return fail("morphism image out of range");
    if (C.src(i) != f.at(D.src(m)) || C.dst(i) != f.at(D.dst(m)))
      return fail("morphism " + std::to_string(m) + " is sent to a morphism with the wrong endpoints");
  }
  for (int x = 0; x < D.objects(); ++x)
    if (f(D.id(x)) != C.id(f.at(x))) return fail("identity of " + std::to_string(x) + " is not preserved");
  for (int m = 0; m < D.morphisms(); ++m)
    for (int g : D.out(D.dst(m)))
      if (f(D.comp(g, m)) != C.comp(f(g), f(m))) {
        std::ostringstream o;
        o << "composition " << g << " after " << m << " is not preserved";
        return fail(str(o));
      }
  return true;
}

GFunctor identityFunctor(const Grp& g) {
  GFunctor f{g, g, {}, {}};
  for (int x = 0; x < g->objects(); ++x) f.obj.push_back(x);
  for (int m = 0; m < g->morphisms(); ++m) f.mor.push_back(m);
  return f;
}

GFunctor compose(const GFunctor& g, const GFunctor& f) {
  if (!sameGroupoid(f.cod, g.dom)) throw GroupoidError("composing functors with mismatched endpoints");
  GFunctor h{f.dom, g.cod, {}, {}};
  h.obj.reserve(f.obj.size());
  h.mor.reserve(f.mor.size());
  for (int x : f.obj) h.obj.push_back(g.at(x));
  for (int m : f.mor) h.mor.push_back(g(m));
  return h;
}

GFunctor constantFunctor(const Grp& dom, const Grp& cod, int object) {
  return {dom, cod, std::vector<int>(idx(dom->objects()), object),
          std::vector<int>(idx(dom->morphisms()), cod->id(object))};
}

GFunctor toTerminal(const Grp& g) { return constantFunctor(g, terminal(), 0); }

bool injectiveOnObjects(const GFunctor& f) {
  std::vector<int> seen(idx(f.cod->objects()), 0);
  for (int x : f.obj)
    if (seen[idx(x)]++) return false;
  return true;
}

bool bijective(const GFunctor& f) {
  if (f.dom->objects() != f.cod->objects() || f.dom->morphisms() != f.cod->morphisms()) return false;
  if (!injectiveOnObjects(f)) return false;
  std::vector<int> seen(idx(f.cod->morphisms()), 0);
  for (int m : f.mor)
    if (seen[idx(m)]++) return false;
  return true;
}

bool validateNatIso(const NatIso& h, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const GFunctor& F = h.source;
  const GFunctor& G = h.target;
  if (!sameGroupoid(F.dom, G.dom) || !sameGroupoid(F.cod, G.cod)) return fail("endpoints differ");
  const FinGroupoid& D = *F.dom;
  const FinGroupoid& C = *F.cod;
  if (static_cast<int>(h.components.size()) != D.objects()) return fail("wrong number of components");
  for (int x = 0; x < D.objects(); ++x) {
    int a = h.components[idx(x)];
    if (a < 0 || a >= C.morphisms() || C.src(a) != F.at(x) || C.dst(a) != G.at(x))
      return fail("component at " + std::to_string(x) + " has the wrong endpoints");
    if (C.inv(a) < 0) return fail("component is not invertible");
  }
  for (int m = 0; m < D.morphisms(); ++m)
    if (C.comp(G(m), h.components[idx(D.src(m))]) != C.comp(h.components[idx(D.dst(m))], F(m)))
      return fail("naturality fails at morphism " + std::to_string(m));
  return true;
}

NatIso identityNatIso(const GFunctor& f) {
  NatIso h{f, f, {}};
  for (int x : f.obj) h.components.push_back(f.cod->id(x));
  return h;
}

// ---------------------------------------------------------------- fibrations

int FibrationMap::lift(int e, int beta) const { return lifts[liftStart[idx(e)] + idx(base()->outPos(beta))]; }

std::optional<FibrationMap> tryFibration(const GFunctor& f) {
  const FinGroupoid& E = *f.dom;
  const FinGroupoid& B = *f.cod;
  FibrationMap p{f, {}, {}};
  p.liftStart.assign(idx(E.objects()) + 1, 0);
  std::size_t total = 0;
  for (int e = 0; e < E.objects(); ++e) {
    p.liftStart[idx(e)] = total;
    total += B.out(f.at(e)).size();
  }
  p.liftStart[idx(E.objects())] = total;
  p.lifts.assign(total, -1);
  for (int e = 0; e < E.objects(); ++e) {
    std::size_t start = p.liftStart[idx(e)];
    p.lifts[start + idx(B.outPos(B.id(f.at(e))))] = E.id(e);
    for (int l : E.out(e)) {
      int &slot = p.lifts[start + idx(B.outPos(f(l)))];
      if (slot < 0) slot = l;
    }
    for (std::size_t i = start; i < p.liftStart[idx(e) + 1]; ++i)
      if (p.lifts[i] < 0) return std::nullopt;
  }
  return p;
}

FibrationMap makeFibration(const GFunctor& f) {
  auto p = tryFibration(f);
  if (!p) throw GroupoidError("functor is not an isofibration");
  return *p;
}

bool validateFibration(const FibrationMap& p, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::string bad;
  if (!validateFunctor(p.map, &bad)) return fail(bad);
  const FinGroupoid& E = *p.total();
  const FinGroupoid& B = *p.base();
  if (p.liftStart.size() != idx(E.objects()) + 1) return fail("lift table has the wrong shape");
  for (int e = 0; e < E.objects(); ++e) {
    if (p.liftStart[idx(e) + 1] - p.liftStart[idx(e)] != B.out(p.map.at(e)).size())
      return fail("lift table row has the wrong length");
    for (int beta : B.out(p.map.at(e))) {
      int l = p.lift(e, beta);
      if (l < 0 || l >= E.morphisms() || E.src(l) != e || p.map(l) != beta)
        return fail("lift of base morphism " + std::to_string(beta) + " at " + std::to_string(e) + " is wrong");
    }
  }
  return true;
}

FibrationMap identityFibration(const Grp& g) { return makeFibration(identityFunctor(g)); }
FibrationMap terminalFibration(const Grp& g) { return makeFibration(toTerminal(g)); }

std::vector<int> fiberObjects(const FibrationMap& p, int b) {
  std::vector<int> r;
  for (int e = 0; e < p.total()->objects(); ++e)
    if (p.map.at(e) == b) r.push_back(e);
  return r;
}

// ---------------------------------------------------------------- enumeration

namespace {

/// Spanning data for one connected component of a domain.
struct ComponentPlan {
  int root = 0;
  std::vector<int> members;       // BFS order, root first
  std::vector<int> tree;          // per member: morphism root -> member
  std::vector<int> aut;           // automorphisms of root
  std::vector<int> gens;          // generating subset of aut
  std::vector<std::pair<int, int>> word;  // per aut element: (parent aut index, generator index), root: (-1,-1)
  std::vector<int> morphisms;     // all morphisms of the component
};

std::vector<ComponentPlan> planComponents(const FinGroupoid& D) {
  std::vector<ComponentPlan> plans(idx(D.componentCount()));
  std::vector<int> treeOf(idx(D.objects()), -1);
  for (int x = 0; x < D.objects(); ++x) {
    ComponentPlan& c = plans[idx(D.components()[idx(x)])];
    if (!c.members.empty()) continue;
    c.root = x;
    c.members.push_back(x);
    treeOf[idx(x)] = D.id(x);
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      int y = c.members[i];
      for (int f : D.out(y)) {
        int z = D.dst(f);
        if (treeOf[idx(z)] < 0) {
          treeOf[idx(z)] = D.comp(f, treeOf[idx(y)]);
          c.members.push_back(z);
        }
      }
    }
    for (int y : c.members) {
      c.tree.push_back(treeOf[idx(y)]);
      for (int f : D.out(y)) c.morphisms.push_back(f);
    }
    auto h = D.hom(x, x);
    c.aut.assign(h.begin(), h.end());
    // greedy generators; word[i] records how element i is reached
    std::map<int, int> pos;
    for (std::size_t i = 0; i < c.aut.size(); ++i) pos[c.aut[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> word(c.aut.size(), {-2, -2});
    word[idx(pos[D.id(x)])] = {-1, -1};
    auto close = [&] {
      std::deque<int> queue;
      for (std::size_t i = 0; i < c.aut.size(); ++i)
        if (word[i].first != -2) queue.push_back(static_cast<int>(i));
      while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (std::size_t s = 0; s < c.gens.size(); ++s) {
          int j = pos[D.comp(c.gens[s], c.aut[idx(i)])];
          if (word[idx(j)].first == -2) {
            word[idx(j)] = {i, static_cast<int>(s)};
            queue.push_back(j);
          }
        }
      }
    };
    for (std::size_t i = 0; i < c.aut.size(); ++i)
      if (word[i].first == -2) {
        c.gens.push_back(c.aut[i]);
        close();
      }
    c.word = std::move(word);
  }
  return plans;
}

struct FunctorSearch {
  const Grp& dom;
  const Grp& X;
  const GFunctor* q;
  const GFunctor* over;
  const std::function<bool(const GFunctor&)>& cb;
  std::vector<ComponentPlan> plans;
  GFunctor cur;
  bool stop = false;

  bool okMor(int x, int d) const { return !q || (*q)(x) == (*over)(d); }
  bool okObj(int x, int d) const { return !q || q->at(x) == over->at(d); }

  void run() {
    cur = GFunctor{dom, X, std::vector<int>(idx(dom->objects()), -1), std::vector<int>(idx(dom->morphisms()), -1)};
    plans = planComponents(*dom);
    component(0);
  }

  void component(std::size_t ci) {
    if (stop) return;
    if (ci == plans.size()) {
      if (!cb(cur)) stop = true;
      return;
    }
    const ComponentPlan& c = plans[ci];
    for (int x = 0; x < X->objects() && !stop; ++x) {
      if (!okObj(x, c.root)) continue;
      std::vector<int> genImg(c.gens.size(), -1);
      generators(ci, x, 0, genImg);
    }
  }

  void generators(std::size_t ci, int rootImg, std::size_t gi, std::vector<int>& genImg) {
    if (stop) return;
    const ComponentPlan& c = plans[ci];
    if (gi < c.gens.size()) {
      for (int m : X->hom(rootImg, rootImg)) {
        if (!okMor(m, c.gens[gi])) continue;
        genImg[gi] = m;
        generators(ci, rootImg, gi + 1, genImg);
        if (stop) return;
      }
      return;
    }
    // extend to the whole automorphism group and test multiplicativity
    std::vector<int> autImg(c.aut.size(), -1);
    std::map<int, int> pos;
    for (std::size_t i = 0; i < c.aut.size(); ++i) pos[c.aut[i]] = static_cast<int>(i);
    std::vector<std::size_t> order;
    order.reserve(c.aut.size());
    for (std::size_t i = 0; i < c.aut.size(); ++i)
      if (c.word[i].first == -1) {
        autImg[i] = X->id(rootImg);
        order.push_back(i);
      }
    for (std::size_t k = 0; k < order.size(); ++k) {
      int i = static_cast<int>(order[k]);
      for (std::size_t j = 0; j < c.aut.size(); ++j)
        if (c.word[j].first == i && autImg[j] < 0) {
          autImg[j] = X->comp(genImg[idx(c.word[j].second)], autImg[idx(i)]);
          order.push_back(j);
        }
    }
    const FinGroupoid& D = *dom;
    for (std::size_t i = 0; i < c.aut.size(); ++i)
      for (std::size_t s = 0; s < c.gens.size(); ++s) {
        int j = pos[D.comp(c.gens[s], c.aut[i])];
        if (autImg[idx(j)] != X->comp(genImg[s], autImg[i])) return;
      }
    for (std::size_t i = 0; i < c.aut.size(); ++i)
      if (!okMor(autImg[i], c.aut[i])) return;
    std::vector<int> treeImg(c.members.size(), -1);
    treeImg[0] = X->id(rootImg);
    tree(ci, rootImg, autImg, pos, 1, treeImg);
  }

  void tree(std::size_t ci, int rootImg, const std::vector<int>& autImg, const std::map<int, int>& pos,
            std::size_t ti, std::vector<int>& treeImg) {
    if (stop) return;
    const ComponentPlan& c = plans[ci];
    if (ti < c.members.size()) {
      for (int m : X->out(rootImg)) {
        if (!okMor(m, c.tree[ti])) continue;
        treeImg[ti] = m;
        tree(ci, rootImg, autImg, pos, ti + 1, treeImg);
        if (stop) return;
      }
      return;
    }
    const FinGroupoid& D = *dom;
    std::map<int, std::size_t> memberIndex;
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      memberIndex[c.members[i]] = i;
      cur.obj[idx(c.members[i])] = X->dst(treeImg[i]);
    }
    for (int m : c.morphisms) {
      std::size_t a = memberIndex[D.src(m)], b = memberIndex[D.dst(m)];
      int loop = D.comp(D.inv(c.tree[b]), D.comp(m, c.tree[a]));
      int img = autImg[idx(pos.at(loop))];
      cur.mor[idx(m)] = X->comp(treeImg[b], X->comp(img, X->inv(treeImg[a])));
    }
    component(ci + 1);
  }
};

}  // namespace

void forEachFunctor(const Grp& dom, const Grp& X, const GFunctor* q, const GFunctor* over,
                    const std::function<bool(const GFunctor&)>& cb) {
  if ((q == nullptr) != (over == nullptr)) throw GroupoidError("lift enumeration needs both q and the map to lift");
  if (q && (!sameGroupoid(q->dom, X) || !sameGroupoid(over->dom, dom) || !sameGroupoid(q->cod, over->cod)))
    throw GroupoidError("lift enumeration: endpoint mismatch");
  FunctorSearch s{dom, X, q, over, cb, {}, {}, false};
  s.run();
}

std::vector<GFunctor> allFunctors(const Grp& dom, const Grp& cod) {
  std::vector<GFunctor> r;
  forEachFunctor(dom, cod, nullptr, nullptr, [&](const GFunctor& f) {
    r.push_back(f);
    return true;
  });
  return r;
}

std::vector<GFunctor> liftsOver(const Grp& dom, const GFunctor& q, const GFunctor& over) {
  std::vector<GFunctor> r;
  forEachFunctor(dom, q.dom, &q, &over, [&](const GFunctor& f) {
    r.push_back(f);
    return true;
  });
  return r;
}

void forEachNatIso(const GFunctor& F, const GFunctor& G, const std::function<bool(const NatIso&)>& cb,
                   const GFunctor* vertical) {
  if (!sameGroupoid(F.dom, G.dom) || !sameGroupoid(F.cod, G.cod))
    throw GroupoidError("natural isomorphisms between functors with different endpoints");
  const FinGroupoid& D = *F.dom;
  const FinGroupoid& C = *F.cod;
  auto plans = planComponents(D);
  NatIso cur{F, G, std::vector<int>(idx(D.objects()), -1)};
  bool stop = false;
  std::function<void(std::size_t)> go = [&](std::size_t ci) {
    if (stop) return;
    if (ci == plans.size()) {
      if (!cb(cur)) stop = true;
      return;
    }
    const ComponentPlan& c = plans[ci];
    for (int a : C.hom(F.at(c.root), G.at(c.root))) {
      bool ok = true;
      for (std::size_t i = 0; i < c.members.size() && ok; ++i) {
        int t = c.tree[i];
        int comp = C.comp(G(t), C.comp(a, C.inv(F(t))));
        if (vertical && !vertical->cod->isIdentity((*vertical)(comp))) ok = false;
        cur.components[idx(c.members[i])] = comp;
      }
      for (std::size_t k = 0; k < c.morphisms.size() && ok; ++k) {
        int m = c.morphisms[k];
        if (C.comp(G(m), cur.components[idx(D.src(m))]) != C.comp(cur.components[idx(D.dst(m))], F(m))) ok = false;
      }
      if (ok) go(ci + 1);
      if (stop) return;
    }
  };
  go(0);
}

// ---------------------------------------------------------------- pullbacks

bool TribeSquare::commutes() const { return compose(right, top) == compose(bottom, left); }

int Pullback::objectOf(int x, int e) const {
  auto it = objIndex.find(static_cast<long long>(x) * pr2.cod->objects() + e);
  return it == objIndex.end() ? -1 : it->second;
}

int Pullback::morphismOf(int u, int v) const {
  auto it = morIndex.find(static_cast<long long>(u) * pr2.cod->morphisms() + v);
  return it == morIndex.end() ? -1 : it->second;
}

GFunctor Pullback::pair(const GFunctor& a, const GFunctor& b) const {
  GFunctor m{a.dom, g, {}, {}};
  for (int z = 0; z < a.dom->objects(); ++z) {
    int o = objectOf(a.at(z), b.at(z));
    if (o < 0) throw GroupoidError("cone does not commute");
    m.obj.push_back(o);
  }
  for (int f = 0; f < a.dom->morphisms(); ++f) {
    int o = morphismOf(a(f), b(f));
    if (o < 0) throw GroupoidError("cone does not commute");
    m.mor.push_back(o);
  }
  return m;
}

Pullback pullback(const GFunctor& f, const GFunctor& g) {
  if (!sameGroupoid(f.cod, g.cod)) throw GroupoidError("pullback of maps with different codomains");
  const FinGroupoid& X = *f.dom;
  const FinGroupoid& E = *g.dom;
  const FinGroupoid& B = *f.cod;
  std::vector<std::vector<int>> objsOver(idx(B.objects())), morsOver(idx(B.morphisms()));
  for (int e = 0; e < E.objects(); ++e) objsOver[idx(g.at(e))].push_back(e);
  for (int v = 0; v < E.morphisms(); ++v) morsOver[idx(g(v))].push_back(v);
  std::size_t nObj = 0, nMor = 0;
  for (int x = 0; x < X.objects(); ++x) nObj += objsOver[idx(f.at(x))].size();
  for (int u = 0; u < X.morphisms(); ++u) nMor += morsOver[idx(f(u))].size();
  checkCaps(nObj, nMor, "pullback");
  Pullback P;
  GroupoidBuilder b;
  for (int x = 0; x < X.objects(); ++x)
    for (int e : objsOver[idx(f.at(x))]) {
      P.objIndex[static_cast<long long>(x) * E.objects() + e] = b.addObject();
      P.objPair.emplace_back(x, e);
    }
  auto objOf = [&](int x, int e) { return P.objIndex.at(static_cast<long long>(x) * E.objects() + e); };
  for (int u = 0; u < X.morphisms(); ++u)
    for (int v : morsOver[idx(f(u))]) {
      int m = b.addMorphism(objOf(X.src(u), E.src(v)), objOf(X.dst(u), E.dst(v)));
      P.morIndex[static_cast<long long>(u) * E.morphisms() + v] = m;
      P.morPair.emplace_back(u, v);
    }
  auto morOf = [&](int u, int v) { return P.morIndex.at(static_cast<long long>(u) * E.morphisms() + v); };
  for (std::size_t o = 0; o < P.objPair.size(); ++o)
    b.setIdentity(static_cast<int>(o), morOf(X.id(P.objPair[o].first), E.id(P.objPair[o].second)));
  P.g = b.build(
      [&](int h, int k) {
        auto [u1, v1] = P.morPair[idx(k)];
        auto [u2, v2] = P.morPair[idx(h)];
        return morOf(X.comp(u2, u1), E.comp(v2, v1));
      },
      false, "pullback");
  P.pr1 = GFunctor{P.g, f.dom, {}, {}};
  P.pr2 = GFunctor{P.g, g.dom, {}, {}};
  for (auto [x, e] : P.objPair) {
    P.pr1.obj.push_back(x);
    P.pr2.obj.push_back(e);
  }
  for (auto [u, v] : P.morPair) {
    P.pr1.mor.push_back(u);
    P.pr2.mor.push_back(v);
  }
  return P;
}

Pullback product(const Grp& a, const Grp& b) { return pullback(toTerminal(a), toTerminal(b)); }

std::pair<FibrationMap, Pullback> pullbackFibration(const FibrationMap& p, const GFunctor& f) {
  Pullback P = pullback(f, p.map);
  const FinGroupoid& X = *f.dom;
  FibrationMap q{P.pr1, {}, {}};
  q.liftStart.assign(idx(P.g->objects()) + 1, 0);
  std::size_t total = 0;
  for (int o = 0; o < P.g->objects(); ++o) {
    q.liftStart[idx(o)] = total;
    total += X.out(P.objPair[idx(o)].first).size();
  }
  q.liftStart[idx(P.g->objects())] = total;
  q.lifts.assign(total, -1);
  for (int o = 0; o < P.g->objects(); ++o) {
    auto [x, e] = P.objPair[idx(o)];
    for (int beta : X.out(x)) q.lifts[q.liftStart[idx(o)] + idx(X.outPos(beta))] = P.morphismOf(beta, p.lift(e, f(beta)));
  }
  return {std::move(q), std::move(P)};
}

std::pair<FibrationMap, TribeSquare> pullbackAlongFibration(const FibrationMap& p, const GFunctor& f) {
  auto [q, P] = pullbackFibration(p, f);
  TribeSquare sq{P.pr2, P.pr1, p.map, f, true};
  return {std::move(q), std::move(sq)};
}

FibrationMap composeFibrations(const FibrationMap& q, const FibrationMap& p) {
  GFunctor f = compose(p.map, q.map);
  FibrationMap r{f, {}, {}};
  const FinGroupoid& X = *q.total();
  const FinGroupoid& B = *p.base();
  r.liftStart.assign(idx(X.objects()) + 1, 0);
  std::size_t total = 0;
  for (int x = 0; x < X.objects(); ++x) {
    r.liftStart[idx(x)] = total;
    total += B.out(f.at(x)).size();
  }
  r.liftStart[idx(X.objects())] = total;
  r.lifts.assign(total, -1);
  for (int x = 0; x < X.objects(); ++x)
    for (int beta : B.out(f.at(x))) r.lifts[r.liftStart[idx(x)] + idx(B.outPos(beta))] = q.lift(x, p.lift(q.map.at(x), beta));
  return r;
}

bool checkPullbackSquare(const TribeSquare& sq, const std::vector<Grp>& testers, std::string* why) {
  if (!sq.commutes()) {
    if (why) *why = "square does not commute";
    return false;
  }
  if (!sq.pullback) return true;
  for (const Grp& Z : testers) {
    bool ok = true;
    forEachFunctor(Z, sq.bottom.dom, nullptr, nullptr, [&](const GFunctor& a) {
      GFunctor ba = compose(sq.bottom, a);
      forEachFunctor(Z, sq.right.dom, &sq.right, &ba, [&](const GFunctor& b) {
        int count = 0;
        forEachFunctor(Z, sq.left.dom, &sq.left, &a, [&](const GFunctor& m) {
          if (compose(sq.top, m) == b) ++count;
          return count < 2;
        });
        if (count != 1) {
          ok = false;
          if (why) *why = "cone from " + Z->name + " has " + std::to_string(count) + " mediating maps";
        }
        return ok;
      });
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

Grp subgroupoid(const Grp& g, const std::vector<int>& objs, const std::function<bool(int)>& keep,
                GFunctor* inclusion) {
  const FinGroupoid& G = *g;
  std::vector<int> objPos(idx(G.objects()), -1), morPos(idx(G.morphisms()), -1);
  GroupoidBuilder b;
  std::vector<int> mors;
  for (int x : objs) objPos[idx(x)] = b.addObject();
  for (int x : objs)
    for (int m : G.out(x))
      if (objPos[idx(G.dst(m))] >= 0 && keep(m)) {
        morPos[idx(m)] = b.addMorphism(objPos[idx(x)], objPos[idx(G.dst(m))]);
        mors.push_back(m);
      }
  for (int x : objs) {
    if (morPos[idx(G.id(x))] < 0) throw GroupoidError("subgroupoid drops an identity");
    b.setIdentity(objPos[idx(x)], morPos[idx(G.id(x))]);
  }
  Grp sub = b.build([&](int h, int f) { return morPos[idx(G.comp(mors[idx(h)], mors[idx(f)]))]; }, false,
                    "sub(" + G.name + ")");
  if (inclusion) *inclusion = GFunctor{sub, g, objs, mors};
  return sub;
}

// ---------------------------------------------------------------- keys

std::size_t KeyIndex::Hash::operator()(const std::vector<int>& v) const {
  std::size_t h = v.size();
  for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

int KeyIndex::find(const std::vector<int>& key) const {
  auto it = map_.find(key);
  return it == map_.end() ? -1 : it->second;
}

int KeyIndex::insert(const std::vector<int>& key) {
  auto [it, fresh] = map_.emplace(key, static_cast<int>(keys_.size()));
  if (fresh) keys_.push_back(key);
  return it->second;
}

}  // namespace hott::grpd
