#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hott::grpd {

/// Invalid tables, endpoint mismatches, non-fibrations.
class GroupoidError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction would exceed the configured size caps.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Limits {
  std::size_t maxObjects = 20000;
  std::size_t maxMorphisms = 400000;
  /// Process-wide caps; HOTT_MAX_OBJECTS overrides the object cap at first use.
  static Limits& current();
};

struct Arrow {
  int src = 0;
  int dst = 0;
};

class FinGroupoid;
using Grp = std::shared_ptr<const FinGroupoid>;

/// Skeleton-free finite groupoid: objects 0..n-1, morphisms 0..m-1 with dense
/// composition over composable pairs.
class FinGroupoid {
 public:
  int objects() const { return n_; }
  int morphisms() const { return static_cast<int>(arrows_.size()); }
  int src(int m) const { return arrows_[static_cast<std::size_t>(m)].src; }
  int dst(int m) const { return arrows_[static_cast<std::size_t>(m)].dst; }
  int id(int x) const { return ident_[static_cast<std::size_t>(x)]; }
  int inv(int m) const { return inverse_[static_cast<std::size_t>(m)]; }
  /// g after f; throws unless dst f = src g.
  int comp(int g, int f) const;
  /// Morphisms out of x, sorted by target then id.
  const std::vector<int>& out(int x) const { return out_[static_cast<std::size_t>(x)]; }
  std::span<const int> hom(int a, int b) const;
  bool isIdentity(int m) const { return ident_[static_cast<std::size_t>(src(m))] == m; }
  /// Position of m inside out(src m).
  int outPos(int m) const { return outPos_[static_cast<std::size_t>(m)]; }

  /// Exhaustive check of the groupoid laws; on failure fills `why`.
  bool validate(std::string* why = nullptr) const;
  /// Connected component index per object, numbered by first occurrence.
  const std::vector<int>& components() const { return component_; }
  int componentCount() const { return componentCount_; }
  bool isDiscrete() const { return morphisms() == objects(); }

  std::string name;

 private:
  friend class GroupoidBuilder;
  int n_ = 0;
  std::vector<Arrow> arrows_;
  std::vector<int> ident_, inverse_, outPos_;
  std::vector<std::vector<int>> out_;
  std::vector<std::size_t> compStart_;
  std::vector<int> compose_;
  std::vector<int> component_;
  int componentCount_ = 0;
};

/// Accumulates objects and morphisms, then fills composition from a callback.
class GroupoidBuilder {
 public:
  int addObject();
  int addObjects(int count);
  int addMorphism(int src, int dst);
  void setIdentity(int x, int m);
  int objects() const { return n_; }
  int morphisms() const { return static_cast<int>(arrows_.size()); }
  /// compose(g, f) must return the id of g after f. Inverses are found by
  /// search. With `check`, the result is validated and bad tables throw.
  Grp build(const std::function<int(int g, int f)>& compose, bool check = false, std::string name = {});

 private:
  int n_ = 0;
  std::vector<Arrow> arrows_;
  std::vector<int> ident_;
};

/// Builds a groupoid from raw tables (triples g, f, g after f). Validates.
Grp fromTables(int objects, const std::vector<Arrow>& arrows, const std::vector<int>& identities,
               const std::vector<std::array<int, 3>>& compose, std::string name = {});

bool sameGroupoid(const Grp& a, const Grp& b);

Grp terminal();
Grp emptyGroupoid();
Grp discrete(int n);
/// n objects with exactly one morphism between any two.
Grp codiscrete(int n);
/// One object with automorphism group Z/k.
Grp cyclic(int k);

struct GFunctor {
  Grp dom, cod;
  std::vector<int> obj, mor;
  int operator()(int m) const { return mor[static_cast<std::size_t>(m)]; }
  int at(int x) const { return obj[static_cast<std::size_t>(x)]; }
};

bool operator==(const GFunctor& a, const GFunctor& b);
bool validateFunctor(const GFunctor& f, std::string* why = nullptr);
GFunctor identityFunctor(const Grp& g);
/// g after f.
GFunctor compose(const GFunctor& g, const GFunctor& f);
GFunctor constantFunctor(const Grp& dom, const Grp& cod, int object);
GFunctor toTerminal(const Grp& g);
bool injectiveOnObjects(const GFunctor& f);
bool bijective(const GFunctor& f);

struct NatIso {
  GFunctor source, target;
  std::vector<int> components;
};

bool validateNatIso(const NatIso& h, std::string* why = nullptr);
NatIso identityNatIso(const GFunctor& f);

/// Isofibration with a chosen lift for every object and every base morphism
/// out of its image.
struct FibrationMap {
  GFunctor map;
  std::vector<std::size_t> liftStart;
  std::vector<int> lifts;
  const Grp& total() const { return map.dom; }
  const Grp& base() const { return map.cod; }
  /// Chosen lift of beta (src beta = p e) starting at e.
  int lift(int e, int beta) const;
};

/// Builds the lift table by search; nullopt if f is not an isofibration.
std::optional<FibrationMap> tryFibration(const GFunctor& f);
FibrationMap makeFibration(const GFunctor& f);
bool validateFibration(const FibrationMap& p, std::string* why = nullptr);
FibrationMap identityFibration(const Grp& g);
FibrationMap terminalFibration(const Grp& g);
/// Objects of p's total lying over b.
std::vector<int> fiberObjects(const FibrationMap& p, int b);

/// Enumerates functors S: dom -> X with q after S = over, in lexicographic
/// order of the spanning-tree choices. `q` and `over` may both be null for
/// plain functors. The callback returns false to stop.
void forEachFunctor(const Grp& dom, const Grp& X, const GFunctor* q, const GFunctor* over,
                    const std::function<bool(const GFunctor&)>& cb);
std::vector<GFunctor> allFunctors(const Grp& dom, const Grp& cod);
std::vector<GFunctor> liftsOver(const Grp& dom, const GFunctor& q, const GFunctor& over);

/// Natural isos F => G. With `vertical`, components must map to identities
/// under it (homotopies over a base).
void forEachNatIso(const GFunctor& f, const GFunctor& g, const std::function<bool(const NatIso&)>& cb,
                   const GFunctor* vertical = nullptr);

struct TribeSquare {
  GFunctor top, left, right, bottom;  // top: P->E, left: P->X, right: E->B, bottom: X->B
  bool pullback = false;
  bool commutes() const;
};

/// Strict pullback X x_B E of f: X -> B and g: E -> B.
struct Pullback {
  Grp g;
  GFunctor pr1, pr2;
  std::vector<std::pair<int, int>> objPair, morPair;
  int objectOf(int x, int e) const;
  int morphismOf(int u, int v) const;
  /// Mediating functor Z -> P from a cone (a: Z -> X, b: Z -> E).
  GFunctor pair(const GFunctor& a, const GFunctor& b) const;

  std::unordered_map<long long, int> objIndex, morIndex;
};

Pullback pullback(const GFunctor& f, const GFunctor& g);
Pullback product(const Grp& a, const Grp& b);

/// Pulls a fibration back along f; the new projection carries a lift table
/// built from p's.
std::pair<FibrationMap, TribeSquare> pullbackAlongFibration(const FibrationMap& p, const GFunctor& f);
/// Same, keeping the pullback data for mediating maps.
std::pair<FibrationMap, Pullback> pullbackFibration(const FibrationMap& p, const GFunctor& f);

/// Composite of fibrations, lifting through both tables.
FibrationMap composeFibrations(const FibrationMap& q, const FibrationMap& p);

/// Universal property of a flagged square against every cone from `testers`.
bool checkPullbackSquare(const TribeSquare& sq, const std::vector<Grp>& testers, std::string* why = nullptr);

/// Interns integer keys to dense ids.
class KeyIndex {
 public:
  int find(const std::vector<int>& key) const;
  int insert(const std::vector<int>& key);  // returns existing or new id
  std::size_t size() const { return keys_.size(); }
  const std::vector<int>& key(int id) const { return keys_[static_cast<std::size_t>(id)]; }

 private:
  struct Hash {
    std::size_t operator()(const std::vector<int>& v) const;
  };
  std::unordered_map<std::vector<int>, int, Hash> map_;
  std::vector<std::vector<int>> keys_;
};

/// Subgroupoid on `objs` keeping the morphisms accepted by `keep` (which must be
/// closed under composition and inverses). Fills the inclusion if asked.
Grp subgroupoid(const Grp& g, const std::vector<int>& objs, const std::function<bool(int)>& keep,
                GFunctor* inclusion = nullptr);

void checkCaps(std::size_t objects, std::size_t morphisms, const char* what);

}  // namespace hott::grpd
