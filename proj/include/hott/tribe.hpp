#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hott/groupoid.hpp"

namespace hott::grpd {

// ---------------------------------------------------------------- path objects

/// Arrows: morphisms of E over identities. Padded: the same times a codiscrete
/// pair, an alternative factorization of the same diagonal.
enum class PathChoice { Arrows, Padded };

struct PathObject {
  PathChoice choice = PathChoice::Arrows;
  Grp P;
  GFunctor anodyne;          // E -> P, e to refl e
  FibrationMap boundary;     // P -> E x_B E
  Pullback pairs;            // E x_B E, pr1 = source side, pr2 = target side
  FibrationMap pairsFib;     // E x_B E -> E (first projection)
  FibrationMap pairsOverBase;  // E x_B E -> B
};

PathObject pathObjectFibered(const FibrationMap& p, PathChoice choice = PathChoice::Arrows);

struct Factorization {
  GFunctor anodyne;
  FibrationMap fibration;
};

/// Mapping path object factorization.
Factorization factorize(const GFunctor& f);

// ---------------------------------------------------------------- homotopies

std::vector<NatIso> homotopiesBetween(const GFunctor& f, const GFunctor& g);
/// True iff some natural iso exists (components vertical for `over` if given).
bool homotopic(const GFunctor& f, const GFunctor& g, const GFunctor* over = nullptr);

struct EquivalenceWitness {
  GFunctor inverse;
  NatIso unit;    // inverse after F => id
  NatIso counit;  // F after inverse => id
};

bool fullyFaithful(const GFunctor& f);
bool essentiallySurjective(const GFunctor& f);
/// Criterion as a pre-filter, then an explicit inverse whose unit and counit
/// are validated.
std::optional<EquivalenceWitness> equivalenceCheck(const GFunctor& f);
/// Exhaustive search over all functors back and all component families.
std::optional<EquivalenceWitness> equivalenceSearch(const GFunctor& f);
bool isAnodyne(const GFunctor& f);
/// Isomorphism of groupoids (component sizes and automorphism groups).
bool isomorphic(const Grp& a, const Grp& b);
/// Isomorphism of fibrations over the same base, up to an isomorphism of totals.
bool fibrationsIsomorphic(const FibrationMap& p, const FibrationMap& q);
/// Fiberwise homotopy equivalence: some map over the base is an equivalence.
bool fiberwiseEquivalent(const FibrationMap& p, const FibrationMap& q);

// ---------------------------------------------------------------- internal hom

struct InternalHom {
  Grp A, B, g;
  std::vector<GFunctor> functors;              // per object
  std::vector<std::vector<int>> components;    // per morphism
  KeyIndex functorKeys, isoKeys;
  int objectOf(const GFunctor& f) const;
  int morphismOf(int src, int dst, const std::vector<int>& comps) const;
  /// [A,B] x A -> B.
  Pullback evalDomain;
  GFunctor eval;
};

InternalHom internalHom(const Grp& a, const Grp& b);
/// Hom(X x A, B) against Hom(X, [A,B]) by explicit transpose.
bool checkExponential(const Grp& x, const InternalHom& h, std::string* why = nullptr);
/// Post-composition with f: A -> A' as a functor [X,A] -> [X,A'].
GFunctor postcompose(const InternalHom& from, const InternalHom& to, const GFunctor& f);

std::size_t hoHomClasses(const Grp& a, const Grp& b);

bool homotopyMonoCheck(const FibrationMap& p, PathChoice choice = PathChoice::Arrows);

// ---------------------------------------------------------------- dependent products

struct PiResult {
  FibrationMap p, q;   // p: E -> B, q: X -> E
  FibrationMap fib;    // Pi_p q -> B
  std::vector<std::vector<int>> fiberObjs, over;  // per base object / base morphism
  std::vector<int> posInFiber, posInOver;          // per E object / E morphism
  std::vector<int> objBase, morBase;
  std::vector<std::vector<int>> objData, morData;
  KeyIndex objKeys, morKeys;
  Pullback evalDomain;  // E x_B Pi, pr1 to E
  GFunctor eval;        // to X

  const Grp& g() const { return fib.map.dom; }
  int sectionObj(int o, int e) const;
  int sectionMor(int o, int v) const;
  int family(int m, int phi) const;
  int findObject(int b, const std::vector<int>& data) const;
  int findMorphism(int beta, int src, int dst, const std::vector<int>& data) const;
};

PiResult piAlongFibration(const FibrationMap& p, const FibrationMap& q);
/// Hom over B (Y, Pi) against Hom over E (p*Y, X), Y given by r: Y -> B.
bool checkPiAdjunction(const PiResult& pi, const GFunctor& r, std::string* why = nullptr,
                       std::size_t* count = nullptr);
/// Pi_p applied to g: X -> X' over E.
GFunctor piMap(const PiResult& from, const PiResult& to, const GFunctor& g);

/// Fibered internal hom Hom_C(X, Y) = Pi_x (X x_C Y -> X).
struct FiberHom {
  FibrationMap x, y;
  Pullback xy;
  PiResult pi;
  const FibrationMap& fib() const { return pi.fib; }
  int yObject(int o, int xobj) const;
  int yVertical(int o, int v) const;
  int yMorphism(int m, int xmor) const;
  /// Section over c from a rule on X's fiber; -1 if no such object.
  int encodeObject(int c, const std::function<int(int)>& onObj, const std::function<int(int)>& onMor) const;
  int encodeMorphism(int gamma, int src, int dst, const std::function<int(int)>& onMor) const;
};

FiberHom fiberHom(const FibrationMap& x, const FibrationMap& y);

// ---------------------------------------------------------------- objects of equivalences

/// Inputs of the object-of-equivalences construction in a slice over C.
struct HomSide {
  Grp C;
  FibrationMap hab, hba, haa, hbb;  // each over C
  /// Given L0 = HAB x_C HBA (objects (f, g)), the maps (f,g) to g.f and f.g.
  std::function<GFunctor(const Pullback&)> compL, compR;
  GFunctor idA, idB;  // C -> HAA, C -> HBB
};

struct EqData {
  PathObject pathA, pathB;
  std::pair<FibrationMap, Pullback> l0;    // HAB x_C HBA -> HAB
  std::pair<FibrationMap, Pullback> linv;  // over L0
  std::pair<FibrationMap, Pullback> rinv;  // over L0
  std::pair<FibrationMap, Pullback> eq;    // RInv x_HAB LInv, first projection to LInv
  FibrationMap toHab;                      // Eq -> HAB
  FibrationMap toBase;                     // Eq -> C
  FibrationMap linvToHab, rinvToHab;
};

EqData constructEq(const HomSide& side, PathChoice choice = PathChoice::Arrows);

struct EqObject {
  InternalHom hab, hba, haa, hbb;
  EqData data;
  const Grp& g() const { return data.toHab.total(); }
  const FibrationMap& projection() const { return data.toHab; }
};

EqObject eqObject(const Grp& a, const Grp& b, PathChoice choice = PathChoice::Arrows);

/// Equivalence data (f, g, h, H, K) between X x A and X x B over X, counted
/// directly from functor and natural-iso enumeration.
std::size_t countEquivalenceData(const Grp& x, const Grp& a, const Grp& b);

struct FiberedEq {
  Pullback bb;                 // B x B
  FibrationMap x, y;           // pr1*p and pr2*p over B x B
  FiberHom hxy, hyx, hxx, hyy;
  EqData data;
  GFunctor delta;              // B -> Eq
};

FiberedEq eqOfFibration(const FibrationMap& p, PathChoice choice = PathChoice::Arrows);
bool univalenceCheck(const FibrationMap& p, PathChoice choice = PathChoice::Arrows);

// ---------------------------------------------------------------- universes and classifiers

struct SetsUniverse {
  FibrationMap el;                  // El -> U
  std::vector<std::vector<int>> perms;  // per base morphism: the bijection as a table
  std::vector<int> card;            // per base object
};

SetsUniverse setsUniverse(int k);

struct Omega {
  FibrationMap source;       // p
  PathObject path;
  FibrationMap pairsOverBase;
  PiResult pi;               // Pi over E x_B E of the boundary
  FibrationMap pr;           // Omega -> B
  FibrationMap top;          // El(Omega) -> Omega
  Pullback topPullback;
};

Omega omegaClassifier(const FibrationMap& p);

struct Classification {
  std::vector<GFunctor> names;  // every chi into Omega classifying f, homotopy-unique if univalent
};

/// Names chi: base(f) -> total(top) with f equivalent over its base to chi*top.
/// Empty when f is not a homotopy mono or not classified.
std::optional<Classification> classifyHomotopyMono(const FibrationMap& top, const FibrationMap& f);

struct ResizingResult {
  GFunctor comparison;   // Omega_k -> Omega_{k+1}
  bool homotopyCommutes = false;
  bool equivalence = false;
};

/// Comparison of the proposition classifiers of setsUniverse(k) and setsUniverse(k+1).
ResizingResult resizingCheck(int k);

}  // namespace hott::grpd
