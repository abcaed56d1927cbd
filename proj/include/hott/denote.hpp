#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hott/checker.hpp"
#include "hott/corpus.hpp"
#include "hott/tribe.hpp"

namespace hott::denote {

using grpd::GFunctor;
using grpd::Grp;

/// The construct lies outside the interpreted fragment.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An axiom's type has an empty fiber at the chosen universe bound.
class WitnessNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict section of a family over X: obj[x] lies in the fiber over x and
/// mor[g] : F(g)(obj[src g]) -> obj[dst g] in the fiber over dst g.
struct Section {
  std::vector<int> obj, mor;
  bool operator==(const Section&) const = default;
};

struct FamilyNode;

/// Split family of groupoids over `base`: a fiber per object and a strictly
/// functorial action per morphism. Reindexing only composes the index maps.
struct Family {
  std::shared_ptr<const FamilyNode> node;
  Grp base;
  std::shared_ptr<const std::vector<int>> objMap, morMap;  // null: identity

  int o(int x) const { return objMap ? (*objMap)[static_cast<std::size_t>(x)] : x; }
  int m(int g) const { return morMap ? (*morMap)[static_cast<std::size_t>(g)] : g; }
  const Grp& fiber(int x) const;
  const GFunctor& action(int g) const;
};

/// Grothendieck construction of a family: objects (x, a), morphisms
/// (g, alpha) with alpha : F(g)a -> a'.
struct Integral {
  Grp g;
  GFunctor proj;
  std::vector<int> objStart, morStart;
  std::vector<std::pair<int, int>> objPair, morPair;
  int objectOf(int x, int a) const { return objStart[static_cast<std::size_t>(x)] + a; }
  int morphismOf(int g0, int alpha) const { return morStart[static_cast<std::size_t>(g0)] + alpha; }
};

Integral integral(const Family& f);

struct CtxNode;
using Ctx = std::shared_ptr<const CtxNode>;

/// Semantic context: the empty context is the point, an extension is the
/// Grothendieck construction of the new type's family.
struct CtxNode {
  Ctx parent;
  Family fam;  // over parent->g
  Integral ext;
  Grp g;
  std::size_t depth = 0;
};

struct PiFiber {
  Family restricted;  // B along a -> (x, a)
  Integral integ;
  std::vector<Section> sections;
  grpd::KeyIndex sectionIndex;        // keyed by functor tables into integ
  std::vector<std::vector<int>> isos;  // components as integ morphisms
  grpd::KeyIndex isoIndex;
};

struct SigmaFiber {
  Family restricted;
  Integral integ;
};

enum class FamilyKind { Universe, El, Pi, Sigma, Id };

struct FamilyNode {
  FamilyKind kind = FamilyKind::Universe;
  Grp base;
  std::vector<Grp> fibers;
  std::vector<GFunctor> actions;
  // Pi and Sigma: domain over base, its extension, codomain over the extension
  Family dom;
  Ctx ext;
  Family cod;
  std::vector<PiFiber> pi;
  std::vector<SigmaFiber> sigma;
  std::vector<std::vector<int>> homs;  // Id: fiber object i is homs[x][i]
};

Family reindex(const Family& f, const GFunctor& along);
Section reindex(const Section& s, const GFunctor& along);
/// Same fibers and the same action tables.
bool sameFamily(const Family& a, const Family& b);
/// Functoriality and endpoint conditions of a section.
bool validSection(const Family& f, const Section& s, std::string* why = nullptr);

struct Closure;
/// A denoted term: a materialized section or a lazy lambda.
struct Value {
  std::shared_ptr<const Section> sec;
  std::shared_ptr<const Closure> clo;
};
using Env = std::vector<Value>;  // outermost first, like Context

struct Denotation {
  Ctx context;      // the declaration's Pi-telescope
  Context telescope;
  Family type;      // the remaining type over the telescope
  Section section;
};

/// Interpretation of checked terms into the groupoid model with universe
/// U_k = setsUniverse(k).
class Model {
 public:
  Model(const Signature& sig, int k);
  ~Model();
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  int bound() const;
  const grpd::SetsUniverse& universe() const;
  Ctx empty() const;
  Ctx context(const Context& ctx);
  Family type(const Context& ctx, const Term& ty);
  /// Section of type(ctx, ty) denoted by t.
  Section term(const Context& ctx, const Term& t, const Term& ty);
  /// Curried denotation: the telescope becomes the context.
  Denotation declaration(const std::string& name);
  /// Witness for a level-0 axiom over the point.
  Section axiomWitness(Axiom kind, int level);

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

enum class DeclStatus { Ok, Unsupported, WitnessNotFound, ResourceCap, Error };
const char* declStatusName(DeclStatus s);

struct DeclReport {
  std::string name;
  DeclStatus status = DeclStatus::Error;
  std::string message;
  int telescope = 0;
  int contextObjects = 0, contextMorphisms = 0;
  Section section;
  double elapsedMs = 0;
};

DeclReport denoteDecl(Model& model, const std::string& name);

/// El(Equiv A B) over the pair (n, m) of U_k x U_k against eqObject(n, m):
/// some functor between them passes equivalenceCheck.
grpd::CheckResult equivDenotationCheck(const Signature& sig, int n, int m, int k);
/// The denotation of El over Univ 0 is a univalent fibration.
grpd::CheckResult univalenceCoherence(const Signature& sig, int k);

}  // namespace hott::denote
