// Types of the axiom constants. They are written as ordinary surface text,
// checked in a private signature and stored as closed normal forms, so the
// kernel never depends on user-visible definitions.
#include <map>
#include <mutex>

#include "hott/checker.hpp"

namespace hott::detail {

namespace {

std::string instantiateLevel(std::string text, int n) {
  auto replaceAll = [&](const std::string& from, const std::string& to) {
    for (std::size_t pos = 0; (pos = text.find(from, pos)) != std::string::npos; pos += to.size())
      text.replace(pos, from.size(), to);
  };
  replaceAll("{N2}", std::to_string(n + 2));
  replaceAll("{N1}", std::to_string(n + 1));
  replaceAll("{N}", std::to_string(n));
  return text;
}

const char* kEquivalences = R"(
def comp{N} : Pi (A B C : U{N}) (g : El B -> El C) (f : El A -> El B) -> El A -> El C :=
  \A B C g f x. g (f x)
def idfun{N} : Pi (A : U{N}) -> El A -> El A := \A x. x
def LInv{N} : Pi (A B : U{N}) (f : El A -> El B) -> U{N} :=
  \A B f. code-sg (g : code-pi (_ : B) -> A) . code-id (code-pi (_ : A) -> A) (comp{N} A B A g f) (idfun{N} A)
def RInv{N} : Pi (A B : U{N}) (f : El A -> El B) -> U{N} :=
  \A B f. code-sg (h : code-pi (_ : B) -> A) . code-id (code-pi (_ : B) -> B) (comp{N} B A B f h) (idfun{N} B)
def isEquiv{N} : Pi (A B : U{N}) (f : El A -> El B) -> U{N} :=
  \A B f. code-sg (_ : LInv{N} A B f) . RInv{N} A B f
def Equiv{N} : Pi (A B : U{N}) -> U{N} := \A B. code-sg (f : code-pi (_ : A) -> B) . isEquiv{N} A B f
def idEquiv{N} : Pi (A : U{N}) -> El (Equiv{N} A A) :=
  \A. (idfun{N} A, (idfun{N} A, refl (idfun{N} A)), (idfun{N} A, refl (idfun{N} A)))
def idToEquiv{N} : Pi (A B : U{N}) (p : Id U{N} A B) -> El (Equiv{N} A B) :=
  \A B p. J (\X Y q. El (Equiv{N} X Y)) (\Z. idEquiv{N} Z) A B p
def isProp{N} : Pi (A : U{N}) -> U{N} := \A. code-pi (x : A) -> code-pi (y : A) -> code-id A x y
)";

const char* kProp = R"(
def Prop{N} : U{N1} := code-sg (A : code-U {N}) . lift (isProp{N} A)
)";

const char* kComparison = R"(
def propComparison{N} : El (lift Prop{N}) -> El Prop{N1} := \P. (lift P.1, P.2)
)";


}  // namespace

std::map<std::pair<int, int>, Term> elaborateAxiomTypes(int height) {
  static std::mutex mu;
  static std::map<int, std::map<std::pair<int, int>, Term>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(height);
  if (it != cache.end()) return it->second;

  Flags flags;
  flags.towerHeight = height;
  flags.uaEnabled = false;
  Signature sig(flags, Signature::Bare{});
  auto load = [&](const char* text, int n) {
    Report r = checkSource(sig, instantiateLevel(text, n), "<kernel prelude>", true);
    if (!r.pass()) throw std::logic_error("kernel prelude failed: " + r.entries.back().error);
  };
  for (int n = 0; n < height; ++n) load(kEquivalences, n);
  for (int n = 0; n + 1 < height; ++n) load(kProp, n);
  for (int n = 0; n + 2 < height; ++n) load(kComparison, n);

  std::map<std::pair<int, int>, Term> out;
  auto closedType = [&](const std::string& text) {
    Term t = resolveTerm(parseTerm(text, "<kernel prelude>"), sig.names());
    checkType(sig, {}, t);
    return normalizeTypeIn(sig, {}, t);
  };
  for (int n = 0; n < height; ++n) {
    out[{static_cast<int>(Axiom::Funext), n}] = closedType(instantiateLevel(
        "Pi (A : U{N}) (B : El A -> U{N}) (f g : Pi (x : El A) -> El (B x)) "
        "(h : Pi (x : El A) -> Id (El (B x)) (f x) (g x)) -> Id (Pi (x : El A) -> El (B x)) f g",
        n));
  }
  for (int n = 0; n + 1 < height; ++n) {
    out[{static_cast<int>(Axiom::Ua), n}] = closedType(instantiateLevel(
        "Pi (A B : U{N}) -> El (isEquiv{N1} (code-id (code-U {N}) A B) (lift (Equiv{N} A B)) "
        "(\\p. idToEquiv{N} A B p))",
        n));
  }
  for (int n = 0; n + 2 < height; ++n) {
    out[{static_cast<int>(Axiom::Resize), n}] = closedType(
        instantiateLevel("El (isEquiv{N2} (lift Prop{N}) Prop{N1} propComparison{N})", n));
  }
  cache[height] = out;
  return out;
}

}  // namespace hott::detail
