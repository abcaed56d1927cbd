#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hott {

struct TermNode;

/// Immutable, shared core term. Variables are de Bruijn indices, so
/// structural equality of two terms is alpha-equality.
using Term = std::shared_ptr<const TermNode>;

enum class Axiom { Funext, Ua, Resize };

namespace term {
struct Var { std::size_t index; };
/// Reference to a checked top-level definition.
struct Const { std::string name; };
struct Pi { Term dom, cod; };          // cod binds one variable
struct Lam { Term body; };             // body binds one variable
struct App { Term fn, arg; };
struct Sigma { Term fst, snd; };       // snd binds one variable
struct Pair { Term a, b; };
struct Fst { Term p; };
struct Snd { Term p; };
struct IdTy { Term ty, lhs, rhs; };
struct Refl { Term t; };
/// Path induction. The motive binds (x, y, p) and is a type; the base binds
/// one variable z and inhabits motive[z, z, refl z].
struct J { Term motive, base, lhs, rhs, path; };
struct Univ { int level; };
struct El { Term code; };
struct CodePi { Term dom, cod; };      // cod binds one variable of type El dom
struct CodeSigma { Term dom, cod; };
struct CodeId { Term code, lhs, rhs; };
struct CodeUniv { int level; };
struct Lift { Term code; };
struct Ax { Axiom kind; int level; };
}  // namespace term

struct TermNode {
  using Variant = std::variant<term::Var, term::Const, term::Pi, term::Lam, term::App,
                               term::Sigma, term::Pair, term::Fst, term::Snd, term::IdTy,
                               term::Refl, term::J, term::Univ, term::El, term::CodePi,
                               term::CodeSigma, term::CodeId, term::CodeUniv, term::Lift,
                               term::Ax>;
  Variant node;
};

/// Raised for ill-scoped or otherwise malformed terms.
class MalformedTerm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace mk {
Term var(std::size_t i);
Term constant(std::string name);
Term pi(Term dom, Term cod);
Term lam(Term body);
Term app(Term fn, Term arg);
Term app(Term fn, std::initializer_list<Term> args);
Term sigma(Term fst, Term snd);
Term pair(Term a, Term b);
Term fst(Term p);
Term snd(Term p);
Term id(Term ty, Term lhs, Term rhs);
Term refl(Term t);
Term j(Term motive, Term base, Term lhs, Term rhs, Term path);
Term univ(int level);
Term el(Term code);
Term codePi(Term dom, Term cod);
Term codeSigma(Term dom, Term cod);
Term codeId(Term code, Term lhs, Term rhs);
Term codeUniv(int level);
Term lift(Term code);
Term axiom(Axiom kind, int level);
}  // namespace mk

template <class T>
const T* as(const Term& t) {
  return std::get_if<T>(&t->node);
}

/// Alpha-equality (structural equality of nameless terms).
bool equal(const Term& a, const Term& b);

/// Move free indices >= cutoff by amount. Throws MalformedTerm if a free
/// index would become negative.
Term shift(const Term& t, long amount, std::size_t cutoff = 0);

/// Replace Var(target) by s (s is scoped at the depth of the target),
/// decrementing the free indices above target.
Term substitute(const Term& t, std::size_t target, const Term& s);

/// Substitute for the innermost n binders at once: vals[0] replaces the
/// innermost variable (index 0).
Term instantiate(const Term& t, const std::vector<Term>& vals);

/// Largest free index + 1 (0 for closed terms).
std::size_t freeBound(const Term& t);

/// Names of the constants a term mentions.
std::vector<std::string> constantsOf(const Term& t);

/// Number of nodes.
std::size_t size(const Term& t);

/// Constructor-style debugging form, e.g. "Lam(App(Var 1, Var 0))".
std::string show(const Term& t);

const char* axiomName(Axiom a);

}  // namespace hott
