#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hott/syntax.hpp"

namespace hott {

struct ValueNode;
using Value = std::shared_ptr<const ValueNode>;

struct Globals;

struct EnvNode;
/// Persistent environment; index 0 is the innermost entry.
struct Env {
  std::shared_ptr<const EnvNode> head;
  std::size_t size = 0;
  const Globals* globals = nullptr;

  Env extend(Value v) const;
  const Value& lookup(std::size_t index) const;
};

struct EnvNode {
  Value value;
  std::shared_ptr<const EnvNode> next;
};

/// A term body waiting for `arity` more values (innermost last in the
/// argument list), or a native function.
struct Closure {
  Env env;
  Term body;
  std::function<Value(const std::vector<Value>&)> native;

  Value apply(const std::vector<Value>& args) const;
  Value apply(const Value& arg) const { return apply(std::vector<Value>{arg}); }
};

struct Head {
  bool isVar = true;
  std::size_t level = 0;     // de Bruijn level when isVar
  Axiom axiom = Axiom::Funext;
  int axiomLevel = 0;
};

struct Frame {
  enum class Kind { App, Fst, Snd, J } kind;
  Value arg;                 // App
  Closure motive, base;      // J: motive takes (x, y, p), base takes z
  Value lhs, rhs;            // J
};

struct Neutral {
  Head head;
  Value headType;            // may be null when unknown; readback then is untyped
  std::vector<Frame> spine;
};

namespace val {
struct Lam { Closure body; };
struct Pair { Value a, b; };
struct Refl { Value t; };
struct Pi { Value dom; Closure cod; };
struct Sigma { Value fst; Closure snd; };
struct Id { Value ty, lhs, rhs; };
struct Univ { int level; };
struct El { Value code; };  // code is neutral
struct CPi { Value dom; Closure cod; };
struct CSigma { Value dom; Closure cod; };
struct CId { Value code, lhs, rhs; };
struct CUniv { int level; };
struct Lift { Value code; };
struct Ne { Neutral ne; };
}  // namespace val

struct ValueNode {
  std::variant<val::Lam, val::Pair, val::Refl, val::Pi, val::Sigma, val::Id, val::Univ, val::El,
               val::CPi, val::CSigma, val::CId, val::CUniv, val::Lift, val::Ne>
      node;
};

template <class T>
const T* vas(const Value& v) {
  return std::get_if<T>(&v->node);
}

struct GlobalEntry {
  Term type;
  Term body;
  Value typeValue;
  Value bodyValue;
};

/// Checked top-level constants and the types of axiom constants.
struct Globals {
  std::map<std::string, GlobalEntry> defs;
  std::map<std::pair<int, int>, Value> axiomTypes;  // (axiom kind, level) -> type
  const GlobalEntry* find(const std::string& name) const;
  Value axiomType(Axiom a, int level) const;
};

/// Internal invariant violation (ill-scoped evaluation, bad eliminations).
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace vmk {
Value make(decltype(ValueNode::node) n);
Value univ(int level);
Value var(std::size_t level, Value type);
Value pi(Value dom, std::function<Value(const Value&)> cod);
Value sigma(Value dom, std::function<Value(const Value&)> cod);
Value id(Value ty, Value lhs, Value rhs);
}  // namespace vmk

Value evaluate(const Env& env, const Term& t);
Value evaluate(const Globals& g, const Term& t);

Value vApp(const Value& f, const Value& a);
Value vFst(const Value& p);
Value vSnd(const Value& p);
Value vEl(const Value& code);
Value vJ(const Closure& motive, const Closure& base, const Value& lhs, const Value& rhs,
         const Value& path);

/// Type-directed readback: beta-normal, eta-long at Pi. A null type falls
/// back to structural readback.
Term readback(std::size_t depth, const Value& v, const Value& type);
Term readbackType(std::size_t depth, const Value& ty);
Term readbackUntyped(std::size_t depth, const Value& v);

bool convertible(std::size_t depth, const Value& a, const Value& b, const Value& type);
bool convertibleTypes(std::size_t depth, const Value& a, const Value& b);

/// Closed-term normalization helpers.
Term normalize(const Globals& g, const Term& t, const Term& type);
Term normalizeType(const Globals& g, const Term& ty);
Term normalizeUntyped(const Globals& g, const Term& t);

}  // namespace hott
