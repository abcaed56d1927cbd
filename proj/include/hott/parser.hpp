#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hott/syntax.hpp"

namespace hott {

struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;
  int endLine = 1;
  int endColumn = 1;
  std::string str() const;
};

/// Any error tied to a location in a source file.
class SourceError : public std::runtime_error {
 public:
  SourceError(const std::string& kind, const std::string& msg, SourceSpan span);
  const SourceSpan& span() const { return span_; }
  const std::string& kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string kind_;
  std::string detail_;
  SourceSpan span_;
};

class LexError : public SourceError {
 public:
  LexError(const std::string& msg, SourceSpan span) : SourceError("lexical error", msg, span) {}
};

class ParseError : public SourceError {
 public:
  ParseError(const std::string& msg, SourceSpan span, std::set<std::string> expected);
  const std::set<std::string>& expected() const { return expected_; }

 private:
  std::set<std::string> expected_;
};

class ResolveError : public SourceError {
 public:
  ResolveError(const std::string& kind, const std::string& msg, SourceSpan span)
      : SourceError(kind, msg, span) {}
};

struct SurfaceTerm;
using STerm = std::shared_ptr<const SurfaceTerm>;

struct SBinder {
  std::vector<std::string> names;
  STerm type;
  SourceSpan span;
};

struct SurfaceTerm {
  enum class Kind {
    Ident, Pi, Sg, Arrow, Lam, App, Pair, Fst, Snd, Id, Refl, J, Univ, El, Lift,
    CodePi, CodeSg, CodeId, CodeUniv, Funext, Ua, Resize
  };
  Kind kind;
  std::string name;               // Ident
  std::vector<SBinder> binders;   // Pi, Sg, CodePi, CodeSg
  std::vector<std::string> params;  // Lam
  std::vector<STerm> args;        // children in source order
  int level = 0;
  SourceSpan span;
};

struct SurfaceDecl {
  std::string name;
  std::optional<STerm> annotation;
  STerm body;
  SourceSpan span;
};

struct ResolvedDecl {
  std::string name;
  std::optional<Term> type;
  Term body;
  SourceSpan span;
};

std::vector<SurfaceDecl> parseModule(const std::string& source, const std::string& file = "<input>");

/// Parse a single term (used by tests and the printer roundtrip).
STerm parseTerm(const std::string& source, const std::string& file = "<input>");

/// Resolve names of a module. `globals` lists names already defined
/// (e.g. by earlier files); they and the module's own earlier definitions
/// become Const references.
std::vector<ResolvedDecl> resolveNames(const std::vector<SurfaceDecl>& decls,
                                       const std::set<std::string>& globals = {});

/// Resolve one term with `scope` as bound variables (innermost last).
Term resolveTerm(const STerm& t, const std::set<std::string>& globals,
                 const std::vector<std::string>& scope = {});

/// Reparseable surface rendering. `scope` names the free variables
/// (innermost last); bound variables get fresh names that avoid `reserved`.
std::string printTerm(const Term& t, const std::vector<std::string>& scope = {},
                      const std::set<std::string>& reserved = {});

std::string readFile(const std::string& path);

}  // namespace hott
