#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hott/nbe.hpp"
#include "hott/parser.hpp"
#include "hott/syntax.hpp"

namespace hott {

/// Types of the bound variables, outermost first.
using Context = std::vector<Term>;

struct Flags {
  int towerHeight = 3;
  bool uaEnabled = true;
  std::set<int> uaLevels;  // empty: every level that fits in the tower
  bool resizing = false;

  bool uaAt(int level) const { return uaEnabled && (uaLevels.empty() || uaLevels.count(level) > 0); }
};

enum class ErrorKind {
  Mismatch, Unbound, LevelOverflow, AxiomDisabled, NotAType, NotATerm, CannotInfer, Duplicate,
  Malformed, Syntax
};

const char* errorKindName(ErrorKind k);

class TypeError : public std::runtime_error {
 public:
  TypeError(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Checked globals plus feature flags. Copies share the global table.
class Signature {
 public:
  explicit Signature(Flags flags = {});
  struct Bare {};
  /// A signature without axiom types (used to elaborate the axioms themselves).
  Signature(Flags flags, Bare);
  const Flags& flags() const { return flags_; }
  Globals& globals() { return *globals_; }
  const Globals& globals() const { return *globals_; }
  std::set<std::string> names() const;
  bool has(const std::string& name) const { return globals_->find(name) != nullptr; }
  /// Adds a checked definition (no checking performed here).
  void add(const std::string& name, const Term& type, const Term& body);
  /// Closed normal form of an axiom's type; throws if the level does not fit.
  Term axiomType(Axiom a, int level) const;
  /// Declarations that failed to check; later references report the cause.
  void markFailed(const std::string& name, ErrorKind kind);
  std::optional<ErrorKind> failedKind(const std::string& name) const;
  std::set<std::string> failedNames() const;

 private:
  Flags flags_;
  std::shared_ptr<Globals> globals_;
  std::shared_ptr<std::map<std::pair<int, int>, Term>> axiomTerms_;
  std::shared_ptr<std::map<std::string, ErrorKind>> failed_;
};

Term infer(const Signature& sig, const Context& ctx, const Term& t);
void check(const Signature& sig, const Context& ctx, const Term& t, const Term& ty);
void checkType(const Signature& sig, const Context& ctx, const Term& ty);

/// Normal forms with respect to a signature (constants unfolded).
Term normalizeIn(const Signature& sig, const Context& ctx, const Term& t, const Term& ty);
Term normalizeTypeIn(const Signature& sig, const Context& ctx, const Term& ty);
bool convertibleIn(const Signature& sig, const Context& ctx, const Term& a, const Term& b, const Term& ty);

struct DeclResult {
  std::string name;
  bool pass = false;
  std::string error;
  std::optional<ErrorKind> errorKind;
  double elapsedMs = 0;
  std::size_t normalFormSize = 0;
  SourceSpan span;
};

struct Report {
  std::vector<DeclResult> entries;
  bool pass() const;
  std::size_t failures() const;
};

/// Check declarations in order, extending the signature with each passing one.
/// With `strict`, stop at the first failure.
Report checkModule(Signature& sig, const std::vector<ResolvedDecl>& decls, bool strict = false);

/// Parse, resolve against the current signature, and check a source text.
/// Parse and resolve errors become a single failing entry.
Report checkSource(Signature& sig, const std::string& source, const std::string& file, bool strict = false);

}  // namespace hott
