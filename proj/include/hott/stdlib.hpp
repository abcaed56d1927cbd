#pragma once

#include <string>
#include <vector>

#include "hott/checker.hpp"

namespace hott {

struct TheoremEntry {
  std::string tag;
  std::string file;
  std::vector<std::string> names;
  bool required = true;
};

struct StdlibManifest {
  std::string dir;
  std::vector<std::string> files;  // relative to dir, in checking order
  std::vector<TheoremEntry> theorems;
};

StdlibManifest loadManifest(const std::string& dir = HOTT_STDLIB_DIR);

/// Flags the standard library needs: univalence at every level and resizing.
Flags stdlibFlags();

/// Check every manifest file in order, then confirm the theorem list:
/// required names must have passed, stretch names are reported but never
/// fail the build. Also confirms that idToEquiv at refl is judgmentally the
/// identity equivalence.
Report buildStdlib(Signature& sig, const StdlibManifest& manifest);

/// Report entries for the theorem list alone (used after buildStdlib).
bool idToEquivReflJudgmental(const Signature& sig);

}  // namespace hott
