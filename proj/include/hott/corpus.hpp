#pragma once

#include <string>
#include <vector>

#include "hott/tribe.hpp"

namespace hott::grpd {

struct NamedGroupoid {
  std::string name;
  Grp g;
};

struct NamedFibration {
  std::string name;
  FibrationMap p;
};

struct Corpus {
  std::string name;
  std::vector<NamedGroupoid> groupoids;   // base groupoids first, then binary products
  std::vector<NamedFibration> fibrations;
  std::size_t baseCount = 0;
};

/// Discrete 0..4, BZ2, BZ3, the codiscrete pair, binary products, and the
/// isofibrations between them.
Corpus defaultCorpus();
/// Discrete 0..2, BZ2 and the codiscrete pair.
Corpus smallCorpus();
Corpus corpusByName(const std::string& name);

struct CheckResult {
  std::string check;
  std::string instance;
  bool result = false;
  std::string witness;  // set on failure
  double elapsedMs = 0;
};

struct SuiteReport {
  std::vector<CheckResult> results;
  bool pass() const;
  std::size_t failures() const;
};

/// Validates every instance, then runs the tribe and pi-tribe axiom checks.
SuiteReport tribeAxiomSuite(const Corpus& corpus);

// property checks shared by tests, the acceptance run and the CLI

/// Maps X -> Eq(A,B) against directly enumerated equivalence data over X.
CheckResult representabilityCheck(const Grp& x, const NamedGroupoid& a, const NamedGroupoid& b);
/// The two path-object choices give equivalent objects of equivalences.
CheckResult pathIndependenceCheck(const NamedGroupoid& a, const NamedGroupoid& b);
/// Post-composition with an equivalence is an equivalence of internal homs.
CheckResult postcompositionCheck(const Grp& x, const GFunctor& f, const std::string& name);
/// Eq(A,B) -> [A,B] is a homotopy mono.
CheckResult projectionMonoCheck(const NamedGroupoid& a, const NamedGroupoid& b);
/// Pulling Eq_B(E) back along f x f agrees with Eq of the pulled-back fibration.
CheckResult eqPullbackCheck(const FibrationMap& p, const GFunctor& f, const std::string& name);
/// For univalent p and a fibration f into its base: f*p univalent iff f is a homotopy mono.
CheckResult univalenceTransferCheck(const FibrationMap& p, const FibrationMap& f, const std::string& name);

/// Homotopy-monic fibrations with propositional fibers over small bases.
std::vector<NamedFibration> monoCorpus();
/// f is classified by `top`, all names are homotopic, and every map homotopic
/// to a name is a name.
CheckResult classificationCheck(const FibrationMap& top, const NamedFibration& f);

/// Small test domains: the point, two points, BZ2 and the codiscrete pair.
std::vector<NamedGroupoid> testDomains();

}  // namespace hott::grpd
