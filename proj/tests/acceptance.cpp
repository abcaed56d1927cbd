// Acceptance run: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "denote_pairs.hpp"
#include "hott/corpus.hpp"
#include "hott/denote.hpp"
#include "hott/nbe.hpp"
#include "hott/stdlib.hpp"
#include "hott/tribe.hpp"
#include "named_oracle.hpp"

using namespace hott;
using namespace hott::grpd;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string failuresOf(const std::vector<std::string>& bad) {
  std::string s;
  for (std::size_t i = 0; i < bad.size() && i < 5; ++i) s += (i ? "; " : "") + bad[i];
  if (bad.size() > 5) s += "; ... (" + std::to_string(bad.size()) + " total)";
  return s;
}

const Signature& stdlibSig() {
  static Signature sig = [] {
    Signature s(stdlibFlags());
    buildStdlib(s, loadManifest());
    return s;
  }();
  return sig;
}

Outcome kernelSuite() {
  auto start = Clock::now();
  Signature sig(stdlibFlags());
  StdlibManifest m = loadManifest();
  Report r = buildStdlib(sig, m);
  double secs = secondsSince(start);
  std::vector<std::string> bad;
  for (const auto& e : r.entries)
    if (!e.pass) bad.push_back(e.name + ": " + e.error);
  std::set<std::string> tags;
  for (const auto& t : m.theorems)
    if (t.required) tags.insert(t.tag);
  for (const auto& e : r.entries)
    if (e.pass) tags.erase(e.name);
  for (const auto& t : tags) bad.push_back("required " + t + " missing");
  bool t1 = idToEquivReflJudgmental(sig);
  if (!t1) bad.push_back("T1 not judgmental");
  if (secs >= 30) bad.push_back("took " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << r.entries.size() << " entries, T1 judgmental " << (t1 ? "yes" : "no") << ", " << secs << " s";
  if (!bad.empty()) d << ": " << failuresOf(bad);
  return {bad.empty(), d.str()};
}

// normal form over `free` neutral variables
Term normalizeOpen(const Globals& g, const Term& t, std::size_t free) {
  Env env;
  env.globals = &g;
  for (std::size_t l = 0; l < free; ++l) env = env.extend(vmk::var(l, vmk::univ(0)));
  return readbackUntyped(free, evaluate(env, t));
}

Outcome substitutionLaws() {
  std::mt19937 rng(20260611);
  Globals g;
  std::vector<std::string> bad;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    // well-scoped and simply typed over three free variables
    std::vector<oracle::STy> ctx{oracle::base(), oracle::base(), oracle::base()};
    Term t = oracle::typedTerm(rng, ctx, oracle::randomType(rng, 2), 4);
    Term a = oracle::randomTerm(rng, 2, 3);
    Term b = oracle::randomTerm(rng, 2, 3);
    std::string id = "term " + std::to_string(i);
    if (!equal(substitute(shift(t, 1, 0), 0, a), t)) bad.push_back(id + ": shift/substitute cancellation");
    if (!equal(shift(t, 2, 1), oracle::shift(t, 2, 1))) bad.push_back(id + ": shift differs from oracle");
    if (!equal(substitute(t, 1, a), oracle::substitute(t, 1, a))) bad.push_back(id + ": substitute differs from oracle");
    Term lhs = substitute(substitute(t, 0, a), 0, b);
    Term rhs = substitute(substitute(t, 1, shift(b, 1, 0)), 0, substitute(a, 0, b));
    if (!equal(lhs, rhs)) bad.push_back(id + ": substitution commutation");
    if (!equal(lhs, oracle::substitute(oracle::substitute(t, 0, a), 0, b)))
      bad.push_back(id + ": commutation differs from oracle");
    Term nf = normalizeOpen(g, t, 3);
    if (!equal(nf, normalizeOpen(g, nf, 3))) bad.push_back(id + ": normalize not idempotent");
  }
  return {bad.empty(), std::to_string(n) + " terms" + (bad.empty() ? "" : ": " + failuresOf(bad))};
}

Outcome axiomSuite() {
  auto start = Clock::now();
  Corpus c = defaultCorpus();
  std::set<std::string> names;
  for (const auto& g : c.groupoids) names.insert(g.name);
  std::vector<std::string> bad;
  for (const char* want : {"disc0", "disc1", "disc2", "disc3", "disc4", "BZ2", "BZ3", "codisc2", "BZ2*BZ3"})
    if (!names.count(want)) bad.push_back(std::string("corpus lacks ") + want);
  SuiteReport r = tribeAxiomSuite(c);
  std::set<std::string> kinds;
  for (const auto& res : r.results) {
    kinds.insert(res.check);
    if (!res.result) bad.push_back(res.check + " " + res.instance + ": " + res.witness);
  }
  for (const char* want : {"a-terminal", "b-pullback", "c-factorization", "d-lifting", "e-pi-adjunction", "f-pi-path-object"})
    if (!kinds.count(want)) bad.push_back(std::string("no ") + want + " checks");
  double secs = secondsSince(start);
  if (secs >= 600) bad.push_back("took " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << c.groupoids.size() << " groupoids, " << c.fibrations.size() << " fibrations, " << r.results.size() << " checks, "
    << secs << " s";
  if (!bad.empty()) d << ": " << failuresOf(bad);
  return {bad.empty(), d.str()};
}

Outcome univalence() {
  FibrationMap el = setsUniverse(2).el;
  bool arrows = univalenceCheck(el, PathChoice::Arrows);
  bool padded = univalenceCheck(el, PathChoice::Padded);
  // two sets of size 2 over a discrete base: the automorphisms are not paths
  FibrationMap twoCodes = makeFibration(GFunctor{discrete(4), discrete(2), {0, 0, 1, 1}, {0, 0, 1, 1}});
  bool negative = univalenceCheck(twoCodes) || univalenceCheck(twoCodes, PathChoice::Padded);
  std::ostringstream d;
  d << "setsUniverse(2) " << arrows << "/" << padded << " (arrows/padded), discrete counterexample " << negative;
  return {arrows && padded && !negative, d.str()};
}

Outcome projectionMono() {
  std::vector<NamedGroupoid> gs{{"disc2", discrete(2)}, {"disc3", discrete(3)}, {"BZ2", cyclic(2)}};
  std::vector<std::string> bad;
  int n = 0;
  for (const auto& a : gs)
    for (const auto& b : gs) {
      CheckResult r = projectionMonoCheck(a, b);
      ++n;
      if (!r.result) bad.push_back(r.instance + ": " + r.witness);
    }
  return {bad.empty(), std::to_string(n) + " pairs" + (bad.empty() ? "" : ": " + failuresOf(bad))};
}

Outcome classifier() {
  auto start = Clock::now();
  Omega w = omegaClassifier(setsUniverse(2).el);
  std::vector<std::string> bad;
  if (!homotopyMonoCheck(w.pr)) bad.push_back("Pr is not a homotopy mono");
  if (!univalenceCheck(w.top)) bad.push_back("top is not univalent");
  auto corpus = monoCorpus();
  for (const auto& f : corpus) {
    CheckResult r = classificationCheck(w.top, f);
    if (!r.result) bad.push_back(r.instance + ": " + r.witness);
  }
  // not a homotopy mono, so it must not be classified
  if (classifyHomotopyMono(w.top, terminalFibration(discrete(2)))) bad.push_back("disc2 -> 1 was classified");
  double secs = secondsSince(start);
  if (secs >= 600) bad.push_back("took " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << corpus.size() << " homotopy monos classified, " << secs << " s";
  if (!bad.empty()) d << ": " << failuresOf(bad);
  return {bad.empty(), d.str()};
}

// brute force: all functors, grouped by the existence of a natural iso
std::size_t enumeratedClasses(const Grp& a, const Grp& b) {
  std::vector<GFunctor> reps;
  for (const auto& f : allFunctors(a, b)) {
    bool seen = false;
    for (const auto& r : reps)
      if (homotopic(f, r)) {
        seen = true;
        break;
      }
    if (!seen) reps.push_back(f);
  }
  return reps.size();
}

Outcome hoCategory() {
  std::vector<std::string> bad;
  std::size_t bz = hoHomClasses(cyclic(2), cyclic(2));
  if (bz != 2 || enumeratedClasses(cyclic(2), cyclic(2)) != 2) bad.push_back("[BZ2, BZ2] = " + std::to_string(bz));
  for (int n = 0; n <= 4; ++n) {
    std::size_t c = hoHomClasses(terminal(), discrete(n));
    if (c != static_cast<std::size_t>(n) || enumeratedClasses(terminal(), discrete(n)) != c)
      bad.push_back("[1, disc" + std::to_string(n) + "] = " + std::to_string(c));
  }
  return {bad.empty(), bad.empty() ? "[BZ2, BZ2] = 2, [1, disc n] = n for n <= 4" : failuresOf(bad)};
}

Outcome resizing() {
  ResizingResult r = resizingCheck(2);
  std::ostringstream d;
  d << "Omega_2 -> Omega_3: square commutes " << r.homotopyCommutes << ", equivalence " << r.equivalence;
  return {r.homotopyCommutes && r.equivalence, d.str()};
}

Outcome denotation() {
  const Signature& sig = stdlibSig();
  denote::Model m(sig, 2);
  std::vector<std::string> bad;
  std::size_t denoted = 0;
  for (const auto& name : pairs::kFragment) {
    denote::DeclReport r = denote::denoteDecl(m, name);
    if (r.status == denote::DeclStatus::Ok)
      ++denoted;
    else
      bad.push_back(name + ": " + r.message);
  }
  std::size_t same = 0, total = 0;
  for (const auto& p : pairs::convertiblePairs(sig)) {
    ++total;
    if (!convertibleIn(sig, p.ctx, p.a, p.b, p.ty)) {
      bad.push_back("not convertible: " + show(p.a));
      continue;
    }
    if (m.term(p.ctx, p.a, p.ty) == m.term(p.ctx, p.b, p.ty))
      ++same;
    else
      bad.push_back("different sections: " + show(p.a));
  }
  if (total < 50) bad.push_back("only " + std::to_string(total) + " pairs");
  int equivs = 0;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      CheckResult r = denote::equivDenotationCheck(sig, a, b, 2);
      ++equivs;
      if (!r.result) bad.push_back(r.instance + ": " + r.witness);
    }
  std::ostringstream d;
  d << denoted << "/" << pairs::kFragment.size() << " fragment declarations, " << same << "/" << total
    << " pairs identical, " << equivs << " Equiv code pairs";
  if (!bad.empty()) d << ": " << failuresOf(bad);
  return {bad.empty(), d.str()};
}

// declarations whose type or body reaches the ua axiom through constants
std::set<std::string> uaDependents(const Signature& sig) {
  static const std::regex ua("(^|[^A-Za-z0-9_'])ua [0-9]");
  std::map<std::string, std::vector<std::string>> uses;
  std::set<std::string> out;
  for (const auto& [name, e] : sig.globals().defs) {
    for (const Term& t : {e.type, e.body}) {
      if (std::regex_search(show(t), ua)) out.insert(name);
      for (const auto& c : constantsOf(t)) uses[name].push_back(c);
    }
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& [name, cs] : uses)
      if (!out.count(name))
        for (const auto& c : cs)
          if (out.count(c)) {
            out.insert(name);
            grew = true;
            break;
          }
  }
  return out;
}

Outcome flagIsolation() {
  StdlibManifest m = loadManifest();
  Signature on(stdlibFlags());
  Report withUa = buildStdlib(on, m);
  Flags f = stdlibFlags();
  f.uaEnabled = false;
  Signature off(f);
  Report withoutUa = buildStdlib(off, m);

  std::set<std::string> expected = uaDependents(on);
  for (const auto& t : m.theorems)
    for (const auto& n : t.names)
      if (expected.count(n)) expected.insert(t.tag);

  std::map<std::string, bool> before;
  for (const auto& e : withUa.entries) before[e.name] = e.pass;
  std::vector<std::string> bad;
  std::set<std::string> failed;
  for (const auto& e : withoutUa.entries) {
    if (e.pass) continue;
    failed.insert(e.name);
    if (e.errorKind != ErrorKind::AxiomDisabled) bad.push_back(e.name + " failed with " + e.error);
    if (!expected.count(e.name)) bad.push_back(e.name + " regressed without depending on ua");
  }
  for (const auto& n : expected)
    if (before.count(n) && !failed.count(n)) bad.push_back(n + " depends on ua but passed");
  if (expected.empty()) bad.push_back("no stdlib entry depends on ua");
  std::string names;
  for (const auto& n : failed) names += (names.empty() ? "" : ", ") + n;
  return {bad.empty(), "failing with axiom-disabled: " + names + (bad.empty() ? "" : ": " + failuresOf(bad))};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"kernel suite", kernelSuite},
      {"substitution and NbE laws", substitutionLaws},
      {"tribe axiom suite", axiomSuite},
      {"univalence", univalence},
      {"Eq projection is a homotopy mono", projectionMono},
      {"subobject classifier", classifier},
      {"homotopy category", hoCategory},
      {"resizing instance", resizing},
      {"denotation soundness", denotation},
      {"flag isolation", flagIsolation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto start = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << o.detail << "; " << secondsSince(start) << " s)" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
