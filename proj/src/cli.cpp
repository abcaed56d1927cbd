#include "hott/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <filesystem>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "hott/corpus.hpp"
#include "hott/denote.hpp"
#include "hott/exchange.hpp"
#include "hott/stdlib.hpp"

namespace hott::cli {

namespace fs = std::filesystem;
using grpd::CheckResult;
using grpd::json;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string format = "text";
  unsigned seed = 0;
  std::vector<int> uaLevels;
  bool noUa = false;
  bool noResizing = false;
  int towerHeight = 3;
  std::size_t maxObjects = 0;
  bool noPrelude = false;
  std::vector<std::string> files;
  std::string def;
  int k = 2;
  std::string corpus = "default";
  std::string corpusFile;
  std::string lhs, rhs;
  int expect = -1;
  std::string manifestDir = HOTT_STDLIB_DIR;
};

Flags flagsOf(const Config& c) {
  Flags f = stdlibFlags();
  f.towerHeight = c.towerHeight;
  f.uaEnabled = !c.noUa;
  f.uaLevels = std::set<int>(c.uaLevels.begin(), c.uaLevels.end());
  f.resizing = !c.noResizing;
  return f;
}

std::string canonical(const std::string& p) {
  std::error_code ec;
  auto c = fs::weakly_canonical(p, ec);
  return ec ? p : c.string();
}

// Stdlib files the given ones may depend on: every manifest file before the
// last one named, or the whole manifest for files outside it.
void loadPrelude(Signature& sig, const Config& c) {
  if (c.noPrelude) return;
  StdlibManifest m = loadManifest(c.manifestDir);
  std::vector<std::string> paths;
  for (const auto& f : m.files) paths.push_back(canonical((fs::path(m.dir) / f).string()));
  std::set<std::string> given;
  for (const auto& f : c.files) given.insert(canonical(f));
  std::size_t last = paths.size();
  bool inside = false;
  for (std::size_t i = 0; i < paths.size(); ++i)
    if (given.count(paths[i])) {
      last = i;
      inside = true;
    }
  if (!inside) last = paths.size();
  for (std::size_t i = 0; i < last; ++i) {
    if (given.count(paths[i])) continue;
    checkSource(sig, readFile(paths[i]), paths[i]);
  }
}

json declJson(const DeclResult& d) {
  json j{{"name", d.name}, {"result", d.pass}, {"elapsed_ms", d.elapsedMs}};
  if (!d.span.file.empty()) j["file"] = d.span.file;
  if (!d.pass) {
    j["error"] = d.error;
    if (d.errorKind) j["error_kind"] = errorKindName(*d.errorKind);
  }
  return j;
}

// ---------------------------------------------------------------- output

struct Out {
  const Config& cfg;
  std::ostream& out;
  std::ostream& err;
  bool json() const { return cfg.format == "json"; }
};

void printChecks(Out& o, const std::string& command, std::vector<CheckResult> results, json extra = json::object()) {
  std::sort(results.begin(), results.end(),
            [](const CheckResult& a, const CheckResult& b) { return std::tie(a.instance, a.check) < std::tie(b.instance, b.check); });
  grpd::SuiteReport rep{results};
  if (o.json()) {
    json j{{"command", command}, {"result", rep.pass()}, {"failures", rep.failures()}, {"results", json::array()}};
    for (const auto& r : results) j["results"].push_back(grpd::checkResultToJson(r, true));
    for (auto& [key, v] : extra.items()) j[key] = v;
    o.out << j.dump(2) << "\n";
    return;
  }
  for (const auto& r : results) {
    o.out << (r.result ? "PASS " : "FAIL ") << r.check << " " << r.instance;
    if (!r.result && !r.witness.empty()) o.out << ": " << r.witness;
    o.out << "\n";
  }
  for (auto& [key, v] : extra.items()) o.out << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  o.out << "result: " << (rep.pass() ? "pass" : "fail") << " (" << results.size() << " checks, " << rep.failures()
        << " failures)\n";
}

int verdict(bool pass) { return pass ? Pass : CheckFailure; }

// ---------------------------------------------------------------- commands

int cmdCheck(Out& o) {
  Signature sig(flagsOf(o.cfg));
  loadPrelude(sig, o.cfg);
  std::vector<DeclResult> all;
  for (const auto& f : o.cfg.files) {
    Report r = checkSource(sig, readFile(f), f);
    for (auto& d : r.entries) {
      if (d.span.file.empty()) d.span.file = f;
      all.push_back(d);
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const DeclResult& a, const DeclResult& b) {
    return std::tie(a.span.file, a.name) < std::tie(b.span.file, b.name);
  });
  bool pass = std::all_of(all.begin(), all.end(), [](const DeclResult& d) { return d.pass; });
  std::size_t failures = static_cast<std::size_t>(std::count_if(all.begin(), all.end(), [](const DeclResult& d) { return !d.pass; }));
  if (o.json()) {
    json j{{"command", "check"}, {"result", pass}, {"failures", failures}, {"declarations", json::array()}};
    for (const auto& d : all) j["declarations"].push_back(declJson(d));
    o.out << j.dump(2) << "\n";
  } else {
    for (const auto& d : all) {
      o.out << (d.pass ? "PASS " : "FAIL ") << d.span.file << " " << d.name;
      if (!d.pass) o.out << " [" << (d.errorKind ? errorKindName(*d.errorKind) : "error") << "] " << d.error;
      o.out << "\n";
    }
    o.out << "result: " << (pass ? "pass" : "fail") << " (" << all.size() << " declarations, " << failures << " failures)\n";
  }
  return verdict(pass);
}

int cmdNorm(Out& o) {
  Signature sig(flagsOf(o.cfg));
  loadPrelude(sig, o.cfg);
  Report r = checkSource(sig, readFile(o.cfg.files.front()), o.cfg.files.front());
  const GlobalEntry* e = sig.globals().find(o.cfg.def);
  if (!e) {
    for (const auto& d : r.entries)
      if (d.name == o.cfg.def) {
        if (o.json()) {
          json j{{"command", "norm"}, {"name", o.cfg.def}, {"result", false}, {"error", d.error}};
          if (d.errorKind) j["error_kind"] = errorKindName(*d.errorKind);
          o.out << j.dump(2) << "\n";
        } else {
          o.out << "FAIL " << o.cfg.def << ": " << d.error << "\n";
        }
        return CheckFailure;
      }
    throw Usage("no declaration named '" + o.cfg.def + "' in " + o.cfg.files.front());
  }
  Term nf = normalizeIn(sig, {}, e->body, e->type);
  Term ty = normalizeTypeIn(sig, {}, e->type);
  if (o.json()) {
    json j{{"command", "norm"}, {"name", o.cfg.def}, {"result", true}, {"type", printTerm(ty)},
           {"normal_form", printTerm(nf)}, {"core", show(nf)}};
    o.out << j.dump(2) << "\n";
  } else {
    o.out << o.cfg.def << " : " << printTerm(ty) << "\n  = " << printTerm(nf) << "\n";
  }
  return Pass;
}

int cmdStdlib(Out& o) {
  Signature sig(flagsOf(o.cfg));
  Report r = buildStdlib(sig, loadManifest(o.cfg.manifestDir));
  for (auto& d : r.entries)
    if (!d.span.file.empty()) d.span.file = fs::path(d.span.file).filename().string();
  if (o.json()) {
    json j{{"command", "stdlib"}, {"result", r.pass()}, {"failures", r.failures()}, {"entries", json::array()}};
    for (const auto& d : r.entries) j["entries"].push_back(declJson(d));
    o.out << j.dump(2) << "\n";
  } else {
    for (const auto& d : r.entries) {
      o.out << (d.pass ? "PASS " : "FAIL ") << (d.span.file.empty() ? "" : d.span.file + " ") << d.name;
      if (!d.pass) o.out << " [" << (d.errorKind ? errorKindName(*d.errorKind) : "error") << "] " << d.error;
      o.out << "\n";
    }
    o.out << "result: " << (r.pass() ? "pass" : "fail") << " (" << r.entries.size() << " entries, " << r.failures()
          << " failures)\n";
  }
  return verdict(r.pass());
}

int cmdAxioms(Out& o) {
  grpd::Corpus corpus;
  if (!o.cfg.corpusFile.empty())
    corpus = grpd::corpusFromJson(json::parse(readFile(o.cfg.corpusFile)));
  else
    corpus = grpd::corpusByName(o.cfg.corpus);
  if (o.cfg.seed != 0) {
    // sampling order only; the report is sorted afterwards
    std::mt19937 rng(o.cfg.seed);
    std::shuffle(corpus.fibrations.begin(), corpus.fibrations.end(), rng);
  }
  grpd::SuiteReport rep = grpd::tribeAxiomSuite(corpus);
  printChecks(o, "model axioms", rep.results, json{{"corpus", corpus.name}});
  return verdict(rep.pass());
}

CheckResult timedCheck(const std::string& check, const std::string& instance, const std::function<bool(std::string&)>& f) {
  CheckResult r{check, instance, false, "", 0};
  auto start = std::chrono::steady_clock::now();
  r.result = f(r.witness);
  r.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int cmdUnivalent(Out& o) {
  int k = o.cfg.k;
  grpd::SetsUniverse u = grpd::setsUniverse(k);
  std::string inst = "setsUniverse(" + std::to_string(k) + ")";
  std::vector<CheckResult> rs;
  rs.push_back(timedCheck("univalent/arrows", inst, [&](std::string& w) {
    bool ok = grpd::univalenceCheck(u.el, grpd::PathChoice::Arrows);
    if (!ok) w = "Delta -> Eq is not an equivalence";
    return ok;
  }));
  rs.push_back(timedCheck("univalent/padded", inst, [&](std::string& w) {
    bool ok = grpd::univalenceCheck(u.el, grpd::PathChoice::Padded);
    if (!ok) w = "Delta -> Eq is not an equivalence";
    return ok;
  }));
  bool pass = std::all_of(rs.begin(), rs.end(), [](const CheckResult& r) { return r.result; });
  printChecks(o, "model univalent", rs, json{{"k", k}});
  return verdict(pass);
}

int cmdOmega(Out& o) {
  int k = o.cfg.k;
  grpd::SetsUniverse u = grpd::setsUniverse(k);
  grpd::Omega w = grpd::omegaClassifier(u.el);
  std::string inst = "setsUniverse(" + std::to_string(k) + ")";
  std::vector<CheckResult> rs;
  rs.push_back(timedCheck("omega/pr-homotopy-mono", inst, [&](std::string& why) {
    bool ok = grpd::homotopyMonoCheck(w.pr);
    if (!ok) why = "Pr is not a homotopy mono";
    return ok;
  }));
  rs.push_back(timedCheck("omega/top-univalent", inst, [&](std::string& why) {
    bool ok = grpd::univalenceCheck(w.top);
    if (!ok) why = "top is not univalent";
    return ok;
  }));
  for (const auto& f : grpd::monoCorpus()) {
    CheckResult r = grpd::classificationCheck(w.top, f);
    r.check = "omega/" + r.check;
    rs.push_back(r);
  }
  bool pass = std::all_of(rs.begin(), rs.end(), [](const CheckResult& r) { return r.result; });
  printChecks(o, "model omega", rs,
              json{{"k", k}, {"omega_objects", w.pr.total()->objects()}, {"omega_components", w.pr.total()->componentCount()}});
  return verdict(pass);
}

grpd::Grp atom(const std::string& s) {
  auto num = [&](std::size_t from) {
    std::string rest = s.substr(from);
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), ::isdigit)) throw Usage("bad groupoid '" + s + "'");
    return std::stoi(rest);
  };
  if (s == "1" || s == "pt") return grpd::terminal();
  if (s == "0" || s == "empty") return grpd::emptyGroupoid();
  if (s.rfind("disc", 0) == 0) return grpd::discrete(num(4));
  if (s.rfind("codisc", 0) == 0) return grpd::codiscrete(num(6));
  if (s.rfind("BZ", 0) == 0) return grpd::cyclic(num(2));
  if (fs::exists(s)) return grpd::groupoidFromJson(json::parse(readFile(s)));
  throw Usage("unknown groupoid '" + s + "' (use 1, 0, discN, codiscN, BZn, A*B or a JSON file)");
}

grpd::Grp groupoidExpr(const std::string& s) {
  grpd::Grp g;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '*')) {
    grpd::Grp a = atom(part);
    g = g ? grpd::product(g, a).g : a;
  }
  if (!g) throw Usage("empty groupoid expression");
  return g;
}

int cmdHo(Out& o) {
  grpd::Grp a = groupoidExpr(o.cfg.lhs), b = groupoidExpr(o.cfg.rhs);
  std::size_t n = grpd::hoHomClasses(a, b);
  bool pass = o.cfg.expect < 0 || n == static_cast<std::size_t>(o.cfg.expect);
  if (o.json()) {
    json j{{"command", "model ho"}, {"lhs", o.cfg.lhs}, {"rhs", o.cfg.rhs}, {"classes", n}, {"result", pass}};
    if (o.cfg.expect >= 0) j["expected"] = o.cfg.expect;
    o.out << j.dump(2) << "\n";
  } else {
    o.out << "[" << o.cfg.lhs << ", " << o.cfg.rhs << "] has " << n << " homotopy classes";
    if (o.cfg.expect >= 0) o.out << (pass ? " (as expected)" : " (expected " + std::to_string(o.cfg.expect) + ")");
    o.out << "\nresult: " << (pass ? "pass" : "fail") << "\n";
  }
  return verdict(pass);
}

int cmdDenote(Out& o) {
  Signature sig(flagsOf(o.cfg));
  loadPrelude(sig, o.cfg);
  Report r = checkSource(sig, readFile(o.cfg.files.front()), o.cfg.files.front());
  if (!sig.has(o.cfg.def)) {
    for (const auto& d : r.entries)
      if (d.name == o.cfg.def && !d.pass) throw Usage("declaration '" + o.cfg.def + "' does not typecheck: " + d.error);
    throw Usage("no declaration named '" + o.cfg.def + "' in " + o.cfg.files.front());
  }
  if (o.cfg.k < 0 || o.cfg.k > 6) throw Usage("--k must lie in 0..6");
  denote::Model model(sig, o.cfg.k);
  denote::DeclReport d = denote::denoteDecl(model, o.cfg.def);
  if (d.status == denote::DeclStatus::ResourceCap) throw grpd::ResourceError(d.message);
  bool pass = d.status == denote::DeclStatus::Ok;
  if (o.json()) {
    json j{{"command", "denote"}, {"name", d.name}, {"k", o.cfg.k}, {"status", denote::declStatusName(d.status)},
           {"result", pass}, {"elapsed_ms", d.elapsedMs}};
    if (pass) {
      j["telescope"] = d.telescope;
      j["context"] = {{"objects", d.contextObjects}, {"morphisms", d.contextMorphisms}};
      j["section"] = {{"obj", d.section.obj}, {"mor", d.section.mor}};
    } else {
      j["message"] = d.message;
    }
    o.out << j.dump(2) << "\n";
  } else {
    o.out << d.name << " at k = " << o.cfg.k << ": " << denote::declStatusName(d.status);
    if (pass)
      o.out << " (telescope " << d.telescope << ", context " << d.contextObjects << " objects / " << d.contextMorphisms
            << " morphisms)";
    else
      o.out << ": " << d.message;
    o.out << "\nresult: " << (pass ? "pass" : "fail") << "\n";
  }
  return verdict(pass);
}

void emitError(const Config& cfg, std::ostream& out, std::ostream& err, const std::string& kind, const std::string& msg) {
  if (cfg.format == "json")
    out << json{{"result", false}, {"error", {{"kind", kind}, {"message", msg}}}}.dump(2) << "\n";
  else
    err << "error (" << kind << "): " << msg << "\n" << json{{"error", {{"kind", kind}, {"message", msg}}}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Type theory kernel and finite groupoid model checker", "hott"};
  app.require_subcommand(1);
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", cfg.seed, "Corpus sampling order (never affects verdicts)");
  auto* uaLevels = app.add_option("--ua-levels", cfg.uaLevels, "Enable univalence only at these levels")->delimiter(',');
  app.add_flag("--no-ua", cfg.noUa, "Disable the univalence axiom")->excludes(uaLevels);
  app.add_flag("--no-resizing", cfg.noResizing, "Disable propositional resizing");
  app.add_option("--tower-height", cfg.towerHeight, "Number of universes")->check(CLI::Range(1, 16));
  app.add_option("--max-objects", cfg.maxObjects, "Groupoid object cap (morphism cap is 20x)");
  app.add_option("--stdlib-dir", cfg.manifestDir, "Directory holding the stdlib MANIFEST");

  auto* check = app.add_subcommand("check", "Parse and typecheck files");
  check->add_option("files", cfg.files, "Source files")->required()->check(CLI::ExistingFile);
  check->add_flag("--no-prelude", cfg.noPrelude, "Do not preload the standard library");

  auto* norm = app.add_subcommand("norm", "Print the normal form of a definition");
  norm->add_option("file", cfg.files, "Source file")->required()->expected(1)->check(CLI::ExistingFile);
  norm->add_option("--def", cfg.def, "Definition name")->required();
  norm->add_flag("--no-prelude", cfg.noPrelude, "Do not preload the standard library");

  auto* stdlib = app.add_subcommand("stdlib", "Build the standard library manifest");

  auto* model = app.add_subcommand("model", "Finite groupoid model checks");
  model->require_subcommand(1);
  auto* axioms = model->add_subcommand("axioms", "Tribe and pi-tribe axiom suite");
  auto* corpusOpt = axioms->add_option("--corpus", cfg.corpus, "Named corpus")->check(CLI::IsMember({"default", "small", "empty"}));
  axioms->add_option("--corpus-file", cfg.corpusFile, "Corpus in the JSON exchange format")
      ->check(CLI::ExistingFile)
      ->excludes(corpusOpt);
  auto* univalent = model->add_subcommand("univalent", "Univalence of setsUniverse(k)");
  univalent->add_option("--k", cfg.k, "Universe bound")->check(CLI::Range(0, 6));
  auto* omega = model->add_subcommand("omega", "Proposition classifier of setsUniverse(k)");
  omega->add_option("--k", cfg.k, "Universe bound")->check(CLI::Range(0, 6));
  auto* ho = model->add_subcommand("ho", "Homotopy classes of maps");
  ho->add_option("--lhs", cfg.lhs, "Domain groupoid")->required();
  ho->add_option("--rhs", cfg.rhs, "Codomain groupoid")->required();
  ho->add_option("--expect", cfg.expect, "Expected count");

  auto* den = app.add_subcommand("denote", "Interpret a declaration in the groupoid model");
  den->add_option("file", cfg.files, "Source file")->required()->expected(1)->check(CLI::ExistingFile);
  den->add_option("--def", cfg.def, "Definition name")->required();
  den->add_option("--k", cfg.k, "Universe bound")->check(CLI::Range(0, 6));
  den->add_flag("--no-prelude", cfg.noPrelude, "Do not preload the standard library");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Pass;
  } catch (const CLI::ParseError& e) {
    // format may not have been parsed yet
    bool json = std::find(args.begin(), args.end(), "json") != args.end();
    if (json) cfg.format = "json";
    emitError(cfg, out, err, "usage", e.what());
    return UsageError;
  }

  grpd::Limits saved = grpd::Limits::current();
  if (cfg.maxObjects > 0) {
    grpd::Limits::current().maxObjects = cfg.maxObjects;
    grpd::Limits::current().maxMorphisms = cfg.maxObjects * 20;
  }
  struct Restore {
    grpd::Limits saved;
    ~Restore() { grpd::Limits::current() = saved; }
  } restore{saved};

  Out o{cfg, out, err};
  try {
    if (*check) return cmdCheck(o);
    if (*norm) return cmdNorm(o);
    if (*stdlib) return cmdStdlib(o);
    if (*den) return cmdDenote(o);
    if (*axioms) return cmdAxioms(o);
    if (*univalent) return cmdUnivalent(o);
    if (*omega) return cmdOmega(o);
    if (*ho) return cmdHo(o);
  } catch (const grpd::ResourceError& e) {
    emitError(cfg, out, err, "resource", e.what());
    return ResourceCap;
  } catch (const Usage& e) {
    emitError(cfg, out, err, "usage", e.what());
    return UsageError;
  } catch (const grpd::GroupoidError& e) {
    emitError(cfg, out, err, "groupoid", e.what());
    return CheckFailure;
  } catch (const json::exception& e) {
    emitError(cfg, out, err, "usage", std::string("bad JSON input: ") + e.what());
    return UsageError;
  } catch (const std::exception& e) {
    emitError(cfg, out, err, "internal", e.what());
    return CheckFailure;
  }
  emitError(cfg, out, err, "usage", "no command given");
  return UsageError;
}

}  // namespace hott::cli
