#include "hott/stdlib.hpp"

#include <filesystem>
#include <sstream>

namespace hott {

StdlibManifest loadManifest(const std::string& dir) {
  StdlibManifest m;
  m.dir = dir;
  std::istringstream in(readFile((std::filesystem::path(dir) / "MANIFEST").string()));
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;
    if (first == "@required" || first == "@stretch") {
      TheoremEntry t;
      t.required = first == "@required";
      ls >> t.tag >> t.file;
      for (std::string n; ls >> n;) t.names.push_back(n);
      if (t.tag.empty() || t.file.empty() || t.names.empty())
        throw std::runtime_error("malformed manifest line: " + line);
      m.theorems.push_back(std::move(t));
    } else {
      m.files.push_back(first);
    }
  }
  return m;
}

Flags stdlibFlags() {
  Flags f;
  f.resizing = true;
  return f;
}

bool idToEquivReflJudgmental(const Signature& sig) {
  if (!sig.has("idToEquiv") || !sig.has("idEquiv") || !sig.has("Equiv")) return false;
  Context ctx{mk::univ(0)};
  Term a = mk::var(0);
  Term lhs = mk::app(mk::constant("idToEquiv"), {a, a, mk::refl(a)});
  Term rhs = mk::app(mk::constant("idEquiv"), a);
  Term ty = mk::el(mk::app(mk::constant("Equiv"), {a, a}));
  return convertibleIn(sig, ctx, lhs, rhs, ty);
}

Report buildStdlib(Signature& sig, const StdlibManifest& manifest) {
  Report rep;
  for (const auto& f : manifest.files) {
    std::string path = (std::filesystem::path(manifest.dir) / f).string();
    std::string src;
    try {
      src = readFile(path);
    } catch (const std::exception& e) {
      DeclResult r;
      r.name = f;
      r.error = e.what();
      r.errorKind = ErrorKind::Syntax;
      rep.entries.push_back(r);
      continue;
    }
    Report part = checkSource(sig, src, path);
    rep.entries.insert(rep.entries.end(), part.entries.begin(), part.entries.end());
  }
  for (const auto& t : manifest.theorems) {
    DeclResult r;
    r.name = t.tag + (t.required ? "" : " (stretch)");
    r.pass = true;
    std::string missing;
    for (const auto& n : t.names) {
      if (!sig.has(n)) {
        r.pass = false;
        missing += (missing.empty() ? "" : ", ") + n;
        if (auto k = sig.failedKind(n)) r.errorKind = *k;
      }
    }
    if (!r.pass) {
      r.error = t.tag + ": not established: " + missing;
      if (!r.errorKind) r.errorKind = ErrorKind::Unbound;
    }
    // stretch goals are informative only
    if (!t.required && !r.pass) {
      r.pass = true;
      r.error = "stretch goal not mechanized: " + missing;
      r.errorKind.reset();
    }
    rep.entries.push_back(r);
  }
  DeclResult j;
  j.name = "T1 judgmental";
  j.pass = idToEquivReflJudgmental(sig);
  if (!j.pass) {
    j.error = "idToEquiv A A (refl A) is not convertible with idEquiv A";
    j.errorKind = ErrorKind::Mismatch;
  }
  rep.entries.push_back(j);
  return rep;
}

}  // namespace hott
