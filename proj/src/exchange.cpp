#include "hott/exchange.hpp"

#include <algorithm>
#include <map>

namespace hott::grpd {

namespace {
std::size_t idx(int i) { return static_cast<std::size_t>(i); }

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw GroupoidError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw GroupoidError(where + ": bad field '" + key + "': " + e.what());
  }
}
}  // namespace

json groupoidToJson(const FinGroupoid& g, const std::string& name) {
  json mors = json::array(), comp = json::array(), ids = json::array();
  for (int m = 0; m < g.morphisms(); ++m) {
    mors.push_back({{"id", m}, {"src", g.src(m)}, {"dst", g.dst(m)}});
    for (int h : g.out(g.dst(m))) comp.push_back({h, m, g.comp(h, m)});
  }
  for (int x = 0; x < g.objects(); ++x) ids.push_back(g.id(x));
  return {{"name", name}, {"objects", g.objects()}, {"morphisms", mors}, {"compose", comp}, {"identities", ids}};
}

Grp groupoidFromJson(const json& j, bool check) {
  std::string name = j.is_object() && j.contains("name") ? j["name"].get<std::string>() : "groupoid";
  int n = field<int>(j, "objects", name);
  auto mors = field<json>(j, "morphisms", name);
  std::vector<Arrow> arrows(mors.size());
  std::vector<bool> seen(mors.size(), false);
  for (const auto& m : mors) {
    int id = field<int>(m, "id", name);
    if (id < 0 || idx(id) >= arrows.size() || seen[idx(id)]) throw GroupoidError(name + ": morphism ids must be 0..m-1");
    seen[idx(id)] = true;
    arrows[idx(id)] = {field<int>(m, "src", name), field<int>(m, "dst", name)};
  }
  auto ids = field<std::vector<int>>(j, "identities", name);
  auto triples = field<std::vector<std::array<int, 3>>>(j, "compose", name);
  if (check) return fromTables(n, arrows, ids, triples, name);

  if (ids.size() != idx(n)) throw GroupoidError(name + ": identity table has the wrong length");
  GroupoidBuilder b;
  b.addObjects(n);
  for (const Arrow& a : arrows) b.addMorphism(a.src, a.dst);
  for (int x = 0; x < n; ++x) b.setIdentity(x, ids[idx(x)]);
  std::map<std::pair<int, int>, int> table;
  for (const auto& t : triples) table[{t[0], t[1]}] = t[2];
  return b.build(
      [&](int g, int f) {
        auto it = table.find({g, f});
        return it == table.end() ? -1 : it->second;
      },
      false, name);
}

json functorToJson(const GFunctor& f, const std::string& name, const std::string& dom, const std::string& cod) {
  return {{"name", name}, {"dom", dom}, {"cod", cod}, {"obj", f.obj}, {"mor", f.mor}};
}

json corpusToJson(const Corpus& c) {
  json gs = json::array(), fs = json::array();
  auto nameOf = [&](const Grp& g) -> std::string {
    for (const auto& ng : c.groupoids)
      if (ng.g == g || sameGroupoid(ng.g, g)) return ng.name;
    throw GroupoidError("fibration endpoint is not a corpus groupoid");
  };
  for (const auto& ng : c.groupoids) gs.push_back(groupoidToJson(*ng.g, ng.name));
  for (const auto& nf : c.fibrations)
    fs.push_back(functorToJson(nf.p.map, nf.name, nameOf(nf.p.total()), nameOf(nf.p.base())));
  return {{"name", c.name}, {"groupoids", gs}, {"fibrations", fs}};
}

Corpus corpusFromJson(const json& j, bool check) {
  Corpus c;
  c.name = j.value("name", "corpus");
  std::map<std::string, Grp> byName;
  for (const auto& g : field<json>(j, "groupoids", c.name)) {
    Grp gr = groupoidFromJson(g, check);
    std::string nm = field<std::string>(g, "name", c.name);
    if (!byName.emplace(nm, gr).second) throw GroupoidError("duplicate groupoid name '" + nm + "'");
    c.groupoids.push_back({nm, gr});
  }
  c.baseCount = c.groupoids.size();
  if (!j.contains("fibrations")) return c;
  for (const auto& f : j["fibrations"]) {
    std::string nm = field<std::string>(f, "name", c.name);
    auto look = [&](const std::string& key) {
      auto it = byName.find(field<std::string>(f, key.c_str(), nm));
      if (it == byName.end()) throw GroupoidError(nm + ": unknown groupoid in '" + key + "'");
      return it->second;
    };
    GFunctor F{look("dom"), look("cod"), field<std::vector<int>>(f, "obj", nm), field<std::vector<int>>(f, "mor", nm)};
    std::string why;
    if (!validateFunctor(F, &why)) throw GroupoidError(nm + ": " + why);
    auto p = tryFibration(F);
    if (!p) throw GroupoidError(nm + ": not an isofibration");
    c.fibrations.push_back({nm, *p});
  }
  return c;
}

json checkResultToJson(const CheckResult& r, bool withTiming) {
  json j{{"check", r.check}, {"instance", r.instance}, {"result", r.result}};
  if (!r.result) j["witness"] = r.witness;
  if (withTiming) j["elapsed_ms"] = r.elapsedMs;
  return j;
}

json reportToJson(const SuiteReport& r, bool withTiming) {
  std::vector<const CheckResult*> sorted;
  for (const auto& c : r.results) sorted.push_back(&c);
  std::stable_sort(sorted.begin(), sorted.end(), [](const CheckResult* a, const CheckResult* b) {
    return std::tie(a->instance, a->check) < std::tie(b->instance, b->check);
  });
  json arr = json::array();
  for (const auto* c : sorted) arr.push_back(checkResultToJson(*c, withTiming));
  return {{"result", r.pass()}, {"failures", r.failures()}, {"checks", r.results.size()}, {"results", arr}};
}

}  // namespace hott::grpd
