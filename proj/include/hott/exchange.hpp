#pragma once

#include <string>

#include "json.hpp"
#include "hott/corpus.hpp"

namespace hott::grpd {

using json = nlohmann::json;

/// {name, objects, morphisms: [{id, src, dst}], compose: [[g, f, g.f]], identities}
json groupoidToJson(const FinGroupoid& g, const std::string& name);
/// With `check` the laws are validated on load; without, only table shape is
/// checked and validation is left to the caller.
Grp groupoidFromJson(const json& j, bool check = true);

/// {name, dom, cod, obj, mor}; groupoids referenced by name.
json functorToJson(const GFunctor& f, const std::string& name, const std::string& dom, const std::string& cod);

/// {groupoids: [...], fibrations: [functor...]}
json corpusToJson(const Corpus& c);
Corpus corpusFromJson(const json& j, bool check = true);

/// {check, instance, result, witness?, elapsed_ms}
json checkResultToJson(const CheckResult& r, bool withTiming = true);
/// Results sorted by (check, instance).
json reportToJson(const SuiteReport& r, bool withTiming = true);

}  // namespace hott::grpd
