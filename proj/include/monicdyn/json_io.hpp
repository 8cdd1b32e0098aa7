#pragma once

#include "monicdyn/pcf.hpp"
#include "monicdyn/search.hpp"

#include <json.hpp>

namespace monicdyn {

using nlohmann::json;

/// {"nvars", "degree", "terms": [{"index", "value"}]} in canonical order.
json to_json(const Form &f);
Form form_from_json(const json &j);
Divisor divisor_from_json(const json &j);

/// {"N", "d", "components": [[{"index", "value"}, ...], ...]}: one list of
/// nonzero Ind* coefficients per affine component.
json to_json(const PolyMap &f);
PolyMap map_from_json(const json &j);

json to_json(const Interval &I);
json to_json(const LogValue &v);
json to_json(const GreenResult &g);
json to_json(const HeightReport &r);
json to_json(const OrbitRecord &r);
json to_json(const Certificate &c);
json to_json(const Portrait &p);
json to_json(const SearchResult &r);
json to_json(const std::vector<ConjugacyClass> &classes);

} // namespace monicdyn
