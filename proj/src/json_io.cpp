#include "monicdyn/json_io.hpp"

#include <cmath>
#include <set>

namespace monicdyn {

namespace {

json terms_to_json(const Poly &p) {
  json terms = json::array();
  for (const auto &[m, c] : p.terms())
    terms.push_back({{"index", m.to_vector()}, {"value", to_string(c)}});
  return terms;
}

template <class T> T field(const json &j, const char *key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &) {
    throw ParseError(std::string("bad field \"") + key + "\"");
  }
}

Poly terms_from_json(const json &terms, int nvars, std::optional<int> degree) {
  if (!terms.is_array())
    throw ParseError("\"terms\" must be an array");
  Poly p(nvars);
  std::set<std::vector<int>> seen;
  for (const json &t : terms) {
    const auto index = field<std::vector<int>>(t, "index");
    const auto value = field<std::string>(t, "value");
    if (static_cast<int>(index.size()) != nvars)
      throw ParseError("term index has the wrong length");
    int total = 0;
    for (int e : index) {
      if (e < 0)
        throw ParseError("negative exponent");
      total += e;
    }
    if (degree && total != *degree)
      throw ParseError("term degree does not match the form degree");
    if (!seen.insert(index).second)
      throw ParseError("repeated term index");
    MultiIndex m(nvars);
    for (int i = 0; i < nvars; ++i)
      m.set(i, index[i]);
    p.add_term(m, parse_rational(value));
  }
  return p;
}

int digits_for(mpfr_prec_t prec) { return static_cast<int>(std::ceil(static_cast<double>(prec) * std::log10(2.0))) + 1; }

} // namespace

json to_json(const Form &f) {
  return {{"nvars", f.nvars()}, {"degree", f.degree()}, {"terms", terms_to_json(f.poly())}};
}

Form form_from_json(const json &j) {
  const int nvars = field<int>(j, "nvars");
  const int degree = field<int>(j, "degree");
  if (nvars < 1 || degree < 0)
    throw ParseError("nvars must be positive and degree non-negative");
  return Form(terms_from_json(j.at("terms"), nvars, degree), degree);
}

Divisor divisor_from_json(const json &j) { return normalize_divisor(form_from_json(j)); }

json to_json(const PolyMap &f) {
  json comps = json::array();
  for (int i = 0; i < f.N(); ++i) {
    json terms = json::array();
    for (std::size_t k = 0; k < f.indices().size(); ++k)
      if (f.coeff(i, k) != 0)
        terms.push_back({{"index", f.indices()[k].to_vector()}, {"value", to_string(f.coeff(i, k))}});
    comps.push_back(terms);
  }
  return {{"N", f.N()}, {"d", f.d()}, {"components", comps}};
}

PolyMap map_from_json(const json &j) {
  const int N = field<int>(j, "N");
  const int d = field<int>(j, "d");
  if (N < 1 || d < 2)
    throw ParseError("need N >= 1 and d >= 2");
  const json &comps = j.at("components");
  if (!comps.is_array() || static_cast<int>(comps.size()) != N)
    throw ParseError("\"components\" must list N coefficient arrays");
  PolyMap f(N, d);
  const std::set<MultiIndex, GrlexGreater> allowed(f.indices().begin(), f.indices().end());
  for (int i = 0; i < N; ++i) {
    const Poly p = terms_from_json(comps[i], N + 1, d);
    for (const auto &[m, c] : p.terms()) {
      if (!allowed.count(m))
        throw ParseError("coefficient index is not in Ind*(N, d)");
      f.set_coeff(i, m, c);
    }
  }
  return f;
}

json to_json(const Interval &I) {
  const int digits = digits_for(I.precision());
  return {{"lo", I.lo_string(digits)}, {"hi", I.hi_string(digits)}, {"precision", I.precision()}};
}

json to_json(const LogValue &v) {
  json out = {{"place", v.place.to_string()}};
  if (!v.place.is_arch())
    out["value"] = to_string(v.exact);
  out["approx"] = to_json(v.approx);
  return out;
}

json to_json(const GreenResult &g) {
  json out = {{"kind", to_string(g.kind)}, {"step", g.step}};
  if (!g.place.is_arch()) {
    out[g.kind == GreenKind::Unresolved ? "upper" : "value"] = to_string(g.exact);
  }
  out["approx"] = to_json(g.value);
  return out;
}

json to_json(const HeightReport &r) {
  json places = json::array();
  for (const auto &p : r.places)
    places.push_back({{"place", p.place.to_string()}, {"B", to_json(p.B)}, {"lambda_crit", to_json(p.lambda_crit)}});
  return {{"places", places}, {"weil", to_json(r.weil)}, {"crit", to_json(r.crit)}};
}

json to_json(const OrbitRecord &r) {
  json steps = json::array();
  for (const auto &s : r.steps)
    steps.push_back({{"n", s.n}, {"degree", s.degree}, {"radical", to_json(s.radical.form())}});
  json out = {{"steps", steps}};
  if (r.status == OrbitStatus::PreperiodicProvenAt)
    out["status"] = {{"preperiodic_at", r.m}};
  else
    out["status"] = {{"inconclusive", r.m}};
  return out;
}

json to_json(const Portrait &p) {
  auto id = [](int k) { return "D" + std::to_string(k + 1); };
  json comps = json::array();
  for (std::size_t k = 0; k < p.components.size(); ++k) {
    const auto &c = p.components[k];
    json image = json::array();
    for (int q : c.image)
      image.push_back(id(q));
    comps.push_back({{"id", id(static_cast<int>(k))},
                     {"form", c.divisor.form().to_string()},
                     {"degree", c.divisor.degree()},
                     {"image", image}});
  }
  json chains = json::array();
  for (const auto &chain : p.chains) {
    json ids = json::array();
    for (int k : chain)
      ids.push_back(id(k));
    chains.push_back(ids);
  }
  return {{"components", comps}, {"chains", chains}};
}

json to_json(const Certificate &c) {
  json out = {{"verdict", to_string(c.verdict)}, {"step", c.step}};
  if (c.place)
    out["place"] = c.place->to_string();
  if (c.witness)
    out["witness"] = to_json(*c.witness);
  json radicals = json::array();
  for (const auto &r : c.radicals)
    radicals.push_back(to_json(r.form()));
  out["radicals"] = radicals;
  return out;
}

json to_json(const std::vector<ConjugacyClass> &classes) {
  json out = json::array();
  for (const auto &c : classes) {
    json members = json::array();
    for (const auto &m : c.members)
      members.push_back(m);
    out.push_back({{"representative", c.representative},
                   {"members", members},
                   {"irrational_fixed_points_only", c.irrational_fixed_points_only}});
  }
  return out;
}

json to_json(const SearchResult &r) {
  json survivors = json::array();
  for (const auto &s : r.survivors)
    survivors.push_back({{"tuple", s.tuple},
                         {"verdict", to_string(s.verdict)},
                         {"witness_place", s.witness_place},
                         {"witness_step", s.step}});
  return {{"box", r.box},
          {"total", r.total},
          {"examined", r.examined},
          {"complete", r.complete},
          {"not_pcf", r.not_pcf},
          {"unknown", r.unknown()},
          {"survivors", survivors},
          {"classes", to_json(r.classes)}};
}

} // namespace monicdyn
