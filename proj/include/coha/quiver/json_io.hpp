#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "coha/quiver/quiver.hpp"

namespace coha {

using json = nlohmann::ordered_json;

namespace detail {

inline void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ParseError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
T get_field(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ParseError("missing key '" + key + "' in " + where);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad value for '" + key + "' in " + where + ": " + e.what());
  }
}

}  // namespace detail

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
}

inline FramingEntry framing_entry_from_json(const json& j, int vertex, const TextContext& ctx, const std::string& where) {
  detail::require_keys(j, {"rank", "weights", "odd", "arrow_weight"}, where);
  FramingEntry e;
  e.rank = detail::get_field<int>(j, "rank", where);
  if (e.rank < 0) throw ParseError("negative framing rank in " + where);
  if (j.contains("weights")) {
    for (const auto& w : j.at("weights")) e.weights.push_back(parse_linear_form(w.get<std::string>(), ctx));
  } else {
    for (int k = 1; k <= e.rank; ++k) e.weights.push_back(LinearForm::var(framing_var(vertex, k)));
  }
  if (j.contains("odd")) e.odd = j.at("odd").get<bool>();
  if (j.contains("arrow_weight")) e.arrow_weight = parse_linear_form(j.at("arrow_weight").get<std::string>(), ctx);
  return e;
}

// Schema: {"vertices": [{"id","theta","sgn"}], "arrows": [{"id","src","tgt","theta","sgn","weight"}],
//          "fixed_types": {id: "Sp"|"OEven"|"OOdd"}, "framing": {rep: {"rank","weights","odd","arrow_weight"}},
//          "params": [names]}.  Unknown keys are rejected.
inline DualityQuiver quiver_from_json(const json& j) {
  detail::require_keys(j, {"vertices", "arrows", "fixed_types", "framing", "params"}, "quiver");
  DualityQuiver q;
  if (!j.contains("vertices") || !j.at("vertices").is_array()) throw ParseError("quiver needs a 'vertices' array");
  for (const auto& v : j.at("vertices")) {
    detail::require_keys(v, {"id", "theta", "sgn"}, "vertex");
    QVertex x;
    x.id = detail::get_field<std::string>(v, "id", "vertex");
    x.theta = v.contains("theta") ? v.at("theta").get<std::string>() : x.id;
    x.sgn = v.contains("sgn") ? v.at("sgn").get<int>() : 1;
    q.vertices.push_back(std::move(x));
  }
  TextContext ctx;
  for (const auto& v : q.vertices) ctx.vertex_names.push_back(v.id);
  if (j.contains("params")) q.params = j.at("params").get<std::vector<std::string>>();
  if (j.contains("arrows")) {
    for (const auto& a : j.at("arrows")) {
      detail::require_keys(a, {"id", "src", "tgt", "theta", "sgn", "weight"}, "arrow");
      QArrow x;
      x.id = detail::get_field<std::string>(a, "id", "arrow");
      x.src = detail::get_field<std::string>(a, "src", "arrow '" + x.id + "'");
      x.tgt = detail::get_field<std::string>(a, "tgt", "arrow '" + x.id + "'");
      x.theta = a.contains("theta") ? a.at("theta").get<std::string>() : x.id;
      x.sgn = a.contains("sgn") ? a.at("sgn").get<int>() : 1;
      if (a.contains("weight")) {
        const auto& w = a.at("weight");
        x.weight = w.is_string() ? parse_linear_form(w.get<std::string>(), ctx) : LinearForm(Rational(w.get<long>()));
      }
      q.arrows.push_back(std::move(x));
    }
  }
  if (j.contains("fixed_types")) {
    const auto& ft = j.at("fixed_types");
    if (!ft.is_object()) throw ParseError("'fixed_types' must be an object");
    for (auto it = ft.begin(); it != ft.end(); ++it) {
      bool found = false;
      for (auto& v : q.vertices)
        if (v.id == it.key()) {
          v.type = fixed_type_from_string(it.value().get<std::string>());
          found = true;
        }
      if (!found) throw ParseError("fixed type given for unknown vertex '" + it.key() + "'");
    }
  }
  if (j.contains("framing")) {
    const auto& fr = j.at("framing");
    if (!fr.is_object()) throw ParseError("'framing' must be an object");
    for (auto it = fr.begin(); it != fr.end(); ++it) {
      int v = ctx.vertex_index(it.key());
      q.framing.entries[it.key()] = framing_entry_from_json(it.value(), v, ctx, "framing '" + it.key() + "'");
    }
  }
  q.finalize();
  return q;
}

inline json to_json(const DualityQuiver& q) {
  TextContext ctx = q.text_context();
  json j;
  j["vertices"] = json::array();
  for (const auto& v : q.vertices) {
    if (v.framing) continue;
    j["vertices"].push_back({{"id", v.id}, {"theta", v.theta}, {"sgn", v.sgn}});
  }
  j["arrows"] = json::array();
  for (const auto& a : q.arrows) {
    if (a.framing) continue;
    j["arrows"].push_back({{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}, {"theta", a.theta}, {"sgn", a.sgn},
                           {"weight", to_text(a.weight, ctx)}});
  }
  json ft = json::object();
  for (const auto& v : q.vertices)
    if (v.type && !v.framing) ft[v.id] = to_string(*v.type);
  j["fixed_types"] = ft;
  if (!q.framing.entries.empty()) {
    json fr = json::object();
    for (const auto& [id, e] : q.framing.entries) {
      json x;
      x["rank"] = e.rank;
      x["weights"] = json::array();
      for (const auto& w : e.weights) x["weights"].push_back(to_text(w, ctx));
      if (e.odd) x["odd"] = true;
      if (!e.arrow_weight.is_zero()) x["arrow_weight"] = to_text(e.arrow_weight, ctx);
      fr[id] = x;
    }
    j["framing"] = fr;
  }
  j["params"] = q.params;
  return j;
}

inline DualityQuiver load_quiver(const std::string& path) { return quiver_from_json(read_json_file(path)); }

inline json violations_to_json(const std::vector<Violation>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back({{"code", v.code}, {"ids", v.ids}, {"message", v.message}});
  return a;
}

// Plain quiver for double_triple: {"vertices": [ids], "arrows": [{"id","src","tgt","sgn","theta"}],
// "theta": {vertex: image}, "sgn": {vertex: sign}, "fixed_types": {...}, "convention": name, "type": name}.
inline std::pair<PlainQuiver, TripleOptions> plain_quiver_from_json(const json& j) {
  detail::require_keys(j, {"vertices", "arrows", "theta", "sgn", "fixed_types", "convention", "type"}, "plain quiver");
  PlainQuiver p;
  TripleOptions o;
  p.vertices = detail::get_field<std::vector<std::string>>(j, "vertices", "plain quiver");
  if (j.contains("arrows"))
    for (const auto& a : j.at("arrows")) {
      detail::require_keys(a, {"id", "src", "tgt", "sgn", "theta"}, "plain arrow");
      PlainArrow x{detail::get_field<std::string>(a, "id", "plain arrow"), detail::get_field<std::string>(a, "src", "plain arrow"),
                   detail::get_field<std::string>(a, "tgt", "plain arrow"), a.contains("sgn") ? a.at("sgn").get<int>() : 1};
      if (a.contains("theta")) p.arrow_theta[x.id] = a.at("theta").get<std::string>();
      p.arrows.push_back(x);
    }
  if (j.contains("theta")) p.vertex_theta = j.at("theta").get<std::map<std::string, std::string>>();
  if (j.contains("sgn")) p.vertex_sgn = j.at("sgn").get<std::map<std::string, int>>();
  if (j.contains("fixed_types"))
    for (const auto& [k, v] : j.at("fixed_types").get<std::map<std::string, std::string>>()) p.fixed_types[k] = fixed_type_from_string(v);
  if (j.contains("convention")) {
    auto c = j.at("convention").get<std::string>();
    if (c == "jordan") o.convention = SignConvention::Jordan;
    else if (c == "bipartite") o.convention = SignConvention::Bipartite;
    else if (c == "involution") o.convention = SignConvention::Involution;
    else if (c == "auto") o.convention = SignConvention::Auto;
    else throw Error("unsupported-sign-convention", "unknown convention '" + c + "'");
  }
  if (j.contains("type")) {
    o.jordan_type = fixed_type_from_string(j.at("type").get<std::string>());
    o.bipartite_first = o.jordan_type;
  }
  return {p, o};
}

// Gradings: {"vertex-id": n, ...} for DimVec (vertices), {"orbit-rep-id": n} for OspDimVec.
inline DimVec dimvec_from_json(const DualityQuiver& q, const json& j) {
  if (!j.is_object()) throw Error("grading-mismatch", "grading must be an object");
  DimVec d(q.num_vertices(), 0);
  for (auto it = j.begin(); it != j.end(); ++it) {
    int v = q.vertex_index(it.key());
    if (v < 0 || q.vertices[v].framing) throw Error("grading-mismatch", "grading names unknown vertex '" + it.key() + "'");
    int n = it.value().get<int>();
    if (n < 0) throw Error("grading-mismatch", "negative grading at '" + it.key() + "'");
    d[v] = n;
  }
  return d;
}

inline OspDimVec ospdimvec_from_json(const DualityQuiver& q, const json& j) {
  if (!j.is_object()) throw Error("grading-mismatch", "grading must be an object");
  OspDimVec d(q.num_orbits(), 0);
  for (auto it = j.begin(); it != j.end(); ++it) {
    int v = q.vertex_index(it.key());
    if (v < 0 || q.vertices[v].framing || q.vertex_orbits()[q.orbit_of(v)].rep != v)
      throw Error("grading-mismatch", "module grading key '" + it.key() + "' is not an orbit representative");
    int n = it.value().get<int>();
    if (n < 0) throw Error("grading-mismatch", "negative grading at '" + it.key() + "'");
    d[q.orbit_of(v)] = n;
  }
  return d;
}

inline json to_json_dimvec(const DualityQuiver& q, const DimVec& d) {
  json j = json::object();
  for (int v = 0; v < q.num_vertices(); ++v)
    if (!q.vertices[v].framing && d[v]) j[q.vertices[v].id] = d[v];
  return j;
}

inline json to_json_ospdimvec(const DualityQuiver& q, const OspDimVec& d) {
  json j = json::object();
  for (int o = 0; o < q.num_orbits(); ++o)
    if (d[o]) j[q.vertices[q.vertex_orbits()[o].rep].id] = d[o];
  return j;
}

}  // namespace coha
