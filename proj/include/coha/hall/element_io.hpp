#pragma once

#include "coha/core/text.hpp"
#include "coha/hall/hall.hpp"
#include "coha/quiver/json_io.hpp"

namespace coha {

// Element files hold one {"grading": {...}, "poly": text} object, or an array of them.
namespace detail {

template <class E, class G>
E element_from_json(const DualityQuiver& q, const json& j, G grading) {
  E e;
  auto one = [&](const json& c) {
    detail::require_keys(c, {"grading", "poly"}, "element");
    if (!c.contains("grading") || !c.contains("poly")) throw ParseError("element needs 'grading' and 'poly'");
    auto d = grading(q, c.at("grading"));
    auto p = parse_polynomial(c.at("poly").get<std::string>(), q.text_context());
    auto [it, fresh] = e.comps.emplace(d, p);
    if (!fresh) it->second += p;
  };
  if (j.is_array()) {
    for (const auto& c : j) one(c);
  } else {
    one(j);
  }
  return e;
}

template <class M, class G>
json element_to_json(const DualityQuiver& q, const M& comps, G grading) {
  json a = json::array();
  for (const auto& [d, p] : comps) {
    if (p.is_zero()) continue;
    a.push_back({{"grading", grading(q, d)}, {"poly", to_text(p, q.text_context())}});
  }
  if (a.size() == 1) return a[0];
  return a;
}

}  // namespace detail

inline AlgebraElement algebra_element_from_json(const DualityQuiver& q, const json& j) {
  return detail::element_from_json<AlgebraElement>(q, j, dimvec_from_json);
}

inline ModuleElement module_element_from_json(const DualityQuiver& q, const json& j) {
  return detail::element_from_json<ModuleElement>(q, j, ospdimvec_from_json);
}

inline json to_json(const DualityQuiver& q, const AlgebraElement& e) { return detail::element_to_json(q, e.comps, to_json_dimvec); }

inline json to_json(const DualityQuiver& q, const ModuleElement& e) { return detail::element_to_json(q, e.comps, to_json_ospdimvec); }

}  // namespace coha
