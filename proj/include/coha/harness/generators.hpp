#pragma once

#include <random>

#include "coha/hall/hall.hpp"

namespace coha {

inline SlotAssignment algebra_slots(const DualityQuiver& q, const DimVec& d) {
  SlotAssignment s;
  for (int v = 0; v < q.num_vertices(); ++v) {
    s.emplace_back();
    for (int k = 1; k <= d[v]; ++k) s.back().push_back(torus_var(v, 1, k));
  }
  return s;
}

inline GroupSpec algebra_group(const DualityQuiver& q, const DimVec& d) {
  GroupSpec g;
  for (int v = 0; v < q.num_vertices(); ++v) g.push_back({BlockType::GL, d[v]});
  return g;
}

inline SlotAssignment module_slots(const DualityQuiver& q, const OspDimVec& d, int tag = 2) {
  SlotAssignment s;
  for (int o = 0; o < q.num_orbits(); ++o) {
    s.emplace_back();
    for (int k = 1; k <= d[o]; ++k) s.back().push_back(torus_var(q.vertex_orbits()[o].rep, tag, k));
  }
  return s;
}

inline GroupSpec module_group(const DualityQuiver& q, const OspDimVec& d) {
  GroupSpec g;
  for (int o = 0; o < q.num_orbits(); ++o) g.push_back({orbit_block_type(q, o), d[o]});
  return g;
}

// Random polynomial of total degree <= deg in the slot variables, made
// invariant by summing over the whole group.
inline Polynomial random_invariant(const SlotAssignment& slots, const GroupSpec& g, std::mt19937_64& rng, int deg = 2,
                                   int terms = 3) {
  std::vector<VarId> vars;
  for (const auto& b : slots) vars.insert(vars.end(), b.begin(), b.end());
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int attempt = 0; attempt < 20; ++attempt) {
    Polynomial p(coef(rng));
    for (int t = 0; t < terms && !vars.empty(); ++t) {
      Polynomial m(coef(rng));
      int e = static_cast<int>(rng() % (deg + 1));
      for (int k = 0; k < e; ++k) m *= Polynomial::variable(vars[rng() % vars.size()]);
      p += m;
    }
    Polynomial s;
    for (const auto& w : enumerate_weyl(g)) s += apply(w, slots, p);
    if (!s.is_zero()) return s;
  }
  return Polynomial(1);
}

inline AlgebraElement random_algebra_element(const DualityQuiver& q, const DimVec& d, std::mt19937_64& rng, int deg = 2) {
  return AlgebraElement::single(d, random_invariant(algebra_slots(q, d), algebra_group(q, d), rng, deg));
}

inline ModuleElement random_module_element(const DualityQuiver& q, const OspDimVec& d, std::mt19937_64& rng, int deg = 2) {
  return ModuleElement::single(d, random_invariant(module_slots(q, d), module_group(q, d), rng, deg));
}

// Gauge vertices and orbits (framing excluded).
inline std::vector<int> gauge_vertex_list(const DualityQuiver& q) {
  std::vector<int> r;
  for (int v = 0; v < q.num_vertices(); ++v)
    if (!q.vertices[v].framing) r.push_back(v);
  return r;
}

inline std::vector<int> gauge_orbit_list(const DualityQuiver& q) {
  std::vector<int> r;
  for (int o = 0; o < q.num_orbits(); ++o)
    if (!q.vertices[q.vertex_orbits()[o].rep].framing) r.push_back(o);
  return r;
}

inline DimVec unit_dimvec(const DualityQuiver& q, int v) {
  DimVec d(q.num_vertices(), 0);
  d[v] = 1;
  return d;
}

inline OspDimVec unit_ospdimvec(const DualityQuiver& q, int o) {
  OspDimVec d(q.num_orbits(), 0);
  d[o] = 1;
  return d;
}

// All gradings of total size <= n over the given slots.
inline std::vector<std::vector<int>> bounded_gradings(int size, const std::vector<int>& slots, int n) {
  std::vector<std::vector<int>> out{std::vector<int>(size, 0)};
  for (int s : slots) {
    std::vector<std::vector<int>> next;
    for (const auto& g : out) {
      int used = 0;
      for (int x : g) used += x;
      for (int k = 0; used + k <= n; ++k) {
        auto h = g;
        h[s] = k;
        next.push_back(h);
      }
    }
    out = next;
  }
  return out;
}

}  // namespace coha
