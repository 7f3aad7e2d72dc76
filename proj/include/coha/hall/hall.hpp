#pragma once

#include <map>
#include <string>
#include <vector>

#include "coha/kernels/kernels.hpp"
#include "coha/weyl/weyl.hpp"

namespace coha {

// Homogeneous components keyed by dimension vector.  Algebra components use
// x[v,1,k], module components x[rep,2,k].
struct AlgebraElement {
  std::map<DimVec, Polynomial> comps;

  static AlgebraElement single(const DimVec& d, Polynomial p) {
    AlgebraElement e;
    e.comps.emplace(d, std::move(p));
    return e;
  }
  bool is_zero() const {
    for (const auto& [d, p] : comps)
      if (!p.is_zero()) return false;
    return true;
  }
};

struct ModuleElement {
  std::map<OspDimVec, Polynomial> comps;

  static ModuleElement single(const OspDimVec& d, Polynomial p) {
    ModuleElement e;
    e.comps.emplace(d, std::move(p));
    return e;
  }
  bool is_zero() const {
    for (const auto& [d, p] : comps)
      if (!p.is_zero()) return false;
    return true;
  }
};

inline bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  auto nz = [](const AlgebraElement& e) {
    std::map<DimVec, Polynomial> m;
    for (const auto& [d, p] : e.comps)
      if (!p.is_zero()) m.emplace(d, p);
    return m;
  };
  return nz(a) == nz(b);
}

inline bool operator==(const ModuleElement& a, const ModuleElement& b) {
  auto nz = [](const ModuleElement& e) {
    std::map<OspDimVec, Polynomial> m;
    for (const auto& [d, p] : e.comps)
      if (!p.is_zero()) m.emplace(d, p);
    return m;
  };
  return nz(a) == nz(b);
}

inline ModuleElement vacuum(const DualityQuiver& q) { return ModuleElement::single(OspDimVec(q.num_orbits(), 0), Polynomial(1)); }

inline void check_algebra_grading(const DualityQuiver& q, const DimVec& d) {
  if (static_cast<int>(d.size()) != q.num_vertices()) throw Error("grading-mismatch", "dimension vector has the wrong length");
  for (int v = 0; v < q.num_vertices(); ++v) {
    if (d[v] < 0) throw Error("grading-mismatch", "negative dimension");
    if (d[v] && q.vertices[v].framing) throw Error("grading-mismatch", "framing vertices carry no gauge dimension");
  }
}

inline void check_module_grading(const DualityQuiver& q, const OspDimVec& d) {
  if (static_cast<int>(d.size()) != q.num_orbits()) throw Error("grading-mismatch", "module dimension vector has the wrong length");
  for (int o = 0; o < q.num_orbits(); ++o) {
    if (d[o] < 0) throw Error("grading-mismatch", "negative dimension");
    if (d[o] && q.vertices[q.vertex_orbits()[o].rep].framing) throw Error("grading-mismatch", "framing vertices carry no gauge dimension");
  }
}

// Every variable of p must be a slot of the given tag within the grading.
template <class D>
void check_variables(const DualityQuiver& q, const Polynomial& p, const D& d, int tag, bool orbit_keyed) {
  for (VarId v : p.variables()) {
    if (kind_of(v) != VarKind::TorusSlot) continue;
    auto x = Variable::from_id(v);
    int slot = orbit_keyed ? (x.vertex < q.num_vertices() && q.vertex_orbits()[q.orbit_of(x.vertex)].rep == x.vertex ? q.orbit_of(x.vertex) : -1)
                           : x.vertex;
    if (x.tag != tag || slot < 0 || slot >= static_cast<int>(d.size()) || x.index < 1 || x.index > d[slot])
      throw Error("grading-mismatch", "variable " + to_text(v, q.text_context()) + " lies outside the component grading");
  }
}

// Raises pole-cancellation-failure naming a surviving denominator factor.
inline Polynomial require_polynomial(const DualityQuiver& q, const FactoredRational& r, const std::string& what) {
  if (!r.is_polynomial())
    throw Error("pole-cancellation-failure",
                what + ": uncancelled factor " + to_text(r.denominator().front().first, q.text_context()) + " in " + to_text(r, q.text_context()));
  return r.numerator();
}

// Signed relabelling x -> s*y of polynomial variables.
using Relabel = std::map<VarId, std::pair<VarId, int>>;

inline std::map<VarId, LinearForm> to_substitution(const Relabel& r) {
  std::map<VarId, LinearForm> m;
  for (const auto& [v, img] : r) m.emplace(v, LinearForm::var(img.first, img.second));
  return m;
}

// Relabelling that sends slot k of tag `tag` at `vertex` to the k-th form of images.
inline void add_relabel(Relabel& r, VarId from, const LinearForm& to) {
  if (to.coeffs().size() != 1 || to.constant() != 0)
    throw std::logic_error("relabel target is not a signed variable");
  const auto& [v, c] = to.coeffs()[0];
  r.emplace(from, std::make_pair(v, static_cast<int>(c.get_num().get_si())));
}

inline Relabel block_relabel(const DualityQuiver& q, const Block& target, int tag) {
  Relabel r;
  for (int v = 0; v < q.num_vertices(); ++v)
    for (size_t k = 0; k < target[v].size(); ++k) add_relabel(r, torus_var(v, tag, static_cast<int>(k) + 1), target[v][k]);
  return r;
}

inline Relabel modblock_relabel(const DualityQuiver& q, const ModBlock& target, int tag) {
  Relabel r;
  for (int o = 0; o < q.num_orbits(); ++o)
    for (size_t k = 0; k < target[o].size(); ++k)
      add_relabel(r, torus_var(q.vertex_orbits()[o].rep, tag, static_cast<int>(k) + 1), target[o][k]);
  return r;
}

inline FactoredRational relabel(const FactoredRational& f, const Relabel& r) { return r.empty() ? f : f.substitute(to_substitution(r)); }

inline DimVec add(const DimVec& a, const DimVec& b) {
  DimVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

// ---- product ----

// Output slots x[v,1,1..d1+d2]; the first factor sits on the first d1 slots.
struct ProductLayout {
  Block A, B;
  SlotAssignment slots;
  GroupSpec group;
  std::vector<WeylElement> reps;
};

inline ProductLayout product_layout(const DualityQuiver& q, const DimVec& d1, const DimVec& d2) {
  ProductLayout l;
  l.A = slot_block(q, d1, 1);
  l.B = empty_block(q);
  std::vector<std::pair<std::vector<int>, BlockType>> blocks;
  for (int v = 0; v < q.num_vertices(); ++v) {
    std::vector<VarId> s;
    for (int k = 1; k <= d1[v] + d2[v]; ++k) s.push_back(torus_var(v, 1, k));
    for (int k = d1[v] + 1; k <= d1[v] + d2[v]; ++k) l.B[v].push_back(LinearForm::var(torus_var(v, 1, k)));
    l.slots.push_back(s);
    l.group.push_back({BlockType::GL, d1[v] + d2[v]});
    blocks.push_back({{d1[v], d2[v]}, BlockType::GL});
  }
  l.reps = coset_reps(blocks);
  return l;
}

// Shuffle product of rational components: sum over shuffles of F1(A) F2(B) (A|B).
inline FactoredRational product_component(const DualityQuiver& q, const DimVec& d1, const FactoredRational& F1,
                                          const DimVec& d2, const FactoredRational& F2, int jobs = 0) {
  auto l = product_layout(q, d1, d2);
  FactoredRational base = gl_pair(q, l.A, l.B) * F1 * relabel(F2, block_relabel(q, l.B, 1));
  return symmetrize_over(base, l.slots, l.group, l.reps, jobs);
}

inline AlgebraElement product(const DualityQuiver& q, const AlgebraElement& f, const AlgebraElement& g, int jobs = 0) {
  std::map<DimVec, std::vector<Polynomial>> acc;
  for (const auto& [d1, p1] : f.comps) {
    check_algebra_grading(q, d1);
    check_variables(q, p1, d1, 1, false);
    for (const auto& [d2, p2] : g.comps) {
      check_algebra_grading(q, d2);
      check_variables(q, p2, d2, 1, false);
      if (p1.is_zero() || p2.is_zero()) continue;
      auto r = product_component(q, d1, FactoredRational(p1), d2, FactoredRational(p2), jobs);
      acc[add(d1, d2)].push_back(require_polynomial(q, r, "product"));
    }
  }
  AlgebraElement out;
  for (auto& [d, ps] : acc) out.comps.emplace(d, Polynomial::sum(std::move(ps)));
  return out;
}

// ---- action ----

inline int output_degree(const DualityQuiver& q, const DimVec& dA, const OspDimVec& dM, int o) {
  int n = dM[o];
  for (int v : q.vertex_orbits()[o].members) n += dA[v];
  return n;
}

inline OspDimVec output_grading(const DualityQuiver& q, const DimVec& dA, const OspDimVec& dM) {
  OspDimVec r(q.num_orbits());
  for (int o = 0; o < q.num_orbits(); ++o) r[o] = output_degree(q, dA, dM, o);
  return r;
}

inline BlockType orbit_block_type(const DualityQuiver& q, int o) {
  const auto& orb = q.vertex_orbits()[o];
  if (!orb.fixed()) return BlockType::GL;
  return q.type(orb.rep) == FixedType::OEven ? BlockType::D : BlockType::BC;
}

// Output slots y = x[rep,2,1..N] per orbit.  At a fixed orbit A takes the first
// d' slots and M the rest; at {i, j} A_i = y, A_j = -y on the next d'_j slots.
struct ActionLayout {
  Block A;
  ModBlock M;
  SlotAssignment slots;
  GroupSpec group;
  std::vector<WeylElement> reps;
};

inline ActionLayout action_layout(const DualityQuiver& q, const DimVec& dA, const OspDimVec& dM, int tag = 2) {
  ActionLayout l;
  l.A = empty_block(q);
  l.M = empty_modblock(q);
  std::vector<std::pair<std::vector<int>, BlockType>> blocks;
  for (int o = 0; o < q.num_orbits(); ++o) {
    const auto& orb = q.vertex_orbits()[o];
    int rep = orb.rep, n = output_degree(q, dA, dM, o), k = 1;
    auto y = [&](int i) { return LinearForm::var(torus_var(rep, tag, i)); };
    std::vector<VarId> s;
    for (int i = 1; i <= n; ++i) s.push_back(torus_var(rep, tag, i));
    l.slots.push_back(s);
    l.group.push_back({orbit_block_type(q, o), n});
    for (int i = 0; i < dA[rep]; ++i) l.A[rep].push_back(y(k++));
    if (orb.fixed()) {
      blocks.push_back({{dA[rep], dM[o]}, orbit_block_type(q, o)});
    } else {
      int j = orb.members[1];
      for (int i = 0; i < dA[j]; ++i) l.A[j].push_back(-y(k++));
      blocks.push_back({{dA[rep], dA[j], dM[o]}, BlockType::GL});
    }
    for (int i = 0; i < dM[o]; ++i) l.M[o].push_back(y(k++));
  }
  l.reps = coset_reps(blocks);
  return l;
}

// Images of the layout blocks under one coset representative.
inline std::pair<Block, ModBlock> action_images(const ActionLayout& l, const WeylElement& w) {
  auto sub = substitution_of(w, l.slots);
  auto img = [&](std::vector<std::vector<LinearForm>> b) {
    for (auto& xs : b)
      for (auto& x : xs) x = x.substitute(sub);
    return b;
  };
  return {img(l.A), img(l.M)};
}

// Sum over coset reps of F(A) G(M) [A|M] (times the framing factor).
inline FactoredRational act_component(const DualityQuiver& q, const DimVec& dA, const FactoredRational& F,
                                      const OspDimVec& dM, const FactoredRational& G, bool framed,
                                      const KernelConfig& cfg = {}, int jobs = 0) {
  auto l = action_layout(q, dA, dM);
  FactorList k;
  osp_kernel_factors(q, l.A, l.M, k, cfg);
  if (framed) framing_factors(q, l.A, k, cfg);
  FactoredRational base = k.value() * relabel(F, block_relabel(q, l.A, 1)) * relabel(G, modblock_relabel(q, l.M, 2));
  return symmetrize_over(base, l.slots, l.group, l.reps, jobs);
}

inline void require_framing(const DualityQuiver& q, bool framed) {
  if (framed && q.framing.empty()) throw Error("framing-missing", "framed action needs a quiver with a framing");
}

inline ModuleElement act(const DualityQuiver& q, const AlgebraElement& f, const ModuleElement& m, bool framed = false,
                         const KernelConfig& cfg = {}, int jobs = 0) {
  require_framing(q, framed);
  std::map<OspDimVec, std::vector<Polynomial>> acc;
  for (const auto& [dA, p1] : f.comps) {
    check_algebra_grading(q, dA);
    check_variables(q, p1, dA, 1, false);
    for (const auto& [dM, p2] : m.comps) {
      check_module_grading(q, dM);
      check_variables(q, p2, dM, 2, true);
      if (p1.is_zero() || p2.is_zero()) continue;
      auto r = act_component(q, dA, FactoredRational(p1), dM, FactoredRational(p2), framed, cfg, jobs);
      acc[output_grading(q, dA, dM)].push_back(require_polynomial(q, r, "action"));
    }
  }
  ModuleElement out;
  for (auto& [d, ps] : acc) out.comps.emplace(d, Polynomial::sum(std::move(ps)));
  return out;
}

// ---- coproduct and coactions ----

struct CoproductTerm {
  DimVec left, right;
  FactoredRational value;
};

struct CoactionTerm {
  DimVec left;       // GL part, x[v,1,k]
  OspDimVec right;   // self-dual part, x[rep,2,k]
  FactoredRational value;
};

struct RightCoactionTerm {
  OspDimVec left;  // self-dual part, x[rep,2,k]
  DimVec right;    // GL part, x[v,1,k]
  FactoredRational value;
};

inline std::vector<DimVec> sub_gradings(const DimVec& d) {
  std::vector<DimVec> out{{}};
  for (int n : d) {
    std::vector<DimVec> next;
    for (const auto& g : out)
      for (int k = 0; k <= n; ++k) {
        auto h = g;
        h.push_back(k);
        next.push_back(h);
      }
    out = next;
  }
  return out;
}

// Delta f = f(x1 u x2)/(x1|x2) with x1 = x[v,1,*], x2 = x[v,2,*].
inline std::vector<CoproductTerm> coproduct_component(const DualityQuiver& q, const DimVec& d, const FactoredRational& F) {
  std::vector<CoproductTerm> out;
  for (const auto& d1 : sub_gradings(d)) {
    DimVec d2(d.size());
    for (size_t v = 0; v < d.size(); ++v) d2[v] = d[v] - d1[v];
    Block x1 = slot_block(q, d1, 1), x2 = slot_block(q, d2, 2);
    Relabel r;
    for (int v = 0; v < q.num_vertices(); ++v)
      for (int k = 1; k <= d2[v]; ++k) r.emplace(torus_var(v, 1, d1[v] + k), std::make_pair(torus_var(v, 2, k), 1));
    out.push_back({d1, d2, relabel(F, r) / gl_pair(q, x1, x2)});
  }
  return out;
}

inline std::vector<CoproductTerm> coproduct(const DualityQuiver& q, const AlgebraElement& f) {
  std::vector<CoproductTerm> out;
  for (const auto& [d, p] : f.comps) {
    check_algebra_grading(q, d);
    check_variables(q, p, d, 1, false);
    for (auto& t : coproduct_component(q, d, FactoredRational(p))) out.push_back(std::move(t));
  }
  return out;
}

// Left splits (l, r) of a module grading: l a GL grading with sum over each orbit <= D_o.
inline std::vector<std::pair<DimVec, OspDimVec>> coaction_splits(const DualityQuiver& q, const OspDimVec& D) {
  std::vector<std::pair<DimVec, OspDimVec>> out{{DimVec(q.num_vertices(), 0), D}};
  for (int o = 0; o < q.num_orbits(); ++o) {
    std::vector<std::pair<DimVec, OspDimVec>> next;
    const auto& orb = q.vertex_orbits()[o];
    for (const auto& [l, r] : out) {
      if (orb.fixed()) {
        for (int a = 0; a <= D[o]; ++a) {
          auto l2 = l;
          auto r2 = r;
          l2[orb.rep] = a;
          r2[o] = D[o] - a;
          next.push_back({l2, r2});
        }
      } else {
        for (int a = 0; a <= D[o]; ++a)
          for (int b = 0; a + b <= D[o]; ++b) {
            auto l2 = l;
            auto r2 = r;
            l2[orb.rep] = a;
            l2[orb.members[1]] = b;
            r2[o] = D[o] - a - b;
            next.push_back({l2, r2});
          }
      }
    }
    out = next;
  }
  return out;
}

// H(rho(l, r)) with l = x[v,1,*] and r = x[rep,2,*].
inline FactoredRational restrict_to_split(const DualityQuiver& q, const FactoredRational& H, const DimVec& dl,
                                          const OspDimVec& dr) {
  Block l = slot_block(q, dl, 1);
  ModBlock r = slot_modblock(q, dr, 2);
  return relabel(H, modblock_relabel(q, rho(q, l, r), 2));
}

// Delta_L(m)_{l,r} = m(rho(l, r)) / [l|r].
inline std::vector<CoactionTerm> coact_left_component(const DualityQuiver& q, const OspDimVec& D, const FactoredRational& H,
                                                      bool framed = false, const KernelConfig& cfg = {}) {
  std::vector<CoactionTerm> out;
  for (const auto& [dl, dr] : coaction_splits(q, D)) {
    Block l = slot_block(q, dl, 1);
    ModBlock r = slot_modblock(q, dr, 2);
    FactorList k;
    osp_kernel_factors(q, l, r, k, cfg);
    if (framed) framing_factors(q, l, k, cfg);
    out.push_back({dl, dr, restrict_to_split(q, H, dl, dr) / k.value()});
  }
  return out;
}

inline std::vector<CoactionTerm> coact_left(const DualityQuiver& q, const ModuleElement& m, bool framed = false,
                                            const KernelConfig& cfg = {}) {
  require_framing(q, framed);
  std::vector<CoactionTerm> out;
  for (const auto& [D, p] : m.comps) {
    check_module_grading(q, D);
    check_variables(q, p, D, 2, true);
    for (auto& t : coact_left_component(q, D, FactoredRational(p), framed, cfg)) out.push_back(std::move(t));
  }
  return out;
}

// Delta_R(m)_{r,l} = m(rho(l, r)) / K(r|l).
inline std::vector<RightCoactionTerm> coact_right(const DualityQuiver& q, const ModuleElement& m) {
  std::vector<RightCoactionTerm> out;
  for (const auto& [D, p] : m.comps) {
    check_module_grading(q, D);
    check_variables(q, p, D, 2, true);
    FactoredRational H(p);
    for (const auto& [dl, dr] : coaction_splits(q, D)) {
      Block l = slot_block(q, dl, 1);
      ModBlock r = slot_modblock(q, dr, 2);
      out.push_back({dr, dl, restrict_to_split(q, H, dl, dr) / osp_pair_reversed(q, r, l)});
    }
  }
  return out;
}

// ---- Cartan series ----

inline VarId spectral_var() { return series_var("w"); }

inline Block point_block(const DualityQuiver& q, int vertex, const LinearForm& w) {
  Block b = empty_block(q);
  b[vertex].push_back(w);
  return b;
}

// phi_i(w) on a GL block Z: (w|Z)/(Z|w) with w placed at vertex i.
inline FactoredRational phi_on(const DualityQuiver& q, int i, const Block& Z, const LinearForm& w) {
  Block W = point_block(q, i, w);
  return gl_pair(q, W, Z) / gl_pair(q, Z, W);
}

inline FactoredRational phi_closed(const DualityQuiver& q, int i, const DimVec& d) {
  return phi_on(q, i, slot_block(q, d, 1), LinearForm::var(spectral_var()));
}

inline LaurentSeries phi_series(const DualityQuiver& q, int i, const DimVec& d, int order) {
  return expand_at_infinity(phi_closed(q, i, d), spectral_var(), order);
}

// Vacuum eigenvalue prod_{omega in W_i} (w - omega)/(w - omega - hbar).
inline FactoredRational vacuum_factor(const DualityQuiver& q, int i, const LinearForm& w) {
  Block W = framing_weights(q);
  FactorList f;
  LinearForm h = LinearForm::var(hbar_var());
  for (const auto& u : W[i]) {
    f.mul(w - u);
    f.div(w - u - h);
  }
  return f.value();
}

// psi_i(w) on module degree d: V_i(w) phi_i(w)(flat z).  The weight-0 slot of an
// odd orthogonal vertex is left out, so the vacuum eigenvalue is exactly V_i(w).
inline FactoredRational psi_closed(const DualityQuiver& q, int i, const OspDimVec& d) {
  LinearForm w = LinearForm::var(spectral_var());
  Block z = flat(q, slot_modblock(q, d, 2));
  for (auto& xs : z) std::erase_if(xs, [](const LinearForm& x) { return x.is_zero(); });
  return vacuum_factor(q, i, w) * phi_on(q, i, z, w);
}

inline std::map<OspDimVec, FactoredRational> psi_act(const DualityQuiver& q, int i, const ModuleElement& m) {
  std::map<OspDimVec, FactoredRational> out;
  for (const auto& [d, p] : m.comps) {
    check_module_grading(q, d);
    check_variables(q, p, d, 2, true);
    out.emplace(d, psi_closed(q, i, d) * FactoredRational(p));
  }
  return out;
}

inline std::map<OspDimVec, LaurentSeries> psi_series(const DualityQuiver& q, int i, const ModuleElement& m, int order) {
  std::map<OspDimVec, LaurentSeries> out;
  for (const auto& [d, r] : psi_act(q, i, m)) out.emplace(d, expand_at_infinity(r, spectral_var(), order));
  return out;
}

// Left leg of Delta(psi_i(w)): phi_i(w) phi_{theta i}(-w)^{-1} on l = x[v,1,*].
inline FactoredRational cartan_left_factor(const DualityQuiver& q, int i, const DimVec& dl) {
  Block l = slot_block(q, dl, 1);
  LinearForm w = LinearForm::var(spectral_var());
  return phi_on(q, i, l, w) / phi_on(q, q.theta(i), l, -w);
}

struct CartanCoaction {
  FactoredRational left, right;
};

inline CartanCoaction cartan_coaction(const DualityQuiver& q, int i, const DimVec& dl, const OspDimVec& dr) {
  return {cartan_left_factor(q, i, dl), psi_closed(q, i, dr)};
}

}  // namespace coha
