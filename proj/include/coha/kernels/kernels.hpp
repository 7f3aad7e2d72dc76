#pragma once

#include <string>
#include <vector>

#include "coha/quiver/quiver.hpp"

namespace coha {

// Weights per vertex (GL blocks) or per vertex orbit (self-dual blocks).
using Block = std::vector<std::vector<LinearForm>>;
using ModBlock = std::vector<std::vector<LinearForm>>;

// Single sign/weight corruptions of the case formulas, used to test that the
// identity suites detect kernel errors.
enum class Mutation {
  None,
  CaseOOutgoingWeight,
  CaseOPairingWeight,
  CaseODualWeight,
  CaseIWeightSign,
  CaseIParity,
  CaseIIIOutgoingWeight,
  CaseIIIPairingWeight,
  CaseIIIPrimeDualWeight,
  RootPairSign,
  FramingDualWeight,
};

inline const std::vector<Mutation>& all_mutations() {
  static const std::vector<Mutation> m{Mutation::CaseOOutgoingWeight,   Mutation::CaseOPairingWeight,
                                       Mutation::CaseODualWeight,       Mutation::CaseIWeightSign,
                                       Mutation::CaseIParity,           Mutation::CaseIIIOutgoingWeight,
                                       Mutation::CaseIIIPairingWeight,  Mutation::CaseIIIPrimeDualWeight,
                                       Mutation::RootPairSign,          Mutation::FramingDualWeight};
  return m;
}

inline std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::None: return "none";
    case Mutation::CaseOOutgoingWeight: return "case-o-outgoing-weight";
    case Mutation::CaseOPairingWeight: return "case-o-pairing-weight";
    case Mutation::CaseODualWeight: return "case-o-dual-weight";
    case Mutation::CaseIWeightSign: return "case-i-weight-sign";
    case Mutation::CaseIParity: return "case-i-parity";
    case Mutation::CaseIIIOutgoingWeight: return "case-iii-outgoing-weight";
    case Mutation::CaseIIIPairingWeight: return "case-iii-pairing-weight";
    case Mutation::CaseIIIPrimeDualWeight: return "case-iiiprime-dual-weight";
    case Mutation::RootPairSign: return "root-pair-sign";
    case Mutation::FramingDualWeight: return "framing-dual-weight";
  }
  return "?";
}

inline Mutation mutation_from_string(const std::string& s) {
  if (s == "none") return Mutation::None;
  for (auto m : all_mutations())
    if (to_string(m) == s) return m;
  throw Error("usage", "unknown mutation '" + s + "'");
}

struct KernelConfig {
  Mutation mutation = Mutation::None;
  bool is(Mutation m) const { return mutation == m; }
};

// Numerator and denominator linear factors collected before one canonicalization.
struct FactorList {
  Rational scalar = 1;
  std::vector<LinearForm> num, den;

  void mul(LinearForm f) { num.push_back(std::move(f)); }
  void div(LinearForm f) { den.push_back(std::move(f)); }
  void append(const FactorList& o) {
    scalar *= o.scalar;
    num.insert(num.end(), o.num.begin(), o.num.end());
    den.insert(den.end(), o.den.begin(), o.den.end());
  }
  FactoredRational value() const { return FactoredRational::product(scalar, num, den); }
};

inline Block empty_block(const DualityQuiver& q) { return Block(q.num_vertices()); }
inline ModBlock empty_modblock(const DualityQuiver& q) { return ModBlock(q.num_orbits()); }

inline Block concat(const Block& a, const Block& b) {
  Block r = a;
  for (size_t v = 0; v < b.size(); ++v) r[v].insert(r[v].end(), b[v].begin(), b[v].end());
  return r;
}

inline Block negated(const Block& a) {
  Block r = a;
  for (auto& l : r)
    for (auto& f : l) f = -f;
  return r;
}

// ---- bracket route ----

// (A|B) = prod_a prod (beta - alpha + wt(a)) / prod_v prod (beta - alpha).
inline void gl_factors(const DualityQuiver& q, const Block& A, const Block& B, FactorList& out) {
  for (int a = 0; a < q.num_arrows(); ++a) {
    if (q.arrows[a].framing) continue;
    const auto& w = q.arrows[a].weight;
    for (const auto& x : A[q.src(a)])
      for (const auto& y : B[q.tgt(a)]) out.mul(y - x + w);
  }
  for (int v = 0; v < q.num_vertices(); ++v)
    for (const auto& x : A[v])
      for (const auto& y : B[v]) out.div(y - x);
}

inline FactoredRational gl_pair(const DualityQuiver& q, const Block& A, const Block& B) {
  FactorList f;
  gl_factors(q, A, B, f);
  return f.value();
}

// tau(A)_{theta v} = -A_v.
inline Block tau(const DualityQuiver& q, const Block& A) {
  Block r(A.size());
  for (int v = 0; v < q.num_vertices(); ++v)
    for (const auto& x : A[v]) r[q.theta(v)].push_back(-x);
  return r;
}

// Pairs (k, l) with k <= l when symmetric, k < l otherwise.
template <class F>
void half_pairs(const std::vector<LinearForm>& xs, bool symmetric, F&& f) {
  for (size_t k = 0; k < xs.size(); ++k)
    for (size_t l = symmetric ? k : k + 1; l < xs.size(); ++l) f(xs[k], xs[l]);
}

inline bool symmetric_self_dual(const DualityQuiver& q, int a) { return q.arrows[a].sgn * q.vertices[q.src(a)].sgn == 1; }

// <A|tau A>: the half of (A|tau A) counted once per orbit.
inline void tau_pair_factors(const DualityQuiver& q, const Block& A, FactorList& out) {
  for (const auto& o : q.arrow_orbits()) {
    int a = o.rep;
    if (q.arrows[a].framing) continue;
    const auto& w = q.arrows[a].weight;
    if (o.members.size() == 2) {
      for (const auto& x : A[q.src(a)])
        for (const auto& y : A[q.theta(q.tgt(a))]) out.mul(-x - y + w);
    } else {
      half_pairs(A[q.src(a)], symmetric_self_dual(q, a), [&](const LinearForm& x, const LinearForm& y) { out.mul(-x - y + w); });
    }
  }
  for (const auto& o : q.vertex_orbits()) {
    int i = o.rep;
    if (q.vertices[i].framing) continue;
    if (o.fixed()) {
      half_pairs(A[i], q.type(i) == FixedType::Sp, [&](const LinearForm& x, const LinearForm& y) { out.div(-x - y); });
    } else {
      for (const auto& x : A[i])
        for (const auto& y : A[o.members[1]]) out.div(-x - y);
    }
  }
}

inline FactoredRational tau_pair(const DualityQuiver& q, const Block& A) {
  FactorList f;
  tau_pair_factors(q, A, f);
  return f.value();
}

// <tau A|A> = <B|tau B> with B = tau A.
inline FactoredRational tau_pair_reversed(const DualityQuiver& q, const Block& A) { return tau_pair(q, tau(q, A)); }

// Weights of the self-dual object: +-m at fixed vertices (plus 0 for OOdd),
// +m at the representative and -m at its dual otherwise.
inline Block flat(const DualityQuiver& q, const ModBlock& M) {
  Block r(q.num_vertices());
  for (int o = 0; o < q.num_orbits(); ++o) {
    const auto& orb = q.vertex_orbits()[o];
    if (q.vertices[orb.rep].framing) continue;
    int i = orb.rep;
    if (orb.fixed()) {
      for (const auto& m : M[o]) r[i].push_back(m);
      for (const auto& m : M[o]) r[i].push_back(-m);
      if (q.type(i) == FixedType::OOdd) r[i].push_back(LinearForm());
    } else {
      for (const auto& m : M[o]) r[i].push_back(m);
      for (const auto& m : M[o]) r[orb.members[1]].push_back(-m);
    }
  }
  return r;
}

// [A|M] = (A|flat M) <A|tau A>.
inline FactoredRational osp_pair(const DualityQuiver& q, const Block& A, const ModBlock& M) {
  FactorList f;
  gl_factors(q, A, flat(q, M), f);
  tau_pair_factors(q, A, f);
  return f.value();
}

// K(M|A) = (flat M|A) <tau A|A>, the kernel of the right coaction.
inline FactoredRational osp_pair_reversed(const DualityQuiver& q, const ModBlock& M, const Block& A) {
  FactorList f;
  gl_factors(q, flat(q, M), A, f);
  tau_pair_factors(q, tau(q, A), f);
  return f.value();
}

// Weights of the framing: +-u at fixed vertices (plus 0 if odd), u at the
// representative and -u at its dual otherwise.
inline Block framing_weights(const DualityQuiver& q, const KernelConfig& cfg = {}) {
  Block r(q.num_vertices());
  for (int o = 0; o < q.num_orbits(); ++o) {
    const auto* e = q.framing_at_orbit(o);
    if (!e) continue;
    const auto& orb = q.vertex_orbits()[o];
    int i = orb.rep;
    int dual = orb.fixed() ? i : orb.members[1];
    for (const auto& u : e->weights) r[i].push_back(u);
    for (const auto& u : e->weights) r[dual].push_back(cfg.is(Mutation::FramingDualWeight) ? u : -u);
    if (e->odd) r[i].push_back(LinearForm());
  }
  return r;
}

inline LinearForm framing_arrow_weight(const DualityQuiver& q, int v) {
  const auto* e = q.framing_at_orbit(q.orbit_of(v));
  return e ? e->arrow_weight : LinearForm();
}

// F(A) = prod_v prod_{alpha in A_v, omega in W_v} (omega - alpha + wt).
inline void framing_factors(const DualityQuiver& q, const Block& A, FactorList& out, const KernelConfig& cfg = {}) {
  Block W = framing_weights(q, cfg);
  for (int v = 0; v < q.num_vertices(); ++v) {
    if (W[v].empty()) continue;
    LinearForm wt = framing_arrow_weight(q, v);
    for (const auto& x : A[v])
      for (const auto& u : W[v]) out.mul(u - x + wt);
  }
}

inline FactoredRational framing_pair(const DualityQuiver& q, const Block& A, const KernelConfig& cfg = {}) {
  FactorList f;
  framing_factors(q, A, f, cfg);
  return f.value();
}

// ---- case route ----

// Roots of P/L at a fixed vertex: x'_i -+ x''_j, x'_i + x'_k (i < k), plus 2x'_i
// (Sp) or x'_i (OOdd).
inline std::vector<LinearForm> parabolic_roots(FixedType t, const std::vector<LinearForm>& a,
                                               const std::vector<LinearForm>& m, const KernelConfig& cfg = {}) {
  std::vector<LinearForm> r;
  for (const auto& x : a)
    for (const auto& y : m) {
      r.push_back(x - y);
      r.push_back(x + y);
    }
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = i + 1; k < a.size(); ++k) r.push_back(cfg.is(Mutation::RootPairSign) ? a[i] - a[k] : a[i] + a[k]);
  if (t == FixedType::Sp)
    for (const auto& x : a) r.push_back(x + x);
  if (t == FixedType::OOdd)
    for (const auto& x : a) r.push_back(x);
  return r;
}

// Variant in standard split coordinates x[v,1,k], x[v,2,k].
inline std::vector<LinearForm> parabolic_roots(FixedType t, int dprime, int ddprime, int vertex = 0) {
  std::vector<LinearForm> a, m;
  for (int k = 1; k <= dprime; ++k) a.push_back(LinearForm::var(torus_var(vertex, 1, k)));
  for (int k = 1; k <= ddprime; ++k) m.push_back(LinearForm::var(torus_var(vertex, 2, k)));
  return parabolic_roots(t, a, m);
}

// Roots at a non-fixed orbit {i, j}: a - m (a in A_i), a' + m (a' in A_j), a + a'.
inline std::vector<LinearForm> orbit_roots(const std::vector<LinearForm>& ai, const std::vector<LinearForm>& aj,
                                           const std::vector<LinearForm>& m) {
  std::vector<LinearForm> r;
  for (const auto& x : ai)
    for (const auto& y : m) r.push_back(x - y);
  for (const auto& x : aj)
    for (const auto& y : m) r.push_back(x + y);
  for (const auto& x : ai)
    for (const auto& y : aj) r.push_back(x + y);
  return r;
}

namespace detail {

inline LinearForm signed_weight(const LinearForm& w, bool flip) { return flip ? -w : w; }

// prod_{alpha in xs, beta in ys} (beta - alpha + wt).
inline void outgoing(const std::vector<LinearForm>& xs, const std::vector<LinearForm>& ys, const LinearForm& wt,
                     FactorList& out) {
  for (const auto& x : xs)
    for (const auto& y : ys) out.mul(y - x + wt);
}

// prod_{alpha in xs, beta in ys} (-alpha - beta + wt).
inline void pairing(const std::vector<LinearForm>& xs, const std::vector<LinearForm>& ys, const LinearForm& wt,
                    FactorList& out) {
  for (const auto& x : xs)
    for (const auto& y : ys) out.mul(-x - y + wt);
}

}  // namespace detail

// Factor of one arrow orbit (rep a) in the orthosymplectic Euler class, on the
// algebra block A and self-dual block M.
inline void case_factor(const DualityQuiver& q, int a, ArrowCase c, const Block& A, const ModBlock& M, FactorList& out,
                        const KernelConfig& cfg = {}) {
  if (classify_arrow(q, a) != c) throw Error("case-mismatch", "arrow '" + q.arrows[a].id + "' is Case " + to_string(classify_arrow(q, a)));
  Block F = flat(q, M);
  int s = q.src(a), t = q.tgt(a), b = q.theta_arrow(a);
  const LinearForm& w = q.arrows[a].weight;
  using detail::signed_weight;
  switch (c) {
    case ArrowCase::O:
      detail::outgoing(A[s], F[t], signed_weight(w, cfg.is(Mutation::CaseOOutgoingWeight)), out);
      detail::pairing(A[s], A[q.theta(t)], signed_weight(w, cfg.is(Mutation::CaseOPairingWeight)), out);
      detail::outgoing(A[q.theta(t)], F[q.theta(s)], signed_weight(w, cfg.is(Mutation::CaseODualWeight)), out);
      break;
    case ArrowCase::I: {
      // prod over the roots of Q_a of (-alpha + wt).
      bool sym = symmetric_self_dual(q, a);
      if (cfg.is(Mutation::CaseIParity)) sym = !sym;
      LinearForm wt = signed_weight(w, cfg.is(Mutation::CaseIWeightSign));
      detail::outgoing(A[s], F[s], wt, out);
      half_pairs(A[s], sym, [&](const LinearForm& x, const LinearForm& y) { out.mul(-x - y + wt); });
      break;
    }
    case ArrowCase::II:
      detail::outgoing(A[s], F[t], w, out);
      if (b != a) {
        detail::outgoing(A[s], F[t], w, out);
        detail::pairing(A[s], A[s], w, out);
      } else {
        half_pairs(A[s], symmetric_self_dual(q, a), [&](const LinearForm& x, const LinearForm& y) { out.mul(-x - y + w); });
      }
      break;
    case ArrowCase::III:
      detail::outgoing(A[s], F[t], signed_weight(w, cfg.is(Mutation::CaseIIIOutgoingWeight)), out);
      detail::pairing(A[s], A[t], signed_weight(w, cfg.is(Mutation::CaseIIIPairingWeight)), out);
      detail::outgoing(A[t], F[q.theta(s)], w, out);
      break;
    case ArrowCase::IIIPrime:
      detail::outgoing(A[s], F[t], w, out);
      detail::pairing(A[s], A[q.theta(t)], w, out);
      detail::outgoing(A[q.theta(t)], F[s], signed_weight(w, cfg.is(Mutation::CaseIIIPrimeDualWeight)), out);
      break;
    case ArrowCase::IV:
      detail::outgoing(A[s], F[t], w, out);
      detail::pairing(A[s], A[t], w, out);
      detail::outgoing(A[t], F[s], w, out);
      break;
  }
}

inline FactoredRational case_factor(const DualityQuiver& q, int a, ArrowCase c, const Block& A, const ModBlock& M,
                                    const KernelConfig& cfg = {}) {
  FactorList f;
  case_factor(q, a, c, A, M, f, cfg);
  return f.value();
}

// Denominator e(Q_0^OSp) as prod over roots of (-root).
inline void root_factors(const DualityQuiver& q, const Block& A, const ModBlock& M, FactorList& out,
                         const KernelConfig& cfg = {}) {
  for (int o = 0; o < q.num_orbits(); ++o) {
    const auto& orb = q.vertex_orbits()[o];
    int i = orb.rep;
    if (q.vertices[i].framing) continue;
    std::vector<LinearForm> roots =
        orb.fixed() ? parabolic_roots(q.type(i), A[i], M[o], cfg) : orbit_roots(A[i], A[orb.members[1]], M[o]);
    for (const auto& r : roots) out.div(-r);
  }
}

// e(Q_1^OSp)/e(Q_0^OSp) assembled from the case factors.
inline void osp_kernel_factors(const DualityQuiver& q, const Block& A, const ModBlock& M, FactorList& out,
                               const KernelConfig& cfg = {}) {
  for (const auto& o : q.arrow_orbits()) {
    if (q.arrows[o.rep].framing) continue;
    case_factor(q, o.rep, classify_arrow(q, o.rep), A, M, out, cfg);
  }
  root_factors(q, A, M, out, cfg);
}

inline FactoredRational osp_kernel(const DualityQuiver& q, const Block& A, const ModBlock& M, const KernelConfig& cfg = {}) {
  FactorList f;
  osp_kernel_factors(q, A, M, f, cfg);
  return f.value();
}

inline FactoredRational framing_factor(const DualityQuiver& q, const Block& A, const KernelConfig& cfg = {}) {
  return framing_pair(q, A, cfg);
}

// ---- standard layouts ----

// x[v,tag,1..d_v] per vertex.
inline Block slot_block(const DualityQuiver& q, const DimVec& d, int tag, int offset = 0) {
  Block b(q.num_vertices());
  for (int v = 0; v < q.num_vertices() && v < static_cast<int>(d.size()); ++v)
    for (int k = 1; k <= d[v]; ++k) b[v].push_back(LinearForm::var(torus_var(v, tag, offset + k)));
  return b;
}

// x[rep,tag,1..d_o] per orbit.
inline ModBlock slot_modblock(const DualityQuiver& q, const OspDimVec& d, int tag, int offset = 0) {
  ModBlock b(q.num_orbits());
  for (int o = 0; o < q.num_orbits() && o < static_cast<int>(d.size()); ++o)
    for (int k = 1; k <= d[o]; ++k) b[o].push_back(LinearForm::var(torus_var(q.vertex_orbits()[o].rep, tag, offset + k)));
  return b;
}

struct SlotLayout {
  Block left;      // x_{v,(1),k}
  ModBlock right;  // x_{[i],(2),k}
};

inline SlotLayout standard_layout(const DualityQuiver& q, const DimVec& d1, const OspDimVec& d2) {
  return {slot_block(q, d1, 1), slot_modblock(q, d2, 2)};
}

// GL shuffle kernel on x[v,1,*] (first factor) and x[v,2,*] (second factor).
inline FactoredRational gl_kernel(const DualityQuiver& q, const DimVec& d1, const DimVec& d2) {
  return gl_pair(q, slot_block(q, d1, 1), slot_block(q, d2, 2));
}

inline FactoredRational osp_kernel(const DualityQuiver& q, const DimVec& d1, const OspDimVec& d2, const KernelConfig& cfg = {}) {
  auto l = standard_layout(q, d1, d2);
  return osp_kernel(q, l.left, l.right, cfg);
}

inline FactoredRational framing_factor(const DualityQuiver& q, const DimVec& d1, const KernelConfig& cfg = {}) {
  return framing_pair(q, slot_block(q, d1, 1), cfg);
}

// ---- brackets ----

enum class BracketKind { Paren, Angle, Square };

struct KernelBracket {
  FactoredRational value;
  BracketKind kind;
  std::string signature;
};

// (A_1..A_k | B_1..B_l), <A|tau A>, or [A_1..A_k | B_1..B_l, M] where the GL
// blocks B are folded into the self-dual block M through rho.
inline ModBlock rho(const DualityQuiver& q, const Block& B, const ModBlock& M) {
  ModBlock r(q.num_orbits());
  for (int o = 0; o < q.num_orbits(); ++o) {
    const auto& orb = q.vertex_orbits()[o];
    r[o] = B[orb.rep];
    if (!orb.fixed())
      for (const auto& x : B[orb.members[1]]) r[o].push_back(-x);
    r[o].insert(r[o].end(), M[o].begin(), M[o].end());
  }
  return r;
}

inline KernelBracket bracket(const DualityQuiver& q, const std::vector<Block>& left, const std::vector<Block>& right,
                             const ModBlock* self_dual, BracketKind kind, const KernelConfig& cfg = {}) {
  auto check = [&](const Block& b) {
    if (static_cast<int>(b.size()) != q.num_vertices()) throw Error("malformed-blocks", "block does not cover the vertices");
  };
  Block A = empty_block(q), B = empty_block(q);
  for (const auto& b : left) {
    check(b);
    A = concat(A, b);
  }
  for (const auto& b : right) {
    check(b);
    B = concat(B, b);
  }
  switch (kind) {
    case BracketKind::Paren:
      if (self_dual) throw Error("malformed-blocks", "(A|B) takes no self-dual block");
      return {gl_pair(q, A, B), kind, "paren"};
    case BracketKind::Angle:
      if (!right.empty() || self_dual) throw Error("malformed-blocks", "<A|tau A> takes one block");
      return {tau_pair(q, A), kind, "angle"};
    case BracketKind::Square: {
      ModBlock M = self_dual ? *self_dual : empty_modblock(q);
      if (static_cast<int>(M.size()) != q.num_orbits()) throw Error("malformed-blocks", "self-dual block does not cover the orbits");
      return {osp_kernel(q, A, rho(q, B, M), cfg), kind, "square"};
    }
  }
  throw Error("malformed-blocks", "unknown bracket");
}

}  // namespace coha
