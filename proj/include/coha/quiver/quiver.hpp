#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coha/core.hpp"

namespace coha {

enum class FixedType { Sp, OEven, OOdd };
enum class ArrowCase { O, I, II, III, IIIPrime, IV };

inline std::string to_string(FixedType t) {
  switch (t) {
    case FixedType::Sp: return "Sp";
    case FixedType::OEven: return "OEven";
    case FixedType::OOdd: return "OOdd";
  }
  return "?";
}

inline FixedType fixed_type_from_string(const std::string& s) {
  if (s == "Sp") return FixedType::Sp;
  if (s == "OEven") return FixedType::OEven;
  if (s == "OOdd") return FixedType::OOdd;
  throw Error("invalid-quiver", "unknown fixed-vertex type '" + s + "'");
}

inline std::string to_string(ArrowCase c) {
  switch (c) {
    case ArrowCase::O: return "O";
    case ArrowCase::I: return "I";
    case ArrowCase::II: return "II";
    case ArrowCase::III: return "III";
    case ArrowCase::IIIPrime: return "IIIPrime";
    case ArrowCase::IV: return "IV";
  }
  return "?";
}

// The form sign a fixed vertex of this type must carry.
inline int fixed_type_sign(FixedType t) { return t == FixedType::Sp ? -1 : 1; }

struct QVertex {
  std::string id;
  std::string theta;
  int sgn = 1;
  std::optional<FixedType> type;
  bool framing = false;
};

struct QArrow {
  std::string id;
  std::string src, tgt, theta;
  int sgn = 1;
  LinearForm weight;
  bool framing = false;
};

// Framing at one vertex orbit, keyed by the orbit representative.
struct FramingEntry {
  int rank = 0;
  std::vector<LinearForm> weights;
  bool odd = false;        // odd-dimensional orthogonal framing at a fixed vertex
  LinearForm arrow_weight;  // weight of the framing arrows, default 0
};

struct Framing {
  std::map<std::string, FramingEntry> entries;
  bool empty() const {
    for (const auto& [k, e] : entries)
      if (e.rank > 0 || e.odd) return false;
    return true;
  }
};

struct Orbit {
  int rep = -1;
  std::vector<int> members;  // rep first
  bool fixed() const { return members.size() == 1; }
};

struct Violation {
  std::string code;
  std::vector<std::string> ids;
  std::string message;
};

using DimVec = std::vector<int>;     // per vertex index
using OspDimVec = std::vector<int>;  // per vertex orbit index

class DualityQuiver {
 public:
  std::vector<QVertex> vertices;
  std::vector<QArrow> arrows;
  std::vector<std::string> params;
  Framing framing;

  // Resolves ids and orbit data; call after editing the public fields.
  void finalize() {
    vindex_.clear();
    aindex_.clear();
    for (size_t i = 0; i < vertices.size(); ++i) vindex_.emplace(vertices[i].id, static_cast<int>(i));
    for (size_t i = 0; i < arrows.size(); ++i) aindex_.emplace(arrows[i].id, static_cast<int>(i));
    vtheta_.assign(vertices.size(), -1);
    for (size_t i = 0; i < vertices.size(); ++i) vtheta_[i] = vertex_index(vertices[i].theta);
    asrc_.assign(arrows.size(), -1);
    atgt_.assign(arrows.size(), -1);
    atheta_.assign(arrows.size(), -1);
    for (size_t i = 0; i < arrows.size(); ++i) {
      asrc_[i] = vertex_index(arrows[i].src);
      atgt_[i] = vertex_index(arrows[i].tgt);
      atheta_[i] = arrow_index(arrows[i].theta);
    }
    vorbits_ = make_orbits(vertices, vtheta_);
    aorbits_ = make_orbits(arrows, atheta_);
    vorbit_of_.assign(vertices.size(), -1);
    for (size_t o = 0; o < vorbits_.size(); ++o)
      for (int v : vorbits_[o].members) vorbit_of_[v] = static_cast<int>(o);
  }

  int vertex_index(const std::string& id) const {
    auto it = vindex_.find(id);
    return it == vindex_.end() ? -1 : it->second;
  }
  int arrow_index(const std::string& id) const {
    auto it = aindex_.find(id);
    return it == aindex_.end() ? -1 : it->second;
  }
  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_arrows() const { return static_cast<int>(arrows.size()); }

  int theta(int v) const { return vtheta_[v]; }
  int src(int a) const { return asrc_[a]; }
  int tgt(int a) const { return atgt_[a]; }
  int theta_arrow(int a) const { return atheta_[a]; }
  bool is_fixed(int v) const { return vtheta_[v] == v; }
  FixedType type(int v) const {
    if (!vertices[v].type) throw Error("invalid-quiver", "vertex '" + vertices[v].id + "' has no fixed type");
    return *vertices[v].type;
  }

  const std::vector<Orbit>& vertex_orbits() const { return vorbits_; }
  const std::vector<Orbit>& arrow_orbits() const { return aorbits_; }
  int orbit_of(int v) const { return vorbit_of_[v]; }
  int num_orbits() const { return static_cast<int>(vorbits_.size()); }

  // Gauge (non-framing) vertex and arrow indices.
  std::vector<int> gauge_vertices() const {
    std::vector<int> r;
    for (int v = 0; v < num_vertices(); ++v)
      if (!vertices[v].framing) r.push_back(v);
    return r;
  }

  TextContext text_context() const {
    TextContext c;
    for (const auto& v : vertices) c.vertex_names.push_back(v.id);
    return c;
  }

  const FramingEntry* framing_at_orbit(int o) const {
    auto it = framing.entries.find(vertices[vorbits_[o].rep].id);
    return it == framing.entries.end() ? nullptr : &it->second;
  }

  // Copy with edge-weight parameters replaced by values.
  DualityQuiver specialized(const std::map<VarId, LinearForm>& values) const {
    DualityQuiver q(*this);
    for (auto& a : q.arrows) a.weight = a.weight.substitute(values);
    for (auto& [k, e] : q.framing.entries) {
      for (auto& w : e.weights) w = w.substitute(values);
      e.arrow_weight = e.arrow_weight.substitute(values);
    }
    q.finalize();
    return q;
  }

 private:
  template <class Items>
  static std::vector<Orbit> make_orbits(const Items& items, const std::vector<int>& th) {
    std::vector<Orbit> out;
    std::vector<bool> seen(items.size(), false);
    for (size_t i = 0; i < items.size(); ++i) {
      if (seen[i]) continue;
      int j = th[i];
      Orbit o;
      o.members.push_back(static_cast<int>(i));
      seen[i] = true;
      if (j >= 0 && j != static_cast<int>(i) && !seen[j]) {
        o.members.push_back(j);
        seen[j] = true;
        if (items[j].id < items[i].id) std::swap(o.members[0], o.members[1]);
      }
      o.rep = o.members[0];
      out.push_back(o);
    }
    return out;
  }

  std::map<std::string, int> vindex_, aindex_;
  std::vector<int> vtheta_, asrc_, atgt_, atheta_, vorbit_of_;
  std::vector<Orbit> vorbits_, aorbits_;
};

inline std::optional<ArrowCase> try_classify(const DualityQuiver& q, int a) {
  int s = q.src(a), t = q.tgt(a), th = q.theta_arrow(a);
  bool fs = q.is_fixed(s), ft = q.is_fixed(t);
  if (!fs && !ft) {
    if (q.theta(s) == t) {
      // Endpoints exchanged: the dual arrow must run parallel.
      if (q.src(th) == s && q.tgt(th) == t) return ArrowCase::II;
      return std::nullopt;
    }
    return ArrowCase::O;
  }
  if (fs && ft) {
    if (s == t) {
      if (th == a) return ArrowCase::I;
      return std::nullopt;
    }
    if (q.vertices[s].sgn != q.vertices[t].sgn) return ArrowCase::IV;
    return std::nullopt;
  }
  return fs ? ArrowCase::IIIPrime : ArrowCase::III;
}

inline ArrowCase classify_arrow(const DualityQuiver& q, int a) {
  auto c = try_classify(q, a);
  if (!c) throw Error("unclassifiable-arrow", "arrow '" + q.arrows[a].id + "' is outside the supported cases");
  return *c;
}

inline std::vector<Violation> validate(const DualityQuiver& q) {
  std::vector<Violation> out;
  auto add = [&](std::string code, std::vector<std::string> ids, std::string msg) {
    out.push_back({std::move(code), std::move(ids), std::move(msg)});
  };
  std::set<std::string> seen;
  for (const auto& v : q.vertices)
    if (!seen.insert(v.id).second) add("duplicate-id", {v.id}, "vertex id used twice");
  seen.clear();
  for (const auto& a : q.arrows)
    if (!seen.insert(a.id).second) add("duplicate-id", {a.id}, "arrow id used twice");
  std::set<std::string> declared(q.params.begin(), q.params.end());

  bool structural_ok = true;
  for (int v = 0; v < q.num_vertices(); ++v) {
    const auto& x = q.vertices[v];
    if (q.theta(v) < 0) {
      add("unknown-id", {x.id, x.theta}, "theta image of vertex is not a vertex");
      structural_ok = false;
      continue;
    }
    if (x.sgn != 1 && x.sgn != -1) add("invalid-sign", {x.id}, "sgn must be +1 or -1");
    if (q.theta(q.theta(v)) != v) add("theta-not-involutive", {x.id}, "theta(theta(v)) != v");
    if (q.is_fixed(v)) {
      if (!x.type)
        add("missing-fixed-type", {x.id}, "theta-fixed vertex needs a fixed type");
      else if (fixed_type_sign(*x.type) != x.sgn)
        add("fixed-type-sign-mismatch", {x.id}, to_string(*x.type) + " vertex needs sgn " +
                                                      std::to_string(fixed_type_sign(*x.type)));
    } else if (x.type) {
      add("unexpected-fixed-type", {x.id}, "fixed type declared on a non-fixed vertex");
    }
    if (q.vertices[q.theta(v)].sgn != x.sgn && q.theta(q.theta(v)) == v)
      add("sign-incompatible", {x.id, q.vertices[q.theta(v)].id}, "dual vertices carry different signs");
  }
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& x = q.arrows[a];
    if (q.src(a) < 0 || q.tgt(a) < 0) {
      add("unknown-id", {x.id}, "arrow endpoint is not a vertex");
      structural_ok = false;
      continue;
    }
    if (q.theta_arrow(a) < 0) {
      add("unknown-id", {x.id, x.theta}, "theta image of arrow is not an arrow");
      structural_ok = false;
      continue;
    }
    if (x.sgn != 1 && x.sgn != -1) add("invalid-sign", {x.id}, "sgn must be +1 or -1");
    for (const auto& [v, c] : x.weight.coeffs()) {
      auto k = kind_of(v);
      if (k != VarKind::EdgeWeightParam) {
        add("invalid-weight", {x.id}, "weights may only involve edge parameters");
      } else if (!declared.empty() && !declared.count(Variable::from_id(v).name)) {
        add("undeclared-parameter", {x.id, Variable::from_id(v).name}, "weight uses an undeclared parameter");
      }
    }
  }
  if (!structural_ok) return out;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& x = q.arrows[a];
    int b = q.theta_arrow(a);
    const auto& y = q.arrows[b];
    if (q.theta_arrow(b) != a) add("theta-not-involutive", {x.id, y.id}, "theta(theta(a)) != a");
    if (q.src(b) != q.theta(q.tgt(a)) || q.tgt(b) != q.theta(q.src(a)))
      add("orientation", {x.id, y.id}, "theta must reverse arrows");
    if (x.sgn * y.sgn != q.vertices[q.src(a)].sgn * q.vertices[q.tgt(a)].sgn)
      add("sign-incompatible", {x.id, y.id}, "sgn(a)sgn(theta a) != sgn(s(a))sgn(t(a))");
    if (!(x.weight == y.weight)) add("weight-not-theta-invariant", {x.id, y.id}, "wt(theta a) != wt(a)");
    if (!try_classify(q, a)) add("unclassifiable-arrow", {x.id}, "arrow is outside the supported cases");
  }
  for (const auto& [id, e] : q.framing.entries) {
    int v = q.vertex_index(id);
    if (v < 0) {
      add("unknown-id", {id}, "framing key is not a vertex");
      continue;
    }
    if (q.vertex_orbits()[q.orbit_of(v)].rep != v) add("framing-not-orbit-rep", {id}, "framing keys must be orbit representatives");
    if (static_cast<int>(e.weights.size()) != e.rank) add("framing-mismatch", {id}, "framing rank and weight count differ");
    if (e.odd && !q.is_fixed(v)) add("framing-mismatch", {id}, "odd framing needs a fixed vertex");
  }
  return out;
}

inline void require_valid(const DualityQuiver& q) {
  auto r = validate(q);
  if (!r.empty()) {
    std::string msg;
    for (const auto& v : r) {
      msg += v.code + "(";
      for (size_t i = 0; i < v.ids.size(); ++i) msg += (i ? "," : "") + v.ids[i];
      msg += ") ";
    }
    throw Error("invalid-quiver", msg);
  }
}

struct Orbits {
  std::vector<Orbit> vertices;
  std::vector<Orbit> arrows;
};

inline Orbits orbits(const DualityQuiver& q) { return {q.vertex_orbits(), q.arrow_orbits()}; }

// ---- doubled and tripled quivers ----

struct PlainArrow {
  std::string id, src, tgt;
  int sgn = 1;
};

struct PlainQuiver {
  std::vector<std::string> vertices;
  std::vector<PlainArrow> arrows;
  // Explicit involution data (used by the "involution" convention).
  std::map<std::string, std::string> vertex_theta, arrow_theta;
  std::map<std::string, int> vertex_sgn;
  std::map<std::string, FixedType> fixed_types;
};

enum class SignConvention { Auto, Jordan, Bipartite, Involution };

struct TripleOptions {
  bool triple = true;
  SignConvention convention = SignConvention::Auto;
  FixedType jordan_type = FixedType::Sp;     // type of every vertex in the Jordan convention
  FixedType bipartite_first = FixedType::Sp;  // type of the first vertex in the bipartite convention
};

inline std::string bar_id(const std::string& a) { return a + "_bar"; }
inline std::string loop_id(const std::string& v) { return "w_" + v; }

namespace detail {

inline std::optional<std::map<std::string, int>> two_colouring(const PlainQuiver& p) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& a : p.arrows) {
    if (a.src == a.tgt) return std::nullopt;
    adj[a.src].push_back(a.tgt);
    adj[a.tgt].push_back(a.src);
  }
  std::map<std::string, int> col;
  for (const auto& v : p.vertices) {
    if (col.count(v)) continue;
    col[v] = 0;
    std::vector<std::string> stack{v};
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (const auto& y : adj[x]) {
        auto it = col.find(y);
        if (it == col.end()) {
          col[y] = 1 - col[x];
          stack.push_back(y);
        } else if (it->second == col[x]) {
          return std::nullopt;
        }
      }
    }
  }
  return col;
}

}  // namespace detail

// Doubled (a, a_bar) or tripled (plus loops w_v) quiver with duality data.
// Jordan: every vertex fixed, every arrow a loop, all arrows self-dual of sign -1.
// Bipartite: theta = id on vertices, theta(a) = a_bar, alternating Sp/OEven.
// Involution: theta and signs supplied on the plain quiver; theta(a_bar) = theta(a)_bar.
inline DualityQuiver double_triple(const PlainQuiver& p, const TripleOptions& opt = {}) {
  const LinearForm t1 = LinearForm::var(param_var("t1")), t2 = LinearForm::var(param_var("t2"));
  SignConvention conv = opt.convention;
  bool all_loops = std::all_of(p.arrows.begin(), p.arrows.end(), [](const PlainArrow& a) { return a.src == a.tgt; });
  if (conv == SignConvention::Auto) {
    if (!p.vertex_theta.empty() || !p.arrow_theta.empty())
      conv = SignConvention::Involution;
    else if (all_loops)
      conv = SignConvention::Jordan;
    else if (detail::two_colouring(p))
      conv = SignConvention::Bipartite;
    else
      throw Error("unsupported-sign-convention", "quiver is neither Jordan-type nor bipartite");
  }
  DualityQuiver q;
  q.params = {"t1", "t2"};
  std::set<std::string> declared(p.vertices.begin(), p.vertices.end());
  for (const auto& a : p.arrows)
    if (!declared.count(a.src) || !declared.count(a.tgt)) throw Error("invalid-quiver", "arrow '" + a.id + "' has an unknown endpoint");

  auto add_arrow = [&](std::string id, std::string s, std::string t, std::string th, int sg, LinearForm w) {
    q.arrows.push_back({std::move(id), std::move(s), std::move(t), std::move(th), sg, std::move(w), false});
  };

  if (conv == SignConvention::Jordan) {
    if (!all_loops) throw Error("unsupported-sign-convention", "Jordan convention needs a loop quiver");
    for (const auto& v : p.vertices)
      q.vertices.push_back({v, v, fixed_type_sign(opt.jordan_type), opt.jordan_type, false});
    for (const auto& a : p.arrows) {
      add_arrow(a.id, a.src, a.tgt, a.id, -1, t1);
      add_arrow(bar_id(a.id), a.tgt, a.src, bar_id(a.id), -1, t2);
    }
    if (opt.triple)
      for (const auto& v : p.vertices) add_arrow(loop_id(v), v, v, loop_id(v), -1, -(t1 + t2));
  } else if (conv == SignConvention::Bipartite) {
    auto col = detail::two_colouring(p);
    if (!col) throw Error("unsupported-sign-convention", "quiver is not bipartite");
    FixedType other = opt.bipartite_first == FixedType::Sp ? FixedType::OEven : FixedType::Sp;
    int first = p.vertices.empty() ? 0 : col->at(p.vertices.front());
    for (const auto& v : p.vertices) {
      FixedType ty = col->at(v) == first ? opt.bipartite_first : other;
      q.vertices.push_back({v, v, fixed_type_sign(ty), ty, false});
    }
    // The duality pairs a with a_bar, so both carry the same weight.
    for (const auto& a : p.arrows) {
      add_arrow(a.id, a.src, a.tgt, bar_id(a.id), 1, t1);
      add_arrow(bar_id(a.id), a.tgt, a.src, a.id, -1, t1);
    }
    if (opt.triple)
      for (const auto& v : p.vertices) add_arrow(loop_id(v), v, v, loop_id(v), -1, -2 * t1);
  } else {
    for (const auto& v : p.vertices) {
      auto it = p.vertex_theta.find(v);
      std::string th = it == p.vertex_theta.end() ? v : it->second;
      auto ft = p.fixed_types.find(v);
      std::optional<FixedType> ty;
      if (th == v) ty = ft == p.fixed_types.end() ? FixedType::Sp : ft->second;
      auto sg = p.vertex_sgn.find(v);
      int s = sg != p.vertex_sgn.end() ? sg->second : (ty ? fixed_type_sign(*ty) : 1);
      q.vertices.push_back({v, th, s, ty, false});
    }
    for (const auto& a : p.arrows) {
      auto it = p.arrow_theta.find(a.id);
      if (it == p.arrow_theta.end())
        throw Error("unsupported-sign-convention", "arrow '" + a.id + "' has no theta image");
      add_arrow(a.id, a.src, a.tgt, it->second, a.sgn, t1);
    }
    for (const auto& a : p.arrows) {
      std::string th = p.arrow_theta.at(a.id);
      add_arrow(bar_id(a.id), a.tgt, a.src, bar_id(th), a.sgn, t2);
    }
    if (opt.triple) {
      for (const auto& v : q.vertices) {
        bool fixed = v.theta == v.id;
        add_arrow(loop_id(v.id), v.id, v.id, loop_id(v.theta), fixed ? -1 : 1, -(t1 + t2));
      }
    }
  }
  q.finalize();
  return q;
}

// Adds framing vertices fr_i and arrow pairs in_i: fr_i -> i, out_i: i -> fr_theta(i).
inline DualityQuiver frame(const DualityQuiver& q0, const Framing& f) {
  DualityQuiver q(q0);
  for (const auto& [id, e] : f.entries) {
    int v = q.vertex_index(id);
    if (v < 0) throw Error("framing-mismatch", "framing at unknown vertex '" + id + "'");
    if (q.vertex_orbits()[q.orbit_of(v)].rep != v)
      throw Error("framing-mismatch", "framing key '" + id + "' is not an orbit representative");
    if (static_cast<int>(e.weights.size()) != e.rank)
      throw Error("framing-mismatch", "rank " + std::to_string(e.rank) + " with " +
                                          std::to_string(e.weights.size()) + " weights at '" + id + "'");
    if (e.odd && !q.is_fixed(v)) throw Error("framing-mismatch", "odd framing at non-fixed vertex '" + id + "'");
  }
  for (const auto& o : q0.vertex_orbits()) {
    const auto& rep = q0.vertices[o.rep];
    if (!f.entries.count(rep.id)) continue;
    const auto& e = f.entries.at(rep.id);
    if (o.fixed()) {
      FixedType gt = *rep.type;
      FixedType ft = gt == FixedType::Sp ? (e.odd ? FixedType::OOdd : FixedType::OEven) : FixedType::Sp;
      std::string w = "fr_" + rep.id;
      q.vertices.push_back({w, w, fixed_type_sign(ft), ft, true});
      q.arrows.push_back({"in_" + rep.id, w, rep.id, "out_" + rep.id, 1, e.arrow_weight, true});
      q.arrows.push_back({"out_" + rep.id, rep.id, w, "in_" + rep.id, -1, e.arrow_weight, true});
    } else {
      for (int m : o.members) {
        const auto& x = q0.vertices[m];
        q.vertices.push_back({"fr_" + x.id, "fr_" + x.theta, x.sgn, std::nullopt, true});
      }
      for (int m : o.members) {
        const auto& x = q0.vertices[m];
        q.arrows.push_back({"in_" + x.id, "fr_" + x.id, x.id, "out_" + x.theta, 1, e.arrow_weight, true});
        q.arrows.push_back({"out_" + x.id, x.id, "fr_" + x.id, "in_" + x.theta, 1, e.arrow_weight, true});
      }
    }
  }
  q.framing = f;
  q.finalize();
  return q;
}

}  // namespace coha
