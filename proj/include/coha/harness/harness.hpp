#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <numeric>
#include <thread>

#include "coha/hall/element_io.hpp"
#include "coha/harness/generators.hpp"

namespace coha {

enum class CheckStatus { ProvedExact, PassedProbabilistic, Failed };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::ProvedExact: return "proved-exact";
    case CheckStatus::PassedProbabilistic: return "passed-probabilistic";
    case CheckStatus::Failed: return "failed";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::ProvedExact;
  int samples = 0;  // k for passed-probabilistic
  int instances = 0;
  json witness;  // inputs and both sides, failed only
  double seconds = 0;
  bool asserted = true;  // false: reported only, never fails the certificate
  bool passed() const { return status != CheckStatus::Failed; }
};

struct Certificate {
  std::string suite;
  std::uint64_t seed = 0;
  Mutation mutation = Mutation::None;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, std::string>> skipped;  // (suite, reason)

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed() || !c.asserted; });
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  std::vector<const CheckResult*> failures() const {
    std::vector<const CheckResult*> r;
    for (const auto& c : checks)
      if (!c.passed() && c.asserted) r.push_back(&c);
    return r;
  }
};

inline json to_json(const Certificate& c, bool timing = false) {
  json j;
  j["suite"] = c.suite;
  j["seed"] = c.seed;
  if (c.mutation != Mutation::None) j["mutation"] = to_string(c.mutation);
  j["passed"] = c.passed();
  json checks = json::array();
  for (const auto& r : c.checks) {
    json x;
    x["name"] = r.name;
    x["status"] = to_string(r.status);
    if (r.status == CheckStatus::PassedProbabilistic) x["samples"] = r.samples;
    x["instances"] = r.instances;
    if (!r.asserted) x["asserted"] = false;
    if (r.status == CheckStatus::Failed) x["witness"] = r.witness;
    if (timing) x["seconds"] = r.seconds;
    checks.push_back(x);
  }
  j["checks"] = checks;
  if (!c.skipped.empty()) {
    json s = json::array();
    for (const auto& [suite, why] : c.skipped) s.push_back({{"suite", suite}, {"reason", why}});
    j["skipped"] = s;
  }
  return j;
}

struct SuiteOptions {
  std::uint64_t seed = 0;
  int max_rank = 4;       // output torus rank bound for the product/action corpus
  int hexagon_block = 2;  // block size bound for the bracket identities
  int coassoc_rank = 2;   // osp degree bound for coassociativity
  int instances = 12;     // randomized instances per corpus check
  int order = 5;          // series truncation
  EqualityMode mode = EqualityMode::Exact;
  int samples = 3;
  KernelConfig cfg;
  int jobs = 0;
};

// ---- check bookkeeping ----

// Accumulates one named check over many instances; the first failure is kept.
class Tally {
 public:
  Tally(const DualityQuiver& q, std::string name, const SuiteOptions& o, std::uint64_t seed)
      : q_(q), o_(o), seed_(seed) {
    r_.name = std::move(name);
  }

  bool failed() const { return r_.status == CheckStatus::Failed; }

  void require(bool ok, const std::function<json()>& witness) {
    ++r_.instances;
    if (!ok && !failed()) fail(witness());
  }

  // Rational identity lhs == rhs.  Probabilistic failures are rechecked exactly.
  bool compare(const FactoredRational& lhs, const FactoredRational& rhs, const std::function<json()>& inputs) {
    ++r_.instances;
    if (failed()) return false;
    bool ok;
    if (o_.mode == EqualityMode::Exact) {
      ok = equal_exact(lhs, rhs);
    } else {
      SamplingConfig s;
      s.samples = o_.samples;
      s.seed = seed_ + static_cast<std::uint64_t>(r_.instances);
      ok = equal_probabilistic(lhs, rhs, s) || equal_exact(lhs, rhs);
      if (ok && r_.status == CheckStatus::ProvedExact) {
        r_.status = CheckStatus::PassedProbabilistic;
        r_.samples = o_.samples;
      }
    }
    if (!ok) {
      json w = inputs();
      w["lhs"] = to_text(lhs, q_.text_context());
      w["rhs"] = to_text(rhs, q_.text_context());
      fail(w);
    }
    return ok;
  }

  // Folds in a finished sub-check.
  void merge(const CheckResult& r) {
    r_.instances += r.instances;
    if (failed()) return;
    if (!r.passed()) {
      fail(r.witness);
    } else if (r.status == CheckStatus::PassedProbabilistic) {
      r_.status = r.status;
      r_.samples = r.samples;
    }
  }

  void fail(json witness) {
    r_.status = CheckStatus::Failed;
    r_.witness = std::move(witness);
  }

  CheckResult result() const { return r_; }

 private:
  const DualityQuiver& q_;
  const SuiteOptions& o_;
  std::uint64_t seed_;
  CheckResult r_;
};

struct Check {
  std::vector<std::string> names;  // results produced, in order
  std::function<std::vector<CheckResult>()> run;
};

// Seed for one check: depends only on the suite seed and the check name.
inline std::uint64_t check_seed(std::uint64_t seed, const std::string& name) {
  std::vector<std::uint32_t> v{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  for (unsigned char c : name) v.push_back(c);
  std::seed_seq s(v.begin(), v.end());
  std::uint32_t out[2];
  s.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

inline json error_witness(const std::string& code, const std::string& message) {
  return {{"error", code}, {"message", message}};
}

// Runs checks on up to `jobs` threads; results are sorted by name.
inline std::vector<CheckResult> run_checks(const std::vector<Check>& checks, int jobs) {
  if (jobs <= 0) jobs = default_jobs();
  std::vector<std::vector<CheckResult>> out(checks.size());
  auto run_one = [&](size_t i) {
    auto t0 = std::chrono::steady_clock::now();
    auto failed_all = [&](const json& w) {
      std::vector<CheckResult> rs;
      for (const auto& n : checks[i].names) {
        CheckResult r;
        r.name = n;
        r.status = CheckStatus::Failed;
        r.witness = w;
        rs.push_back(r);
      }
      return rs;
    };
    try {
      out[i] = checks[i].run();
    } catch (const Error& e) {
      out[i] = failed_all(error_witness(e.code(), e.what()));
    } catch (const std::exception& e) {
      out[i] = failed_all(error_witness("internal", e.what()));
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& r : out[i]) r.seconds = s;
  };
  int threads = std::min<int>(jobs, static_cast<int>(checks.size()));
  if (threads <= 1) {
    for (size_t i = 0; i < checks.size(); ++i) run_one(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (size_t i; (i = next++) < checks.size();) run_one(i);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<CheckResult> flat;
  for (auto& rs : out)
    for (auto& r : rs) flat.push_back(std::move(r));
  std::stable_sort(flat.begin(), flat.end(), [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return flat;
}

// Inner symmetrization threads: sequential when checks already run in parallel.
inline int inner_jobs(const SuiteOptions& o) { return (o.jobs <= 0 ? default_jobs() : o.jobs) > 1 ? 1 : o.jobs; }

// ---- serialization helpers for witnesses ----

inline json block_json(const DualityQuiver& q, const Block& b) {
  json j = json::object();
  for (int v = 0; v < q.num_vertices(); ++v) {
    if (b[v].empty()) continue;
    json a = json::array();
    for (const auto& x : b[v]) a.push_back(to_text(x, q.text_context()));
    j[q.vertices[v].id] = a;
  }
  return j;
}

inline json modblock_json(const DualityQuiver& q, const ModBlock& m) {
  json j = json::object();
  for (int o = 0; o < q.num_orbits(); ++o) {
    if (m[o].empty()) continue;
    json a = json::array();
    for (const auto& x : m[o]) a.push_back(to_text(x, q.text_context()));
    j[q.vertices[q.vertex_orbits()[o].rep].id] = a;
  }
  return j;
}

// ---- instance generation ----

inline int total(const std::vector<int>& d) {
  int n = 0;
  for (int x : d) n += x;
  return n;
}

inline DimVec sub(const DimVec& a, const DimVec& b) {
  DimVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline std::vector<DimVec> algebra_gradings(const DualityQuiver& q, int n) {
  return bounded_gradings(q.num_vertices(), gauge_vertex_list(q), n);
}

inline std::vector<OspDimVec> module_gradings(const DualityQuiver& q, int n) {
  return bounded_gradings(q.num_orbits(), gauge_orbit_list(q), n);
}

// Deterministic sample of at most n items.
template <class T>
std::vector<T> sample(std::vector<T> xs, size_t n, std::mt19937_64& rng) {
  if (xs.size() <= n) return xs;
  for (size_t i = 0; i < n; ++i) std::swap(xs[i], xs[i + rng() % (xs.size() - i)]);
  xs.resize(n);
  return xs;
}

// Copy of q with edge weights and framing weights set to random integers.
inline DualityQuiver specialize_parameters(const DualityQuiver& q, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-1000, 1000);
  std::map<VarId, LinearForm> values;
  auto add = [&](const LinearForm& f) {
    for (const auto& [v, c] : f.coeffs())
      if (!values.count(v)) values.emplace(v, LinearForm(Rational(d(rng))));
  };
  for (const auto& a : q.arrows) add(a.weight);
  for (const auto& [k, e] : q.framing.entries) {
    for (const auto& w : e.weights) add(w);
    add(e.arrow_weight);
  }
  return q.specialized(values);
}

inline bool has_case_two(const DualityQuiver& q) {
  for (int a = 0; a < q.num_arrows(); ++a)
    if (!q.arrows[a].framing && classify_arrow(q, a) == ArrowCase::II) return true;
  return false;
}

inline bool is_invariant(const DualityQuiver& q, const ModuleElement& m) {
  for (const auto& [d, p] : m.comps)
    if (!is_invariant(p, module_slots(q, d), module_group(q, d))) return false;
  return true;
}

inline bool is_invariant(const DualityQuiver& q, const AlgebraElement& m) {
  for (const auto& [d, p] : m.comps)
    if (!is_invariant(p, algebra_slots(q, d), algebra_group(q, d))) return false;
  return true;
}

// ---- the Yetter-Drinfeld identity ----

// All ways to split each L[v] into consecutive parts of the given sizes, as
// ordered subsets (shuffles).
inline std::vector<std::vector<Block>> block_shuffles(const DualityQuiver& q, const Block& L, const std::vector<DimVec>& sizes) {
  size_t k = sizes.size();
  std::vector<std::vector<Block>> out{std::vector<Block>(k, empty_block(q))};
  for (int v = 0; v < q.num_vertices(); ++v) {
    // Ordered set partitions of L[v] into parts of sizes[p][v].
    std::vector<std::vector<std::vector<LinearForm>>> parts;
    std::function<void(const std::vector<int>&, std::vector<std::vector<LinearForm>>&)> rec =
        [&](const std::vector<int>& pool, std::vector<std::vector<LinearForm>>& acc) {
          if (acc.size() == k) {
            parts.push_back(acc);
            return;
          }
          std::vector<std::vector<int>> combos;
          detail::combinations(pool, sizes[acc.size()][v], combos);
          for (const auto& c : combos) {
            std::vector<int> rest;
            std::set_difference(pool.begin(), pool.end(), c.begin(), c.end(), std::back_inserter(rest));
            acc.emplace_back();
            for (int i : c) acc.back().push_back(L[v][i]);
            rec(rest, acc);
            acc.pop_back();
          }
        };
    std::vector<int> all(L[v].size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<LinearForm>> acc;
    rec(all, acc);
    std::vector<std::vector<Block>> next;
    for (const auto& o : out)
      for (const auto& pv : parts) {
        auto b = o;
        for (size_t p = 0; p < k; ++p) b[p][v] = pv[p];
        next.push_back(b);
      }
    out = next;
  }
  return out;
}

// Braided composite for the (l, r) component of Delta_L(f g): the f-alphabet
// splits as C u E u D, Delta_L(g) gives (F, G); the output is C F tau(D) on the
// left and E acting on G on the right.
inline FactoredRational yd_rhs(const DualityQuiver& q, const DimVec& dF, const Polynomial& pf, const OspDimVec& dG,
                               const Polynomial& pg, const DimVec& dl, const OspDimVec& dr, const KernelConfig& cfg = {}) {
  Block L = slot_block(q, dl, 1);
  FactoredRational Ff(pf), Fg(pg);
  auto sq = [&](const Block& A, const ModBlock& M) { return osp_kernel(q, A, M, cfg); };
  auto gl = [&](const Block& A, const Block& B) { return gl_pair(q, A, B); };
  std::vector<FactoredRational> terms;
  for (const auto& dC : sub_gradings(dF))
    for (const auto& dE : sub_gradings(sub(dF, dC))) {
      DimVec dD = sub(sub(dF, dC), dE);
      DimVec dDp(q.num_vertices());
      for (int v = 0; v < q.num_vertices(); ++v) dDp[v] = dD[q.theta(v)];
      for (const auto& [dFF, dGG] : coaction_splits(q, dG)) {
        bool ok = output_grading(q, dE, dGG) == dr;
        for (int v = 0; v < q.num_vertices() && ok; ++v) ok = dC[v] + dFF[v] + dDp[v] == dl[v];
        if (!ok) continue;
        auto layout = action_layout(q, dE, dGG, 2);
        for (const auto& parts : block_shuffles(q, L, {dC, dFF, dDp})) {
          const Block &C = parts[0], &FF = parts[1], &Dp = parts[2];
          Block D = tau(q, Dp);
          for (const auto& w : layout.reps) {
            auto [E, GG] = action_images(layout, w);
            FactoredRational t = relabel(Ff, block_relabel(q, concat(concat(C, E), D), 1)) *
                                 relabel(Fg, modblock_relabel(q, rho(q, FF, GG), 2));
            t /= gl(C, E) * gl(C, D) * gl(E, D) * sq(FF, GG);
            t *= gl(C, FF) * gl(C, Dp) * gl(FF, Dp) * sq(E, GG);
            t *= gl(E, FF) / gl(FF, E) * (gl(D, FF) / gl(FF, D)) * (gl(E, Dp) / gl(Dp, E)) * (sq(D, GG) / sq(Dp, GG));
            terms.push_back(t);
          }
        }
      }
    }
  return FactoredRational::sum(terms);
}

// Delta_L(f g) against the braided composite, componentwise (unframed).
inline CheckResult yd_check(const DualityQuiver& q, const AlgebraElement& f, const ModuleElement& g, const SuiteOptions& o = {}) {
  if (has_case_two(q)) throw Error("assumption-violated", "the Yetter-Drinfeld check needs a quiver without Case II arrow orbits");
  Tally t(q, "yd", o, check_seed(o.seed, "yd"));
  for (const auto& [dF, pf] : f.comps)
    for (const auto& [dG, pg] : g.comps) {
      auto fg = act(q, AlgebraElement::single(dF, pf), ModuleElement::single(dG, pg), false, o.cfg, inner_jobs(o));
      auto D = output_grading(q, dF, dG);
      FactoredRational H = fg.comps.count(D) ? FactoredRational(fg.comps.at(D)) : FactoredRational(0);
      for (const auto& c : coact_left_component(q, D, H, false, o.cfg)) {
        auto rhs = yd_rhs(q, dF, pf, dG, pg, c.left, c.right, o.cfg);
        t.compare(c.value, rhs, [&] {
          return json{{"f", to_json(q, AlgebraElement::single(dF, pf))},
                      {"g", to_json(q, ModuleElement::single(dG, pg))},
                      {"left", to_json_dimvec(q, c.left)},
                      {"right", to_json_ospdimvec(q, c.right)}};
        });
      }
    }
  return t.result();
}

// ---- suites ----

using SuiteBuilder = std::function<std::vector<Check>(const DualityQuiver&, const SuiteOptions&)>;

inline Check single_check(std::string name, std::function<CheckResult()> run) {
  return {{name}, [run] { return std::vector<CheckResult>{run()}; }};
}

inline std::vector<Check> hexagon_suite(const DualityQuiver& q, const SuiteOptions& o) {
  auto blocks = algebra_gradings(q, o.hexagon_block);
  auto mods = module_gradings(q, o.hexagon_block);
  auto sq = [&q, &o](const Block& A, const ModBlock& M) { return osp_kernel(q, A, M, o.cfg); };
  auto gl = [&q](const Block& A, const Block& B) { return gl_pair(q, A, B); };
  auto tq = [&q](const Block& A) { return tau(q, A); };
  auto pair_witness = [&q](const Block& A, const Block& B) { return json{{"A", block_json(q, A)}, {"B", block_json(q, B)}}; };
  auto mod_witness = [&q](const Block& A, const Block& B, const ModBlock& M) {
    return json{{"A", block_json(q, A)}, {"B", block_json(q, B)}, {"M", modblock_json(q, M)}};
  };
  using Pair = std::function<void(Tally&, const Block&, const Block&, const Block&, const Block&)>;
  using Triple = std::function<void(Tally&, const Block&, const Block&, const ModBlock&)>;
  std::vector<Check> out;
  auto over_pairs = [&](std::string name, Pair body) {
    out.push_back(single_check(name, [=, &q, &o] {
      Tally t(q, name, o, check_seed(o.seed, name));
      for (const auto& d1 : blocks)
        for (const auto& d2 : blocks) {
          if (t.failed()) break;
          body(t, slot_block(q, d1, 1), slot_block(q, d2, 3), slot_block(q, d1, 2), slot_block(q, d2, 4));
        }
      return t.result();
    }));
  };
  auto over_triples = [&](std::string name, Triple body) {
    out.push_back(single_check(name, [=, &q, &o] {
      Tally t(q, name, o, check_seed(o.seed, name));
      for (const auto& d1 : blocks)
        for (const auto& d2 : blocks)
          for (const auto& dm : mods) {
            if (t.failed()) break;
            body(t, slot_block(q, d1, 1), slot_block(q, d2, 4), slot_modblock(q, dm, 5));
          }
      return t.result();
    }));
  };
  over_pairs("hexagon.gl-multiplicative-left", [=](Tally& t, const Block& A1, const Block& A2, const Block& B1, const Block&) {
    t.compare(gl(concat(A1, A2), B1), gl(A1, B1) * gl(A2, B1), [&] { return pair_witness(concat(A1, A2), B1); });
  });
  over_pairs("hexagon.gl-multiplicative-right", [=](Tally& t, const Block& A1, const Block&, const Block& B1, const Block& B2) {
    t.compare(gl(A1, concat(B1, B2)), gl(A1, B1) * gl(A1, B2), [&] { return pair_witness(A1, concat(B1, B2)); });
  });
  over_pairs("hexagon.anti-equivalence", [=](Tally& t, const Block& A1, const Block& A2, const Block&, const Block&) {
    t.compare(gl(A1, A2), gl(tq(A2), tq(A1)), [&] { return pair_witness(A1, A2); });
  });
  over_pairs("hexagon.tau-pair-product", [=, &q](Tally& t, const Block& A1, const Block& A2, const Block&, const Block&) {
    t.compare(tau_pair(q, concat(A1, A2)), tau_pair(q, A1) * tau_pair(q, A2) * gl(A1, tq(A2)), [&] { return pair_witness(A1, A2); });
  });
  over_triples("hexagon.square-product", [=](Tally& t, const Block& A1, const Block& A2, const ModBlock& M) {
    t.compare(sq(concat(A1, A2), M), gl(A1, tq(A2)) * sq(A1, M) * sq(A2, M), [&] { return mod_witness(A1, A2, M); });
  });
  over_triples("hexagon.square-factorization", [=, &q](Tally& t, const Block& A1, const Block& A2, const ModBlock& M) {
    t.compare(sq(A1, M), tau_pair(q, A1) * gl(A1, flat(q, M)), [&] { return mod_witness(A1, A2, M); });
  });
  over_triples("hexagon.square-rho", [=, &q](Tally& t, const Block& A1, const Block& B, const ModBlock& M) {
    t.compare(sq(A1, rho(q, B, M)), gl(A1, B) * gl(A1, tq(B)) * sq(A1, M), [&] { return mod_witness(A1, B, M); });
  });
  over_triples("hexagon.cherednik", [=](Tally& t, const Block& A1, const Block& A2, const ModBlock& M) {
    auto t1 = sq(A1, M), t2 = sq(A2, M);
    auto lhs = t2 * gl(A2, tq(A1)) * t1 * gl(A1, A2);
    auto rhs = gl(tq(A2), tq(A1)) * t1 * gl(A1, tq(A2)) * t2;
    t.compare(lhs, rhs, [&] { return mod_witness(A1, A2, M); });
  });
  return out;
}

inline bool has_type_d(const DualityQuiver& q) {
  for (int v = 0; v < q.num_vertices(); ++v)
    if (q.is_fixed(v) && q.vertices[v].type == FixedType::OEven) return true;
  return false;
}

// On quivers with an even orthogonal vertex the outcomes are reported without
// being asserted.
inline std::vector<Check> yd_suite(const DualityQuiver& q, const SuiteOptions& o) {
  std::vector<Check> out;
  for (int v : gauge_vertex_list(q)) {
    std::vector<OspDimVec> gs{OspDimVec(q.num_orbits(), 0)};
    for (int orb : gauge_orbit_list(q)) gs.push_back(unit_ospdimvec(q, orb));
    std::string name = "yd.degree-one." + q.vertices[v].id;
    out.push_back(single_check(name, [=, &q, &o] {
      std::mt19937_64 rng(check_seed(o.seed, name));
      Tally t(q, name, o, rng());
      for (const auto& dG : gs) {
        auto f = random_algebra_element(q, unit_dimvec(q, v), rng);
        auto g = random_module_element(q, dG, rng);
        t.merge(yd_check(q, f, g, o));
      }
      auto r = t.result();
      r.asserted = !has_type_d(q);
      return r;
    }));
  }
  out.push_back(single_check("yd.unit", [&q, &o] {
    std::mt19937_64 rng(check_seed(o.seed, "yd.unit"));
    Tally t(q, "yd.unit", o, rng());
    auto one = AlgebraElement::single(DimVec(q.num_vertices(), 0), 1);
    for (const auto& dG : module_gradings(q, 1)) {
      auto g = random_module_element(q, dG, rng);
      t.merge(yd_check(q, one, g, o));
    }
    auto r = t.result();
    r.asserted = !has_type_d(q);
    return r;
  }));
  return out;
}

inline AlgebraElement random_degree_one(const DualityQuiver& q, std::mt19937_64& rng) {
  auto vs = gauge_vertex_list(q);
  return random_algebra_element(q, unit_dimvec(q, vs[rng() % vs.size()]), rng);
}

inline std::vector<Check> assoc_suite(const DualityQuiver& q, const SuiteOptions& o) {
  const std::vector<std::string> names{"assoc.product", "invariance.assoc-product"};
  return {{names, [=, &q, &o] {
             std::mt19937_64 rng(check_seed(o.seed, names[0]));
             Tally a(q, names[0], o, rng()), inv(q, names[1], o, rng());
             for (int k = 0; k < o.instances; ++k) {
               auto f = random_degree_one(q, rng), g = random_degree_one(q, rng), h = random_degree_one(q, rng);
               auto left = product(q, product(q, f, g, inner_jobs(o)), h, inner_jobs(o));
               auto right = product(q, f, product(q, g, h, inner_jobs(o)), inner_jobs(o));
               auto w = [&] { return json{{"f", to_json(q, f)}, {"g", to_json(q, g)}, {"h", to_json(q, h)},
                                          {"lhs", to_json(q, left)}, {"rhs", to_json(q, right)}}; };
               a.require(left == right, w);
               inv.require(is_invariant(q, left) && is_invariant(q, right), w);
             }
             return std::vector<CheckResult>{a.result(), inv.result()};
           }}};
}

inline std::vector<Check> module_suite(const DualityQuiver& q, const SuiteOptions& o) {
  std::vector<Check> out;
  std::vector<bool> framings{false};
  if (!q.framing.empty()) framings.push_back(true);
  for (bool framed : framings) {
    std::string tag = framed ? "framed" : "unframed";
    std::vector<std::string> names{"module." + tag, "invariance.module-" + tag};
    out.push_back({names, [=, &q, &o] {
                     std::mt19937_64 rng(check_seed(o.seed, names[0]));
                     Tally a(q, names[0], o, rng()), inv(q, names[1], o, rng());
                     auto gradings = module_gradings(q, 1);
                     for (int k = 0; k < o.instances; ++k) {
                       auto f = random_degree_one(q, rng), g = random_degree_one(q, rng);
                       auto dm = gradings[k % gradings.size()];
                       auto m = total(dm) == 0 ? vacuum(q) : random_module_element(q, dm, rng);
                       auto left = act(q, product(q, f, g, inner_jobs(o)), m, framed, o.cfg, inner_jobs(o));
                       auto right = act(q, f, act(q, g, m, framed, o.cfg, inner_jobs(o)), framed, o.cfg, inner_jobs(o));
                       auto w = [&] { return json{{"f", to_json(q, f)}, {"g", to_json(q, g)}, {"m", to_json(q, m)},
                                                  {"lhs", to_json(q, left)}, {"rhs", to_json(q, right)}}; };
                       a.require(left == right, w);
                       inv.require(is_invariant(q, left) && is_invariant(q, right), w);
                     }
                     return std::vector<CheckResult>{a.result(), inv.result()};
                   }});
  }
  return out;
}

// (Delta x id) Delta_L = (id x Delta_L) Delta_L with left alphabets 1 and 3,
// and the mirrored identity for Delta_R.
inline std::vector<Check> coassoc_suite(const DualityQuiver& q, const SuiteOptions& o) {
  std::vector<Check> out;
  out.push_back(single_check("coassoc.left", [&q, &o] {
    std::mt19937_64 rng(check_seed(o.seed, "coassoc.left"));
    Tally t(q, "coassoc.left", o, rng());
    for (const auto& D : module_gradings(q, o.coassoc_rank)) {
      auto m = random_module_element(q, D, rng);
      FactoredRational H(m.comps.at(D));
      for (const auto& [dl, dr] : coaction_splits(q, D))
        for (const auto& d1 : sub_gradings(dl)) {
          Block l1 = slot_block(q, d1, 1), l2 = slot_block(q, sub(dl, d1), 3);
          ModBlock r = slot_modblock(q, dr, 2);
          Block l12 = concat(l1, l2);
          auto v1 = relabel(H, modblock_relabel(q, rho(q, l12, r), 2)) / (osp_kernel(q, l12, r, o.cfg) * gl_pair(q, l1, l2));
          auto inner = rho(q, l2, r);
          auto v2 = relabel(H, modblock_relabel(q, rho(q, l1, inner), 2)) /
                    (osp_kernel(q, l1, inner, o.cfg) * osp_kernel(q, l2, r, o.cfg));
          t.compare(v1, v2, [&] {
            return json{{"m", to_json(q, m)}, {"l1", block_json(q, l1)}, {"l2", block_json(q, l2)}, {"r", modblock_json(q, r)}};
          });
        }
    }
    return t.result();
  }));
  out.push_back(single_check("coassoc.right", [&q, &o] {
    std::mt19937_64 rng(check_seed(o.seed, "coassoc.right"));
    Tally t(q, "coassoc.right", o, rng());
    for (const auto& D : module_gradings(q, o.coassoc_rank)) {
      auto m = random_module_element(q, D, rng);
      FactoredRational H(m.comps.at(D));
      for (const auto& [dl, dr] : coaction_splits(q, D))
        for (const auto& d1 : sub_gradings(dl)) {
          Block l1 = slot_block(q, d1, 1), l2 = slot_block(q, sub(dl, d1), 3);
          ModBlock r = slot_modblock(q, dr, 2);
          Block l12 = concat(l1, l2);
          auto v1 = relabel(H, modblock_relabel(q, rho(q, l12, r), 2)) / (osp_pair_reversed(q, r, l12) * gl_pair(q, l1, l2));
          auto inner = rho(q, l1, r);
          auto v2 = relabel(H, modblock_relabel(q, rho(q, l2, inner), 2)) /
                    (osp_pair_reversed(q, inner, l2) * osp_pair_reversed(q, r, l1));
          t.compare(v1, v2, [&] {
            return json{{"m", to_json(q, m)}, {"l1", block_json(q, l1)}, {"l2", block_json(q, l2)}, {"r", modblock_json(q, r)}};
          });
        }
    }
    return t.result();
  }));
  return out;
}

// Expected vacuum eigenvalue of psi at orbit o, straight from the framing data.
inline FactoredRational psi_vacuum_expected(const DualityQuiver& q, int o) {
  const auto* e = q.framing_at_orbit(o);
  if (!e) return 1;
  LinearForm w = LinearForm::var(spectral_var()), h = LinearForm::var(hbar_var());
  std::vector<LinearForm> num, den;
  bool fixed = q.vertex_orbits()[o].fixed();
  for (const auto& u : e->weights) {
    num.push_back(w - u);
    den.push_back(w - u - h);
    if (fixed) {
      num.push_back(w + u);
      den.push_back(w + u - h);
    }
  }
  if (e->odd) {
    num.push_back(w);
    den.push_back(w - h);
  }
  return FactoredRational::product(1, num, den);
}

inline std::vector<Check> cartan_suite(const DualityQuiver& q, const SuiteOptions& o) {
  std::vector<Check> out;
  auto w = spectral_var();
  out.push_back(single_check("cartan.phi-commutator", [&q, &o, w] {
    std::mt19937_64 rng(check_seed(o.seed, "cartan.phi-commutator"));
    Tally t(q, "cartan.phi-commutator", o, rng());
    for (int i : gauge_vertex_list(q))
      for (int k = 0; k < 2; ++k) {
        auto f = random_degree_one(q, rng), g = random_degree_one(q, rng);
        auto d1 = f.comps.begin()->first, d2 = g.comps.begin()->first;
        auto fg = product(q, f, g, inner_jobs(o));
        DimVec d = add(d1, d2);
        auto lhs = phi_closed(q, i, d) * FactoredRational(fg.comps.count(d) ? fg.comps.at(d) : Polynomial());
        auto rhs = product_component(q, d1, phi_closed(q, i, d1) * FactoredRational(f.comps.at(d1)), d2,
                                     phi_closed(q, i, d2) * FactoredRational(g.comps.at(d2)), inner_jobs(o));
        auto wit = [&] { return json{{"vertex", q.vertices[i].id}, {"f", to_json(q, f)}, {"g", to_json(q, g)}}; };
        t.compare(lhs, rhs, wit);
        t.require(expand_at_infinity(lhs, w, o.order) == expand_at_infinity(rhs, w, o.order), wit);
      }
    return t.result();
  }));
  out.push_back(single_check("cartan.bosonised-commutation", [&q, &o, w] {
    std::mt19937_64 rng(check_seed(o.seed, "cartan.bosonised-commutation"));
    Tally t(q, "cartan.bosonised-commutation", o, rng());
    bool framed = !q.framing.empty();
    auto mods = module_gradings(q, 1);
    for (int i : gauge_vertex_list(q))
      for (const auto& dM : mods) {
        auto f = random_degree_one(q, rng);
        auto dA = f.comps.begin()->first;
        auto g = random_module_element(q, dM, rng);
        auto fg = act(q, f, g, framed, o.cfg, inner_jobs(o));
        auto D = output_grading(q, dA, dM);
        auto lhs = psi_closed(q, i, D) * FactoredRational(fg.comps.count(D) ? fg.comps.at(D) : Polynomial());
        auto ft = cartan_left_factor(q, i, dA) * FactoredRational(f.comps.at(dA));
        auto gt = psi_closed(q, i, dM) * FactoredRational(g.comps.at(dM));
        auto rhs = act_component(q, dA, ft, dM, gt, framed, o.cfg, inner_jobs(o));
        auto wit = [&] { return json{{"vertex", q.vertices[i].id}, {"f", to_json(q, f)}, {"m", to_json(q, g)}}; };
        t.compare(lhs, rhs, wit);
        t.require(expand_at_infinity(lhs, w, o.order) == expand_at_infinity(rhs, w, o.order), wit);
      }
    return t.result();
  }));
  out.push_back(single_check("cartan.psi-vacuum", [&q, &o] {
    Tally t(q, "cartan.psi-vacuum", o, check_seed(o.seed, "cartan.psi-vacuum"));
    for (int orb : gauge_orbit_list(q)) {
      int i = q.vertex_orbits()[orb].rep;
      auto r = psi_act(q, i, vacuum(q));
      t.compare(r.begin()->second, psi_vacuum_expected(q, orb), [&] { return json{{"orbit", q.vertices[i].id}}; });
    }
    return t.result();
  }));
  out.push_back(single_check("cartan.coaction", [&q, &o] {
    std::mt19937_64 rng(check_seed(o.seed, "cartan.coaction"));
    Tally t(q, "cartan.coaction", o, rng());
    OspDimVec D(q.num_orbits(), 0);
    for (int orb : gauge_orbit_list(q)) D[orb] = 1;
    auto m = random_module_element(q, D, rng);
    for (int i : gauge_vertex_list(q)) {
      auto lhs = coact_left_component(q, D, psi_act(q, i, m).at(D), false, o.cfg);
      auto base = coact_left_component(q, D, FactoredRational(m.comps.at(D)), false, o.cfg);
      for (size_t k = 0; k < lhs.size(); ++k) {
        auto c = cartan_coaction(q, i, base[k].left, base[k].right);
        t.compare(lhs[k].value, c.left * c.right * base[k].value, [&] {
          return json{{"vertex", q.vertices[i].id}, {"m", to_json(q, m)}, {"left", to_json_dimvec(q, base[k].left)}};
        });
      }
    }
    return t.result();
  }));
  return out;
}

// Products and actions with output rank <= max_rank; at the top rank the
// parameters are specialized to random integers.  Polynomiality and
// invariance are reported per kind.
inline std::vector<Check> polynomiality_suite(const DualityQuiver& q, const SuiteOptions& o) {
  std::vector<Check> out;
  {
    std::vector<std::string> names{"polynomiality.product", "invariance.product"};
    out.push_back({names, [=, &q, &o] {
                     std::mt19937_64 rng(check_seed(o.seed, names[0]));
                     Tally p(q, names[0], o, rng()), inv(q, names[1], o, rng());
                     std::vector<std::pair<DimVec, DimVec>> pairs;
                     for (const auto& d : algebra_gradings(q, o.max_rank))
                       for (const auto& d1 : sub_gradings(d))
                         if (total(d1) > 0 && total(d1) < total(d)) pairs.push_back({d1, sub(d, d1)});
                     for (const auto& [d1, d2] : sample(pairs, o.instances, rng)) {
                       auto f = random_algebra_element(q, d1, rng), g = random_algebra_element(q, d2, rng);
                       auto w = [&] { return json{{"f", to_json(q, f)}, {"g", to_json(q, g)}}; };
                       try {
                         auto fg = product(q, f, g, inner_jobs(o));
                         p.require(true, w);
                         inv.require(is_invariant(q, fg), w);
                       } catch (const Error& e) {
                         json x = w();
                         x["error"] = e.code();
                         x["message"] = e.what();
                         p.require(false, [&] { return x; });
                       }
                     }
                     return std::vector<CheckResult>{p.result(), inv.result()};
                   }});
  }
  std::vector<bool> framings{false};
  if (!q.framing.empty()) framings.push_back(true);
  for (bool framed : framings) {
    std::string tag = framed ? "action-framed" : "action";
    std::vector<std::string> names{"polynomiality." + tag, "invariance." + tag};
    out.push_back({names, [=, &q, &o] {
                     std::mt19937_64 rng(check_seed(o.seed, names[0]));
                     Tally p(q, names[0], o, rng()), inv(q, names[1], o, rng());
                     std::vector<std::pair<DimVec, OspDimVec>> pairs;
                     for (const auto& dA : algebra_gradings(q, o.max_rank))
                       for (const auto& dM : module_gradings(q, o.max_rank))
                         if (total(dA) > 0 && total(output_grading(q, dA, dM)) <= o.max_rank) pairs.push_back({dA, dM});
                     for (const auto& [dA, dM] : sample(pairs, o.instances, rng)) {
                       bool top = o.max_rank >= 4 && total(output_grading(q, dA, dM)) == o.max_rank;
                       DualityQuiver qs = top ? specialize_parameters(q, rng) : q;
                       auto f = random_algebra_element(qs, dA, rng);
                       auto m = total(dM) == 0 ? vacuum(qs) : random_module_element(qs, dM, rng);
                       auto w = [&] {
                         json x{{"f", to_json(q, f)}, {"m", to_json(q, m)}};
                         if (top) x["specialized_quiver"] = to_json(qs);
                         return x;
                       };
                       try {
                         auto fm = act(qs, f, m, framed, o.cfg, inner_jobs(o));
                         p.require(true, w);
                         inv.require(is_invariant(qs, fm), w);
                       } catch (const Error& e) {
                         json x = w();
                         x["error"] = e.code();
                         x["message"] = e.what();
                         p.require(false, [&] { return x; });
                       }
                     }
                     return std::vector<CheckResult>{p.result(), inv.result()};
                   }});
  }
  return out;
}

// Full-group sum against |W_L| times the coset sum for every action split with
// output rank <= max_rank (framed when a framing exists).
inline Integer levi_order(const DualityQuiver& q, const DimVec& dA, const OspDimVec& dM) {
  Integer n = 1;
  for (int v = 0; v < q.num_vertices(); ++v) n *= factorial(dA[v]);
  for (int o = 0; o < q.num_orbits(); ++o) n *= block_order({orbit_block_type(q, o), dM[o]});
  return n;
}

inline std::vector<Check> oracle_suite(const DualityQuiver& q, const SuiteOptions& o) {
  std::string name = "oracle.full-group";
  return {single_check(name, [=, &q, &o] {
    std::mt19937_64 rng(check_seed(o.seed, name));
    Tally t(q, name, o, rng());
    bool framed = !q.framing.empty();
    std::vector<std::pair<DimVec, OspDimVec>> pairs;
    for (const auto& dA : algebra_gradings(q, o.max_rank))
      for (const auto& dM : module_gradings(q, o.max_rank))
        if (total(dA) > 0 && total(output_grading(q, dA, dM)) <= o.max_rank) pairs.push_back({dA, dM});
    if (q.num_orbits() > 1) pairs = sample(pairs, o.instances, rng);
    for (const auto& [dA, dM] : pairs) {
      bool top = o.max_rank >= 4 && total(output_grading(q, dA, dM)) == o.max_rank;
      DualityQuiver qs = top ? specialize_parameters(q, rng) : q;
      auto f = random_algebra_element(qs, dA, rng);
      auto m = total(dM) == 0 ? vacuum(qs) : random_module_element(qs, dM, rng);
      FactoredRational F(f.comps.at(dA)), G(m.comps.at(dM));
      auto coset = act_component(qs, dA, F, dM, G, framed, o.cfg, inner_jobs(o));
      auto l = action_layout(qs, dA, dM);
      FactorList k;
      osp_kernel_factors(qs, l.A, l.M, k, o.cfg);
      if (framed) framing_factors(qs, l.A, k, o.cfg);
      auto base = k.value() * relabel(F, block_relabel(qs, l.A, 1)) * relabel(G, modblock_relabel(qs, l.M, 2));
      auto full = symmetrize_over(base, l.slots, l.group, enumerate_weyl(l.group), inner_jobs(o));
      t.compare(full, coset * FactoredRational(Rational(levi_order(q, dA, dM))), [&] {
        return json{{"f", to_json(q, f)}, {"m", to_json(q, m)}};
      });
    }
    return t.result();
  })};
}

inline const std::vector<std::pair<std::string, SuiteBuilder>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteBuilder>> t{
      {"hexagon", hexagon_suite}, {"yd", yd_suite},       {"assoc", assoc_suite},
      {"module", module_suite},   {"coassoc", coassoc_suite}, {"cartan", cartan_suite},
      {"polynomiality", polynomiality_suite}, {"oracle", oracle_suite},
  };
  return t;
}

inline std::vector<std::string> suite_names() {
  std::vector<std::string> r;
  for (const auto& [n, b] : suite_table()) r.push_back(n);
  r.push_back("all");
  return r;
}

inline Certificate run_suite(const DualityQuiver& q, const std::string& suite, const SuiteOptions& o = {}) {
  bool known = suite == "all";
  for (const auto& [n, b] : suite_table()) known = known || n == suite;
  if (!known) throw Error("usage", "unknown suite '" + suite + "'");
  Certificate c;
  c.suite = suite;
  c.seed = o.seed;
  c.mutation = o.cfg.mutation;
  std::vector<Check> checks;
  for (const auto& [n, b] : suite_table()) {
    if (suite != "all" && suite != n) continue;
    if (n == "yd" && has_case_two(q)) {
      c.skipped.push_back({n, "assumption-violated: Case II arrow orbit present"});
      continue;
    }
    for (auto& ch : b(q, o)) checks.push_back(std::move(ch));
  }
  c.checks = run_checks(checks, o.jobs);
  return c;
}

// ---- regression fixtures ----

// Regenerates every case of a fixture file and compares it structurally.
inline CheckResult regression_check(const std::string& fixture_path, const std::string& data_dir, const SuiteOptions& o = {}) {
  json fx = read_json_file(fixture_path);
  auto q = load_quiver(data_dir + "/" + fx.at("quiver").get<std::string>());
  bool framed = fx.value("framed", false);
  std::string stem = fixture_path.substr(fixture_path.find_last_of('/') + 1);
  stem = stem.substr(0, stem.find('.'));
  Tally t(q, "regression." + stem, o, 0);
  for (const auto& c : fx.at("cases")) {
    auto f = algebra_element_from_json(q, c.at("f"));
    auto m = module_element_from_json(q, c.at("m"));
    auto expect = module_element_from_json(q, c.at("result"));
    json got;
    bool ok;
    try {
      auto r = act(q, f, m, framed, o.cfg, o.jobs);
      ok = r == expect;
      got = to_json(q, r);
    } catch (const Error& e) {
      ok = false;
      got = error_witness(e.code(), e.what());
    }
    t.require(ok, [&] { return json{{"f", c.at("f")}, {"m", c.at("m")}, {"expected", c.at("result")}, {"got", got}}; });
  }
  return t.result();
}

}  // namespace coha
