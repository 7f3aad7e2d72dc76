#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "coha/core.hpp"

namespace coha {

enum class BlockType { GL, BC, D };

inline std::string to_string(BlockType t) {
  switch (t) {
    case BlockType::GL: return "GL";
    case BlockType::BC: return "BC";
    case BlockType::D: return "D";
  }
  return "?";
}

// x_k -> signs[k] * x_{perm[k]}, 0-based.
struct SignedPermutation {
  std::vector<int> perm;
  std::vector<int> signs;

  static SignedPermutation identity(int n) {
    SignedPermutation s;
    s.perm.resize(n);
    std::iota(s.perm.begin(), s.perm.end(), 0);
    s.signs.assign(n, 1);
    return s;
  }
  int size() const { return static_cast<int>(perm.size()); }
  int sign_product() const {
    int p = 1;
    for (int s : signs) p *= s;
    return p;
  }
  bool satisfies(BlockType t) const {
    if (t == BlockType::GL) return std::all_of(signs.begin(), signs.end(), [](int s) { return s == 1; });
    if (t == BlockType::D) return sign_product() == 1;
    return true;
  }
  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
  friend auto operator<=>(const SignedPermutation&, const SignedPermutation&) = default;
};

// apply(compose(a, b), p) == apply(a, apply(b, p)).
inline SignedPermutation compose(const SignedPermutation& a, const SignedPermutation& b) {
  SignedPermutation r;
  int n = b.size();
  r.perm.resize(n);
  r.signs.resize(n);
  for (int k = 0; k < n; ++k) {
    r.perm[k] = a.perm[b.perm[k]];
    r.signs[k] = b.signs[k] * a.signs[b.perm[k]];
  }
  return r;
}

inline SignedPermutation inverse(const SignedPermutation& a) {
  SignedPermutation r;
  int n = a.size();
  r.perm.resize(n);
  r.signs.resize(n);
  for (int k = 0; k < n; ++k) {
    r.perm[a.perm[k]] = k;
    r.signs[a.perm[k]] = a.signs[k];
  }
  return r;
}

struct BlockSpec {
  BlockType type = BlockType::GL;
  int rank = 0;
};
using GroupSpec = std::vector<BlockSpec>;

struct WeylElement {
  std::vector<SignedPermutation> blocks;

  static WeylElement identity(const GroupSpec& g) {
    WeylElement w;
    for (const auto& b : g) w.blocks.push_back(SignedPermutation::identity(b.rank));
    return w;
  }
  bool satisfies(const GroupSpec& g) const {
    if (g.size() != blocks.size()) return false;
    for (size_t i = 0; i < g.size(); ++i)
      if (blocks[i].size() != g[i].rank || !blocks[i].satisfies(g[i].type)) return false;
    return true;
  }
  friend bool operator==(const WeylElement&, const WeylElement&) = default;
  friend auto operator<=>(const WeylElement&, const WeylElement&) = default;
};

inline WeylElement compose(const WeylElement& a, const WeylElement& b) {
  WeylElement r;
  for (size_t i = 0; i < a.blocks.size(); ++i) r.blocks.push_back(compose(a.blocks[i], b.blocks[i]));
  return r;
}

inline Integer factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Integer block_order(const BlockSpec& b) {
  Integer f = factorial(b.rank);
  if (b.type == BlockType::GL || b.rank == 0) return f;
  Integer two = 1;
  for (int i = 0; i < (b.type == BlockType::BC ? b.rank : b.rank - 1); ++i) two *= 2;
  return f * two;
}

inline Integer group_order(const GroupSpec& g) {
  Integer r = 1;
  for (const auto& b : g) r *= block_order(b);
  return r;
}

namespace detail {

inline std::vector<std::vector<int>> sign_vectors(int n, BlockType t) {
  std::vector<std::vector<int>> out;
  if (t == BlockType::GL) {
    out.push_back(std::vector<int>(n, 1));
    return out;
  }
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    std::vector<int> s(n);
    int prod = 1;
    for (int k = 0; k < n; ++k) {
      s[k] = (m >> (n - 1 - k)) & 1 ? -1 : 1;
      prod *= s[k];
    }
    if (t == BlockType::D && prod != 1) continue;
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<SignedPermutation> block_elements(const BlockSpec& b) {
  std::vector<SignedPermutation> out;
  std::vector<int> p(b.rank);
  std::iota(p.begin(), p.end(), 0);
  auto signs = sign_vectors(b.rank, b.type);
  do {
    for (const auto& s : signs) out.push_back({p, s});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::vector<WeylElement> product_of(const std::vector<std::vector<SignedPermutation>>& per) {
  std::vector<WeylElement> out;
  std::vector<size_t> idx(per.size(), 0);
  for (const auto& v : per)
    if (v.empty()) return out;
  for (;;) {
    WeylElement w;
    for (size_t i = 0; i < per.size(); ++i) w.blocks.push_back(per[i][idx[i]]);
    out.push_back(std::move(w));
    int i = static_cast<int>(per.size()) - 1;
    while (i >= 0 && ++idx[i] == per[i].size()) idx[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

inline void combinations(const std::vector<int>& pool, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> pick;
  std::function<void(size_t)> rec = [&](size_t start) {
    if (static_cast<int>(pick.size()) == k) {
      out.push_back(pick);
      return;
    }
    for (size_t i = start; i < pool.size(); ++i) {
      if (pool.size() - i < static_cast<size_t>(k) - pick.size()) break;
      pick.push_back(pool[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

}  // namespace detail

// All group elements; blocks vary lexicographically with the first block slowest,
// within a block by permutation word then sign vector.
inline std::vector<WeylElement> enumerate_weyl(const GroupSpec& g) {
  std::vector<std::vector<SignedPermutation>> per;
  for (const auto& b : g) per.push_back(detail::block_elements(b));
  return detail::product_of(per);
}

// Minimal coset representatives of W(parts) inside one block of rank sum(parts).
// GL: ordered set partitions into parts; position k of part j maps to the k-th
// smallest slot chosen for j.  BC/D: parts = (d', d''), a subset for d' with a sign
// per chosen slot; for D the last d'' slot absorbs the sign product, and d'' = 0
// keeps only even sign vectors.
inline std::vector<SignedPermutation> coset_reps(const std::vector<int>& parts, BlockType t) {
  int n = std::accumulate(parts.begin(), parts.end(), 0);
  std::vector<SignedPermutation> out;
  if (t == BlockType::GL) {
    std::function<void(size_t, std::vector<int>, std::vector<int>)> rec = [&](size_t j, std::vector<int> pool,
                                                                             std::vector<int> acc) {
      if (j == parts.size()) {
        out.push_back({acc, std::vector<int>(n, 1)});
        return;
      }
      std::vector<std::vector<int>> subs;
      detail::combinations(pool, parts[j], subs);
      for (const auto& s : subs) {
        std::vector<int> rest;
        std::set_difference(pool.begin(), pool.end(), s.begin(), s.end(), std::back_inserter(rest));
        std::vector<int> a = acc;
        a.insert(a.end(), s.begin(), s.end());
        rec(j + 1, rest, a);
      }
    };
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    rec(0, pool, {});
    return out;
  }
  if (parts.size() != 2) throw std::invalid_argument("signed coset representatives need a (d', d'') split");
  int d1 = parts[0], d2 = parts[1];
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::vector<int>> subs;
  detail::combinations(pool, d1, subs);
  auto signs = detail::sign_vectors(d1, BlockType::BC);
  for (const auto& s : subs) {
    std::vector<int> rest;
    std::set_difference(pool.begin(), pool.end(), s.begin(), s.end(), std::back_inserter(rest));
    std::vector<int> perm = s;
    perm.insert(perm.end(), rest.begin(), rest.end());
    for (const auto& e : signs) {
      std::vector<int> sg = e;
      sg.resize(n, 1);
      if (t == BlockType::D) {
        int prod = 1;
        for (int x : e) prod *= x;
        if (prod == -1) {
          if (d2 == 0) continue;
          sg[n - 1] = -1;
        }
      }
      out.push_back({perm, sg});
    }
  }
  return out;
}

// Product over blocks of per-block coset representatives.
inline std::vector<WeylElement> coset_reps(const std::vector<std::pair<std::vector<int>, BlockType>>& blocks) {
  std::vector<std::vector<SignedPermutation>> per;
  for (const auto& [parts, t] : blocks) per.push_back(coset_reps(parts, t));
  return detail::product_of(per);
}

// Slot variables per block.
using SlotAssignment = std::vector<std::vector<VarId>>;

inline std::map<VarId, LinearForm> substitution_of(const WeylElement& w, const SlotAssignment& slots) {
  if (slots.size() != w.blocks.size()) throw Error("unassigned-slot", "slot assignment does not match the group");
  std::map<VarId, LinearForm> m;
  for (size_t b = 0; b < slots.size(); ++b) {
    const auto& sp = w.blocks[b];
    if (static_cast<int>(slots[b].size()) != sp.size()) throw Error("unassigned-slot", "block " + std::to_string(b) + " slot count mismatch");
    for (int k = 0; k < sp.size(); ++k) {
      if (sp.perm[k] == k && sp.signs[k] == 1) continue;
      m.emplace(slots[b][k], LinearForm::var(slots[b][sp.perm[k]], sp.signs[k]));
    }
  }
  return m;
}

inline FactoredRational apply(const WeylElement& w, const SlotAssignment& slots, const FactoredRational& p) {
  return p.substitute(substitution_of(w, slots));
}

inline Polynomial apply(const WeylElement& w, const SlotAssignment& slots, const Polynomial& p) {
  std::map<VarId, std::pair<VarId, int>> ren;
  for (const auto& [v, f] : substitution_of(w, slots)) ren.emplace(v, std::make_pair(f.coeffs()[0].first, static_cast<int>(f.coeffs()[0].second.get_num().get_si())));
  return p.rename(ren);
}

inline int default_jobs() {
  if (const char* e = std::getenv("COHA_JOBS")) {
    int n = std::atoi(e);
    if (n > 0) return n;
  }
  unsigned h = std::thread::hardware_concurrency();
  return h ? static_cast<int>(h) : 1;
}

// Sums term(i) for i < n in contiguous chunks on up to `jobs` threads; the
// chunk partition and the final reduction order do not depend on `jobs`.
template <class T>
T parallel_reduce(size_t n, const std::function<T(size_t)>& term, const std::function<T(std::vector<T>)>& reduce, int jobs = 0) {
  if (jobs <= 0) jobs = default_jobs();
  if (n == 0) return reduce({});
  size_t chunk = 64;
  size_t nchunks = (n + chunk - 1) / chunk;
  std::vector<T> partial(nchunks);
  auto work = [&](size_t c) {
    std::vector<T> ts;
    for (size_t i = c * chunk; i < std::min(n, (c + 1) * chunk); ++i) ts.push_back(term(i));
    partial[c] = reduce(std::move(ts));
  };
  int threads = static_cast<int>(std::min<size_t>(jobs, nchunks));
  if (threads <= 1) {
    for (size_t c = 0; c < nchunks; ++c) work(c);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errs(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (size_t c; (c = next++) < nchunks;) work(c);
        } catch (...) {
          errs[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }
  return reduce(std::move(partial));
}

inline FactoredRational parallel_sum(size_t n, const std::function<FactoredRational(size_t)>& term, int jobs = 0) {
  return parallel_reduce<FactoredRational>(
      n, term, [](std::vector<FactoredRational> xs) { return FactoredRational::sum(xs); }, jobs);
}

inline Polynomial parallel_poly_sum(size_t n, const std::function<Polynomial(size_t)>& term, int jobs = 0) {
  return parallel_reduce<Polynomial>(
      n, term, [](std::vector<Polynomial> xs) { return Polynomial::sum(std::move(xs)); }, jobs);
}

// Sum over reps of term(w).
inline FactoredRational symmetrize(const std::function<FactoredRational(const WeylElement&)>& term,
                                   const std::vector<WeylElement>& reps, int jobs = 0) {
  return parallel_sum(reps.size(), [&](size_t i) { return term(reps[i]); }, jobs);
}

// Sum over reps of apply(w, p).
inline FactoredRational symmetrize(const FactoredRational& p, const SlotAssignment& slots,
                                   const std::vector<WeylElement>& reps, int jobs = 0) {
  return parallel_sum(reps.size(), [&](size_t i) { return apply(reps[i], slots, p); }, jobs);
}

// Product of the positive roots on the slots: x_i - x_j for GL, x_i^2 - x_j^2
// and x_i for BC, x_i^2 - x_j^2 for D.  w(D) = eps(w) D for every w in the group.
inline std::vector<LinearForm> weyl_denominator(const GroupSpec& g, const SlotAssignment& slots) {
  if (slots.size() != g.size()) throw Error("unassigned-slot", "slot assignment does not match the group");
  std::vector<LinearForm> d;
  for (size_t b = 0; b < g.size(); ++b) {
    const auto& s = slots[b];
    if (static_cast<int>(s.size()) != g[b].rank) throw Error("unassigned-slot", "block " + std::to_string(b) + " slot count mismatch");
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = i + 1; j < s.size(); ++j) {
        d.push_back(LinearForm::var(s[i]) - LinearForm::var(s[j]));
        if (g[b].type != BlockType::GL) d.push_back(LinearForm::var(s[i]) + LinearForm::var(s[j]));
      }
    if (g[b].type == BlockType::BC)
      for (VarId v : s) d.push_back(LinearForm::var(v));
  }
  return d;
}

inline int denominator_character(const WeylElement& w, const SlotAssignment& slots, const std::vector<LinearForm>& d) {
  auto sub = substitution_of(w, slots);
  Rational s = 1;
  for (const auto& f : d) {
    auto a = f.normalized(), b = f.substitute(sub).normalized();
    s *= b.first / a.first;
  }
  return s > 0 ? 1 : -1;
}

// Sum over reps of apply(w, p), computed as (1/D) sum eps(w) w(p D) with D the
// Weyl denominator of g: one expansion and one relabel per rep instead of one
// expansion per rep over the common denominator.  Falls back to the plain sum
// when the denominator of p does not divide D.
inline FactoredRational symmetrize_over(const FactoredRational& p, const SlotAssignment& slots, const GroupSpec& g,
                                        const std::vector<WeylElement>& reps, int jobs = 0) {
  auto D = weyl_denominator(g, slots);
  FactoredRational pd = p * FactoredRational::product(1, D, {});
  if (!pd.is_polynomial()) return symmetrize(p, slots, reps, jobs);
  Polynomial P = pd.numerator();
  Polynomial S = parallel_poly_sum(
      reps.size(),
      [&](size_t i) {
        Polynomial t = apply(reps[i], slots, P);
        return denominator_character(reps[i], slots, D) > 0 ? t : -t;
      },
      jobs);
  if (S.is_zero()) return {};
  FactoredRational::Factors rest;
  for (const auto& f : D) {
    auto q = S.maybe_divisible(f) ? S.divide_exact(f) : std::nullopt;
    if (q)
      S = std::move(*q);
    else
      rest.emplace_back(f, 1);
  }
  return FactoredRational::ratio(S, rest);
}

// Adjacent transpositions plus one sign generator per block.
inline std::vector<WeylElement> generators(const GroupSpec& g) {
  std::vector<WeylElement> out;
  for (size_t b = 0; b < g.size(); ++b) {
    int n = g[b].rank;
    for (int k = 0; k + 1 < n; ++k) {
      auto w = WeylElement::identity(g);
      std::swap(w.blocks[b].perm[k], w.blocks[b].perm[k + 1]);
      out.push_back(w);
    }
    if (g[b].type == BlockType::BC && n >= 1) {
      auto w = WeylElement::identity(g);
      w.blocks[b].signs[0] = -1;
      out.push_back(w);
    }
    if (g[b].type == BlockType::D && n >= 2) {
      auto w = WeylElement::identity(g);
      w.blocks[b].signs[0] = w.blocks[b].signs[1] = -1;
      out.push_back(w);
    }
  }
  return out;
}

inline bool is_invariant(const FactoredRational& p, const SlotAssignment& slots, const GroupSpec& g) {
  for (const auto& w : generators(g))
    if (!equal_exact(apply(w, slots, p), p)) return false;
  return true;
}

inline bool is_invariant(const Polynomial& p, const SlotAssignment& slots, const GroupSpec& g) {
  for (const auto& w : generators(g))
    if (!(apply(w, slots, p) == p)) return false;
  return true;
}

}  // namespace coha
