#pragma once

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coha/core/linear_form.hpp"
#include "coha/core/rational.hpp"
#include "coha/core/variable.hpp"

namespace coha {

struct MonoEntry {
  VarId var;
  std::uint32_t exp;
  friend bool operator==(const MonoEntry&, const MonoEntry&) = default;
};

// Exponent map, sorted by VarId.  The storage order is lexicographic on the
// dense exponent vector with the smallest VarId most significant, which is a
// monomial order: multiplying by a fixed monomial preserves it.
class Monomial {
 public:
  using Vec = boost::container::small_vector<MonoEntry, 8>;

  Monomial() = default;
  static Monomial var(VarId v, std::uint32_t e = 1) {
    Monomial m;
    if (e) m.e_.push_back({v, e});
    return m;
  }
  static Monomial from_entries(Vec e) {
    std::sort(e.begin(), e.end(), [](const MonoEntry& a, const MonoEntry& b) { return a.var < b.var; });
    Monomial m;
    for (const auto& x : e) {
      if (!x.exp) continue;
      if (!m.e_.empty() && m.e_.back().var == x.var)
        m.e_.back().exp += x.exp;
      else
        m.e_.push_back(x);
    }
    return m;
  }

  const Vec& entries() const { return e_; }
  bool is_one() const { return e_.empty(); }

  std::uint32_t degree(VarId v) const {
    for (const auto& x : e_)
      if (x.var == v) return x.exp;
    return 0;
  }
  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& x : e_) d += x.exp;
    return d;
  }

  Monomial without(VarId v) const {
    Monomial m;
    for (const auto& x : e_)
      if (x.var != v) m.e_.push_back(x);
    return m;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.e_.reserve(a.e_.size() + b.e_.size());
    size_t i = 0, j = 0;
    while (i < a.e_.size() && j < b.e_.size()) {
      if (a.e_[i].var < b.e_[j].var)
        r.e_.push_back(a.e_[i++]);
      else if (b.e_[j].var < a.e_[i].var)
        r.e_.push_back(b.e_[j++]);
      else {
        r.e_.push_back({a.e_[i].var, a.e_[i].exp + b.e_[j].exp});
        ++i;
        ++j;
      }
    }
    while (i < a.e_.size()) r.e_.push_back(a.e_[i++]);
    while (j < b.e_.size()) r.e_.push_back(b.e_[j++]);
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }

  // -1, 0, 1 in the storage order.
  friend int compare(const Monomial& a, const Monomial& b) {
    size_t i = 0, j = 0;
    while (i < a.e_.size() && j < b.e_.size()) {
      const auto& x = a.e_[i];
      const auto& y = b.e_[j];
      if (x.var == y.var) {
        if (x.exp != y.exp) return x.exp > y.exp ? 1 : -1;
        ++i;
        ++j;
      } else {
        return x.var < y.var ? 1 : -1;
      }
    }
    if (i < a.e_.size()) return 1;
    if (j < b.e_.size()) return -1;
    return 0;
  }

 private:
  Vec e_;
};

class Polynomial {
 public:
  struct Term {
    Monomial m;
    Rational c;
  };
  using Terms = std::vector<Term>;

  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT implicit constant
    if (c != 0) t_.push_back({Monomial(), c});
  }
  Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT
  explicit Polynomial(const LinearForm& f) {
    for (const auto& [v, c] : f.coeffs()) t_.push_back({Monomial::var(v), c});
    if (f.constant() != 0) t_.push_back({Monomial(), f.constant()});
    sort_terms();
  }
  static Polynomial variable(VarId v) {
    Polynomial p;
    p.t_.push_back({Monomial::var(v), Rational(1)});
    return p;
  }
  static Polynomial monomial(Monomial m, Rational c) {
    Polynomial p;
    if (c != 0) p.t_.push_back({std::move(m), std::move(c)});
    return p;
  }
  // Terms in any order, possibly repeated.
  static Polynomial from_terms(Terms t) {
    Polynomial p;
    p.t_ = std::move(t);
    p.canonicalize();
    return p;
  }

  const Terms& terms() const { return t_; }
  size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
  Rational constant_value() const {
    if (t_.empty()) return 0;
    if (!t_.back().m.is_one()) return 0;
    return t_.back().c;
  }
  const Term& leading() const { return t_.front(); }

  std::uint32_t degree_in(VarId v) const {
    std::uint32_t d = 0;
    for (const auto& t : t_) d = std::max(d, t.m.degree(v));
    return d;
  }
  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : t_) d = std::max(d, t.m.total_degree());
    return d;
  }
  std::vector<VarId> variables() const {
    std::vector<VarId> vs;
    for (const auto& t : t_)
      for (const auto& e : t.m.entries()) vs.push_back(e.var);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }
  bool contains(VarId v) const {
    for (const auto& t : t_)
      if (t.m.degree(v)) return true;
    return false;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.t_.size() != b.t_.size()) return false;
    for (size_t i = 0; i < a.t_.size(); ++i)
      if (a.t_[i].c != b.t_[i].c || !(a.t_[i].m == b.t_[i].m)) return false;
    return true;
  }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.t_) t.c = -t.c;
    return r;
  }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return mul(a, b); }
  Polynomial& operator+=(const Polynomial& b) { return *this = merge_consume(std::move(*this), Polynomial(b)); }
  Polynomial& operator-=(const Polynomial& b) { return *this = merge(*this, b, true); }
  Polynomial& operator*=(const Polynomial& b) { return *this = mul(*this, b); }

  Polynomial scaled(const Rational& s) const {
    if (s == 0) return {};
    Polynomial r(*this);
    for (auto& t : r.t_) mul_into(t.c, t.c, s);
    return r;
  }

  Polynomial mul_term(const Monomial& m, const Rational& c) const {
    Polynomial r;
    if (c == 0) return r;
    r.t_.reserve(t_.size());
    for (const auto& t : t_) {
      Term x{t.m * m, Rational()};
      mul_into(x.c, t.c, c);
      r.t_.push_back(std::move(x));
    }
    return r;
  }

  Polynomial pow(unsigned e) const {
    Polynomial r(1), b(*this);
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  // Coefficients by power of v: result[k] is the coefficient of v^k.
  std::vector<Polynomial> split_by(VarId v) const {
    std::vector<Polynomial> out(degree_in(v) + 1);
    for (const auto& t : t_) {
      std::uint32_t d = t.m.degree(v);
      out[d].t_.push_back({d ? t.m.without(v) : t.m, t.c});
    }
    return out;
  }

  // Inverse of split_by.
  static Polynomial assemble(VarId v, const std::vector<Polynomial>& parts) {
    std::vector<Polynomial> shifted;
    shifted.reserve(parts.size());
    for (size_t k = 0; k < parts.size(); ++k) {
      if (parts[k].is_zero()) continue;
      shifted.push_back(k ? parts[k].mul_term(Monomial::var(v, static_cast<std::uint32_t>(k)), Rational(1))
                          : parts[k]);
    }
    return sum(std::move(shifted));
  }

  static Polynomial sum(std::vector<Polynomial> ps) {
    if (ps.empty()) return {};
    while (ps.size() > 1) {
      std::vector<Polynomial> nx;
      nx.reserve((ps.size() + 1) / 2);
      for (size_t i = 0; i + 1 < ps.size(); i += 2) nx.push_back(merge_consume(std::move(ps[i]), std::move(ps[i + 1])));
      if (ps.size() % 2) nx.push_back(std::move(ps.back()));
      ps = std::move(nx);
    }
    return std::move(ps.front());
  }

  Rational evaluate(const std::map<VarId, Rational>& pt) const {
    Rational r = 0;
    std::map<std::pair<VarId, std::uint32_t>, Rational> cache;
    for (const auto& t : t_) {
      Rational m = t.c;
      for (const auto& e : t.m.entries()) {
        auto key = std::make_pair(e.var, e.exp);
        auto it = cache.find(key);
        if (it == cache.end()) {
          auto pv = pt.find(e.var);
          if (pv == pt.end()) throw std::out_of_range("unassigned-variable");
          Rational p;
          mpz_pow_ui(p.get_num_mpz_t(), pv->second.get_num_mpz_t(), e.exp);
          mpz_pow_ui(p.get_den_mpz_t(), pv->second.get_den_mpz_t(), e.exp);
          it = cache.emplace(key, std::move(p)).first;
        }
        mul_into(m, m, it->second);
      }
      add_into(r, r, m);
    }
    return r;
  }

  // Value modulo the prime p at a point given mod p.  Missing variables get
  // the value produced by fallback(v).
  template <class Fallback>
  std::uint64_t evaluate_mod(std::uint64_t p, const std::unordered_map<VarId, std::uint64_t>& pt,
                             Fallback&& fallback, bool& ok) const {
    std::uint64_t r = 0;
    ok = true;
    for (const auto& t : t_) {
      std::uint64_t c;
      if (!mod_prime(t.c, p, c)) {
        ok = false;
        return 0;
      }
      for (const auto& e : t.m.entries()) {
        auto it = pt.find(e.var);
        std::uint64_t x = it == pt.end() ? fallback(e.var) : it->second;
        c = detail::mulmod(c, detail::powmod(x, e.exp, p), p);
      }
      r += c;
      if (r >= p) r -= p;
    }
    return r;
  }

  // Simultaneous substitution v -> image; variables not in the map are kept.
  Polynomial substitute(const std::map<VarId, Polynomial>& images) const {
    if (images.empty() || t_.empty()) return *this;
    // Pure relabelling (images are +-single variables) avoids any expansion.
    std::map<VarId, std::pair<VarId, int>> ren;
    bool relabel = true;
    for (const auto& [v, img] : images) {
      if (img.size() == 1 && img.t_[0].m.entries().size() == 1 && img.t_[0].m.entries()[0].exp == 1 &&
          (img.t_[0].c == 1 || img.t_[0].c == -1)) {
        ren[v] = {img.t_[0].m.entries()[0].var, img.t_[0].c == 1 ? 1 : -1};
      } else {
        relabel = false;
        break;
      }
    }
    if (relabel) return rename(ren);
    std::map<std::pair<VarId, std::uint32_t>, Polynomial> cache;
    std::vector<Polynomial> parts;
    parts.reserve(t_.size());
    for (const auto& t : t_) {
      Polynomial prod(t.c);
      Monomial::Vec kept;
      for (const auto& e : t.m.entries()) {
        auto it = images.find(e.var);
        if (it == images.end()) {
          kept.push_back(e);
          continue;
        }
        auto key = std::make_pair(e.var, e.exp);
        auto c = cache.find(key);
        if (c == cache.end()) c = cache.emplace(key, it->second.pow(e.exp)).first;
        prod *= c->second;
      }
      if (!kept.empty()) prod = prod.mul_term(Monomial::from_entries(kept), Rational(1));
      parts.push_back(std::move(prod));
    }
    Terms all;
    for (auto& p : parts)
      for (auto& t : p.t_) all.push_back(std::move(t));
    return from_terms(std::move(all));
  }

  Polynomial rename(const std::map<VarId, std::pair<VarId, int>>& ren) const {
    Terms out;
    out.reserve(t_.size());
    for (const auto& t : t_) {
      Monomial::Vec e;
      int sign = 1;
      for (const auto& x : t.m.entries()) {
        auto it = ren.find(x.var);
        if (it == ren.end()) {
          e.push_back(x);
        } else {
          e.push_back({it->second.first, x.exp});
          if (it->second.second < 0 && (x.exp & 1)) sign = -sign;
        }
      }
      out.push_back({Monomial::from_entries(std::move(e)), sign > 0 ? t.c : Rational(-t.c)});
    }
    return from_terms(std::move(out));
  }

  // Content: returns (s, q) with *this == s * q, q integral primitive with
  // positive leading coefficient.  Zero gives (0, 0).
  std::pair<Rational, Polynomial> primitive() const {
    if (t_.empty()) return {Rational(0), Polynomial()};
    Integer l = 1, g = 0;
    for (const auto& t : t_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
    Polynomial q(*this);
    for (auto& t : q.t_) {
      if (!is_integral(t.c) || l != 1) {
        t.c *= l;
      }
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
    }
    if (q.t_.front().c < 0) g = -g;
    if (g != 1) {
      for (auto& t : q.t_) mpz_divexact(t.c.get_num_mpz_t(), t.c.get_num_mpz_t(), g.get_mpz_t());
    }
    Rational s(g, l);
    s.canonicalize();
    return {s, q};
  }

  // Exact quotient by an affine form, or nullopt if it does not divide.
  std::optional<Polynomial> divide_exact(const LinearForm& f) const {
    if (f.is_zero()) throw std::domain_error("division-by-zero");
    if (f.is_constant()) return scaled(Rational(1 / f.constant()));
    if (t_.empty()) return Polynomial();
    VarId v = f.coeffs().front().first;
    Rational c = f.coeff(v);
    Rational cinv = 1 / c;
    Polynomial r(f - LinearForm::var(v, c));
    auto parts = split_by(v);
    size_t n = parts.size() - 1;
    if (n == 0) return std::nullopt;
    std::vector<Polynomial> q(n);
    q[n - 1] = parts[n].scaled(cinv);
    for (size_t k = n - 1; k >= 1; --k) q[k - 1] = (parts[k] - r * q[k]).scaled(cinv);
    if (!(parts[0] == r * q[0])) return std::nullopt;
    return assemble(v, q);
  }

  // Quick modular test for divisibility by f: false means definitely not.
  bool maybe_divisible(const LinearForm& f) const;

 private:
  void sort_terms() {
    std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) { return compare(a.m, b.m) > 0; });
  }
  void canonicalize() {
    sort_terms();
    Terms out;
    out.reserve(t_.size());
    for (auto& t : t_) {
      if (!out.empty() && out.back().m == t.m)
        add_into(out.back().c, out.back().c, t.c);
      else {
        if (!out.empty() && out.back().c == 0) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().c == 0) out.pop_back();
    t_ = std::move(out);
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    Polynomial r;
    r.t_.reserve(a.t_.size() + b.t_.size());
    size_t i = 0, j = 0;
    while (i < a.t_.size() && j < b.t_.size()) {
      int c = compare(a.t_[i].m, b.t_[j].m);
      if (c > 0) {
        r.t_.push_back(a.t_[i++]);
      } else if (c < 0) {
        r.t_.push_back({b.t_[j].m, subtract ? Rational(-b.t_[j].c) : b.t_[j].c});
        ++j;
      } else {
        Rational s;
        if (subtract)
          s = a.t_[i].c - b.t_[j].c;
        else
          add_into(s, a.t_[i].c, b.t_[j].c);
        if (s != 0) r.t_.push_back({a.t_[i].m, std::move(s)});
        ++i;
        ++j;
      }
    }
    for (; i < a.t_.size(); ++i) r.t_.push_back(a.t_[i]);
    for (; j < b.t_.size(); ++j) r.t_.push_back({b.t_[j].m, subtract ? Rational(-b.t_[j].c) : b.t_[j].c});
    return r;
  }

  // a + b, reusing the terms of both.
  static Polynomial merge_consume(Polynomial&& a, Polynomial&& b) {
    if (a.t_.empty()) return std::move(b);
    if (b.t_.empty()) return std::move(a);
    Polynomial r;
    r.t_.reserve(a.t_.size() + b.t_.size());
    auto i = a.t_.begin(), j = b.t_.begin();
    while (i != a.t_.end() && j != b.t_.end()) {
      int c = compare(i->m, j->m);
      if (c > 0) {
        r.t_.push_back(std::move(*i++));
      } else if (c < 0) {
        r.t_.push_back(std::move(*j++));
      } else {
        add_into(i->c, i->c, j->c);
        if (i->c != 0) r.t_.push_back(std::move(*i));
        ++i;
        ++j;
      }
    }
    for (; i != a.t_.end(); ++i) r.t_.push_back(std::move(*i));
    for (; j != b.t_.end(); ++j) r.t_.push_back(std::move(*j));
    return r;
  }

  static Polynomial mul(const Polynomial& a, const Polynomial& b) {
    if (a.t_.empty() || b.t_.empty()) return {};
    const Polynomial& s = a.t_.size() <= b.t_.size() ? a : b;
    const Polynomial& l = a.t_.size() <= b.t_.size() ? b : a;
    if (s.t_.size() == 1) return l.mul_term(s.t_[0].m, s.t_[0].c);
    std::vector<Polynomial> parts;
    parts.reserve(s.t_.size());
    for (const auto& t : s.t_) parts.push_back(l.mul_term(t.m, t.c));
    return sum(std::move(parts));
  }

  Terms t_;  // sorted, largest first
};

inline Polynomial operator*(const LinearForm& f, const Polynomial& p) { return Polynomial(f) * p; }

namespace detail {
constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1
inline std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

inline bool Polynomial::maybe_divisible(const LinearForm& f) const {
  if (t_.empty() || f.is_constant()) return true;
  const std::uint64_t p = detail::kPrime;
  auto val = [&](VarId x) { return detail::splitmix(x ^ 0x5bd1e995ULL) % p; };
  // Put the point on the hyperplane f = 0 by solving for its first variable.
  VarId v = f.coeffs().front().first;
  std::uint64_t acc;
  if (!mod_prime(f.constant(), p, acc)) return true;
  for (const auto& [x, c] : f.coeffs()) {
    if (x == v) continue;
    std::uint64_t cm;
    if (!mod_prime(c, p, cm)) return true;
    acc = (acc + detail::mulmod(cm, val(x), p)) % p;
  }
  std::uint64_t cv;
  if (!mod_prime(f.coeff(v), p, cv) || cv == 0) return true;
  std::uint64_t xv = detail::mulmod((p - acc) % p, detail::invmod(cv, p), p);
  std::unordered_map<VarId, std::uint64_t> pt{{v, xv}};
  bool ok;
  std::uint64_t r = evaluate_mod(p, pt, val, ok);
  return !ok || r == 0;
}

}  // namespace coha
