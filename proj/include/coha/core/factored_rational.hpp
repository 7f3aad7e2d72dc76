#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coha/core/linear_form.hpp"
#include "coha/core/polynomial.hpp"

namespace coha {

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

// scalar * prod(num_i^e_i) * rest / prod(den_j^f_j), every linear factor
// normalized.  Invariants: no form occurs in both lists, rest is integral
// primitive with positive leading coefficient and is not divisible by any
// denominator factor.  Zero is scalar 0 with empty lists and rest 1.
class FactoredRational {
 public:
  using Factors = std::vector<std::pair<LinearForm, int>>;

  FactoredRational() : scalar_(0), rest_(1) {}
  FactoredRational(const Rational& c) : scalar_(c), rest_(1) {}  // NOLINT
  FactoredRational(int c) : FactoredRational(Rational(c)) {}     // NOLINT
  explicit FactoredRational(const Polynomial& p) : scalar_(1), rest_(p) { canonicalize(true); }
  explicit FactoredRational(const LinearForm& f) : scalar_(1), rest_(1) {
    num_.emplace_back(f, 1);
    canonicalize(false);
  }

  // Numerator polynomial over a product of linear forms; cancels by trial division.
  static FactoredRational ratio(const Polynomial& num, const Factors& den) {
    FactoredRational r;
    r.scalar_ = 1;
    r.rest_ = num;
    r.den_ = den;
    r.canonicalize(true);
    return r;
  }
  static FactoredRational product(const Rational& s, const std::vector<LinearForm>& num,
                                  const std::vector<LinearForm>& den) {
    FactoredRational r;
    r.scalar_ = s;
    for (const auto& f : num) r.num_.emplace_back(f, 1);
    for (const auto& f : den) r.den_.emplace_back(f, 1);
    r.canonicalize(false);
    return r;
  }

  bool is_zero() const { return scalar_ == 0; }
  bool is_polynomial() const { return den_.empty(); }
  bool is_factored() const { return rest_.is_constant(); }
  const Rational& scalar() const { return scalar_; }
  const Factors& num_factors() const { return num_; }
  const Polynomial& rest() const { return rest_; }
  const Factors& denominator() const { return den_; }

  // Expanded numerator including the scalar.
  Polynomial numerator() const {
    if (is_zero()) return {};
    return expand(scalar_, num_, rest_, {});
  }
  Polynomial to_polynomial() const {
    if (!den_.empty()) throw PoleError("not a polynomial");
    return numerator();
  }

  std::vector<VarId> variables() const {
    std::set<VarId> s;
    for (const auto& [f, e] : num_)
      for (const auto& [v, c] : f.coeffs()) s.insert(v);
    for (const auto& [f, e] : den_)
      for (const auto& [v, c] : f.coeffs()) s.insert(v);
    for (auto v : rest_.variables()) s.insert(v);
    return {s.begin(), s.end()};
  }

  friend FactoredRational operator*(const FactoredRational& a, const FactoredRational& b) { return mul(a, b); }
  friend FactoredRational operator/(const FactoredRational& a, const FactoredRational& b) {
    return mul(a, b.inverse());
  }
  friend FactoredRational operator+(const FactoredRational& a, const FactoredRational& b) { return sum({a, b}); }
  friend FactoredRational operator-(const FactoredRational& a, const FactoredRational& b) { return sum({a, -b}); }
  FactoredRational operator-() const {
    FactoredRational r(*this);
    r.scalar_ = -r.scalar_;
    return r;
  }
  FactoredRational& operator*=(const FactoredRational& b) { return *this = mul(*this, b); }
  FactoredRational& operator/=(const FactoredRational& b) { return *this = *this / b; }
  FactoredRational& operator+=(const FactoredRational& b) { return *this = *this + b; }
  FactoredRational& operator-=(const FactoredRational& b) { return *this = *this - b; }

  FactoredRational inverse() const {
    if (is_zero()) throw std::domain_error("division-by-zero");
    if (!rest_.is_constant())
      throw std::domain_error("inverse needs a numerator that is a product of linear forms");
    FactoredRational r;
    r.scalar_ = 1 / scalar_;
    r.num_ = den_;
    r.den_ = num_;
    r.rest_ = 1;
    return r;
  }

  FactoredRational pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    FactoredRational r(1), b(*this);
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  // Sum over the least common denominator, then re-cancel.
  static FactoredRational sum(const std::vector<FactoredRational>& xs) {
    std::vector<const FactoredRational*> ts;
    for (const auto& x : xs)
      if (!x.is_zero()) ts.push_back(&x);
    if (ts.empty()) return {};
    if (ts.size() == 1) return *ts[0];
    // Common numerator factors and the LCD.
    std::map<LinearForm, int> common;
    for (const auto& [f, e] : ts[0]->num_) common[f] = e;
    for (size_t i = 1; i < ts.size(); ++i) {
      std::map<LinearForm, int> nx;
      for (const auto& [f, e] : ts[i]->num_) {
        auto it = common.find(f);
        if (it != common.end()) nx[f] = std::min(e, it->second);
      }
      common = std::move(nx);
    }
    std::map<LinearForm, int> lcd;
    for (auto* t : ts)
      for (const auto& [f, e] : t->den_) {
        int& x = lcd[f];
        x = std::max(x, e);
      }
    std::vector<Polynomial> parts;
    parts.reserve(ts.size());
    for (auto* t : ts) {
      Factors extra;
      for (const auto& [f, e] : t->num_) {
        auto it = common.find(f);
        int k = e - (it == common.end() ? 0 : it->second);
        if (k) extra.emplace_back(f, k);
      }
      for (const auto& [f, e] : lcd) {
        int k = e - exponent(t->den_, f);
        if (k) extra.emplace_back(f, k);
      }
      parts.push_back(expand(t->scalar_, extra, t->rest_, {}));
    }
    FactoredRational r;
    r.scalar_ = 1;
    r.rest_ = Polynomial::sum(std::move(parts));
    if (r.rest_.is_zero()) return {};
    for (const auto& [f, e] : common) r.num_.emplace_back(f, e);
    for (const auto& [f, e] : lcd) r.den_.emplace_back(f, e);
    r.canonicalize(true);
    return r;
  }

  // Simultaneous affine substitution.
  FactoredRational substitute(const std::map<VarId, LinearForm>& images) const {
    if (is_zero() || images.empty()) return *this;
    bool bijective = is_signed_relabel(images);
    FactoredRational r;
    r.scalar_ = scalar_;
    for (const auto& [f, e] : num_) {
      LinearForm g = f.substitute(images);
      if (g.is_zero()) return {};
      r.num_.emplace_back(std::move(g), e);
    }
    for (const auto& [f, e] : den_) {
      LinearForm g = f.substitute(images);
      if (g.is_zero()) throw PoleError("substitution makes a denominator factor vanish");
      r.den_.emplace_back(std::move(g), e);
    }
    if (!rest_.is_constant()) {
      std::map<VarId, Polynomial> pimg;
      for (const auto& [v, f] : images) pimg.emplace(v, Polynomial(f));
      r.rest_ = rest_.substitute(pimg);
      if (r.rest_.is_zero()) return {};
    } else {
      r.rest_ = rest_;
    }
    r.canonicalize(!bijective);
    return r;
  }

  Rational evaluate(const std::map<VarId, Rational>& pt) const {
    if (is_zero()) return 0;
    Rational r = scalar_;
    for (const auto& [f, e] : den_) {
      Rational v = f.evaluate(pt);
      if (v == 0) throw PoleError("pole-at-point");
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), v.get_num_mpz_t(), e);
      mpz_pow_ui(p.get_den_mpz_t(), v.get_den_mpz_t(), e);
      p.canonicalize();
      r /= p;
    }
    for (const auto& [f, e] : num_) {
      Rational v = f.evaluate(pt);
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), v.get_num_mpz_t(), e);
      mpz_pow_ui(p.get_den_mpz_t(), v.get_den_mpz_t(), e);
      p.canonicalize();
      r *= p;
    }
    if (!rest_.is_constant()) r *= rest_.evaluate(pt);
    return r;
  }

  // Structural identity of the canonical representation.
  bool same_representation(const FactoredRational& b) const {
    return scalar_ == b.scalar_ && num_ == b.num_ && den_ == b.den_ && rest_ == b.rest_;
  }

  static Polynomial expand(const Rational& s, const Factors& fs, const Polynomial& start, const Factors& more) {
    Polynomial p = start;
    auto apply = [&](const Factors& list) {
      for (const auto& [f, e] : list)
        for (int k = 0; k < e; ++k) p = Polynomial(f) * p;
    };
    apply(fs);
    apply(more);
    return p.scaled(s);
  }

 private:
  static int exponent(const Factors& fs, const LinearForm& f) {
    auto it = std::lower_bound(fs.begin(), fs.end(), f, [](const auto& a, const LinearForm& b) { return a.first < b; });
    return (it != fs.end() && it->first == f) ? it->second : 0;
  }

  bool is_signed_relabel(const std::map<VarId, LinearForm>& images) const {
    std::set<VarId> targets;
    for (const auto& [v, f] : images) {
      if (f.coeffs().size() != 1 || f.constant() != 0) return false;
      const Rational& c = f.coeffs()[0].second;
      if (c != 1 && c != -1) return false;
      if (!targets.insert(f.coeffs()[0].first).second) return false;
    }
    for (VarId v : variables())
      if (!images.count(v) && targets.count(v)) return false;
    return true;
  }

  static void normalize_list(Factors& fs, Rational& scalar, bool numerator) {
    std::map<LinearForm, int> acc;
    for (auto& [f, e] : fs) {
      auto [s, n] = f.normalized();
      if (s == 0) throw std::domain_error("zero linear factor");
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), s.get_num_mpz_t(), e);
      mpz_pow_ui(p.get_den_mpz_t(), s.get_den_mpz_t(), e);
      p.canonicalize();
      if (numerator)
        scalar *= p;
      else
        scalar /= p;
      if (!n.is_constant()) acc[n] += e;
    }
    fs.assign(acc.begin(), acc.end());
  }

  static void cancel_common(Factors& num, Factors& den) {
    Factors n2, d2;
    size_t i = 0, j = 0;
    while (i < num.size() || j < den.size()) {
      if (j == den.size() || (i < num.size() && num[i].first < den[j].first)) {
        n2.push_back(num[i++]);
      } else if (i == num.size() || den[j].first < num[i].first) {
        d2.push_back(den[j++]);
      } else {
        int k = std::min(num[i].second, den[j].second);
        if (num[i].second > k) n2.emplace_back(num[i].first, num[i].second - k);
        if (den[j].second > k) d2.emplace_back(den[j].first, den[j].second - k);
        ++i;
        ++j;
      }
    }
    num = std::move(n2);
    den = std::move(d2);
  }

  void canonicalize(bool trial_division) {
    if (scalar_ == 0 || rest_.is_zero()) {
      *this = FactoredRational();
      return;
    }
    normalize_list(num_, scalar_, true);
    normalize_list(den_, scalar_, false);
    for (;;) {
      auto [s, q] = rest_.primitive();
      scalar_ *= s;
      rest_ = std::move(q);
      if (rest_.total_degree() == 1) {
        LinearForm f;
        for (const auto& t : rest_.terms()) {
          if (t.m.is_one())
            f += LinearForm(t.c);
          else
            f += LinearForm::var(t.m.entries()[0].var, t.c);
        }
        num_.emplace_back(f, 1);
        rest_ = 1;
        normalize_list(num_, scalar_, true);
      }
      cancel_common(num_, den_);
      if (!trial_division || rest_.is_constant()) break;
      bool changed = false;
      for (auto& [f, e] : den_) {
        while (e > 0 && rest_.maybe_divisible(f)) {
          auto q2 = rest_.divide_exact(f);
          if (!q2) break;
          rest_ = std::move(*q2);
          --e;
          changed = true;
        }
      }
      if (!changed) break;
      den_.erase(std::remove_if(den_.begin(), den_.end(), [](const auto& p) { return p.second == 0; }), den_.end());
    }
  }

  static FactoredRational mul(const FactoredRational& a, const FactoredRational& b) {
    if (a.is_zero() || b.is_zero()) return {};
    FactoredRational r;
    r.scalar_ = a.scalar_ * b.scalar_;
    Factors da = a.den_, db = b.den_;
    Polynomial ra = a.rest_, rb = b.rest_;
    auto cancel_against = [](Polynomial& p, Factors& den) {
      if (p.is_constant()) return;
      for (auto& [f, e] : den)
        while (e > 0 && p.maybe_divisible(f)) {
          auto q = p.divide_exact(f);
          if (!q) break;
          p = std::move(*q);
          --e;
        }
      den.erase(std::remove_if(den.begin(), den.end(), [](const auto& x) { return x.second == 0; }), den.end());
    };
    cancel_against(ra, db);
    cancel_against(rb, da);
    std::map<LinearForm, int> num, den;
    for (const auto& [f, e] : a.num_) num[f] += e;
    for (const auto& [f, e] : b.num_) num[f] += e;
    for (const auto& [f, e] : da) den[f] += e;
    for (const auto& [f, e] : db) den[f] += e;
    r.num_.assign(num.begin(), num.end());
    r.den_.assign(den.begin(), den.end());
    r.rest_ = ra.is_constant() ? rb.scaled(ra.constant_value())
                               : (rb.is_constant() ? ra.scaled(rb.constant_value()) : ra * rb);
    cancel_common(r.num_, r.den_);
    // Quotients are coprime to the remaining den factors already; only a
    // degree-one rest needs folding back into the factor lists.
    if (r.rest_.total_degree() <= 1 || r.rest_.primitive().first != 1)
      r.canonicalize(false);
    return r;
  }

  Rational scalar_;
  Factors num_;
  Polynomial rest_;
  Factors den_;
};

}  // namespace coha
