#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coha/core/rational.hpp"
#include "coha/core/variable.hpp"

namespace coha {

// Affine-linear form  sum c_v v + constant.  Coefficients are kept sorted by VarId.
class LinearForm {
 public:
  using Coeffs = std::vector<std::pair<VarId, Rational>>;

  LinearForm() = default;
  explicit LinearForm(Rational c) : constant_(std::move(c)) {}
  static LinearForm var(VarId v, Rational c = 1) {
    LinearForm f;
    if (c != 0) f.coeffs_.emplace_back(v, std::move(c));
    return f;
  }

  const Coeffs& coeffs() const { return coeffs_; }
  const Rational& constant() const { return constant_; }
  bool is_constant() const { return coeffs_.empty(); }
  bool is_zero() const { return coeffs_.empty() && constant_ == 0; }

  Rational coeff(VarId v) const {
    auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), v,
                               [](const auto& p, VarId x) { return p.first < x; });
    if (it != coeffs_.end() && it->first == v) return it->second;
    return 0;
  }
  bool contains(VarId v) const { return coeff(v) != 0; }

  // Variable with the smallest canonical position.
  VarId leading_var() const {
    if (coeffs_.empty()) throw std::logic_error("constant form has no leading variable");
    VarId best = coeffs_.front().first;
    for (const auto& [v, c] : coeffs_)
      if (var_less(v, best)) best = v;
    return best;
  }

  LinearForm operator-() const {
    LinearForm r(*this);
    for (auto& [v, c] : r.coeffs_) c = -c;
    r.constant_ = -r.constant_;
    return r;
  }
  friend LinearForm operator+(const LinearForm& a, const LinearForm& b) { return combine(a, b, 1); }
  friend LinearForm operator-(const LinearForm& a, const LinearForm& b) { return combine(a, b, -1); }
  friend LinearForm operator*(const Rational& s, const LinearForm& a) {
    if (s == 0) return LinearForm();
    LinearForm r(a);
    for (auto& [v, c] : r.coeffs_) c *= s;
    r.constant_ *= s;
    return r;
  }
  LinearForm& operator+=(const LinearForm& b) { return *this = *this + b; }
  LinearForm& operator-=(const LinearForm& b) { return *this = *this - b; }

  friend bool operator==(const LinearForm& a, const LinearForm& b) {
    return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
  }
  // Storage order only (by VarId); canonical printing sorts separately.
  friend bool operator<(const LinearForm& a, const LinearForm& b) {
    size_t n = std::min(a.coeffs_.size(), b.coeffs_.size());
    for (size_t i = 0; i < n; ++i) {
      if (a.coeffs_[i].first != b.coeffs_[i].first) return a.coeffs_[i].first < b.coeffs_[i].first;
      int c = cmp(a.coeffs_[i].second, b.coeffs_[i].second);
      if (c) return c < 0;
    }
    if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
    return a.constant_ < b.constant_;
  }

  // Returns (s, n) with *this == s * n, n primitive integral with a positive
  // coefficient on its canonically first variable.  A constant form maps to (c, 1).
  std::pair<Rational, LinearForm> normalized() const {
    if (coeffs_.empty()) return {constant_, LinearForm(Rational(1))};
    Integer l = 1, g = 0;
    auto absorb = [&](const Rational& q) {
      if (q == 0) return;
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    };
    for (const auto& [v, c] : coeffs_) absorb(c);
    absorb(constant_);
    for (const auto& [v, c] : coeffs_) {
      Rational t = c * l;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_num_mpz_t());
    }
    {
      Rational t = constant_ * l;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_num_mpz_t());
    }
    Rational s(g, l);
    s.canonicalize();
    if (coeff(leading_var()) < 0) s = -s;
    LinearForm n = Rational(1 / s) * (*this);
    return {s, n};
  }

  bool is_normalized() const {
    if (coeffs_.empty()) return constant_ == 1;
    auto [s, n] = normalized();
    return s == 1;
  }

  Rational evaluate(const std::map<VarId, Rational>& pt) const {
    Rational r = constant_;
    for (const auto& [v, c] : coeffs_) {
      auto it = pt.find(v);
      if (it == pt.end()) throw std::out_of_range("unassigned-variable");
      r += c * it->second;
    }
    return r;
  }

  template <class Map>
  LinearForm substitute(const Map& images) const {
    LinearForm r(constant_);
    for (const auto& [v, c] : coeffs_) {
      auto it = images.find(v);
      if (it == images.end())
        r += LinearForm::var(v, c);
      else
        r += c * it->second;
    }
    return r;
  }

 private:
  static int cmp(const Rational& a, const Rational& b) { return ::cmp(a, b); }

  static LinearForm combine(const LinearForm& a, const LinearForm& b, int sign) {
    LinearForm r;
    r.coeffs_.reserve(a.coeffs_.size() + b.coeffs_.size());
    size_t i = 0, j = 0;
    while (i < a.coeffs_.size() || j < b.coeffs_.size()) {
      if (j == b.coeffs_.size() || (i < a.coeffs_.size() && a.coeffs_[i].first < b.coeffs_[j].first)) {
        r.coeffs_.push_back(a.coeffs_[i++]);
      } else if (i == a.coeffs_.size() || b.coeffs_[j].first < a.coeffs_[i].first) {
        r.coeffs_.emplace_back(b.coeffs_[j].first, sign > 0 ? b.coeffs_[j].second : Rational(-b.coeffs_[j].second));
        ++j;
      } else {
        Rational c = sign > 0 ? Rational(a.coeffs_[i].second + b.coeffs_[j].second)
                              : Rational(a.coeffs_[i].second - b.coeffs_[j].second);
        if (c != 0) r.coeffs_.emplace_back(a.coeffs_[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    r.constant_ = sign > 0 ? Rational(a.constant_ + b.constant_) : Rational(a.constant_ - b.constant_);
    return r;
  }

  Coeffs coeffs_;
  Rational constant_ = 0;
};

struct LinearFormHash {
  size_t operator()(const LinearForm& f) const {
    size_t h = 1469598103934665603ULL;
    auto mix = [&](size_t x) { h = (h ^ x) * 1099511628211ULL; };
    for (const auto& [v, c] : f.coeffs()) {
      mix(std::hash<VarId>()(v));
      mix(mpz_get_si(c.get_num_mpz_t()));
    }
    mix(mpz_get_si(f.constant().get_num_mpz_t()));
    return h;
  }
};

}  // namespace coha
