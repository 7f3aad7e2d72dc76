#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <stdexcept>
#include <vector>

#include "coha/core/factored_rational.hpp"

namespace coha {

// Truncated Laurent series in 1/var.  Coefficients of var^k are known for
// k >= -order; anything below is undefined.
struct LaurentSeries {
  VarId var = 0;
  int order = 0;
  std::map<int, FactoredRational, std::greater<int>> coeffs;  // nonzero only

  FactoredRational coeff(int k) const {
    if (k < -order) throw std::out_of_range("coefficient beyond truncation order");
    auto it = coeffs.find(k);
    return it == coeffs.end() ? FactoredRational() : it->second;
  }
  int leading_exponent() const { return coeffs.empty() ? INT_MIN : coeffs.begin()->first; }

  LaurentSeries truncated(int new_order) const {
    LaurentSeries r{var, std::min(order, new_order), {}};
    for (const auto& [k, c] : coeffs)
      if (k >= -r.order) r.coeffs.emplace(k, c);
    return r;
  }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.var != b.var) throw std::invalid_argument("series in different variables");
    // Known range of the product: down to min(lead_a - order_b, lead_b - order_a).
    int la = a.coeffs.empty() ? 0 : a.leading_exponent();
    int lb = b.coeffs.empty() ? 0 : b.leading_exponent();
    LaurentSeries r{a.var, std::min(b.order - la, a.order - lb), {}};
    std::map<int, std::vector<FactoredRational>> acc;
    for (const auto& [i, x] : a.coeffs)
      for (const auto& [j, y] : b.coeffs)
        if (i + j >= -r.order) acc[i + j].push_back(x * y);
    for (auto& [k, v] : acc) {
      auto s = FactoredRational::sum(v);
      if (!s.is_zero()) r.coeffs.emplace(k, std::move(s));
    }
    return r;
  }

  // Exact coefficientwise equality up to the common truncation.
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.var != b.var) return false;
    int o = std::min(a.order, b.order);
    std::vector<int> ks;
    for (const auto& [k, c] : a.coeffs)
      if (k >= -o) ks.push_back(k);
    for (const auto& [k, c] : b.coeffs)
      if (k >= -o) ks.push_back(k);
    for (int k : ks)
      if (!(a.coeff(k) - b.coeff(k)).is_zero()) return false;
    return true;
  }
};

namespace detail {

using PolySeries = std::map<int, Polynomial, std::greater<int>>;

inline PolySeries mul_series(const PolySeries& a, const PolySeries& b, int lowest) {
  std::map<int, std::vector<Polynomial>, std::greater<int>> acc;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b)
      if (i + j >= lowest) acc[i + j].push_back(x * y);
  PolySeries r;
  for (auto& [k, v] : acc) {
    auto s = Polynomial::sum(std::move(v));
    if (!s.is_zero()) r.emplace(k, std::move(s));
  }
  return r;
}

}  // namespace detail

// Expansion of a in negative powers of v, coefficients of v^k for k from the
// leading exponent down to -order.
inline LaurentSeries expand_at_infinity(const FactoredRational& a, VarId v, int order) {
  LaurentSeries out{v, order, {}};
  if (a.is_zero()) return out;
  // v-free part stays as a rational multiplier on every coefficient.
  std::vector<LinearForm> outer_num, outer_den;
  struct Factor {
    detail::PolySeries s;
    int lead;
    bool geometric;
    LinearForm form;  // geometric factors: 1/form
  };
  std::vector<Factor> fs;
  for (const auto& [f, e] : a.num_factors()) {
    for (int k = 0; k < e; ++k) {
      if (!f.contains(v)) {
        outer_num.push_back(f);
        continue;
      }
      detail::PolySeries s;
      s.emplace(1, Polynomial(f.coeff(v)));
      Polynomial r(f - LinearForm::var(v, f.coeff(v)));
      if (!r.is_zero()) s.emplace(0, r);
      fs.push_back({std::move(s), 1, false, {}});
    }
  }
  Polynomial outer_poly(1);
  if (!a.rest().is_constant()) {
    if (a.rest().contains(v)) {
      auto parts = a.rest().split_by(v);
      detail::PolySeries s;
      for (size_t k = 0; k < parts.size(); ++k)
        if (!parts[k].is_zero()) s.emplace(static_cast<int>(k), parts[k]);
      fs.push_back({std::move(s), static_cast<int>(parts.size()) - 1, false, {}});
    } else {
      outer_poly = a.rest();
    }
  }
  for (const auto& [f, e] : a.denominator()) {
    for (int k = 0; k < e; ++k) {
      if (!f.contains(v)) {
        outer_den.push_back(f);
        continue;
      }
      fs.push_back({{}, -1, true, f});
    }
  }
  int total_lead = 0;
  for (const auto& f : fs) total_lead += f.lead;
  if (total_lead < -order) return out;
  // Geometric factors: 1/(c v + R) = sum_k (-R)^k c^{-k-1} v^{-k-1}.
  for (auto& f : fs) {
    if (!f.geometric) continue;
    int need = -order - (total_lead - f.lead);  // lowest exponent this factor must supply
    Rational c = f.form.coeff(v);
    Polynomial mr = -Polynomial(f.form - LinearForm::var(v, c));
    Rational cinv = 1 / c;
    Polynomial p(cinv);
    for (int k = 0; -k - 1 >= need; ++k) {
      if (!p.is_zero()) f.s.emplace(-k - 1, p);
      p = (mr * p).scaled(cinv);
    }
  }
  detail::PolySeries acc;
  acc.emplace(0, Polynomial(1));
  int remaining = total_lead;
  for (const auto& f : fs) {
    remaining -= f.lead;
    acc = detail::mul_series(acc, f.s, -order - remaining);
  }
  FactoredRational outer = FactoredRational::product(a.scalar(), outer_num, outer_den) * FactoredRational(outer_poly);
  for (auto& [k, p] : acc) {
    if (k < -order) continue;
    auto c = outer * FactoredRational(p);
    if (!c.is_zero()) out.coeffs.emplace(k, std::move(c));
  }
  return out;
}

}  // namespace coha
