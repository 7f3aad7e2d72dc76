#pragma once

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coha/core/factored_rational.hpp"
#include "coha/core/series.hpp"

namespace coha {

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Optional vertex names for x[...] and u[...]; without them vertices print as indices.
struct TextContext {
  std::vector<std::string> vertex_names;

  std::string vertex(int i) const {
    if (i >= 0 && static_cast<size_t>(i) < vertex_names.size()) return vertex_names[i];
    return std::to_string(i);
  }
  int vertex_index(const std::string& s) const {
    for (size_t i = 0; i < vertex_names.size(); ++i)
      if (vertex_names[i] == s) return static_cast<int>(i);
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
      return std::stoi(s);
    throw ParseError("unknown vertex '" + s + "'");
  }
};

inline std::string to_text(VarId id, const TextContext& ctx = {}) {
  Variable v = Variable::from_id(id);
  switch (v.kind) {
    case VarKind::TorusSlot:
      return "x[" + ctx.vertex(v.vertex) + "," + std::to_string(v.tag) + "," + std::to_string(v.index) + "]";
    case VarKind::FramingParam:
      return "u[" + ctx.vertex(v.vertex) + "," + std::to_string(v.index) + "]";
    case VarKind::HbarParam:
      return "hbar";
    case VarKind::EdgeWeightParam:
      return v.name;
    case VarKind::SeriesVar:
      return "$" + v.name;
  }
  return "?";
}

namespace detail {

inline std::vector<MonoEntry> canonical_entries(const Monomial& m) {
  std::vector<MonoEntry> e(m.entries().begin(), m.entries().end());
  std::sort(e.begin(), e.end(), [](const MonoEntry& a, const MonoEntry& b) { return var_less(a.var, b.var); });
  return e;
}

// Lex in the canonical variable order, higher power of the first variable first.
inline bool canonical_greater(const std::vector<MonoEntry>& a, const std::vector<MonoEntry>& b) {
  size_t i = 0;
  for (; i < a.size() && i < b.size(); ++i) {
    if (a[i].var != b[i].var) return var_less(a[i].var, b[i].var);
    if (a[i].exp != b[i].exp) return a[i].exp > b[i].exp;
  }
  return a.size() > b.size();
}

inline std::string monomial_text(const std::vector<MonoEntry>& e, const TextContext& ctx) {
  std::string s;
  for (const auto& x : e) {
    if (!s.empty()) s += "*";
    s += to_text(x.var, ctx);
    if (x.exp != 1) s += "^" + std::to_string(x.exp);
  }
  return s;
}

}  // namespace detail

inline std::string to_text(const Polynomial& p, const TextContext& ctx = {}) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<std::vector<MonoEntry>, const Rational*>> ts;
  ts.reserve(p.size());
  for (const auto& t : p.terms()) ts.emplace_back(detail::canonical_entries(t.m), &t.c);
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) { return detail::canonical_greater(a.first, b.first); });
  std::string s;
  for (const auto& [e, c] : ts) {
    bool neg = *c < 0;
    Rational a = neg ? Rational(-*c) : *c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (e.empty()) {
      s += to_text(a);
    } else {
      if (a != 1) s += to_text(a) + "*";
      s += detail::monomial_text(e, ctx);
    }
  }
  return s;
}

inline std::string to_text(const LinearForm& f, const TextContext& ctx = {}) { return to_text(Polynomial(f), ctx); }

inline std::string to_text(const FactoredRational& r, const TextContext& ctx = {}) {
  std::string num = to_text(r.numerator(), ctx);
  if (r.denominator().empty()) return num;
  std::vector<std::string> fs;
  for (const auto& [f, e] : r.denominator()) {
    std::string x = "(" + to_text(f, ctx) + ")";
    if (e != 1) x += "^" + std::to_string(e);
    fs.push_back(x);
  }
  std::sort(fs.begin(), fs.end());
  std::string den;
  for (const auto& x : fs) den += (den.empty() ? "" : "*") + x;
  return "(" + num + ")/(" + den + ")";
}

inline std::string to_text(const LaurentSeries& s, const TextContext& ctx = {}) {
  std::string out;
  for (const auto& [k, c] : s.coeffs) {
    if (!out.empty()) out += " + ";
    out += "(" + to_text(c, ctx) + ")*" + to_text(s.var, ctx) + "^" + std::to_string(k);
  }
  if (out.empty()) out = "0";
  return out + " + O(" + to_text(s.var, ctx) + "^" + std::to_string(-s.order - 1) + ")";
}

// Recursive-descent reader for the serialized forms (and ordinary hand-written
// expressions using + - * / ^ and parentheses).
class Parser {
 public:
  Parser(std::string src, const TextContext& ctx = {}) : s_(std::move(src)), ctx_(ctx) {}

  FactoredRational parse_rational() {
    auto r = expr();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(i_) + " in '" + s_ + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  FactoredRational expr() {
    std::vector<FactoredRational> terms;
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    for (;;) {
      auto t = term();
      terms.push_back(neg ? -t : t);
      if (eat('+'))
        neg = false;
      else if (eat('-'))
        neg = true;
      else
        break;
    }
    return FactoredRational::sum(terms);
  }

  FactoredRational term() {
    auto r = power();
    for (;;) {
      if (eat('*'))
        r = r * power();
      else if (eat('/')) {
        auto d = power();
        if (d.is_zero()) fail("division-by-zero");
        if (!d.is_factored()) fail("divisor is not a product of linear forms");
        r = r / d;
      } else
        break;
    }
    return r;
  }

  FactoredRational power() {
    if (eat('-')) return -power();
    auto b = atom();
    if (eat('^')) {
      bool neg = eat('-');
      long e = integer();
      if (neg) {
        if (!b.is_factored()) fail("negative power of a non-factored expression");
        return b.pow(-static_cast<int>(e));
      }
      return b.pow(static_cast<int>(e));
    }
    return b;
  }

  long integer() {
    skip();
    size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected integer");
    return std::stol(s_.substr(st, i_ - st));
  }

  std::string ident() {
    skip();
    size_t st = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (st == i_) fail("expected identifier");
    return s_.substr(st, i_ - st);
  }

  FactoredRational atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      auto r = expr();
      expect(')');
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return FactoredRational(Rational(mpz_class(s_.substr(st, i_ - st))));
    }
    if (c == '$') {
      ++i_;
      return var(series_var(ident()));
    }
    std::string id = ident();
    skip();
    if ((id == "x" || id == "u") && i_ < s_.size() && s_[i_] == '[') {
      ++i_;
      std::vector<std::string> fields;
      for (;;) {
        skip();
        size_t st = i_;
        while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != ']') ++i_;
        std::string f = s_.substr(st, i_ - st);
        while (!f.empty() && std::isspace(static_cast<unsigned char>(f.back()))) f.pop_back();
        fields.push_back(f);
        if (eat(']')) break;
        expect(',');
      }
      if (id == "x") {
        if (fields.size() != 3) fail("x[...] needs vertex,tag,index");
        return var(torus_var(ctx_.vertex_index(fields[0]), std::stoi(fields[1]), std::stoi(fields[2])));
      }
      if (fields.size() != 2) fail("u[...] needs vertex,index");
      return var(framing_var(ctx_.vertex_index(fields[0]), std::stoi(fields[1])));
    }
    if (id == "hbar") return var(hbar_var());
    return var(param_var(id));
  }

  static FactoredRational var(VarId v) { return FactoredRational(LinearForm::var(v)); }

  std::string s_;
  const TextContext& ctx_;
  size_t i_ = 0;
};

inline FactoredRational parse_rational(const std::string& s, const TextContext& ctx = {}) {
  return Parser(s, ctx).parse_rational();
}

inline Polynomial parse_polynomial(const std::string& s, const TextContext& ctx = {}) {
  auto r = parse_rational(s, ctx);
  if (!r.is_polynomial()) throw ParseError("expected a polynomial: " + s);
  return r.numerator();
}

inline LinearForm to_linear_form(const Polynomial& p) {
  if (p.total_degree() > 1) throw ParseError("expected an affine-linear form");
  LinearForm f;
  for (const auto& t : p.terms()) {
    if (t.m.is_one())
      f = f + LinearForm(t.c);
    else
      f = f + LinearForm::var(t.m.entries()[0].var, t.c);
  }
  return f;
}

inline LinearForm parse_linear_form(const std::string& s, const TextContext& ctx = {}) {
  return to_linear_form(parse_polynomial(s, ctx));
}

}  // namespace coha
