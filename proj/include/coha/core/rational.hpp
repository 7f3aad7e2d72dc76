#pragma once

#include <gmpxx.h>

#include "coha/core/gmp_pool.hpp"

#include <cstdint>
#include <string>

namespace coha {

using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_integral(const Rational& q) { return mpz_cmp_ui(q.get_den_mpz_t(), 1) == 0; }

// r = a * b, skipping the gcd work when both operands are integers.
inline void mul_into(Rational& r, const Rational& a, const Rational& b) {
  if (is_integral(a) && is_integral(b)) {
    mpz_mul(r.get_num_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    mpz_set_ui(r.get_den_mpz_t(), 1);
  } else {
    mpq_mul(r.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
  }
}

inline void add_into(Rational& r, const Rational& a, const Rational& b) {
  if (is_integral(a) && is_integral(b)) {
    mpz_add(r.get_num_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    mpz_set_ui(r.get_den_mpz_t(), 1);
  } else {
    mpq_add(r.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
  }
}

// r += a * b
inline void addmul_into(Rational& r, const Rational& a, const Rational& b) {
  if (is_integral(r) && is_integral(a) && is_integral(b)) {
    mpz_addmul(r.get_num_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
  } else {
    Rational t;
    mpq_mul(t.get_mpq_t(), a.get_mpq_t(), b.get_mpq_t());
    mpq_add(r.get_mpq_t(), r.get_mpq_t(), t.get_mpq_t());
  }
}

inline std::string to_text(const Rational& q) {
  if (is_integral(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rational_from_text(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  return q;
}

// Residue of q modulo the prime p; returns false if p divides the denominator.
inline bool mod_prime(const Rational& q, std::uint64_t p, std::uint64_t& out);

namespace detail {
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }
inline std::uint64_t mpz_mod_u64(const mpz_t z, std::uint64_t p) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return mpz_fdiv_ui(z, p);
}
}  // namespace detail

inline bool mod_prime(const Rational& q, std::uint64_t p, std::uint64_t& out) {
  std::uint64_t n = detail::mpz_mod_u64(q.get_num_mpz_t(), p);
  if (is_integral(q)) {
    out = n;
    return true;
  }
  std::uint64_t d = detail::mpz_mod_u64(q.get_den_mpz_t(), p);
  if (d == 0) return false;
  out = detail::mulmod(n, detail::invmod(d, p), p);
  return true;
}

}  // namespace coha
