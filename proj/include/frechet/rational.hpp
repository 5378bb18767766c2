#pragma once

// Exact rational scalars on top of GMP. All geometry in the unit square and
// in max-norm codomains is carried out with these.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace frechet {

using Rat = mpq_class;
using BigInt = mpz_class;
using Vec = std::vector<Rat>;

class parse_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline Rat make_rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_abs(const Rat& x) { return sgn(x) < 0 ? Rat(-x) : x; }
inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

inline std::string to_string(const Rat& r) { return r.get_str(); }

/// 2^e for any integer exponent.
inline Rat pow2(long e) {
  BigInt p(1);
  unsigned long a = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), a);
  if (e >= 0) return Rat(p);
  Rat r(BigInt(1), p);
  return r;
}

inline BigInt floor_rat(const Rat& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline BigInt ceil_rat(const Rat& x) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline std::size_t bit_length(const BigInt& v) {
  if (sgn(v) == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

/// Smallest e >= 0 with 2^e >= max(x, 1).
inline unsigned ceil_log2(const Rat& x) {
  if (x <= 1) return 0;
  BigInt c = ceil_rat(x);
  BigInt cm1 = c - 1;
  return static_cast<unsigned>(bit_length(cm1));
}

/// Number of bits b such that 2^-b <= eps (eps > 0).
inline unsigned bits_for(const Rat& eps) {
  if (sgn(eps) <= 0) throw std::invalid_argument("precision must be positive");
  Rat inv = 1 / eps;
  return ceil_log2(inv);
}

/// Outward-rounded square root at denominator 2^bits: lo <= sqrt(x) <= hi and
/// hi - lo <= 2^-bits.
inline std::pair<Rat, Rat> sqrt_enclosure(const Rat& x, unsigned bits) {
  if (sgn(x) < 0) throw std::domain_error("sqrt of negative rational");
  BigInt num = x.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), 2UL * bits);
  BigInt fl, cl;
  mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
  mpz_cdiv_q(cl.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
  BigInt rlo, rhi;
  mpz_sqrt(rlo.get_mpz_t(), fl.get_mpz_t());
  mpz_sqrt(rhi.get_mpz_t(), cl.get_mpz_t());
  if (rhi * rhi < cl) rhi += 1;
  Rat scale = pow2(-static_cast<long>(bits));
  return {Rat(rlo) * scale, Rat(rhi) * scale};
}

/// Rounds to the nearest multiple of q (ties go up).
inline Rat round_to_multiple(const Rat& x, const Rat& q) {
  Rat t = x / q + Rat(1, 2);
  return Rat(floor_rat(t)) * q;
}

/// Parses "p/q", an integer, or a decimal literal such as "-0.125" or
/// "1.5e-3". Decimals are converted exactly.
inline Rat parse_rat(std::string_view s) {
  auto fail = [&]() -> Rat { throw parse_error("invalid rational literal '" + std::string(s) + "'"); };
  if (s.empty()) return fail();
  auto is_digits = [](std::string_view t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view n = s.substr(0, slash), d = s.substr(slash + 1);
    std::string_view nd = (!n.empty() && (n[0] == '-' || n[0] == '+')) ? n.substr(1) : n;
    if (!is_digits(nd) || !is_digits(d)) return fail();
    BigInt num(std::string(n[0] == '+' ? n.substr(1) : n), 10);
    BigInt den(std::string(d), 10);
    if (sgn(den) == 0) throw parse_error("zero denominator in '" + std::string(s) + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  std::string_view body = s.substr(i);
  long exp10 = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view es = body.substr(e + 1);
    bool eneg = false;
    if (!es.empty() && (es[0] == '-' || es[0] == '+')) {
      eneg = es[0] == '-';
      es = es.substr(1);
    }
    if (!is_digits(es) || es.size() > 6) return fail();
    exp10 = std::stol(std::string(es));
    if (eneg) exp10 = -exp10;
    body = body.substr(0, e);
  }
  std::string digits;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty() && fp.empty()) return fail();
    if ((!ip.empty() && !is_digits(ip)) || (!fp.empty() && !is_digits(fp))) return fail();
    digits = std::string(ip) + std::string(fp);
    exp10 -= static_cast<long>(fp.size());
  } else {
    if (!is_digits(body)) return fail();
    digits = std::string(body);
  }
  BigInt mant(digits, 10);
  BigInt p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Rat r = exp10 < 0 ? Rat(mant, p10) : Rat(mant * p10);
  r.canonicalize();
  if (neg) r = -r;
  return r;
}

/// Exact conversion of a finite double (doubles are dyadic rationals).
inline Rat from_double(double d) {
  Rat r(d);
  return r;
}

inline double to_double(const Rat& r) { return r.get_d(); }

}  // namespace frechet
