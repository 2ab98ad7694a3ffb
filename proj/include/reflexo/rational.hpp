#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace reflexo {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

// "p/q", or "p" when the denominator is 1
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Integer pow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Rational pow(const Rational& b, unsigned long e) {
  Integer n = pow(Integer(b.get_num()), e), d = pow(Integer(b.get_den()), e);
  return Rational(n, d);
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
  return z.get_si();
}

namespace detail {

inline Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](const Integer& v) -> Integer { return Integer((v * v + c) % n); };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      Integer diff = abs(x - y);
      d = gcd(diff, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(Integer n, std::vector<Integer>& primes) {
  if (n == 1) return;
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
    while (n % p == 0) {
      primes.emplace_back(p);
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    primes.push_back(n);
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, primes);
  factor_into(Integer(n / d), primes);
}

}  // namespace detail

// Positive divisors of |n| (n != 0), ascending.
inline std::vector<Integer> divisors(const Integer& n) {
  if (n == 0) throw std::domain_error("divisors of zero");
  std::vector<Integer> primes;
  detail::factor_into(abs(n), primes);
  std::sort(primes.begin(), primes.end());
  std::vector<Integer> out{1};
  std::size_t i = 0;
  while (i < primes.size()) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    std::size_t base = out.size();
    Integer pk = 1;
    for (std::size_t e = i; e < j; ++e) {
      pk *= primes[i];
      for (std::size_t t = 0; t < base; ++t) out.push_back(out[t] * pk);
    }
    i = j;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace reflexo
