#pragma once

#include "rational.hpp"

#include <concepts>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace reflexo {

// Degree of the zero polynomial.
inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational exact_div(const Rational& a, const Rational& b) {
  if (is_zero(b)) throw std::domain_error("division by zero");
  return Rational(a / b);
}

template <class R>
class Poly;
template <class R>
bool is_zero(const Poly<R>& p);

// Dense univariate polynomial over a commutative ring R, coefficients in
// ascending degree, no trailing zeros.
template <class R>
class Poly {
 public:
  using coeff_type = R;

  Poly() = default;
  Poly(const R& c) {
    if (!reflexo::is_zero(c)) c_.push_back(c);
  }
  template <std::integral I>
  Poly(I v) : Poly(R(v)) {}
  explicit Poly(std::vector<R> c) : c_(std::move(c)) { trim(); }

  static Poly monomial(const R& c, int k) {
    if (reflexo::is_zero(c)) return Poly();
    std::vector<R> v(static_cast<std::size_t>(k) + 1, R(0));
    v[k] = c;
    return Poly(std::move(v));
  }
  static Poly var() { return monomial(R(1), 1); }

  int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  std::size_t size() const { return c_.size(); }
  const std::vector<R>& coeffs() const { return c_; }

  const R& lc() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }
  R coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return R(0);
    return c_[k];
  }
  R constant_term() const { return coeff(0); }

  template <class S>
  S operator()(const S& x) const {
    S acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = S(acc * x + S(*it));
    return acc;
  }

  Poly derivative() const {
    std::vector<R> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(R(c_[k] * R(static_cast<long>(k))));
    return Poly(std::move(d));
  }

  // multiply by x^k
  Poly shift(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<R> v(static_cast<std::size_t>(k), R(0));
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(std::move(v));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<R> v(a.c_.size() + b.c_.size() - 1, R(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (reflexo::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
  }
  friend Poly operator*(const R& s, const Poly& p) {
    if (reflexo::is_zero(s)) return Poly();
    std::vector<R> v(p.c_);
    for (auto& c : v) c = R(s * c);
    return Poly(std::move(v));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t k = a.c_.size(); k-- > 0;)
      if (a.c_[k] != b.c_[k]) return a.c_[k] < b.c_[k];
    return false;
  }

  // in-place coefficient access used by builders
  void add_term(const R& c, int k) {
    if (k >= static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(k) + 1, R(0));
    c_[k] += c;
    trim();
  }

 private:
  void trim() {
    while (!c_.empty() && reflexo::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<R> c_;
};

template <class R>
bool is_zero(const Poly<R>& p) {
  return p.is_zero();
}

template <class R>
Poly<R> pow(const Poly<R>& p, unsigned e) {
  Poly<R> r(R(1)), b = p;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

template <class R>
R pow_elem(const R& b, unsigned e) {
  R r(1), x = b;
  while (e) {
    if (e & 1) r = R(r * x);
    e >>= 1;
    if (e) x = R(x * x);
  }
  return r;
}

// Exact division in R[x]; throws if b does not divide a.
template <class R>
Poly<R> exact_div(const Poly<R>& a, const Poly<R>& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return Poly<R>();
  int db = b.degree();
  if (a.degree() < db) throw std::domain_error("inexact polynomial division");
  std::vector<R> q(static_cast<std::size_t>(a.degree() - db) + 1, R(0));
  Poly<R> r = a;
  while (!r.is_zero() && r.degree() >= db) {
    int k = r.degree() - db;
    R c = exact_div(r.lc(), b.lc());
    q[k] = c;
    r -= Poly<R>::monomial(c, k) * b;
  }
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return Poly<R>(std::move(q));
}

// Division with remainder; requires lc(b) invertible (R a field).
template <class R>
std::pair<Poly<R>, Poly<R>> divmod(const Poly<R>& a, const Poly<R>& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  Poly<R> q, r = a;
  int db = b.degree();
  while (!r.is_zero() && r.degree() >= db) {
    int k = r.degree() - db;
    R c = exact_div(r.lc(), b.lc());
    q += Poly<R>::monomial(c, k);
    r -= Poly<R>::monomial(c, k) * b;
  }
  return {q, r};
}

// lc(b)^(deg a - deg b + 1) * a mod b, computed without division.
template <class R>
Poly<R> pseudo_remainder(const Poly<R>& a, const Poly<R>& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero");
  if (a.degree() < b.degree()) return a;
  int e = a.degree() - b.degree() + 1;
  const R& lb = b.lc();
  Poly<R> r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Poly<R> t = Poly<R>::monomial(r.lc(), r.degree() - b.degree());
    r = lb * r - t * b;
    --e;
  }
  return pow_elem(lb, static_cast<unsigned>(e)) * r;
}

// Res_x(a, b) over an integral domain R by the subresultant PRS.
template <class R>
R resultant(Poly<R> a, Poly<R> b) {
  if (a.is_zero() || b.is_zero()) return R(0);
  if (a.is_constant() && b.is_constant()) throw std::invalid_argument("nothing to eliminate");
  R sign(1);
  if (a.degree() < b.degree()) {
    if ((a.degree() % 2) && (b.degree() % 2)) sign = R(-sign);
    std::swap(a, b);
  }
  if (b.is_constant()) return R(sign * pow_elem(b.lc(), static_cast<unsigned>(a.degree())));
  R g(1), h(1);
  for (;;) {
    int delta = a.degree() - b.degree();
    if ((a.degree() % 2) && (b.degree() % 2)) sign = R(-sign);
    Poly<R> r = pseudo_remainder(a, b);
    if (r.is_zero()) return R(0);
    a = b;
    R div = R(g * pow_elem(h, static_cast<unsigned>(delta)));
    std::vector<R> rc;
    for (const auto& c : r.coeffs()) rc.push_back(exact_div(c, div));
    b = Poly<R>(std::move(rc));
    g = a.lc();
    if (delta == 0) {
      // h unchanged
    } else {
      h = exact_div(R(pow_elem(g, static_cast<unsigned>(delta))),
                    R(pow_elem(h, static_cast<unsigned>(delta - 1))));
    }
    if (b.is_constant()) {
      int da = a.degree();
      R num = pow_elem(b.lc(), static_cast<unsigned>(da));
      R res = da >= 1 ? exact_div(num, R(pow_elem(h, static_cast<unsigned>(da - 1))))
                      : R(num * h);
      return R(sign * res);
    }
  }
}

template <class R, class F>
auto map_coeffs(const Poly<R>& p, F f) {
  using S = decltype(f(std::declval<const R&>()));
  std::vector<S> v;
  v.reserve(p.size());
  for (const auto& c : p.coeffs()) v.push_back(f(c));
  return Poly<S>(std::move(v));
}

using UniPoly = Poly<Rational>;
using BiPoly = Poly<UniPoly>;
using TriPoly = Poly<BiPoly>;

// Lift a polynomial in the inner variable to a constant of the outer ring.
template <class R>
Poly<R> constant_poly(const R& c) {
  return Poly<R>(c);
}

inline std::string to_string(const UniPoly& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    Rational c = p.coeff(k);
    if (is_zero(c)) continue;
    bool neg = sgn(c) < 0;
    Rational a = abs(c);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? "-" : "+");
    }
    first = false;
    bool unit = a == 1;
    if (!unit || k == 0) os << reflexo::to_string(a);
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

}  // namespace reflexo
