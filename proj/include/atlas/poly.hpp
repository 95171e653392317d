#pragma once

#include <stdexcept>
#include <vector>

#include "atlas/gauss_rational.hpp"
#include "atlas/laurent.hpp"
#include "atlas/matrix.hpp"

namespace atlas {

// Whether a coefficient may serve as a (known) nonzero leading coefficient.
inline bool coeff_known_nonzero(const GaussRational& c) { return !c.is_zero(); }
inline bool coeff_known_nonzero(const LaurentSeries& c) { return c.known_nonzero(); }

// Univariate polynomial over an exact field, lowest degree first. Used with
// GaussRational coefficients; series-coefficient resultants go through the
// raw-vector functions below instead, where the caller controls the degree.
template <class K>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<K> c) : c_(std::move(c)) { trim(); }

  static Poly monomial(const K& c, std::size_t e) {
    std::vector<K> v(e + 1);
    v[e] = c;
    return Poly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is -1 by convention here.
  long degree() const { return static_cast<long>(c_.size()) - 1; }

  K coeff(std::size_t e) const { return e < c_.size() ? c_[e] : K(0); }
  const K& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
  }
  const std::vector<K>& coeffs() const { return c_; }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<K> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<K> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) - b.coeff(k);
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }

  Poly scaled(const K& s) const {
    std::vector<K> c = c_;
    for (auto& x : c) x = x * s;
    return Poly(std::move(c));
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<K> c(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) c[k - 1] = c_[k] * K(static_cast<long>(k));
    return Poly(std::move(c));
  }

  K eval(const K& x) const {
    K acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(K(1) / leading());
  }

  // Euclidean division: returns {quotient, remainder}.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly r = *this;
    std::vector<K> q(degree() >= d.degree() ? static_cast<std::size_t>(degree() - d.degree()) + 1
                                            : 0);
    while (!r.is_zero() && r.degree() >= d.degree()) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
      K factor = r.leading() / d.leading();
      q[shift] = q[shift] + factor;
      r = r - (d * monomial(factor, shift));
    }
    return {Poly(std::move(q)), r};
  }

  // Multiplicity of 0 as a root; the zero polynomial has none to report.
  std::size_t order_at_zero() const {
    std::size_t k = 0;
    while (k < c_.size() && c_[k] == K(0)) ++k;
    return k;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
  }

  std::vector<K> c_;
};

template <class K>
Poly<K> gcd_monic(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    Poly<K> r = a.divmod(b).second;
    a = b;
    b = r;
  }
  return a.monic();
}

// Sylvester matrix of two raw coefficient vectors (lowest degree first).
// The vectors fix the degrees: the last entry of each is its leading
// coefficient, which must be known nonzero.
template <class K>
Mat<K> sylvester_matrix(const std::vector<K>& p, const std::vector<K>& q) {
  if (p.empty() || q.empty()) throw std::domain_error("resultant of the zero polynomial");
  if (!coeff_known_nonzero(p.back()) || !coeff_known_nonzero(q.back()))
    throw std::domain_error("leading coefficient must be nonzero");
  std::size_t m = p.size() - 1, n = q.size() - 1;
  if (m + n == 0) throw std::domain_error("resultant undefined for two constants");
  Mat<K> s(m + n, m + n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j <= m; ++j) s(r, r + j) = p[m - j];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j <= n; ++j) s(n + r, r + j) = q[n - j];
  return s;
}

template <class K>
K resultant(const std::vector<K>& p, const std::vector<K>& q) {
  return sylvester_matrix(p, q).det();
}

// disc(p) = (-1)^{d(d-1)/2} Res(p, p') / lead(p), for d = deg p >= 1.
template <class K>
K discriminant(const std::vector<K>& p) {
  if (p.size() < 2) throw std::domain_error("discriminant needs degree at least 1");
  if (!coeff_known_nonzero(p.back()))
    throw std::domain_error("leading coefficient must be nonzero");
  std::size_t d = p.size() - 1;
  if (d == 1) return K(1);
  std::vector<K> dp(d);
  for (std::size_t k = 1; k <= d; ++k) dp[k - 1] = p[k] * K(static_cast<long>(k));
  while (dp.size() > 1 && !coeff_known_nonzero(dp.back())) dp.pop_back();
  K res = resultant(p, dp);
  K out = res / p.back();
  if ((d * (d - 1) / 2) % 2 == 1) out = -out;
  return out;
}

}  // namespace atlas
