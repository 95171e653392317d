#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "atlas/gauss_rational.hpp"
#include "atlas/laurent.hpp"

namespace atlas {

// Element of Q(i)[sqrt(2)], kept as c0 + c1*sqrt(2). The sqrt(2) lives in
// the coefficients of harmonic-metric germs and of the rank-3 pair Higgs
// fields; since sqrt(2) is not in Q(i), the pair (c0, c1) is unique and the
// extension is a field.
struct Root2Q {
  GaussRational c0, c1;

  Root2Q() = default;
  Root2Q(long n) : c0(n) {}
  Root2Q(GaussRational a) : c0(std::move(a)) {}
  Root2Q(GaussRational a, GaussRational b) : c0(std::move(a)), c1(std::move(b)) {}

  static Root2Q sqrt2() { return Root2Q(GaussRational(0), GaussRational(1)); }

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }

  Root2Q conj() const { return Root2Q(c0.conj(), c1.conj()); }

  Root2Q operator-() const { return Root2Q(-c0, -c1); }
  friend Root2Q operator+(const Root2Q& a, const Root2Q& b) {
    return Root2Q(a.c0 + b.c0, a.c1 + b.c1);
  }
  friend Root2Q operator-(const Root2Q& a, const Root2Q& b) {
    return Root2Q(a.c0 - b.c0, a.c1 - b.c1);
  }
  friend Root2Q operator*(const Root2Q& a, const Root2Q& b) {
    return Root2Q(a.c0 * b.c0 + GaussRational(2) * a.c1 * b.c1, a.c0 * b.c1 + a.c1 * b.c0);
  }
  Root2Q inverse() const {
    // (c0 - c1 sqrt2) / (c0^2 - 2 c1^2); the denominator vanishes only for
    // the zero element because sqrt2 is irrational over Q(i).
    GaussRational d = c0 * c0 - GaussRational(2) * c1 * c1;
    if (d.is_zero()) throw std::domain_error("inverse of zero in Q(i)[sqrt2]");
    GaussRational inv = d.inverse();
    return Root2Q(c0 * inv, -c1 * inv);
  }
  friend Root2Q operator/(const Root2Q& a, const Root2Q& b) { return a * b.inverse(); }

  friend bool operator==(const Root2Q& a, const Root2Q& b) {
    return a.c0 == b.c0 && a.c1 == b.c1;
  }
  friend bool operator!=(const Root2Q& a, const Root2Q& b) { return !(a == b); }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    if (!c0.is_zero()) out = c0.str();
    if (!c1.is_zero()) {
      std::string part = c1.str();
      bool neg = part.size() > 0 && part[0] == '-';
      if (!out.empty()) out += neg ? "" : "+";
      if (part == "1")
        part = "";
      else if (part == "-1")
        part = "-";
      else
        part = (part.find('+') != std::string::npos || part.find('-', 1) != std::string::npos)
                   ? "(" + part + ")*"
                   : part + "*";
      out += part + "sqrt2";
    }
    return out;
  }
};

// Finite exact sums of terms  c * z^a * zbar^b * |z|^{2 gamma}  on a
// punctured disc, with c in Q(i)[sqrt2], a,b nonnegative integers, gamma
// rational. A term is keyed by the pair (p, q) = (a + gamma, b + gamma);
// p - q is always an integer, which makes the key canonical. Wirtinger
// derivatives, conjugation and the deck action of z -> zeta z act termwise
// on the keys, so the whole ring is exact: there is no truncation here.
class LogPolarExpr {
 public:
  using Key = std::pair<mpq_class, mpq_class>;

  LogPolarExpr() = default;
  LogPolarExpr(long n) {
    if (n != 0) terms_[{mpq_class(0), mpq_class(0)}] = Root2Q(n);
  }

  static LogPolarExpr term(const Root2Q& c, const mpq_class& p, const mpq_class& q) {
    mpq_class d = p - q;
    if (d.get_den() != 1) throw std::domain_error("z and zbar exponents must differ by an integer");
    LogPolarExpr e;
    if (!c.is_zero()) e.terms_[{p, q}] = c;
    return e;
  }

  // z^e
  static LogPolarExpr zpow(long e) { return term(Root2Q(1), mpq_class(e), mpq_class(0)); }
  // zbar^e
  static LogPolarExpr zbarpow(long e) { return term(Root2Q(1), mpq_class(0), mpq_class(e)); }
  // |z|^r for rational r (r may be negative or fractional)
  static LogPolarExpr abs_pow(const mpq_class& r) {
    mpq_class half = r / 2;
    return term(Root2Q(1), half, half);
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Key, Root2Q>& terms() const { return terms_; }

  LogPolarExpr operator-() const {
    LogPolarExpr e;
    for (const auto& [k, c] : terms_) e.terms_[k] = -c;
    return e;
  }
  friend LogPolarExpr operator+(const LogPolarExpr& a, const LogPolarExpr& b) {
    LogPolarExpr e = a;
    for (const auto& [k, c] : b.terms_) {
      auto it = e.terms_.find(k);
      if (it == e.terms_.end()) {
        e.terms_[k] = c;
      } else {
        it->second = it->second + c;
        if (it->second.is_zero()) e.terms_.erase(it);
      }
    }
    return e;
  }
  friend LogPolarExpr operator-(const LogPolarExpr& a, const LogPolarExpr& b) { return a + (-b); }
  friend LogPolarExpr operator*(const LogPolarExpr& a, const LogPolarExpr& b) {
    LogPolarExpr e;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        Key k{ka.first + kb.first, ka.second + kb.second};
        auto it = e.terms_.find(k);
        if (it == e.terms_.end()) {
          Root2Q c = ca * cb;
          if (!c.is_zero()) e.terms_[k] = c;
        } else {
          it->second = it->second + ca * cb;
          if (it->second.is_zero()) e.terms_.erase(it);
        }
      }
    return e;
  }

  LogPolarExpr& operator+=(const LogPolarExpr& o) { return *this = *this + o; }
  LogPolarExpr& operator-=(const LogPolarExpr& o) { return *this = *this - o; }
  LogPolarExpr& operator*=(const LogPolarExpr& o) { return *this = *this * o; }

  LogPolarExpr scaled(const Root2Q& c) const {
    LogPolarExpr e;
    if (c.is_zero()) return e;
    for (const auto& [k, x] : terms_) e.terms_[k] = x * c;
    return e;
  }

  // Complex conjugation: coefficients conjugate and the exponents swap.
  LogPolarExpr conj() const {
    LogPolarExpr e;
    for (const auto& [k, c] : terms_) e.terms_[{k.second, k.first}] = c.conj();
    return e;
  }

  // Wirtinger d/dz: a term with z-weight p maps to p times the term with
  // weight p - 1.
  LogPolarExpr dz() const {
    LogPolarExpr e;
    for (const auto& [k, c] : terms_) {
      if (k.first == 0) continue;
      e.terms_[{k.first - 1, k.second}] = c * Root2Q(GaussRational(k.first));
    }
    return e;
  }
  LogPolarExpr dzbar() const {
    LogPolarExpr e;
    for (const auto& [k, c] : terms_) {
      if (k.second == 0) continue;
      e.terms_[{k.first, k.second - 1}] = c * Root2Q(GaussRational(k.second));
    }
    return e;
  }

  // Substitution z -> w^k on the exponents (reading the result in w).
  LogPolarExpr inflate(long k) const {
    LogPolarExpr e;
    for (const auto& [key, c] : terms_)
      e.terms_[{key.first * k, key.second * k}] = c;
    return e;
  }

  // Sum over the k-th roots of unity acting by w -> zeta w. A term picks up
  // zeta^(p-q), so only deck-invariant terms survive, each scaled by k.
  LogPolarExpr sheet_trace(long k) const {
    LogPolarExpr e;
    for (const auto& [key, c] : terms_) {
      mpq_class d = key.first - key.second;
      if (d.get_num() % k == 0) e.terms_[key] = c * Root2Q(GaussRational(k));
    }
    return e;
  }

  // Rewrites an expression in w as one in z = w^k. Only possible when every
  // term is deck invariant, i.e. p - q is divisible by k.
  LogPolarExpr descend(long k) const {
    LogPolarExpr e;
    for (const auto& [key, c] : terms_) {
      mpq_class d = key.first - key.second;
      if (d.get_num() % k != 0)
        throw std::domain_error("expression is not invariant under the deck action");
      e.terms_[{key.first / k, key.second / k}] = c;
    }
    return e;
  }

  bool is_single_term() const { return terms_.size() == 1; }

  // Inverse of a one-term expression; sums have no inverse in this ring.
  LogPolarExpr inverse() const {
    if (terms_.size() != 1)
      throw std::domain_error("only a single log-polar term can be inverted");
    const auto& [k, c] = *terms_.begin();
    return term(c.inverse(), -k.first, -k.second);
  }

  friend bool operator==(const LogPolarExpr& a, const LogPolarExpr& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const LogPolarExpr& a, const LogPolarExpr& b) { return !(a == b); }

  // Canonical print: gamma = min(p, q), so one of the z/zbar exponents is
  // always zero, e.g. "2*z^3*|z|^{-1/2}".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
      mpq_class gamma = std::min(k.first, k.second);
      mpq_class a = k.first - gamma, b = k.second - gamma;
      std::string suffix;
      if (a != 0) suffix += "*z" + (a == 1 ? std::string() : "^" + mpq_class(a).get_str());
      if (b != 0) suffix += "*zbar" + (b == 1 ? std::string() : "^" + mpq_class(b).get_str());
      if (gamma != 0) {
        mpq_class e2 = gamma * 2;
        bool frac = e2.get_den() != 1;
        suffix += "*|z|^" + (frac || e2 < 0 ? "{" + e2.get_str() + "}" : e2.get_str());
      }
      std::string t = c.str();
      if (t.find('+') != std::string::npos || t.find('-', 1) != std::string::npos)
        t = "(" + t + ")";
      if (!suffix.empty()) {
        if (t == "1")
          t = suffix.substr(1);
        else if (t == "-1")
          t = "-" + suffix.substr(1);
        else
          t += suffix;
      }
      if (!out.empty()) {
        if (t[0] == '-') {
          out += " - ";
          t = t.substr(1);
        } else {
          out += " + ";
        }
      }
      out += t;
    }
    return out;
  }

 private:
  std::map<Key, Root2Q> terms_;
};

// Embeds an exact Laurent germ as a holomorphic log-polar expression. The
// metric checks are exact identities, so a truncated series is refused
// rather than silently treated as its known part.
inline LogPolarExpr to_logpolar(const LaurentSeries& s) {
  if (!s.is_exact())
    throw PrecisionError("truncated series cannot enter exact metric identities");
  LogPolarExpr e;
  for (const auto& [k, c] : s.terms())
    e += LogPolarExpr::term(Root2Q(c), mpq_class(k), mpq_class(0));
  return e;
}

inline LogPolarExpr div_int(const LogPolarExpr& e, long k) {
  return e.scaled(Root2Q(GaussRational(1) / GaussRational(k)));
}

}  // namespace atlas
