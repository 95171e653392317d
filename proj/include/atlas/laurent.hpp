#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "atlas/gauss_rational.hpp"

namespace atlas {

// Thrown when a computation needs a coefficient beyond a series truncation,
// or the sign/order of something that is zero to the known precision.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Truncated Laurent series over Q(i) in one formal variable.
//
// A value represents   sum_{e = val}^{trunc - 1} c_e z^e  +  O(z^trunc),
// with trunc == kExact meaning no O-term at all (a finite sum, typically a
// polynomial germ). Coefficients at exponents below val are exactly zero;
// coefficients at or above trunc are unknown. Every operation propagates
// the truncation pessimistically, so a coefficient the API hands back is
// always a theorem, not a best guess.
class LaurentSeries {
 public:
  static constexpr long kExact = 1000000000L;

  LaurentSeries() : val_(kExact), trunc_(kExact) {}
  LaurentSeries(const GaussRational& c) : val_(0), trunc_(kExact) {
    if (!c.is_zero())
      coeffs_.push_back(c);
    else
      val_ = kExact;
  }
  LaurentSeries(long n) : LaurentSeries(GaussRational(n)) {}

  // The zero series known only up to O(z^trunc).
  static LaurentSeries zero_to(long trunc) {
    LaurentSeries s;
    s.val_ = trunc;
    s.trunc_ = trunc;
    return s;
  }

  static LaurentSeries monomial(const GaussRational& c, long e, long trunc = kExact) {
    LaurentSeries s;
    s.trunc_ = trunc;
    if (!c.is_zero() && e < trunc) {
      s.val_ = e;
      s.coeffs_.push_back(c);
    } else {
      s.val_ = trunc;
    }
    return s;
  }

  static LaurentSeries from_terms(const std::vector<std::pair<long, GaussRational>>& terms,
                                  long trunc = kExact) {
    std::map<long, GaussRational> acc;
    for (const auto& [e, c] : terms) {
      if (e >= trunc) continue;
      acc[e] += c;
    }
    LaurentSeries s;
    s.trunc_ = trunc;
    s.val_ = trunc;
    for (auto it = acc.begin(); it != acc.end(); ++it) {
      if (it->second.is_zero()) continue;
      if (s.coeffs_.empty()) s.val_ = it->first;
      s.coeffs_.resize(static_cast<std::size_t>(it->first - s.val_) + 1);
      s.coeffs_.back() = it->second;
    }
    s.normalize();
    return s;
  }

  bool is_exact() const { return trunc_ == kExact; }
  long truncation() const { return trunc_; }

  // True when no nonzero coefficient is known. For a truncated series this
  // does not certify the value is zero, only that it is O(z^trunc).
  bool is_zero_to_trunc() const { return coeffs_.empty(); }
  bool known_nonzero() const { return !coeffs_.empty(); }

  // Exactly the zero element (no truncation uncertainty left).
  bool is_exact_zero() const { return coeffs_.empty() && is_exact(); }

  std::optional<long> try_valuation() const {
    if (coeffs_.empty()) return std::nullopt;
    return val_;
  }

  // z-adic order. Errors rather than guessing when the series is zero to
  // its truncation.
  long order() const {
    if (!coeffs_.empty()) return val_;
    if (is_exact()) throw std::domain_error("order of the zero series");
    throw PrecisionError("insufficient germ precision");
  }

  GaussRational coeff(long e) const {
    if (e >= trunc_) throw PrecisionError("insufficient germ precision");
    if (coeffs_.empty() || e < val_) return GaussRational(0);
    std::size_t k = static_cast<std::size_t>(e - val_);
    if (k >= coeffs_.size()) return GaussRational(0);
    return coeffs_[k];
  }

  GaussRational leading_coeff() const {
    if (coeffs_.empty()) throw std::domain_error("leading coefficient of a zero series");
    return coeffs_.front();
  }

  // The known nonzero terms as (exponent, coefficient) pairs in increasing
  // exponent order.
  std::vector<std::pair<long, GaussRational>> terms() const {
    std::vector<std::pair<long, GaussRational>> out;
    collect(out);
    return out;
  }

  LaurentSeries operator-() const {
    LaurentSeries s = *this;
    for (auto& c : s.coeffs_) c = -c;
    return s;
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    long trunc = std::min(a.trunc_, b.trunc_);
    std::vector<std::pair<long, GaussRational>> terms;
    a.collect(terms);
    b.collect(terms);
    return from_terms(terms, trunc);
  }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
    return a + (-b);
  }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    long trunc = std::min(sat_add(a.val_, b.trunc_), sat_add(b.val_, a.trunc_));
    std::vector<std::pair<long, GaussRational>> terms;
    terms.reserve(a.coeffs_.size() * b.coeffs_.size());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        terms.emplace_back(a.val_ + static_cast<long>(i) + b.val_ + static_cast<long>(j),
                           a.coeffs_[i] * b.coeffs_[j]);
      }
    }
    return from_terms(terms, trunc);
  }

  LaurentSeries& operator+=(const LaurentSeries& o) { return *this = *this + o; }
  LaurentSeries& operator-=(const LaurentSeries& o) { return *this = *this - o; }
  LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

  LaurentSeries scaled(const GaussRational& c) const {
    if (c.is_zero()) return zero_to(trunc_);
    LaurentSeries s = *this;
    for (auto& x : s.coeffs_) x *= c;
    return s;
  }

  // Multiplication by z^e.
  LaurentSeries shifted(long e) const {
    LaurentSeries s = *this;
    s.val_ = coeffs_.empty() ? sat_add(s.val_, e) : s.val_ + e;
    s.trunc_ = sat_add(s.trunc_, e);
    return s;
  }

  LaurentSeries truncated(long trunc) const {
    std::vector<std::pair<long, GaussRational>> terms;
    collect(terms);
    return from_terms(terms, std::min(trunc_, trunc));
  }

  LaurentSeries derivative() const {
    std::vector<std::pair<long, GaussRational>> terms;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      long e = val_ + static_cast<long>(k);
      if (e == 0) continue;
      terms.emplace_back(e - 1, coeffs_[k] * GaussRational(e));
    }
    return from_terms(terms, is_exact() ? kExact : trunc_ - 1);
  }

  // Reciprocal. For a truncated input the output precision is forced; for
  // an exact non-monomial input the reciprocal is an infinite series, so a
  // working length must either be supplied or fall back to the module-wide
  // default. An exact monomial inverts exactly.
  LaurentSeries inverse(std::optional<long> len = std::nullopt) const {
    if (coeffs_.empty()) {
      if (is_exact()) throw std::domain_error("inverse of the zero series");
      throw PrecisionError("insufficient germ precision");
    }
    if (is_exact() && coeffs_.size() == 1)
      return monomial(coeffs_[0].inverse(), -val_);
    long length = is_exact() ? len.value_or(default_precision()) : trunc_ - val_;
    if (length <= 0) throw PrecisionError("insufficient germ precision");
    // Invert the unit part u = c_0 + c_1 z + ... by the usual recurrence.
    std::vector<GaussRational> b(static_cast<std::size_t>(length));
    b[0] = coeffs_[0].inverse();
    for (long k = 1; k < length; ++k) {
      GaussRational s(0);
      for (long j = 1; j <= k; ++j) {
        GaussRational u = static_cast<std::size_t>(j) < coeffs_.size() ? coeffs_[j]
                                                                       : GaussRational(0);
        if (u.is_zero()) continue;
        s += u * b[static_cast<std::size_t>(k - j)];
      }
      b[static_cast<std::size_t>(k)] = -s * b[0];
    }
    std::vector<std::pair<long, GaussRational>> terms;
    for (long k = 0; k < length; ++k)
      terms.emplace_back(-val_ + k, b[static_cast<std::size_t>(k)]);
    return from_terms(terms, -val_ + length);
  }

  friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) {
    if (!b.known_nonzero()) {
      if (b.is_exact()) throw std::domain_error("division by the zero series");
      throw PrecisionError("insufficient germ precision");
    }
    if (a.is_exact_zero()) return LaurentSeries();
    if (a.is_zero_to_trunc()) return zero_to(a.trunc_ - b.val_);
    std::optional<long> len;
    if (b.is_exact() && b.coeffs_.size() > 1 && !a.is_exact())
      len = a.trunc_ - a.val_;
    return a * b.inverse(len);
  }

  // Coordinate rescaling z -> c z, so c_e picks up a factor c^e.
  LaurentSeries scale_coordinate(const GaussRational& c) const {
    if (c.is_zero()) throw std::domain_error("coordinate scale by zero");
    std::vector<std::pair<long, GaussRational>> terms;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      long e = val_ + static_cast<long>(k);
      terms.emplace_back(e, coeffs_[k] * c.pow(e));
    }
    return from_terms(terms, trunc_);
  }

  // Substitution z -> w^k; exponents dilate and the gaps are exact zeros.
  LaurentSeries inflate(long k) const {
    if (k < 1) throw std::domain_error("inflate needs k >= 1");
    std::vector<std::pair<long, GaussRational>> terms;
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
      terms.emplace_back((val_ + static_cast<long>(j)) * k, coeffs_[j]);
    return from_terms(terms, sat_mul(trunc_, k));
  }

  // The k-section picking out exponents congruent to r mod k, reindexed by
  // e = r + k t  ->  t.
  LaurentSeries section(long r, long k) const {
    if (k < 1) throw std::domain_error("section needs k >= 1");
    std::vector<std::pair<long, GaussRational>> terms;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      long e = val_ + static_cast<long>(j);
      long rem = ((e - r) % k + k) % k;
      if (rem == 0) terms.emplace_back((e - r) / k, coeffs_[j]);
    }
    long trunc = is_exact() ? kExact : ceil_div(trunc_ - r, k);
    return from_terms(terms, trunc);
  }

  // Composition f(g) for val(g) >= 1.
  LaurentSeries substitute(const LaurentSeries& g) const {
    if (!g.known_nonzero() || g.val_ < 1)
      throw std::domain_error("substitution needs a series of positive order");
    LaurentSeries acc = is_exact() ? LaurentSeries() : zero_to(sat_mul(trunc_, g.val_));
    if (coeffs_.empty()) return acc;
    LaurentSeries p = power_of(g, val_);
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (!coeffs_[j].is_zero()) acc += p.scaled(coeffs_[j]);
      if (j + 1 < coeffs_.size()) p *= g;
    }
    if (!is_exact()) acc = acc.truncated(sat_mul(trunc_, g.val_));
    return acc;
  }

  // Structural equality (same known coefficients and same truncation).
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.val_ == b.val_ && a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LaurentSeries& a, const LaurentSeries& b) { return !(a == b); }

  // Equality of all coefficients below the finer of the two truncations.
  friend bool agree_to_truncation(const LaurentSeries& a, const LaurentSeries& b) {
    long t = std::min(a.trunc_, b.trunc_);
    LaurentSeries d = a.truncated(t) - b.truncated(t);
    return d.is_zero_to_trunc();
  }

  std::string str(const std::string& var = "z") const {
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k].is_zero()) continue;
      long e = val_ + static_cast<long>(k);
      std::string term = coeffs_[k].str();
      if (term.find('+') != std::string::npos ||
          term.find('-', 1) != std::string::npos)
        term = "(" + term + ")";
      if (e != 0) {
        term += "*" + var;
        if (e != 1) term += "^" + std::to_string(e);
      }
      if (!out.empty()) {
        if (term[0] == '-') {
          out += " - ";
          term = term.substr(1);
        } else {
          out += " + ";
        }
      }
      out += term;
    }
    if (!is_exact()) {
      if (!out.empty()) out += " + ";
      out += "O(" + var + "^" + std::to_string(trunc_) + ")";
    }
    if (out.empty()) out = "0";
    return out;
  }

  // Parses sums of monomial terms such as "z^2", "3/2*z", "i*2*z^3",
  // "(1/2+i*2)*z^2", "2". Within a term the factors are separated by '*'
  // and multiply out; complex coefficients with two components must be
  // parenthesized so the top-level +/- split stays unambiguous.
  static std::optional<LaurentSeries> parse(const std::string& text, long trunc = kExact);

  // Working length used when an exact non-monomial series must be inverted
  // and no explicit length is available.
  static long default_precision() { return default_precision_; }
  static void set_default_precision(long p) {
    if (p < 1) throw std::domain_error("precision must be positive");
    default_precision_ = p;
  }

 private:
  static long sat_add(long a, long b) {
    if (a >= kExact / 2 || b >= kExact / 2) return kExact;
    return a + b;
  }
  static long sat_mul(long a, long k) {
    if (a >= kExact / 2) return kExact;
    return a * k;
  }
  static long ceil_div(long a, long b) {
    if (a >= kExact / 2) return kExact;
    return a / b + ((a % b != 0 && a > 0) ? 1 : 0);
  }

  static LaurentSeries power_of(const LaurentSeries& g, long e) {
    if (e == 0) return LaurentSeries(GaussRational(1));
    if (e < 0) return power_of(g.inverse(), -e);
    LaurentSeries acc(GaussRational(1)), base = g;
    long k = e;
    while (k > 0) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }

  void collect(std::vector<std::pair<long, GaussRational>>& out) const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (!coeffs_[k].is_zero()) out.emplace_back(val_ + static_cast<long>(k), coeffs_[k]);
  }

  void normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      val_ += static_cast<long>(lead);
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.empty()) val_ = trunc_;
  }

  inline static long default_precision_ = 48;

  long val_;
  std::vector<GaussRational> coeffs_;
  long trunc_;
};

inline LaurentSeries div_int(const LaurentSeries& s, long k) {
  return s.scaled(GaussRational(1) / GaussRational(k));
}

// Square root of a series whose valuation is even and whose leading
// coefficient is an exact square in Q(i); Newton iteration on the unit
// part. Returns nullopt when no root exists over Q(i).
inline std::optional<LaurentSeries> sqrt_series(const LaurentSeries& s) {
  if (!s.known_nonzero()) return std::nullopt;
  long v = s.order();
  if (v % 2 != 0) return std::nullopt;
  auto lead = s.leading_coeff().sqrt_exact();
  if (!lead) return std::nullopt;
  LaurentSeries u = s.shifted(-v);
  if (u.is_exact() && u.terms().size() == 1)
    return LaurentSeries(*lead).shifted(v / 2);
  long len = u.is_exact() ? LaurentSeries::default_precision() : u.truncation();
  LaurentSeries x(*lead);
  GaussRational half(mpq_class(1, 2));
  // Each Newton step doubles the number of correct coefficients.
  for (long correct = 1; correct < len; correct *= 2)
    x = (x + u / x).scaled(half).truncated(len);
  x = x.truncated(u.is_exact() ? len : u.truncation());
  return x.shifted(v / 2);
}

inline std::optional<LaurentSeries> LaurentSeries::parse(const std::string& text, long trunc) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) return std::nullopt;

  std::vector<std::pair<long, GaussRational>> terms;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
      if (pos == s.size()) return std::nullopt;
    } else if (pos > 0) {
      return std::nullopt;  // terms must be joined by '+' or '-'
    }
    // One term: '*'-separated factors, each a rational, "i", a parenthesized
    // complex literal, or z with an optional integer exponent.
    GaussRational coeff(1);
    long expo = 0;
    bool more = true;
    while (more) {
      std::size_t start = pos;
      int depth = 0;
      while (pos < s.size()) {
        char c = s[pos];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        // a sign directly after '^' belongs to the exponent
        bool signed_expo = (c == '+' || c == '-') && pos > start && s[pos - 1] == '^';
        if (depth == 0 && !signed_expo && (c == '*' || c == '+' || c == '-')) break;
        ++pos;
      }
      if (depth != 0 || pos == start) return std::nullopt;
      std::string factor = s.substr(start, pos - start);
      if (factor[0] == '(') {
        if (factor.back() != ')') return std::nullopt;
        auto q = GaussRational::parse(factor.substr(1, factor.size() - 2));
        if (!q) return std::nullopt;
        coeff *= *q;
      } else if (factor[0] == 'z' || factor[0] == 'w') {
        long e = 1;
        if (factor.size() > 1) {
          if (factor[1] != '^') return std::nullopt;
          std::string es = factor.substr(2);
          if (es.empty()) return std::nullopt;
          std::size_t used = 0;
          try {
            e = std::stol(es, &used);
          } catch (...) {
            return std::nullopt;
          }
          if (used != es.size()) return std::nullopt;
        }
        expo += e;
      } else {
        auto q = GaussRational::parse(factor);
        if (!q) return std::nullopt;
        coeff *= *q;
      }
      more = pos < s.size() && s[pos] == '*';
      if (more) {
        ++pos;
        if (pos == s.size()) return std::nullopt;
      }
    }
    if (sign < 0) coeff = -coeff;
    terms.emplace_back(expo, coeff);
  }
  return from_terms(terms, trunc);
}

}  // namespace atlas
