#pragma once

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace atlas {

// Exact element of Q(i), stored as a pair of GMP rationals.
//
// This is the coefficient field for every series and polynomial in the
// library; nothing downstream ever rounds, so all arithmetic here must stay
// exact. Parsing and printing use the same literal grammar the CLI configs
// use: "3/2", "-1/3", "i", "i*2", "1/2+i*2".
class GaussRational {
 public:
  GaussRational() : re_(0), im_(0) {}
  GaussRational(long n) : re_(n), im_(0) {}
  GaussRational(const mpq_class& re) : re_(re), im_(0) { re_.canonicalize(); }
  GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussRational i() { return GaussRational(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussRational conj() const { return GaussRational(re_, -im_); }

  // |q|^2 = q * conj(q), a nonnegative rational.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussRational operator-() const { return GaussRational(-re_, -im_); }

  GaussRational& operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = re;
    im_ = im;
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero in Q(i)");
    mpq_class n = o.norm();
    mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = re;
    im_ = im;
    return *this;
  }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  GaussRational inverse() const {
    GaussRational one(1);
    return one / *this;
  }

  GaussRational pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    GaussRational acc(1), base = *this;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  // Exact square root in Q(i) when one exists. For x + iy with y != 0 this
  // solves (a + ib)^2 = x + iy, which needs both x^2 + y^2 and (x + r)/2 to
  // be rational squares (r the root of the first).
  std::optional<GaussRational> sqrt_exact() const {
    if (im_ == 0) {
      if (re_ >= 0) {
        auto s = rational_sqrt(re_);
        if (!s) return std::nullopt;
        return GaussRational(*s, mpq_class(0));
      }
      auto s = rational_sqrt(mpq_class(-re_));
      if (!s) return std::nullopt;
      return GaussRational(mpq_class(0), *s);
    }
    auto r = rational_sqrt(norm());
    if (!r) return std::nullopt;
    mpq_class half_sum = (re_ + *r) / 2;
    auto a = rational_sqrt(half_sum);
    if (!a || *a == 0) return std::nullopt;
    mpq_class b = im_ / (2 * (*a));
    GaussRational root(*a, b);
    if (root * root == *this) return root;
    return std::nullopt;
  }

  // Canonical literal: "0", "3/2", "i*2", "1/2-i*3". The imaginary part is
  // always printed with a positive magnitude after the sign.
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re_ != 0) out += re_.get_str();
    if (im_ != 0) {
      if (im_ > 0) {
        if (!out.empty()) out += "+";
      } else {
        out += "-";
      }
      mpq_class mag = abs(im_);
      out += "i";
      if (mag != 1) out += "*" + mag.get_str();
    }
    return out;
  }

  // Accepts the same grammar str() emits, plus harmless variants such as
  // whitespace, "2*i", and a leading sign. Returns nullopt on anything else.
  static std::optional<GaussRational> parse(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) return std::nullopt;

    // Split into at most two signed parts at top level.
    std::vector<std::pair<int, std::string>> parts;
    std::size_t pos = 0;
    int sign = 1;
    if (s[0] == '+' || s[0] == '-') {
      sign = s[0] == '-' ? -1 : 1;
      pos = 1;
    }
    std::size_t start = pos;
    for (; pos <= s.size(); ++pos) {
      if (pos == s.size() || s[pos] == '+' || s[pos] == '-') {
        if (pos == start) return std::nullopt;
        parts.emplace_back(sign, s.substr(start, pos - start));
        if (pos < s.size()) {
          sign = s[pos] == '-' ? -1 : 1;
          start = pos + 1;
        }
      }
    }
    if (parts.empty() || parts.size() > 2) return std::nullopt;

    GaussRational out;
    bool seen_real = false, seen_imag = false;
    for (auto& [sgn, body] : parts) {
      bool imag = false;
      std::string rat;
      if (body == "i") {
        imag = true;
        rat = "1";
      } else if (body.rfind("i*", 0) == 0) {
        imag = true;
        rat = body.substr(2);
      } else if (body.size() > 2 && body.compare(body.size() - 2, 2, "*i") == 0) {
        imag = true;
        rat = body.substr(0, body.size() - 2);
      } else {
        rat = body;
      }
      auto q = parse_rational(rat);
      if (!q) return std::nullopt;
      if (imag) {
        if (seen_imag) return std::nullopt;
        seen_imag = true;
        out.im_ += sgn * (*q);
      } else {
        if (seen_real) return std::nullopt;
        seen_real = true;
        out.re_ += sgn * (*q);
      }
    }
    return out;
  }

 private:
  static std::optional<mpq_class> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t slash = s.find('/');
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (num.empty() || den.empty()) return std::nullopt;
    for (std::size_t k = 0; k < num.size(); ++k) {
      if (k == 0 && (num[k] == '-' || num[k] == '+') && num.size() > 1) continue;
      if (!std::isdigit(static_cast<unsigned char>(num[k]))) return std::nullopt;
    }
    for (char c : den)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    mpq_class q;
    if (q.set_str(num + "/" + den, 10) != 0) return std::nullopt;
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    return q;
  }

  // Nonnegative rational square root, if the numerator and denominator of
  // the canonical form are both perfect squares.
  static std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (q < 0) return std::nullopt;
    mpz_class num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return mpq_class(rn, rd);
  }

  mpq_class re_, im_;
};

inline GaussRational div_int(const GaussRational& q, long k) {
  return q / GaussRational(k);
}

}  // namespace atlas
