#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace atlas {

// Dense matrix over an exact commutative ring R. R must be default
// constructible to its zero, constructible from long, and support the ring
// operators. Everything here targets the small fixed ranks of the local
// models (at most 8), so the determinant can afford Laplace expansion; that
// keeps it division free and usable over rings that are not fields.
template <class R>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = R(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  R& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend Mat operator+(const Mat& x, const Mat& y) {
    check_same_shape(x, y);
    Mat out(x.rows_, x.cols_);
    for (std::size_t k = 0; k < x.a_.size(); ++k) out.a_[k] = x.a_[k] + y.a_[k];
    return out;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    check_same_shape(x, y);
    Mat out(x.rows_, x.cols_);
    for (std::size_t k = 0; k < x.a_.size(); ++k) out.a_[k] = x.a_[k] - y.a_[k];
    return out;
  }
  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch");
    Mat out(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k)
        for (std::size_t j = 0; j < y.cols_; ++j)
          out(i, j) += x(i, k) * y(k, j);
    return out;
  }
  Mat operator-() const {
    Mat out(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] = -a_[k];
    return out;
  }

  Mat scaled(const R& c) const {
    Mat out(rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] = a_[k] * c;
    return out;
  }

  Mat transpose() const {
    Mat out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  template <class F>
  auto map(F f) const -> Mat<decltype(f(std::declval<const R&>()))> {
    Mat<decltype(f(std::declval<const R&>()))> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  template <class F>
  bool all(F pred) const {
    for (const auto& x : a_) {
      if (!pred(x)) return false;
    }
    return true;
  }

  R trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace of a non-square matrix");
    R t{};
    for (std::size_t i = 0; i < rows_; ++i) t = t + (*this)(i, i);
    return t;
  }

  Mat submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    Mat out(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) out(i, j) = (*this)(rs[i], cs[j]);
    return out;
  }

  // Laplace expansion along rows, memoized on the set of surviving columns.
  // Exponential in n but exact over any ring; fine for the ranks used here.
  R det() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
    if (rows_ == 0) return R(1);
    if (rows_ > 20) throw std::invalid_argument("determinant rank out of range");
    std::unordered_map<std::uint32_t, R> memo;
    std::uint32_t full = (rows_ >= 32) ? ~0u : ((1u << rows_) - 1u);
    return det_rec(full, memo);
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  static void check_same_shape(const Mat& x, const Mat& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }

  R det_rec(std::uint32_t colmask, std::unordered_map<std::uint32_t, R>& memo) const {
    if (colmask == 0) return R(1);
    auto it = memo.find(colmask);
    if (it != memo.end()) return it->second;
    std::size_t row = rows_ - static_cast<std::size_t>(__builtin_popcount(colmask));
    R acc{};
    int sign = 1;
    for (std::size_t j = 0; j < cols_; ++j) {
      std::uint32_t bit = 1u << j;
      if (!(colmask & bit)) continue;
      const R& e = (*this)(row, j);
      R sub = det_rec(colmask & ~bit, memo);
      R term = e * sub;
      if (sign < 0) term = -term;
      acc = acc + term;
      sign = -sign;
    }
    memo.emplace(colmask, acc);
    return acc;
  }

  std::size_t rows_, cols_;
  std::vector<R> a_;
};

// Coefficients of det(lambda I - A), lowest degree first, leading 1 last.
// Faddeev-LeVerrier: the only divisions are by the integers 1..n, which the
// coefficient rings here support exactly via div_int.
template <class R>
std::vector<R> char_poly(const Mat<R>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("char_poly of a non-square matrix");
  std::size_t n = a.rows();
  std::vector<R> c(n + 1);
  c[n] = R(1);
  Mat<R> m = a;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      Mat<R> shifted = m;
      for (std::size_t i = 0; i < n; ++i) shifted(i, i) = shifted(i, i) + c[n - k + 1];
      m = a * shifted;
    }
    c[n - k] = -div_int(m.trace(), static_cast<long>(k));
  }
  return c;
}

}  // namespace atlas
