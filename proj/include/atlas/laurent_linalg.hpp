#pragma once

#include <optional>
#include <vector>

#include "atlas/laurent.hpp"
#include "atlas/matrix.hpp"

namespace atlas {

// Linear algebra over the Laurent series field. Pivots are always chosen
// with minimal valuation: dividing by the lowest-order unit available loses
// the least precision, and a pivot that is zero to its truncation is never
// trusted to be a unit.

namespace detail {

struct PivotPick {
  std::size_t row, col;
  long val;
};

inline std::optional<PivotPick> pick_pivot(const Mat<LaurentSeries>& m,
                                           const std::vector<std::size_t>& rows,
                                           const std::vector<std::size_t>& cols) {
  std::optional<PivotPick> best;
  for (std::size_t r : rows)
    for (std::size_t c : cols) {
      auto v = m(r, c).try_valuation();
      if (!v) continue;
      if (!best || *v < best->val) best = PivotPick{r, c, *v};
    }
  return best;
}

}  // namespace detail

// Kernel of a matrix over the Laurent field, returned as a matrix whose
// columns form a basis. Entries that are zero to their truncation are
// treated as zero; callers control precision through the inputs.
inline Mat<LaurentSeries> kernel_basis(const Mat<LaurentSeries>& m_in) {
  Mat<LaurentSeries> m = m_in;
  std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> col_perm(cols);
  for (std::size_t j = 0; j < cols; ++j) col_perm[j] = j;

  std::size_t rank = 0;
  for (; rank < std::min(rows, cols); ++rank) {
    std::vector<std::size_t> rrows, rcols;
    for (std::size_t r = rank; r < rows; ++r) rrows.push_back(r);
    for (std::size_t c = rank; c < cols; ++c) rcols.push_back(c);
    auto pivot = detail::pick_pivot(m, rrows, rcols);
    if (!pivot) break;
    // Move the pivot to (rank, rank).
    if (pivot->row != rank)
      for (std::size_t c = 0; c < cols; ++c) std::swap(m(pivot->row, c), m(rank, c));
    if (pivot->col != rank) {
      for (std::size_t r = 0; r < rows; ++r) std::swap(m(r, pivot->col), m(r, rank));
      std::swap(col_perm[pivot->col], col_perm[rank]);
    }
    // Clear the pivot column below and above.
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || !m(r, rank).known_nonzero()) continue;
      LaurentSeries f = m(r, rank) / m(rank, rank);
      for (std::size_t c = rank; c < cols; ++c) m(r, c) = m(r, c) - f * m(rank, c);
    }
  }

  std::size_t dim = cols - rank;
  Mat<LaurentSeries> basis(cols, dim);
  for (std::size_t f = 0; f < dim; ++f) {
    std::size_t fc = rank + f;
    basis(col_perm[fc], f) = LaurentSeries(1);
    for (std::size_t i = 0; i < rank; ++i) {
      LaurentSeries x = -(m(i, fc) / m(i, i));
      basis(col_perm[i], f) = x;
    }
  }
  return basis;
}

// Kernel of a constant matrix over Q(i); helper for saturation.
inline std::vector<std::vector<GaussRational>> constant_kernel(Mat<GaussRational> m) {
  std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> col_perm(cols);
  for (std::size_t j = 0; j < cols; ++j) col_perm[j] = j;
  std::size_t rank = 0;
  for (; rank < std::min(rows, cols); ++rank) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t r = rank; r < rows && pr == rows; ++r)
      for (std::size_t c = rank; c < cols; ++c)
        if (!m(r, c).is_zero()) {
          pr = r;
          pc = c;
          break;
        }
    if (pr == rows) break;
    if (pr != rank)
      for (std::size_t c = 0; c < cols; ++c) std::swap(m(pr, c), m(rank, c));
    if (pc != rank) {
      for (std::size_t r = 0; r < rows; ++r) std::swap(m(r, pc), m(r, rank));
      std::swap(col_perm[pc], col_perm[rank]);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m(r, rank).is_zero()) continue;
      GaussRational f = m(r, rank) / m(rank, rank);
      for (std::size_t c = rank; c < cols; ++c) m(r, c) = m(r, c) - f * m(rank, c);
    }
  }
  std::vector<std::vector<GaussRational>> out;
  for (std::size_t fc = rank; fc < cols; ++fc) {
    std::vector<GaussRational> v(cols);
    v[col_perm[fc]] = GaussRational(1);
    for (std::size_t i = 0; i < rank; ++i) v[col_perm[i]] = -(m(i, fc) / m(i, i));
    out.push_back(std::move(v));
  }
  return out;
}

// Scales every column to valuation zero and clears linear dependence of the
// reductions mod z, so the columns span a saturated lattice: any vector in
// their field span with holomorphic coordinates in an ambient basis lies in
// their O-span. Each clearing step strictly raises a column valuation, so
// the loop terminates for columns that are independent over the field.
inline Mat<LaurentSeries> saturate_columns(Mat<LaurentSeries> v) {
  std::size_t rows = v.rows(), cols = v.cols();
  for (int guard = 0; guard < 4096; ++guard) {
    for (std::size_t j = 0; j < cols; ++j) {
      long minval = LaurentSeries::kExact;
      for (std::size_t i = 0; i < rows; ++i) {
        auto w = v(i, j).try_valuation();
        if (w && *w < minval) minval = *w;
      }
      if (minval == LaurentSeries::kExact)
        throw PrecisionError("insufficient germ precision");
      if (minval != 0)
        for (std::size_t i = 0; i < rows; ++i) v(i, j) = v(i, j).shifted(-minval);
    }
    Mat<GaussRational> v0(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) v0(i, j) = v(i, j).coeff(0);
    auto ker = constant_kernel(v0);
    if (ker.empty()) return v;
    // Fold the dependence into the last column it involves; the combined
    // column gains positive valuation and the next pass rescales it.
    const auto& x = ker.front();
    std::size_t target = cols;
    for (std::size_t j = cols; j-- > 0;)
      if (!x[j].is_zero()) {
        target = j;
        break;
      }
    for (std::size_t i = 0; i < rows; ++i) {
      LaurentSeries acc = LaurentSeries();
      for (std::size_t j = 0; j < cols; ++j) {
        if (x[j].is_zero()) continue;
        acc += v(i, j).scaled(x[j] / x[target]);
      }
      v(i, target) = acc;
    }
  }
  throw PrecisionError("insufficient germ precision");
}

// Solves m x = rhs for a matrix of full column rank over the field. Throws
// if the system is visibly inconsistent.
inline Mat<LaurentSeries> solve_full_column_rank(Mat<LaurentSeries> m, Mat<LaurentSeries> rhs) {
  std::size_t rows = m.rows(), cols = m.cols(), s = rhs.cols();
  if (rhs.rows() != rows) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t t = 0; t < cols; ++t) {
    // Row pivoting only, restricted to column t, lowest valuation first.
    std::optional<detail::PivotPick> pivot;
    for (std::size_t r = t; r < rows; ++r) {
      auto w = m(r, t).try_valuation();
      if (w && (!pivot || *w < pivot->val)) pivot = detail::PivotPick{r, t, *w};
    }
    if (!pivot) throw std::domain_error("linear system does not have full column rank");
    if (pivot->row != t) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(m(pivot->row, c), m(t, c));
      for (std::size_t c = 0; c < s; ++c) std::swap(rhs(pivot->row, c), rhs(t, c));
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == t || !m(r, t).known_nonzero()) continue;
      LaurentSeries f = m(r, t) / m(t, t);
      for (std::size_t c = t; c < cols; ++c) m(r, c) = m(r, c) - f * m(t, c);
      for (std::size_t c = 0; c < s; ++c) rhs(r, c) = rhs(r, c) - f * rhs(t, c);
    }
  }
  for (std::size_t r = cols; r < rows; ++r)
    for (std::size_t c = 0; c < s; ++c)
      if (rhs(r, c).known_nonzero()) throw std::domain_error("inconsistent linear system");
  Mat<LaurentSeries> x(cols, s);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t c = 0; c < s; ++c) x(i, c) = rhs(i, c) / m(i, i);
  return x;
}

}  // namespace atlas
