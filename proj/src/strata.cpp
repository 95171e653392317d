#include "atlas/strata.hpp"

#include <algorithm>
#include <cassert>

namespace atlas {

namespace {

struct SortedZeros {
  std::vector<std::string> labels;
  std::vector<int> orders;
};

SortedZeros sorted_zeros(const BasePoint& bp) {
  std::vector<std::pair<std::string, int>> zs;
  zs.reserve(bp.zeros.size());
  for (const auto& z : bp.zeros) zs.emplace_back(z.label, z.order);
  std::sort(zs.begin(), zs.end());
  SortedZeros out;
  for (auto& [l, m] : zs) {
    out.labels.push_back(std::move(l));
    out.orders.push_back(m);
  }
  return out;
}

void require_stratifiable(const BasePoint& bp) {
  validate(bp);
  if (!bp.canonical_twist) throw PreconditionError("stratification requires M = K");
  if (bp.germ_mode() && classify(bp).kind == FibreKind::NotSl2)
    throw PreconditionError("base point is not of sl(2) type");
}

// All divisor tuples with 0 <= d_i <= orders[i] / 2, in lexicographic order
// (leftmost entry most significant).
std::vector<HiggsDivisor> enumerate_divisors(const std::vector<int>& orders) {
  std::vector<int> cap(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) cap[i] = orders[i] / 2;
  std::vector<HiggsDivisor> out;
  std::vector<int> d(orders.size(), 0);
  for (;;) {
    out.push_back(HiggsDivisor{d});
    std::size_t i = d.size();
    while (i > 0) {
      --i;
      if (d[i] < cap[i]) {
        ++d[i];
        std::fill(d.begin() + static_cast<long>(i) + 1, d.end(), 0);
        break;
      }
      if (i == 0) return out;
    }
    if (d.size() == 0) return out;
  }
}

std::string twist_line_label(Side side, bool all_even) {
  std::string base = "pi^*(K^-1(D))";
  if (side == Side::Sp) return all_even ? "I*" + base : base;
  std::string a = all_even ? "I*" + base : base;
  std::string b = all_even ? "I*N*" + base : "N*" + base;
  return a + " and " + b;
}

StratumRow make_row(const BasePoint& bp, const SortedZeros& sz, const CurveInvariants& ci,
                    HiggsDivisor divisor, Side side) {
  StratumRow row;
  row.deg = divisor.degree();
  row.divisor = std::move(divisor);

  long n = bp.n, g = bp.g;
  long n_diag = 0;
  for (std::size_t i = 0; i < sz.orders.size(); ++i)
    if (sz.orders[i] % 2 == 0 && row.divisor.mult[i] == sz.orders[i] / 2) ++n_diag;

  row.r = ci.n_even - n_diag;
  long rs = 2 * n * (g - 1) - row.deg - ci.n_odd / 2;
  row.s = rs - row.r;
  assert(row.s >= 0);
  row.dim = (2 * n * n + n) * (g - 1) - row.deg;
  assert(row.dim == ci.prym_dim + row.r + row.s);

  bool all_even = ci.n_odd == 0;
  row.torsor.side = side;
  row.torsor.base = side == Side::Sp ? "Prym" : "PrymDual";
  row.torsor.components = side == Side::Sp ? 1 : 2;
  row.torsor.covering_degree = (side == Side::Sp && all_even) ? 2 : 1;
  row.torsor.twist_line = twist_line_label(side, all_even);
  row.torsor.dim = ci.prym_dim;
  return row;
}

}  // namespace

StrataTable strata_table(const BasePoint& bp, Side side) {
  require_stratifiable(bp);
  SortedZeros sz = sorted_zeros(bp);
  CurveInvariants ci = curve_invariants(bp);

  StrataTable t;
  t.side = side;
  t.zero_labels = sz.labels;
  t.zero_orders = sz.orders;
  t.prym_dim = ci.prym_dim;
  t.global_fibration = ci.n_even == 0;
  for (auto& D : enumerate_divisors(sz.orders))
    t.rows.push_back(make_row(bp, sz, ci, std::move(D), side));
  return t;
}

ComponentCounts component_counts(const BasePoint& bp, Side side) {
  require_stratifiable(bp);
  bool any_odd = bp.n_odd() > 0;
  ComponentCounts c;
  if (side == Side::Sp) {
    c.connected = 1;
    c.irreducible = any_odd ? 1 : 4;
  } else {
    c.connected = 2;
    c.irreducible = any_odd ? 2 : 4;
  }
  return c;
}

std::vector<DualityRow> duality_table(const BasePoint& bp) {
  StrataTable sp = strata_table(bp, Side::Sp);
  StrataTable so = strata_table(bp, Side::So);
  assert(sp.rows.size() == so.rows.size());

  std::vector<DualityRow> out;
  out.reserve(sp.rows.size());
  for (std::size_t i = 0; i < sp.rows.size(); ++i) {
    const StratumRow &a = sp.rows[i], &b = so.rows[i];
    DualityRow d;
    d.divisor = a.divisor;
    d.deg = a.deg;
    d.r_sp = a.r;
    d.s_sp = a.s;
    d.dim_sp = a.dim;
    d.r_so = b.r;
    d.s_so = b.s;
    d.dim_so = b.dim;
    d.hecke_isomorphic = a.r == b.r && a.s == b.s;
    d.abelian_dual = a.dim == b.dim && a.torsor.base == "Prym" && b.torsor.base == "PrymDual";
    out.push_back(std::move(d));
  }
  return out;
}

DegenerationModel first_degeneration(const BasePoint& bp) {
  require_stratifiable(bp);
  if (bp.n_odd() == 0)
    throw PreconditionError("the first degeneration model needs an odd-order zero");

  SortedZeros sz = sorted_zeros(bp);
  DegenerationModel out;
  const char* names[3] = {"point", "P1", "P(1,1,2)"};
  int counts[3] = {0, 0, 0};
  for (int m : sz.orders) {
    int f;
    if (m == 1)
      f = 0;
    else if (m <= 3)
      f = 1;
    else if (m <= 5)
      f = 2;
    else
      throw PreconditionError("no tabulated fibre model for zero orders above 5");
    out.factor_per_zero.push_back(names[f]);
    ++counts[f];
  }
  std::string p;
  for (int f = 1; f <= 2; ++f) {
    if (counts[f] == 0) continue;
    if (!p.empty()) p += " x ";
    p += names[f];
    if (counts[f] > 1) p += "^" + std::to_string(counts[f]);
  }
  out.product = p.empty() ? "point" : p;
  return out;
}

}  // namespace atlas
