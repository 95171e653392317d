#pragma once

#include <string>
#include <vector>

#include "atlas/spectral.hpp"

namespace atlas {

enum class Side { Sp, So };

inline const char* side_name(Side s) { return s == Side::Sp ? "sp" : "so"; }

// A Higgs divisor: one multiplicity per marked zero, bounded by half the
// zero order. Entries follow the label-sorted zero order of the table that
// owns them.
struct HiggsDivisor {
  std::vector<int> mult;

  long degree() const {
    long s = 0;
    for (int m : mult) s += m;
    return s;
  }
};

struct TorsorInfo {
  Side side = Side::Sp;
  std::string base;        // "Prym" or "PrymDual"
  int components = 1;      // connected components of the stratum fibre
  int covering_degree = 1; // degree of the covering carrying the torsor
  std::string twist_line;  // the torsor's defining line bundle(s)
  long dim = 0;
};

struct StratumRow {
  HiggsDivisor divisor;
  long deg = 0;
  long r = 0;  // local contributions that stay semisimple along the zero
  long s = 0;  // remaining abelian directions transverse to the fibre
  long dim = 0;
  TorsorInfo torsor;
};

struct StrataTable {
  Side side = Side::Sp;
  std::vector<std::string> zero_labels;  // label-sorted; divisor entries align
  std::vector<int> zero_orders;
  std::vector<StratumRow> rows;          // lexicographic in the divisor tuple
  long prym_dim = 0;
  bool global_fibration = false;  // all zero orders odd
};

// Semi-abelian stratification of the fibre over a base point for one side
// of the dual pair. Needs the canonical twist; in germ mode the point must
// classify as sl(2) type.
StrataTable strata_table(const BasePoint& bp, Side side);

struct ComponentCounts {
  int connected = 1;
  int irreducible = 1;
};

ComponentCounts component_counts(const BasePoint& bp, Side side);

struct DualityRow {
  HiggsDivisor divisor;
  long deg = 0;
  long r_sp = 0, s_sp = 0, dim_sp = 0;
  long r_so = 0, s_so = 0, dim_so = 0;
  bool hecke_isomorphic = false;  // the (r, s) pairs agree
  bool abelian_dual = false;      // dims agree and the torsor bases pair up
};

// Divisor-by-divisor comparison of the two sides, computed through both
// stratification paths independently.
std::vector<DualityRow> duality_table(const BasePoint& bp);

struct DegenerationModel {
  std::vector<std::string> factor_per_zero;  // "point", "P1" or "P(1,1,2)"
  std::string product;
};

// Fibre model of the first degeneration: one rational factor per zero,
// depending only on the zero order. Tabulated for orders up to 5 and needs
// at least one odd-order zero.
DegenerationModel first_degeneration(const BasePoint& bp);

}  // namespace atlas
