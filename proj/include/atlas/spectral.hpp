#pragma once

#include <map>
#include <string>
#include <vector>

#include "atlas/errors.hpp"
#include "atlas/laurent.hpp"

namespace atlas {

// How sheet collisions away from the marked zeros are accounted for: either
// the caller asserts they are all simple (plain nodes), or the germ data at
// the marked zeros declares them and they get tested.
enum class Branching { Simple, Declared };

// One zero x of the top coefficient a_{2n}, with its multiplicity and,
// optionally, germs of the characteristic coefficients a_2, ..., a_{2n} in
// a local coordinate centred at x. The germ of a_{2k} is keyed by 2k; a
// missing key means that coefficient vanishes identically near x.
struct MarkedZero {
  std::string label;
  int order = 1;
  std::map<int, LaurentSeries> germs;

  bool has_germs() const { return !germs.empty(); }
};

// A point of the sl(2)-shaped locus of the Hitchin base for the rank-2n
// symplectic group and its odd orthogonal dual: the base curve data (genus
// and twist), the zeros of a_{2n} with multiplicities, and per-zero germ
// data when available. Everything downstream consumes this struct.
struct BasePoint {
  int n = 1;
  int g = 2;
  bool canonical_twist = true;
  int twist_degree = 0;  // only read when canonical_twist is false
  bool irreducible_reduced = true;
  Branching branching = Branching::Simple;
  std::vector<MarkedZero> zeros;
  long truncation = 0;  // 0 means: whatever each germ carries

  int deg_twist() const { return canonical_twist ? 2 * (g - 1) : twist_degree; }
  bool germ_mode() const;
  long n_odd() const;
  long n_even() const;
  long deg_zeros() const;
};

// Structural consistency; throws ValidationError. Germ-order agreement
// needs enough precision and throws PrecisionError when it cannot tell.
void validate(const BasePoint& bp);

enum class FibreKind { Regular, Sl2Singular, NotSl2 };

struct ZeroReport {
  std::string label;
  int order = 1;
  // Multiplicity of eta = 0 as a root of the reduced characteristic germ at
  // the zero. 1 means exactly two sheets of the spectral curve meet over
  // the origin, which is what the sl(2) local shape needs.
  int origin_multiplicity = 1;
  bool two_sheets_at_origin = true;
  bool smooth_at_origin = true;
  bool off_origin_ok = true;  // declared collisions at eta != 0 pass their test
};

struct Classification {
  FibreKind kind = FibreKind::Regular;
  std::vector<ZeroReport> zeros;
};

// Decides among Regular / Sl2Singular / NotSl2 from the germ data. Needs
// germ mode; order-only points carry the sl(2) shape as a caller assertion
// and cannot be classified, so this throws PreconditionError for them.
Classification classify(const BasePoint& bp);

struct DiscriminantGerms {
  // Discriminant of the reduced (degree n, eta-variable) characteristic
  // germ, and the full discriminant a_{2n} times it. Under the chosen
  // normalization the symplectic group and its orthogonal dual share these
  // germs, so they are computed once and reported for both sides.
  LaurentSeries reduced;
  LaurentSeries full;
  long ord_reduced = 0;
  long ord_full = 0;
};

// Germ-mode only. Orders come from exact valuations; a discriminant that is
// zero to its truncation raises PrecisionError rather than guessing.
DiscriminantGerms discriminant_germs(const BasePoint& bp, const MarkedZero& zero);

struct CurveInvariants {
  long genus_quotient = 0;   // genus of the quotient of the spectral curve
  long genus_spectral = 0;   // genus of the full rank-2n spectral curve
  long prym_dim = 0;         // dim of the associated Prym (generic fibre)
  long deg_reduced_branch = 0;  // degree of the reduced branch divisor
  long n_odd = 0, n_even = 0;
};

CurveInvariants curve_invariants(const BasePoint& bp);

}  // namespace atlas
