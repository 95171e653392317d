#include "atlas/spectral.hpp"

#include <set>

#include "atlas/poly.hpp"

namespace atlas {

namespace {

// Germ of a_{2k} at a zero; coefficients that are not listed vanish
// identically near the zero, so they embed as the exact zero series.
const LaurentSeries& germ_or_zero(const MarkedZero& z, int two_k) {
  static const LaurentSeries zero;
  auto it = z.germs.find(two_k);
  return it == z.germs.end() ? zero : it->second;
}

// Coefficients (lowest eta-degree first) of the reduced characteristic germ
//   q(z, eta) = eta^n + a_2 eta^{n-1} + ... + a_{2n}
// evaluated at z = 0, as a polynomial in eta over Q(i).
Poly<GaussRational> origin_poly(const BasePoint& bp, const MarkedZero& z) {
  std::vector<GaussRational> c(static_cast<std::size_t>(bp.n) + 1);
  c[static_cast<std::size_t>(bp.n)] = GaussRational(1);
  for (int k = 1; k <= bp.n; ++k) {
    const LaurentSeries& a = germ_or_zero(z, 2 * k);
    c[static_cast<std::size_t>(bp.n - k)] = a.is_exact_zero() ? GaussRational(0) : a.coeff(0);
  }
  return Poly<GaussRational>(std::move(c));
}

// The z-derivative of the same germ at z = 0, again as a polynomial in eta.
Poly<GaussRational> origin_poly_dz(const BasePoint& bp, const MarkedZero& z) {
  std::vector<GaussRational> c(static_cast<std::size_t>(bp.n) + 1);
  for (int k = 1; k <= bp.n; ++k) {
    const LaurentSeries& a = germ_or_zero(z, 2 * k);
    c[static_cast<std::size_t>(bp.n - k)] = a.is_exact_zero() ? GaussRational(0) : a.coeff(1);
  }
  return Poly<GaussRational>(std::move(c));
}

}  // namespace

bool BasePoint::germ_mode() const {
  if (zeros.empty()) return false;
  for (const auto& z : zeros)
    if (!z.has_germs()) return false;
  return true;
}

long BasePoint::n_odd() const {
  long c = 0;
  for (const auto& z : zeros)
    if (z.order % 2 == 1) ++c;
  return c;
}

long BasePoint::n_even() const { return static_cast<long>(zeros.size()) - n_odd(); }

long BasePoint::deg_zeros() const {
  long s = 0;
  for (const auto& z : zeros) s += z.order;
  return s;
}

void validate(const BasePoint& bp) {
  if (bp.n < 1 || bp.n > 6) throw ValidationError("rank parameter n must be between 1 and 6");
  if (bp.g < 0) throw ValidationError("genus must be nonnegative");
  if (bp.canonical_twist && bp.g < 2)
    throw ValidationError("the canonical twist needs genus at least 2");
  if (bp.deg_twist() < 1) throw ValidationError("twist degree must be positive");
  if (bp.zeros.empty()) throw ValidationError("at least one marked zero is required");

  std::set<std::string> labels;
  bool any_germs = false, all_germs = true;
  for (const auto& z : bp.zeros) {
    if (z.label.empty()) throw ValidationError("zero labels must be nonempty");
    if (!labels.insert(z.label).second)
      throw ValidationError("duplicate zero label: " + z.label);
    if (z.order < 1) throw ValidationError("zero orders must be positive");
    any_germs = any_germs || z.has_germs();
    all_germs = all_germs && z.has_germs();
  }
  if (any_germs && !all_germs)
    throw ValidationError("either every zero carries germs or none does");

  long total = bp.deg_zeros();
  long expected = 2L * bp.n * bp.deg_twist();
  if (total != expected)
    throw ValidationError("zero orders sum to " + std::to_string(total) +
                          " but the top coefficient has degree " + std::to_string(expected));

  if (any_germs) {
    for (const auto& z : bp.zeros) {
      for (const auto& [key, s] : z.germs) {
        if (key < 2 || key > 2 * bp.n || key % 2 != 0)
          throw ValidationError("unknown coefficient germ a" + std::to_string(key) + " at " +
                                z.label);
        if (!s.is_exact() && s.truncation() < z.order + 2)
          throw ValidationError("germ truncation at " + z.label +
                                " must reach order + 2 = " + std::to_string(z.order + 2));
      }
      auto it = z.germs.find(2 * bp.n);
      if (it == z.germs.end())
        throw ValidationError("zero " + z.label + " is missing the germ of the top coefficient");
      // The declared multiplicity must be the valuation of the top germ.
      long ord = it->second.order();  // PrecisionError if zero to truncation
      if (ord != z.order)
        throw ValidationError("germ of the top coefficient at " + z.label + " has order " +
                              std::to_string(ord) + ", declared " + std::to_string(z.order));
    }
  }
}

Classification classify(const BasePoint& bp) {
  validate(bp);
  if (!bp.germ_mode())
    throw PreconditionError("classification requires coefficient germs at every zero");

  Classification out;
  bool any_failure = false, any_singular = false;
  for (const auto& z : bp.zeros) {
    ZeroReport r;
    r.label = z.label;
    r.order = z.order;

    Poly<GaussRational> q0 = origin_poly(bp, z);
    std::size_t d = q0.order_at_zero();
    r.origin_multiplicity = static_cast<int>(d);
    r.two_sheets_at_origin = d == 1;
    r.smooth_at_origin = d == 1 && z.order == 1;

    r.off_origin_ok = true;
    if (bp.branching == Branching::Declared) {
      // Collisions away from eta = 0 sit at the repeated roots of
      // u = q0 / eta^d. Each must be a plain double root whose collision
      // unfolds to first order in z.
      std::vector<GaussRational> uc(q0.coeffs().begin() + static_cast<long>(d),
                                    q0.coeffs().end());
      Poly<GaussRational> u{std::move(uc)};
      Poly<GaussRational> rep = gcd_monic(u, u.derivative());
      if (rep.degree() > 0) {
        bool doubled_only = gcd_monic(rep, rep.derivative()).degree() == 0;
        bool transversal = gcd_monic(rep, origin_poly_dz(bp, z)).degree() == 0;
        r.off_origin_ok = doubled_only && transversal;
      }
    }

    any_failure = any_failure || !r.two_sheets_at_origin || !r.off_origin_ok;
    any_singular = any_singular || z.order >= 2;
    out.zeros.push_back(std::move(r));
  }
  out.kind = any_failure ? FibreKind::NotSl2
                         : (any_singular ? FibreKind::Sl2Singular : FibreKind::Regular);
  return out;
}

DiscriminantGerms discriminant_germs(const BasePoint& bp, const MarkedZero& zero) {
  validate(bp);
  if (!zero.has_germs())
    throw PreconditionError("discriminant germs require coefficient germs");

  DiscriminantGerms out;
  const LaurentSeries& top = zero.germs.at(2 * bp.n);
  if (bp.n == 1) {
    out.reduced = LaurentSeries(1);
  } else {
    std::vector<LaurentSeries> p(static_cast<std::size_t>(bp.n) + 1);
    p[static_cast<std::size_t>(bp.n)] = LaurentSeries(1);
    for (int k = 1; k <= bp.n; ++k)
      p[static_cast<std::size_t>(bp.n - k)] = germ_or_zero(zero, 2 * k);
    out.reduced = discriminant(p);
  }
  out.full = top * out.reduced;
  try {
    out.ord_reduced = bp.n == 1 ? 0 : out.reduced.order();
    out.ord_full = out.full.order();
  } catch (const std::domain_error&) {
    throw PreconditionError("discriminant vanishes identically at " + zero.label);
  }
  return out;
}

CurveInvariants curve_invariants(const BasePoint& bp) {
  validate(bp);
  CurveInvariants ci;
  long n = bp.n, g = bp.g, dM = bp.deg_twist();
  ci.n_odd = bp.n_odd();
  ci.n_even = bp.n_even();
  ci.genus_quotient = n * (g - 1) + (n * n - n) * dM + 1;
  ci.genus_spectral = 2 * n * (g - 1) + 2 * (n * n - n) * dM + ci.n_odd / 2 + 1;
  ci.prym_dim = ci.genus_spectral - ci.genus_quotient;
  ci.deg_reduced_branch = n * (2 * n - 2) * dM;
  return ci;
}

}  // namespace atlas
