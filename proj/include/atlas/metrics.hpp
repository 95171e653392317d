#pragma once

#include <gmpxx.h>

#include "atlas/errors.hpp"
#include "atlas/laurent.hpp"
#include "atlas/localmodels.hpp"
#include "atlas/logpolar.hpp"
#include "atlas/matrix.hpp"

namespace atlas {

// Hermitian metric germ with entries in the log-polar ring. Validity means
// conj-transpose(h) = h exactly and det(h) a single nonzero monomial, so the
// inverse stays inside the ring.
struct HermitianGerm {
  Mat<LogPolarExpr> h;
  int rank = 0;
};

// Exact defects of the decoupled Hitchin equation for a pair (higgs, metric):
// the curvature of the Chern connection and the commutator with the adjoint.
// "flat" and "normal" mean the corresponding defect is the zero element.
struct DecoupledReport {
  Mat<LogPolarExpr> curvature_defect;
  Mat<LogPolarExpr> normality_defect;
  bool flat = false;
  bool normal = false;
};

// Parity of the vanishing order left after removing twice the Higgs divisor;
// it selects which of the two rank-two metric families applies at a zero.
enum class Parity { Odd, Even };

inline Mat<LogPolarExpr> conj_transpose(const Mat<LogPolarExpr>& a) {
  return a.transpose().map([](const LogPolarExpr& e) { return e.conj(); });
}

// Embeds a matrix of exact Laurent germs entrywise; truncated entries are
// refused because every downstream identity is exact.
inline Mat<LogPolarExpr> logpolar_matrix(const Mat<LaurentSeries>& a) {
  return a.map([](const LaurentSeries& s) { return to_logpolar(s); });
}

// Validates a candidate metric matrix and stamps its rank.
HermitianGerm hermitian_germ(const Mat<LogPolarExpr>& h);

// Inverse of a square matrix whose determinant is a single monomial, via the
// adjugate; throws when the determinant is a sum.
Mat<LogPolarExpr> matrix_inverse(const Mat<LogPolarExpr>& a);

// h-adjoint of a Higgs germ: h^{-1} (conj-transpose of phi) h.
Mat<LogPolarExpr> adjoint_higgs(const Mat<LogPolarExpr>& phi, const HermitianGerm& h);
Mat<LogPolarExpr> adjoint_higgs(const Mat<LaurentSeries>& phi, const HermitianGerm& h);

// Commutator of the germ with its h-adjoint; zero exactly when the germ is
// normal for h.
Mat<LogPolarExpr> normality_defect(const Mat<LogPolarExpr>& phi, const HermitianGerm& h);
Mat<LogPolarExpr> normality_defect(const Mat<LaurentSeries>& phi, const HermitianGerm& h);

// Curvature of the Chern connection of h: dzbar(h^{-1} dz(h)) entrywise.
Mat<LogPolarExpr> chern_curvature(const HermitianGerm& h);

DecoupledReport decoupled_report(const Mat<LogPolarExpr>& phi, const HermitianGerm& h);
DecoupledReport decoupled_report(const Mat<LaurentSeries>& phi, const HermitianGerm& h);

// Rank-two decoupled-metric candidate at a zero of order m with Higgs
// divisor l. The diagonal carries g1 |z|^{+-n/2} for n = m - 2l; the
// off-diagonal profile g2 rides the monomial dictated by the parity of n.
// The determinant must reduce to 1 identically, which is exactly the
// candidate constraint for either parity.
HermitianGerm build_hdc_sl2(int m, int l, Parity parity, const LogPolarExpr& g1,
                            const LogPolarExpr& g2);

// Metric induced on the pushforward frame of a line-bundle metric f |w|^{2a}
// under the double cover z = w^2. The conformal factor f must be real, and
// every assembled entry must be invariant under w -> -w to descend. The
// label l fixes the matching Higgs divisor for the caller; the matrix itself
// depends on f and alpha alone.
HermitianGerm hecke_push_metric(const LogPolarExpr& f, const mpq_class& alpha, int l);

// Rank-three decoupled metric diag(|z|^n, 1, |z|^{-n}) with n = m - 2l,
// matching the adjoint of the rank-two family.
HermitianGerm build_hdc_so3(int m, int l);

// The rank-three Higgs germ paired with build_hdc_so3: the image of the
// rank-two normal form under the adjoint representation in a frame where
// the pairing is constant, with i*sqrt2 coefficients.
Mat<LogPolarExpr> build_phi_so3(int m, int l);

// Metric on the pushforward of a rank-two germ along z = w^2: scales h by
// |dz/dw|^{-1}, evaluates on the frames (s_1, s_2, w s_1, w s_2), sums over
// the sheets and descends to z.
HermitianGerm pushforward_metric(const HermitianGerm& h, int k, const PushforwardResult& frames);

}  // namespace atlas
