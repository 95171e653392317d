#include "atlas/metrics.hpp"

#include <cstddef>
#include <vector>

namespace atlas {

namespace {

// Deck action w -> -w on the cover ring: a term w^p wbar^q picks up
// (-1)^(p-q), and p - q is an integer for every ring element.
LogPolarExpr sigma_star(const LogPolarExpr& e) {
  LogPolarExpr out;
  for (const auto& [key, c] : e.terms()) {
    mpq_class d = key.first - key.second;
    bool odd = (d.get_num() % 2) != 0;
    out += LogPolarExpr::term(odd ? -c : c, key.first, key.second);
  }
  return out;
}

// A cover expression descends along z = w^2 exactly when every term is deck
// invariant.
bool descends_to_base(const LogPolarExpr& e) {
  for (const auto& [key, c] : e.terms()) {
    mpq_class d = key.first - key.second;
    if ((d.get_num() % 2) != 0) return false;
  }
  return true;
}

bool is_real(const LogPolarExpr& e) { return e.conj() == e; }

Mat<LogPolarExpr> erased(const Mat<LogPolarExpr>& a, std::size_t i, std::size_t j) {
  std::vector<std::size_t> rs, cs;
  for (std::size_t r = 0; r < a.rows(); ++r)
    if (r != i) rs.push_back(r);
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (c != j) cs.push_back(c);
  return a.submatrix(rs, cs);
}

void require_labels(int m, int l) {
  if (m < 1 || l < 0 || 2 * l > m)
    throw PreconditionError("normal form labels need 0 <= 2l <= m");
}

}  // namespace

HermitianGerm hermitian_germ(const Mat<LogPolarExpr>& h) {
  if (h.rows() == 0 || h.rows() != h.cols()) throw ValidationError("metric matrix must be square");
  if (!(conj_transpose(h) == h)) throw ValidationError("metric is not hermitian");
  if (!h.det().is_single_term())
    throw ValidationError("metric is not invertible in the exact ring");
  return HermitianGerm{h, static_cast<int>(h.rows())};
}

Mat<LogPolarExpr> matrix_inverse(const Mat<LogPolarExpr>& a) {
  if (a.rows() == 0 || a.rows() != a.cols())
    throw std::invalid_argument("inverse of a non-square matrix");
  LogPolarExpr dinv = a.det().inverse();
  std::size_t n = a.rows();
  Mat<LogPolarExpr> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      LogPolarExpr cof = erased(a, i, j).det();
      if ((i + j) % 2 != 0) cof = -cof;
      out(j, i) = cof * dinv;
    }
  return out;
}

Mat<LogPolarExpr> adjoint_higgs(const Mat<LogPolarExpr>& phi, const HermitianGerm& h) {
  if (phi.rows() != phi.cols() || phi.rows() != static_cast<std::size_t>(h.rank))
    throw PreconditionError("germ and metric ranks must match");
  return matrix_inverse(h.h) * conj_transpose(phi) * h.h;
}

Mat<LogPolarExpr> adjoint_higgs(const Mat<LaurentSeries>& phi, const HermitianGerm& h) {
  return adjoint_higgs(logpolar_matrix(phi), h);
}

Mat<LogPolarExpr> normality_defect(const Mat<LogPolarExpr>& phi, const HermitianGerm& h) {
  Mat<LogPolarExpr> adj = adjoint_higgs(phi, h);
  return phi * adj - adj * phi;
}

Mat<LogPolarExpr> normality_defect(const Mat<LaurentSeries>& phi, const HermitianGerm& h) {
  return normality_defect(logpolar_matrix(phi), h);
}

Mat<LogPolarExpr> chern_curvature(const HermitianGerm& h) {
  Mat<LogPolarExpr> dh = h.h.map([](const LogPolarExpr& e) { return e.dz(); });
  Mat<LogPolarExpr> conn = matrix_inverse(h.h) * dh;
  return conn.map([](const LogPolarExpr& e) { return e.dzbar(); });
}

DecoupledReport decoupled_report(const Mat<LogPolarExpr>& phi, const HermitianGerm& h) {
  DecoupledReport rep;
  rep.curvature_defect = chern_curvature(h);
  rep.normality_defect = normality_defect(phi, h);
  auto vanish = [](const LogPolarExpr& e) { return e.is_zero(); };
  rep.flat = rep.curvature_defect.all(vanish);
  rep.normal = rep.normality_defect.all(vanish);
  return rep;
}

DecoupledReport decoupled_report(const Mat<LaurentSeries>& phi, const HermitianGerm& h) {
  return decoupled_report(logpolar_matrix(phi), h);
}

HermitianGerm build_hdc_sl2(int m, int l, Parity parity, const LogPolarExpr& g1,
                            const LogPolarExpr& g2) {
  require_labels(m, l);
  int n = m - 2 * l;
  bool even = (n % 2 == 0);
  if (even != (parity == Parity::Even))
    throw PreconditionError("not a valid decoupled metric candidate");
  // The diagonal must be real for the matrix to be hermitian, and in the
  // even family the off-diagonal profile is real as well.
  if (!is_real(g1) || (even && !is_real(g2)))
    throw PreconditionError("not a valid decoupled metric candidate");
  mpq_class half = mpq_class(n) / 2;
  mpq_class quarter = half / 2;
  mpq_class zexp = even ? mpq_class(-n) / 2 : mpq_class(1 - n) / 2;
  Mat<LogPolarExpr> hm(2, 2);
  hm(0, 0) = g1 * LogPolarExpr::abs_pow(half);
  hm(1, 1) = g1 * LogPolarExpr::abs_pow(-half);
  hm(0, 1) = g2 * LogPolarExpr::term(Root2Q(1), zexp + quarter, quarter);
  hm(1, 0) = hm(0, 1).conj();
  // The unit-determinant identity is the defining constraint of the family
  // for either parity.
  LogPolarExpr det = hm(0, 0) * hm(1, 1) - hm(0, 1) * hm(1, 0);
  if (!(det == LogPolarExpr(1)))
    throw PreconditionError("not a valid decoupled metric candidate");
  return hermitian_germ(hm);
}

HermitianGerm hecke_push_metric(const LogPolarExpr& f, const mpq_class& alpha, int l) {
  mpq_class a = alpha;
  a.canonicalize();
  mpq_class two_a = a * 2;
  if (two_a.get_den() != 1) throw PreconditionError("hecke push weight must be a half-integer");
  if (l < 0) throw PreconditionError("hecke push needs a nonnegative divisor label");
  if (!is_real(f)) throw PreconditionError("hecke push needs a real conformal factor");
  LogPolarExpr even_part = f + sigma_star(f);
  LogPolarExpr odd_part = f - sigma_star(f);
  Mat<LogPolarExpr> up(2, 2);
  up(0, 0) = even_part * LogPolarExpr::abs_pow(two_a);
  up(1, 1) = even_part * LogPolarExpr::abs_pow(-two_a);
  // (|w|/w)^{2 alpha} splits into the key (alpha - 2 alpha, alpha).
  up(0, 1) = odd_part * LogPolarExpr::term(Root2Q(1), a - two_a, a);
  up(1, 0) = up(0, 1).conj();
  Mat<LogPolarExpr> down(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      if (!descends_to_base(up(i, j)))
        throw PreconditionError("metric entry is not σ-equivariant");
      down(i, j) = up(i, j).descend(2);
    }
  return hermitian_germ(down);
}

HermitianGerm build_hdc_so3(int m, int l) {
  if (m < 1 || l < 0 || 2 * l > m)
    throw PreconditionError("label l out of range for the zero order");
  long n = m - 2L * l;
  Mat<LogPolarExpr> hm(3, 3);
  hm(0, 0) = LogPolarExpr::abs_pow(mpq_class(n));
  hm(1, 1) = LogPolarExpr(1);
  hm(2, 2) = LogPolarExpr::abs_pow(mpq_class(-n));
  return hermitian_germ(hm);
}

Mat<LogPolarExpr> build_phi_so3(int m, int l) {
  if (m < 1 || l < 0 || 2 * l > m)
    throw PreconditionError("label l out of range for the zero order");
  Root2Q c(GaussRational(0), GaussRational::i());
  Mat<LogPolarExpr> p(3, 3);
  p(0, 1) = LogPolarExpr::term(c, l, 0);
  p(1, 0) = LogPolarExpr::term(-c, m - l, 0);
  p(1, 2) = LogPolarExpr::term(-c, l, 0);
  p(2, 1) = LogPolarExpr::term(c, m - l, 0);
  return p;
}

HermitianGerm pushforward_metric(const HermitianGerm& h, int k, const PushforwardResult& frames) {
  if (k != 2 || frames.cover_degree != 2 || h.rank != 2 || frames.frame_twist_exponent != 0 ||
      frames.transition_exponents.size() != 4)
    throw PreconditionError("pushforward metric needs the rank-two frames of a double cover");
  // |dz/dw|^{-1} = |2w|^{-1}, carried as the coefficient 1/2 on |w|^{-1}.
  LogPolarExpr jac =
      LogPolarExpr::term(Root2Q(GaussRational(mpq_class(1) / 2)), mpq_class(-1) / 2,
                         mpq_class(-1) / 2);
  Mat<LogPolarExpr> hp = h.h.scaled(jac);
  const auto& tr = frames.transition_exponents;
  Mat<LogPolarExpr> out(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      // Pair the frame vectors w^j s_b against w^{j'} s_a; summing over the
      // sheets keeps the deck-invariant part only, which then descends.
      LogPolarExpr cell =
          hp(r % 2, c % 2) * LogPolarExpr::term(Root2Q(1), mpq_class(tr[c]), mpq_class(tr[r]));
      out(r, c) = cell.sheet_trace(2).descend(2);
    }
  return hermitian_germ(out);
}

}  // namespace atlas
