#include "atlas/localmodels.hpp"

#include <numeric>
#include <string>

namespace atlas {

namespace {

LaurentSeries monomial(long e) { return LaurentSeries(1).shifted(e); }

Mat<LaurentSeries> standard_symplectic(std::size_t pairs) {
  Mat<LaurentSeries> J(2 * pairs, 2 * pairs);
  for (std::size_t p = 0; p < pairs; ++p) {
    J(2 * p, 2 * p + 1) = LaurentSeries(1);
    J(2 * p + 1, 2 * p) = LaurentSeries(-1);
  }
  return J;
}

bool known_zero(const Mat<LaurentSeries>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).known_nonzero()) return false;
  return true;
}

void require_labels(int m, int l) {
  if (m < 1 || l < 0 || 2 * l > m)
    throw PreconditionError("normal form labels need 0 <= 2l <= m");
}

// A pure w-power times a constant; exactness keeps downstream canonical
// forms exact.
bool is_standard_pair(const Mat<LaurentSeries>& g) {
  return g.rows() == 2 && g.cols() == 2 && g(0, 1) == LaurentSeries(1) &&
         g(1, 0) == LaurentSeries(-1) && g(0, 0).is_exact_zero() && g(1, 1).is_exact_zero();
}

std::vector<LaurentSeries> poly_mul(const std::vector<LaurentSeries>& a,
                                    const std::vector<LaurentSeries>& b) {
  std::vector<LaurentSeries> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Re-expresses a series known to live in w^{kZ} in the base coordinate
// z = w^k.
LaurentSeries descend_exponents(const LaurentSeries& c, long k) {
  for (long r = 1; r < k; ++r)
    if (c.section(r, k).known_nonzero())
      throw std::logic_error("sheet product has a fractional phase");
  return c.section(0, k);
}

}  // namespace

void check_pairing(const LocalHiggsGerm& e) {
  std::size_t n = e.higgs.rows();
  if (n == 0 || e.higgs.cols() != n || e.form.rows() != n || e.form.cols() != n)
    throw ValidationError("germ matrices must be square and of equal size");
  bool sym = e.kind == FormKind::Symmetric;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      LaurentSeries d =
          sym ? e.form(i, j) - e.form(j, i) : e.form(i, j) + e.form(j, i);
      if (d.known_nonzero())
        throw ValidationError(sym ? "pairing is not symmetric" : "pairing is not antisymmetric");
    }
  Mat<LaurentSeries> skew = e.higgs.transpose() * e.form + e.form * e.higgs;
  if (!known_zero(skew))
    throw ValidationError("Higgs germ is not skew-adjoint for its pairing");
}

LocalHiggsGerm sl2_normal_form(int m, int l) {
  require_labels(m, l);
  LocalHiggsGerm e;
  e.higgs = Mat<LaurentSeries>(2, 2);
  e.higgs(0, 1) = monomial(l);
  e.higgs(1, 0) = monomial(m - l);
  e.form = standard_symplectic(1);
  e.kind = FormKind::Symplectic;
  return e;
}

LocalHiggsGerm sp_normal_form(int n, int m, int l, const std::vector<LaurentSeries>& eigen) {
  require_labels(m, l);
  if (n < 1) throw PreconditionError("rank parameter must be positive");
  if (eigen.size() != static_cast<std::size_t>(n) - 1)
    throw PreconditionError("expected n - 1 eigenvalue branches");
  for (const auto& u : eigen)
    if (!u.known_nonzero() || u.order() != 0)
      throw PreconditionError("eigenvalue branches must be units");
  for (std::size_t i = 0; i < eigen.size(); ++i)
    for (std::size_t j = i + 1; j < eigen.size(); ++j) {
      GaussRational a = eigen[i].leading_coeff(), b = eigen[j].leading_coeff();
      if (a == b || (a + b).is_zero())
        throw PreconditionError("eigenvalue branches must be distinct at the origin");
    }

  std::size_t N = 2 * static_cast<std::size_t>(n);
  LocalHiggsGerm e;
  e.higgs = Mat<LaurentSeries>(N, N);
  e.higgs(0, 1) = monomial(l);
  e.higgs(1, 0) = monomial(m - l);
  for (std::size_t i = 1; i < static_cast<std::size_t>(n); ++i) {
    e.higgs(2 * i, 2 * i) = eigen[i - 1];
    e.higgs(2 * i + 1, 2 * i + 1) = -eigen[i - 1];
  }
  e.form = standard_symplectic(static_cast<std::size_t>(n));
  e.kind = FormKind::Symplectic;
  return e;
}

LocalHiggsGerm so3_normal_form(int m, int l) {
  require_labels(m, l);
  LaurentSeries zl = monomial(l), zn = monomial(m - 2 * l);
  LaurentSeries p = (LaurentSeries(1) - zn) * zl;
  LaurentSeries r = ((LaurentSeries(1) + zn) * zl).scaled(GaussRational::i());
  LocalHiggsGerm e;
  e.higgs = Mat<LaurentSeries>(3, 3);
  e.higgs(0, 1) = p;
  e.higgs(1, 0) = -p;
  e.higgs(1, 2) = r;
  e.higgs(2, 1) = -r;
  e.form = Mat<LaurentSeries>::identity(3);
  e.kind = FormKind::Symmetric;
  return e;
}

LocalHiggsGerm so3_from_sl2_adjoint(const LocalHiggsGerm& e) {
  if (e.higgs.rows() != 2 || e.higgs.cols() != 2)
    throw PreconditionError("adjoint image needs a rank-two germ");
  if ((e.higgs(0, 0) + e.higgs(1, 1)).known_nonzero())
    throw PreconditionError("adjoint image needs a trace-free germ");
  const LaurentSeries& d = e.higgs(0, 0);
  const LaurentSeries& a = e.higgs(0, 1);
  const LaurentSeries& b = e.higgs(1, 0);
  GaussRational I = GaussRational::i();

  LocalHiggsGerm out;
  out.higgs = Mat<LaurentSeries>(3, 3);
  out.higgs(0, 1) = a - b;
  out.higgs(1, 0) = b - a;
  out.higgs(0, 2) = d.scaled(I * GaussRational(2));
  out.higgs(2, 0) = -out.higgs(0, 2);
  out.higgs(1, 2) = (a + b).scaled(I);
  out.higgs(2, 1) = -out.higgs(1, 2);
  out.form = Mat<LaurentSeries>::identity(3);
  out.kind = FormKind::Symmetric;
  return out;
}

PushforwardResult pushforward_germ(const LocalHiggsGerm& e, long k, bool twist_half_branch) {
  check_pairing(e);
  if (e.higgs.rows() != 2) throw PreconditionError("pushforward needs a rank-two germ");
  if (e.kind != FormKind::Symplectic || !is_standard_pair(e.form))
    throw PreconditionError("pushforward needs the standard rank-two pairing");
  if (k < 1) throw PreconditionError("cover degree must be positive");
  if (k != 1 && k != 2 && k != 4) {
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b) {
        int phases = 0;
        for (long r = 0; r < k; ++r)
          if (e.higgs(a, b).section(r, k).known_nonzero()) ++phases;
        if (phases > 1)
          throw PreconditionError("pushforward beyond k in {1, 2, 4} needs single-phase entries");
      }
  }

  std::size_t N = 2 * static_cast<std::size_t>(k);
  Mat<LaurentSeries> H(N, N), G(N, N);
  for (long jp = 0; jp < k; ++jp)
    for (long j = 0; j < k; ++j) {
      long r = ((jp - j) % k + k) % k;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          LaurentSeries s = e.higgs(a, b).section(r, k);
          if (jp < j) s = s.shifted(1);
          H(2 * static_cast<std::size_t>(jp) + a, 2 * static_cast<std::size_t>(j) + b) = s;
        }
    }
  // The pairing pairs w^l s_a with w^{k-1-l} s_b through the relative trace
  // twisted by w^{1-k}; on the frame it is constant and unimodular.
  for (long l2 = 0; l2 < k; ++l2) {
    long m2 = k - 1 - l2;
    G(2 * static_cast<std::size_t>(l2), 2 * static_cast<std::size_t>(m2) + 1) = LaurentSeries(1);
    G(2 * static_cast<std::size_t>(m2) + 1, 2 * static_cast<std::size_t>(l2)) = LaurentSeries(-1);
  }

  PushforwardResult out;
  out.germ = LocalHiggsGerm{std::move(H), std::move(G), FormKind::Symplectic};
  check_pairing(out.germ);
  out.transition_exponents.resize(N);
  for (long j = 0; j < k; ++j)
    for (std::size_t a = 0; a < 2; ++a)
      out.transition_exponents[2 * static_cast<std::size_t>(j) + a] = j;
  out.frame_twist_exponent = twist_half_branch ? k - 1 : 0;
  out.cover_degree = k;
  return out;
}

LocalHiggsGerm pullback_eigengerm(const LocalHiggsGerm& e, const LaurentSeries& b2, long k) {
  check_pairing(e);
  if (e.kind != FormKind::Symplectic)
    throw PreconditionError("eigenspace pullback needs a symplectic germ");
  if (k < 1) throw PreconditionError("cover degree must be positive");

  auto lift = [k](const LaurentSeries& s) { return s.inflate(k); };
  Mat<LaurentSeries> phi = e.higgs.map(lift);
  Mat<LaurentSeries> G = e.form.map(lift);

  Mat<LaurentSeries> K = phi * phi;
  for (std::size_t i = 0; i < K.rows(); ++i) K(i, i) += b2;
  Mat<LaurentSeries> V = kernel_basis(K);
  if (V.cols() != 2) throw PreconditionError("eigen splitting is not resolved");
  V = saturate_columns(V);

  // Restricted pairing, normalized by the derivative k w^{k-1} of the cover
  // map so the roundtrip from the pushforward lands on the standard pairing.
  Mat<LaurentSeries> G2 = (V.transpose() * (G * V)).map([k](const LaurentSeries& s) {
    return div_int(s.shifted(-(k - 1)), k);
  });
  Mat<LaurentSeries> phi2 = solve_full_column_rank(V, phi * V);

  Mat<LaurentSeries> sq = phi2 * phi2;
  for (std::size_t i = 0; i < 2; ++i) sq(i, i) += b2;
  if (!known_zero(sq)) throw PreconditionError("eigen splitting is not resolved");

  LocalHiggsGerm out{std::move(phi2), std::move(G2), FormKind::Symplectic};
  check_pairing(out);
  return out;
}

SoKernelData so_kernel_data(const LocalHiggsGerm& e) {
  check_pairing(e);
  if (e.higgs.rows() != 3 || e.kind != FormKind::Symmetric)
    throw PreconditionError("kernel data needs a rank-three orthogonal germ");
  LaurentSeries detG = e.form.det();
  if (!detG.known_nonzero() || detG.order() != 0)
    throw PreconditionError("kernel data needs a unimodular pairing");

  // Volume contraction of the antisymmetric matrix (higgs^T form): a
  // generator of the kernel line that scales linearly with the Higgs field.
  Mat<LaurentSeries> alpha = e.higgs.transpose() * e.form;
  Mat<LaurentSeries> v(3, 1);
  v(0, 0) = alpha(1, 2);
  v(1, 0) = -alpha(0, 2);
  v(2, 0) = alpha(0, 1);

  long minv = LaurentSeries::kExact;
  bool all_exact_zero = true;
  for (std::size_t i = 0; i < 3; ++i) {
    auto w = v(i, 0).try_valuation();
    if (w && *w < minv) minv = *w;
    all_exact_zero = all_exact_zero && v(i, 0).is_exact_zero();
  }
  if (minv == LaurentSeries::kExact) {
    if (all_exact_zero) throw PreconditionError("Higgs germ vanishes identically");
    throw PrecisionError("insufficient germ precision");
  }
  for (std::size_t i = 0; i < 3; ++i)
    if (!v(i, 0).known_nonzero() && !v(i, 0).is_exact_zero() && v(i, 0).truncation() <= minv)
      throw PrecisionError("insufficient germ precision");

  SoKernelData kd;
  kd.vanishing_order = minv;
  kd.kernel_section = v.map([minv](const LaurentSeries& s) { return s.shifted(-minv); });
  if (!known_zero(e.higgs * kd.kernel_section))
    throw std::logic_error("kernel section is not annihilated");
  kd.form_on_kernel =
      (kd.kernel_section.transpose() * (e.form * kd.kernel_section))(0, 0);

  Mat<LaurentSeries> pairing_row = kd.kernel_section.transpose() * e.form;  // 1 x 3
  Mat<LaurentSeries> U = kernel_basis(pairing_row);
  if (U.cols() != 2) throw PrecisionError("insufficient germ precision");
  U = saturate_columns(U);
  Mat<LaurentSeries> omega = U.transpose() * (e.form * U);
  Mat<LaurentSeries> c = solve_full_column_rank(U, e.higgs * U);
  kd.complement = LocalHiggsGerm{std::move(c), std::move(omega), FormKind::Symmetric};
  return kd;
}

SoHeckeResult so_hecke_reconstruct(const SoKernelData& kd, int m, int l) {
  require_labels(m, l);
  long n = m - 2L * l;
  if (!kd.form_on_kernel.known_nonzero() || kd.form_on_kernel.order() != n)
    throw PreconditionError("kernel data does not match the labels (m, l)");
  if (kd.complement.higgs.rows() != 2 || kd.complement.form.rows() != 2)
    throw PreconditionError("complement must have rank two");

  // Abstract frame (kernel, complement): the model splits orthogonally.
  Mat<LaurentSeries> F(3, 3), Phi(3, 3);
  F(0, 0) = kd.form_on_kernel;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      F(i + 1, j + 1) = kd.complement.form(i, j);
      Phi(i + 1, j + 1) = kd.complement.higgs(i, j);
    }

  auto is_unit = [](const LaurentSeries& s) { return s.known_nonzero() && s.order() == 0; };

  Mat<LaurentSeries> T = Mat<LaurentSeries>::identity(3);
  auto current = [&]() { return T.transpose() * (F * T); };

  // Move a unit direction of the complement pairing into the last slot.
  Mat<LaurentSeries> Fc = current();
  if (!is_unit(Fc(2, 2))) {
    if (is_unit(Fc(1, 1))) {
      for (std::size_t i = 0; i < 3; ++i) std::swap(T(i, 1), T(i, 2));
    } else if (is_unit(Fc(1, 2))) {
      for (std::size_t i = 0; i < 3; ++i) T(i, 2) += T(i, 1);
    } else {
      throw PreconditionError("complement pairing has no unit direction");
    }
    Fc = current();
  }

  // Orthogonalize the remaining complement direction against the unit one.
  LaurentSeries coef = Fc(1, 2) / Fc(2, 2);
  for (std::size_t i = 0; i < 3; ++i) T(i, 1) -= T(i, 2) * coef;
  Fc = current();

  LaurentSeries kappa0 = Fc(0, 0), kappa1 = Fc(1, 1);
  if (!kappa1.known_nonzero()) throw PrecisionError("insufficient germ precision");
  if (kappa1.order() != n)
    throw PreconditionError("kernel data does not match the labels (m, l)");

  // Match the two degenerate directions, then mix them into an isotropic
  // pair divided by half the pairing order each.
  auto s = sqrt_series(kappa0 / kappa1);
  if (!s) throw PreconditionError("no symmetric modification over Q(i)");
  for (std::size_t i = 0; i < 3; ++i) T(i, 1) *= *s;

  long a = (n + 1) / 2, b = n / 2;
  GaussRational I = GaussRational::i();
  Mat<LaurentSeries> mix = Mat<LaurentSeries>::identity(3);
  mix(0, 0) = monomial(-a);
  mix(1, 0) = monomial(-a).scaled(I);
  mix(0, 1) = monomial(-b);
  mix(1, 1) = monomial(-b).scaled(-I);
  T = T * mix;

  Mat<LaurentSeries> Fhat = current();
  Mat<LaurentSeries> Phihat = solve_full_column_rank(T, Phi * T);

  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      for (const Mat<LaurentSeries>* mp : {&Fhat, &Phihat}) {
        const LaurentSeries& entry = (*mp)(i, j);
        if (entry.known_nonzero() && entry.order() < 0)
          throw PreconditionError("the modification is not holomorphic for these labels");
        if (!entry.known_nonzero() && !entry.is_exact_zero() && entry.truncation() <= 0)
          throw PrecisionError("insufficient germ precision");
      }
    }
  LaurentSeries detF = Fhat.det();
  if (!detF.known_nonzero() || detF.order() != 0)
    throw PreconditionError("the modification is not holomorphic for these labels");

  SoHeckeResult out;
  out.germ = LocalHiggsGerm{std::move(Phihat), std::move(Fhat), FormKind::Symmetric};
  check_pairing(out.germ);
  out.torsion_length = a + b;
  return out;
}

bool frame_equivalent(const LocalHiggsGerm& a, const LocalHiggsGerm& b) {
  if (a.higgs.rows() != b.higgs.rows() || a.kind != b.kind) return false;
  auto ca = char_poly(a.higgs), cb = char_poly(b.higgs);
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (!agree_to_truncation(ca[i], cb[i])) return false;
  LaurentSeries da = a.form.det(), db = b.form.det();
  if (!da.known_nonzero() || !db.known_nonzero())
    throw PrecisionError("insufficient germ precision");
  if (da.order() != db.order()) return false;
  if (a.kind == FormKind::Symmetric)
    return da.leading_coeff().sqrt_exact().has_value() ==
           db.leading_coeff().sqrt_exact().has_value();
  return true;
}

std::vector<LaurentSeries> char_poly_of(const LocalHiggsGerm& e) { return char_poly(e.higgs); }

std::vector<LaurentSeries> norm_char_poly(const LocalHiggsGerm& e, long k) {
  if (k < 1) throw PreconditionError("cover degree must be positive");

  if (k == 1 || k == 2 || k == 4) {
    GaussRational xi =
        k == 1 ? GaussRational(1) : (k == 2 ? GaussRational(-1) : GaussRational::i());
    std::vector<LaurentSeries> prod{LaurentSeries(1)};
    GaussRational xj(1);
    for (long j = 0; j < k; ++j) {
      auto cj = char_poly(
          e.higgs.map([&xj](const LaurentSeries& s) { return s.scale_coordinate(xj); }));
      prod = poly_mul(prod, cj);
      xj = xj * xi;
    }
    std::vector<LaurentSeries> out;
    out.reserve(prod.size());
    for (const auto& c : prod) out.push_back(descend_exponents(c, k));
    return out;
  }

  // Beyond Q(i) roots of unity: closed form for trace-free rank-2 germs
  // whose determinant sits in one residue class mod k. The sheet product
  // collapses to (lambda^{2k/g} - (-det)^{k/g})^g with g = gcd(residue, k).
  const char* need = "sheet products beyond k in {1, 2, 4} need a trace-free single-phase germ";
  if (e.higgs.rows() != 2) throw PreconditionError(need);
  if ((e.higgs(0, 0) + e.higgs(1, 1)).known_nonzero()) throw PreconditionError(need);
  LaurentSeries D = e.higgs(0, 0) * e.higgs(1, 1) - e.higgs(0, 1) * e.higgs(1, 0);

  long s = -1;
  for (long r = 0; r < k; ++r) {
    if (!D.section(r, k).known_nonzero()) continue;
    if (s >= 0) throw PreconditionError(need);
    s = r;
  }
  if (s < 0) {
    if (!D.is_exact_zero()) throw PrecisionError("insufficient germ precision");
    std::vector<LaurentSeries> out(2 * static_cast<std::size_t>(k) + 1);
    out[2 * static_cast<std::size_t>(k)] = LaurentSeries(1);
    return out;
  }

  long g = std::gcd(s, k);
  long r = k / g;
  LaurentSeries Dr(1);
  for (long t = 0; t < r; ++t) Dr *= D;
  std::vector<LaurentSeries> base(2 * static_cast<std::size_t>(r) + 1);
  base[2 * static_cast<std::size_t>(r)] = LaurentSeries(1);
  base[0] = r % 2 == 0 ? -Dr : Dr;

  std::vector<LaurentSeries> prod{LaurentSeries(1)};
  for (long t = 0; t < g; ++t) prod = poly_mul(prod, base);
  std::vector<LaurentSeries> out;
  out.reserve(prod.size());
  for (const auto& c : prod) out.push_back(descend_exponents(c, k));
  return out;
}

}  // namespace atlas
