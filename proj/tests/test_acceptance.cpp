// Acceptance gate: one criterion per line, exact checks only, time budgets
// pinned next to the criteria they bound. Exits nonzero when any line fails.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "atlas/localmodels.hpp"
#include "atlas/metrics.hpp"
#include "atlas/spectral.hpp"
#include "atlas/strata.hpp"

using namespace atlas;

namespace {

constexpr int kDiscriminantInputs = 10;
constexpr int kCorpusPoints = 200;
constexpr int kRegularPoints = 25;
constexpr long kMaxRowsPerTable = 1024;

struct Outcome {
  bool ok = true;
  std::string detail;
};

void expect(Outcome& o, bool cond, const std::string& msg) {
  if (cond) return;
  o.ok = false;
  if (o.detail.size() < 2000) o.detail += "    " + msg + "\n";
}

std::string tag(int m, int l) { return "m=" + std::to_string(m) + " l=" + std::to_string(l); }

LaurentSeries zpow(long e) { return LaurentSeries(1).shifted(e); }

GaussRational coef(std::mt19937& rng) {
  static const std::vector<GaussRational> pool = [] {
    std::vector<GaussRational> p;
    for (const char* s : {"0", "1", "-1", "2", "-2", "1/2", "-1/2", "i", "-i", "1+i"})
      p.push_back(*GaussRational::parse(s));
    return p;
  }();
  return pool[rng() % pool.size()];
}

GaussRational unit_coef(std::mt19937& rng) {
  GaussRational c = coef(rng);
  return c.is_zero() ? GaussRational(1) : c;
}

LaurentSeries random_poly(std::mt19937& rng, int terms) {
  LaurentSeries s;
  for (int j = 0; j < terms; ++j) s += LaurentSeries(coef(rng)).shifted(j);
  return s;
}

// Random order-only base points with the canonical twist: zero orders are
// drawn freely but the stratification table is kept below kMaxRowsPerTable
// rows so the corpus stays fast to enumerate exhaustively.
BasePoint random_point(std::mt19937& rng) {
  BasePoint bp;
  bp.n = 1 + static_cast<int>(rng() % 4);
  bp.g = 2 + static_cast<int>(rng() % 4);
  long remaining = 4L * bp.n * (bp.g - 1);
  long rows = 1;
  int idx = 0;
  while (remaining > 0) {
    long order = 1 + static_cast<long>(rng() % std::min<long>(remaining, 6));
    if (rows * (order / 2 + 1) > kMaxRowsPerTable) order = 1;
    rows *= order / 2 + 1;
    bp.zeros.push_back(MarkedZero{"x" + std::to_string(idx++), static_cast<int>(order), {}});
    remaining -= order;
  }
  return bp;
}

std::vector<BasePoint> corpus(unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<BasePoint> out;
  out.reserve(kCorpusPoints);
  for (int i = 0; i < kCorpusPoints; ++i) out.push_back(random_point(rng));
  return out;
}

BasePoint running_example() {
  BasePoint bp;
  bp.n = 2;
  bp.g = 2;
  bp.zeros.push_back(MarkedZero{"x0", 2, {}});
  for (int i = 1; i <= 6; ++i) bp.zeros.push_back(MarkedZero{"x" + std::to_string(i), 1, {}});
  return bp;
}

// 1. For n = 2 the discriminant germ factors as a4 (a2^2 - 4 a4), checked
//    symbolically against the resultant route on randomized exact germs.
void crit_discriminant(Outcome& o) {
  std::mt19937 rng(101);
  int done = 0;
  for (int draw = 0; draw < 60 && done < kDiscriminantInputs; ++draw) {
    LaurentSeries a2 = random_poly(rng, 4);
    LaurentSeries a4 =
        (LaurentSeries(unit_coef(rng)) + random_poly(rng, 2).shifted(1)).shifted(8);
    LaurentSeries want_reduced = a2 * a2 - a4.scaled(GaussRational(4));
    if (want_reduced.is_exact_zero()) continue;

    BasePoint bp;
    bp.n = 2;
    bp.g = 2;
    bp.zeros.push_back(MarkedZero{"x", 8, {{2, a2}, {4, a4}}});
    DiscriminantGerms d = discriminant_germs(bp, bp.zeros[0]);
    expect(o, d.reduced == want_reduced, "reduced discriminant differs from a2^2 - 4 a4");
    expect(o, d.full == a4 * want_reduced, "full discriminant differs from a4 (a2^2 - 4 a4)");
    ++done;
  }
  expect(o, done >= kDiscriminantInputs, "fewer than ten usable random draws");
}

// 2. The introductory example (n=2, g=2, orders 2,1,1,1,1,1,1) has exactly
//    the two strata (r,s) = (1,0) and (0,0) with dimensions 10 and 9.
void crit_running_example(Outcome& o) {
  StrataTable t = strata_table(running_example(), Side::Sp);
  expect(o, t.rows.size() == 2, "expected exactly two strata");
  if (t.rows.size() != 2) return;
  expect(o, t.rows[0].deg == 0 && t.rows[0].r == 1 && t.rows[0].s == 0 && t.rows[0].dim == 10,
         "open stratum is not (r,s,dim) = (1,0,10)");
  expect(o, t.rows[1].deg == 1 && t.rows[1].r == 0 && t.rows[1].s == 0 && t.rows[1].dim == 9,
         "deep stratum is not (r,s,dim) = (0,0,9)");
}

// 3. Over the randomized corpus, every stratum of every point satisfies
//    dim S_D = prym + r + s and dim S_D = dim S_0 - deg D on both sides.
void crit_dimension_identities(Outcome& o) {
  int points = 0;
  for (const BasePoint& bp : corpus(303)) {
    long dim0 = (2L * bp.n * bp.n + bp.n) * (bp.g - 1);
    CurveInvariants ci = curve_invariants(bp);
    for (Side side : {Side::Sp, Side::So}) {
      StrataTable t = strata_table(bp, side);
      expect(o, t.prym_dim == ci.prym_dim, "table and invariants disagree on the prym");
      for (const StratumRow& row : t.rows) {
        expect(o, row.dim == t.prym_dim + row.r + row.s, "dim != prym + r + s");
        expect(o, row.dim == dim0 - row.deg, "dim != dim S_0 - deg D");
      }
    }
    ++points;
  }
  expect(o, points >= kCorpusPoints, "corpus smaller than two hundred points");
}

// 4. With all zero orders one the table has a single stratum with r = s = 0
//    and dim = prym = n(2n-1)(g-1) + n_odd/2.
void crit_regular_fibres(Outcome& o) {
  std::mt19937 rng(404);
  for (int i = 0; i < kRegularPoints; ++i) {
    BasePoint bp;
    bp.n = 1 + static_cast<int>(rng() % 4);
    bp.g = 2 + static_cast<int>(rng() % 4);
    long n_odd = 4L * bp.n * (bp.g - 1);
    for (long j = 0; j < n_odd; ++j)
      bp.zeros.push_back(MarkedZero{"x" + std::to_string(j), 1, {}});
    long want = bp.n * (2L * bp.n - 1) * (bp.g - 1) + n_odd / 2;
    for (Side side : {Side::Sp, Side::So}) {
      StrataTable t = strata_table(bp, side);
      expect(o, t.rows.size() == 1, "more than one stratum for a regular point");
      if (t.rows.empty()) continue;
      expect(o, t.rows[0].r == 0 && t.rows[0].s == 0, "open stratum has r + s > 0");
      expect(o, t.rows[0].dim == t.prym_dim, "stratum dimension is not the prym dimension");
      expect(o, t.prym_dim == want, "prym differs from n(2n-1)(g-1) + n_odd/2");
    }
  }
}

// 5. Component counts hit the four (odd zeros present / absent) x (sp / so)
//    cells (1,1), (1,4), (2,2), (2,4).
void crit_component_counts(Outcome& o) {
  BasePoint odd = running_example();
  BasePoint even;
  even.n = 1;
  even.g = 2;
  even.zeros.push_back(MarkedZero{"y0", 2, {}});
  even.zeros.push_back(MarkedZero{"y1", 2, {}});

  auto cell = [&](const BasePoint& bp, Side side, int connected, int irreducible,
                  const std::string& name) {
    ComponentCounts c = component_counts(bp, side);
    expect(o, c.connected == connected && c.irreducible == irreducible,
           name + " cell is (" + std::to_string(c.connected) + "," +
               std::to_string(c.irreducible) + ")");
  };
  cell(odd, Side::Sp, 1, 1, "odd/sp");
  cell(even, Side::Sp, 1, 4, "even/sp");
  cell(odd, Side::So, 2, 2, "odd/so");
  cell(even, Side::So, 2, 4, "even/so");
}

// 6. Duality rows pass on every corpus point: equal (r,s) and dual torsors.
void crit_duality(Outcome& o) {
  int points = 0;
  for (const BasePoint& bp : corpus(303)) {
    for (const DualityRow& row : duality_table(bp)) {
      expect(o, row.hecke_isomorphic, "a duality row is not hecke isomorphic");
      expect(o, row.abelian_dual, "a duality row is not abelian dual");
    }
    ++points;
  }
  expect(o, points >= kCorpusPoints, "corpus smaller than two hundred points");
}

// 7. Degree-two pushforward: constant antidiagonal form, transition
//    diag(1,1,z,z), characteristic polynomial equal to the sheet product.
void crit_pushforward(Outcome& o) {
  Mat<LaurentSeries> want_form(4, 4);
  want_form(0, 3) = LaurentSeries(1);
  want_form(3, 0) = LaurentSeries(-1);
  want_form(2, 1) = LaurentSeries(1);
  want_form(1, 2) = LaurentSeries(-1);

  int inputs = 0;
  for (auto [m, l] : {std::pair<int, int>{1, 0}, {2, 0}, {2, 1}, {3, 1}, {4, 2}}) {
    LocalHiggsGerm e = sl2_normal_form(m, l);
    PushforwardResult p = pushforward_germ(e, 2);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        expect(o, p.germ.form(i, j) == want_form(i, j),
               "form entry differs from the constant antidiagonal at " + tag(m, l));
    expect(o, p.transition_exponents == std::vector<long>({0, 0, 1, 1}),
           "transition is not diag(1,1,z,z) at " + tag(m, l));

    // Sheet product in closed form: lambda^4 - z^m for odd m, else the
    // square of lambda^2 - z^(m/2).
    std::vector<LaurentSeries> want_char(5);
    want_char[4] = LaurentSeries(1);
    if (m % 2 != 0) {
      want_char[0] = -zpow(m);
    } else {
      want_char[0] = zpow(m);
      want_char[2] = zpow(m / 2).scaled(GaussRational(-2));
    }
    std::vector<LaurentSeries> got = char_poly_of(p.germ);
    std::vector<LaurentSeries> norm = norm_char_poly(e, 2);
    expect(o, got.size() == 5 && norm.size() == 5, "characteristic degree is not four");
    for (std::size_t c = 0; c < got.size(); ++c) {
      expect(o, got[c].is_exact() && got[c] == want_char[c],
             "pushforward char differs from the closed form at " + tag(m, l));
      expect(o, norm[c] == want_char[c],
             "sheet product differs from the closed form at " + tag(m, l));
    }
    ++inputs;
  }
  expect(o, inputs >= 5, "fewer than five pushforward inputs");
}

// 8. Pullback after pushforward preserves the characteristic polynomial and
//    the congruence class of the form over the whole (m, l) grid.
void crit_roundtrip(Outcome& o) {
  LocalHiggsGerm e = sl2_normal_form(1, 0);
  PushforwardResult pr = pushforward_germ(e, 2);
  LocalHiggsGerm back = pullback_eigengerm(pr.germ, -zpow(1), 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      expect(o, agree_to_truncation(back.higgs(i, j), e.higgs(i, j)),
             "monomial roundtrip changes the higgs germ");
      expect(o, agree_to_truncation(back.form(i, j), e.form(i, j)),
             "monomial roundtrip changes the form");
    }

  for (int m = 1; m <= 6; ++m)
    for (int l = 0; 2 * l <= m; ++l) {
      LocalHiggsGerm g;
      g.higgs = Mat<LaurentSeries>(2, 2);
      g.higgs(0, 1) = (zpow(0) + zpow(1)).shifted(l);
      g.higgs(1, 0) = zpow(m - l);
      g.form = Mat<LaurentSeries>(2, 2);
      g.form(0, 1) = LaurentSeries(1);
      g.form(1, 0) = LaurentSeries(-1);
      LaurentSeries det = g.higgs(0, 1) * g.higgs(1, 0);

      PushforwardResult push = pushforward_germ(g, 2);
      LocalHiggsGerm pull = pullback_eigengerm(push.germ, -det, 2);
      expect(o, frame_equivalent(pull, g),
             "roundtrip leaves the frame equivalence class at " + tag(m, l));
      std::vector<LaurentSeries> ch = char_poly_of(pull);
      expect(o,
             ch.size() == 3 && agree_to_truncation(ch[0], -det) &&
                 agree_to_truncation(ch[1], LaurentSeries()) &&
                 agree_to_truncation(ch[2], LaurentSeries(1)),
             "roundtrip changes the characteristic polynomial at " + tag(m, l));
      LaurentSeries d = pull.form.det();
      expect(o, d.known_nonzero() && d.order() == 0,
             "roundtrip form leaves the unimodular class at " + tag(m, l));
    }
}

// 9. The adjoint of the rank-two normal form equals the rank-three normal
//    form entrywise; char poly lambda(lambda^2 - 4 z^m); the kernel pairing
//    vanishes to order exactly m - 2l.
void crit_so3(Outcome& o) {
  for (int m = 1; m <= 6; ++m)
    for (int l = 0; 2 * l <= m; ++l) {
      LocalHiggsGerm a = so3_from_sl2_adjoint(sl2_normal_form(m, l));
      LocalHiggsGerm b = so3_normal_form(m, l);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          expect(o, agree_to_truncation(a.higgs(i, j), b.higgs(i, j)),
                 "adjoint and normal form differ at " + tag(m, l));
          expect(o, agree_to_truncation(a.form(i, j), b.form(i, j)),
                 "adjoint and normal form pairings differ at " + tag(m, l));
        }

      std::vector<LaurentSeries> ch = char_poly_of(b);
      expect(o,
             ch.size() == 4 && ch[0].is_exact_zero() &&
                 ch[1] == zpow(m).scaled(GaussRational(-4)) && ch[2].is_exact_zero() &&
                 ch[3] == LaurentSeries(1),
             "char poly is not lambda(lambda^2 - 4 z^m) at " + tag(m, l));

      SoKernelData kd = so_kernel_data(b);
      expect(o, kd.form_on_kernel.order() == m - 2 * l,
             "kernel form valuation is not m - 2l at " + tag(m, l));
      expect(o, kd.form_on_kernel == zpow(m - 2 * l).scaled(GaussRational(-4)),
             "kernel form differs from -4 z^(m-2l) at " + tag(m, l));
    }
}

// 10. Decoupled equations hold identically over the full (m <= 8) grid for
//     both metric families; a nilpotent germ with the identity metric is the
//     negative control.
void crit_decoupled(Outcome& o) {
  for (int m = 1; m <= 8; ++m)
    for (int l = 0; 2 * l <= m; ++l) {
      Parity par = (m - 2 * l) % 2 != 0 ? Parity::Odd : Parity::Even;
      HermitianGerm h = build_hdc_sl2(m, l, par, LogPolarExpr(1), LogPolarExpr(0));
      DecoupledReport two = decoupled_report(sl2_normal_form(m, l).higgs, h);
      expect(o, two.flat, "rank-two curvature defect is nonzero at " + tag(m, l));
      expect(o, two.normal, "rank-two normality defect is nonzero at " + tag(m, l));

      DecoupledReport three = decoupled_report(build_phi_so3(m, l), build_hdc_so3(m, l));
      expect(o, three.flat, "rank-three curvature defect is nonzero at " + tag(m, l));
      expect(o, three.normal, "rank-three normality defect is nonzero at " + tag(m, l));
    }

  Mat<LaurentSeries> nil(2, 2);
  nil(0, 1) = LaurentSeries(1);
  DecoupledReport control =
      decoupled_report(nil, hermitian_germ(Mat<LogPolarExpr>::identity(2)));
  expect(o, !control.normal, "negative control reports a zero normality defect");
}

// 11. Pushing a flat and normal rank-two pair forward along the double cover
//     yields a flat and normal rank-four pair, on three inputs.
void crit_pushforward_metric(Outcome& o) {
  int inputs = 0;
  auto check_pair = [&](const LocalHiggsGerm& e, const HermitianGerm& up,
                        const std::string& name) {
    DecoupledReport premise = decoupled_report(e.higgs, up);
    expect(o, premise.flat && premise.normal, name + ": input pair is not flat and normal");
    PushforwardResult push = pushforward_germ(e, 2);
    HermitianGerm down = pushforward_metric(up, 2, push);
    expect(o, down.rank == 4, name + ": pushed metric is not rank four");
    DecoupledReport rep = decoupled_report(push.germ.higgs, down);
    expect(o, rep.flat, name + ": pushed curvature defect is nonzero");
    expect(o, rep.normal, name + ": pushed normality defect is nonzero");
    ++inputs;
  };

  auto profile = [](const mpq_class& a) {
    Mat<LogPolarExpr> h(2, 2);
    h(0, 0) = LogPolarExpr::abs_pow(a);
    h(1, 1) = LogPolarExpr::abs_pow(-a);
    return hermitian_germ(h);
  };
  check_pair(sl2_normal_form(1, 0), profile(mpq_class(1) / 2), "order-one zero");
  check_pair(sl2_normal_form(3, 1), profile(mpq_class(1) / 2), "order-three zero");

  LocalHiggsGerm sum;
  sum.higgs = Mat<LaurentSeries>(2, 2);
  sum.higgs(0, 0) = LaurentSeries(3);
  sum.higgs(1, 1) = LaurentSeries(-3);
  sum.form = Mat<LaurentSeries>(2, 2);
  sum.form(0, 1) = LaurentSeries(1);
  sum.form(1, 0) = LaurentSeries(-1);
  check_pair(sum, hermitian_germ(Mat<LogPolarExpr>::identity(2)), "unitary direct sum");

  expect(o, inputs >= 3, "fewer than three pushforward metric inputs");
}

// 12. Genus formulas for the canonical twist and agreement of the two prym
//     computations (genus difference versus the closed formula).
void crit_genus(Outcome& o) {
  int points = 0;
  for (const BasePoint& bp : corpus(303)) {
    CurveInvariants ci = curve_invariants(bp);
    long n = bp.n, g = bp.g;
    expect(o, ci.genus_quotient == (2 * n * n - n) * (g - 1) + 1,
           "quotient genus differs from (2n^2 - n)(g - 1) + 1");
    expect(o, ci.genus_spectral == (4 * n * n - 2 * n) * (g - 1) + ci.n_odd / 2 + 1,
           "spectral genus differs from (4n^2 - 2n)(g - 1) + n_odd/2 + 1");
    expect(o, ci.prym_dim == ci.genus_spectral - ci.genus_quotient,
           "prym is not the genus difference");
    expect(o, ci.prym_dim == n * (2 * n - 1) * (g - 1) + ci.n_odd / 2,
           "prym differs from n(2n - 1)(g - 1) + n_odd/2");
    ++points;
  }
  expect(o, points >= kCorpusPoints, "corpus smaller than two hundred points");
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // 0 means no pinned budget
  void (*body)(Outcome&);
};

const Criterion kCriteria[] = {
    {1, "discriminant formula for n=2", 1.0, crit_discriminant},
    {2, "running-example stratification", 1.0, crit_running_example},
    {3, "dimension identities over the corpus", 10.0, crit_dimension_identities},
    {4, "regular fibres are prym torsors", 0.0, crit_regular_fibres},
    {5, "component counts", 0.0, crit_component_counts},
    {6, "duality rows over the corpus", 0.0, crit_duality},
    {7, "degree-two pushforward construction", 1.0, crit_pushforward},
    {8, "double cover roundtrip grid", 0.0, crit_roundtrip},
    {9, "rank-three normal form and kernel", 0.0, crit_so3},
    {10, "decoupled equations over the full grid", 5.0, crit_decoupled},
    {11, "pushforward metric stays decoupled", 0.0, crit_pushforward_metric},
    {12, "genus formulas and prym agreement", 0.0, crit_genus},
};

}  // namespace

int main() {
  int failed = 0;
  for (const Criterion& c : kCriteria) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      expect(o, false, std::string("unexpected exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0)
      expect(o, seconds < c.budget_seconds,
             "over the pinned time budget of " + std::to_string(c.budget_seconds) + " s");

    std::string label = c.name;
    label.resize(44, '.');
    std::printf("criterion %2d  %s %s  (%.2f s)\n", c.id, label.c_str(),
                o.ok ? "PASS" : "FAIL", seconds);
    if (!o.ok) {
      std::fputs(o.detail.c_str(), stdout);
      ++failed;
    }
  }
  int total = static_cast<int>(sizeof(kCriteria) / sizeof(kCriteria[0]));
  std::printf("acceptance: %d of %d criteria pass\n", total - failed, total);
  return failed == 0 ? 0 : 1;
}
