#include "atlas/verify.hpp"

#include <sstream>

#include "atlas/localmodels.hpp"
#include "atlas/metrics.hpp"

namespace atlas {
namespace {

template <typename F>
VerifyCase run_case(std::string name, F body) {
  VerifyCase c;
  c.name = std::move(name);
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail += std::string(e.what()) + "\n";
  }
  return c;
}

void require(VerifyCase& c, bool ok, const std::string& detail) {
  if (ok) return;
  c.pass = false;
  c.detail += detail + "\n";
}

void require_series(VerifyCase& c, const LaurentSeries& got, const LaurentSeries& want,
                    const std::string& label) {
  require(c, agree_to_truncation(got, want),
          label + ": got " + got.str() + ", want " + want.str());
}

void require_char(VerifyCase& c, const std::vector<LaurentSeries>& got,
                  const std::vector<LaurentSeries>& want, const std::string& label) {
  require(c, got.size() == want.size(), label + ": coefficient count differs");
  for (std::size_t i = 0; i < got.size() && i < want.size(); ++i)
    require_series(c, got[i], want[i], label + " [lambda^" + std::to_string(i) + "]");
}

std::string mat_str(const Mat<LogPolarExpr>& a) {
  std::string out;
  for (int i = 0; i < a.rows(); ++i) {
    out += "  [ ";
    for (int j = 0; j < a.cols(); ++j) {
      if (j) out += ", ";
      out += a(i, j).str();
    }
    out += " ]\n";
  }
  return out;
}

void require_decoupled(VerifyCase& c, const DecoupledReport& rep) {
  if (!rep.flat) {
    c.pass = false;
    c.detail += "curvature defect:\n" + mat_str(rep.curvature_defect);
  }
  if (!rep.normal) {
    c.pass = false;
    c.detail += "normality defect:\n" + mat_str(rep.normality_defect);
  }
}

std::string grid_tag(int m, int l) {
  return "m=" + std::to_string(m) + " l=" + std::to_string(l);
}

LaurentSeries zpow(long e) { return LaurentSeries(1).shifted(e); }

LogPolarExpr rational_const(long num, long den) {
  return LogPolarExpr::term(Root2Q(GaussRational(mpq_class(num) / den)), 0, 0);
}

Mat<LaurentSeries> standard_symplectic() {
  Mat<LaurentSeries> f(2, 2);
  f(0, 1) = LaurentSeries(1);
  f(1, 0) = LaurentSeries(-1);
  return f;
}

Mat<LogPolarExpr> diag_profile(const mpq_class& a) {
  Mat<LogPolarExpr> h(2, 2);
  h(0, 0) = LogPolarExpr::abs_pow(a);
  h(1, 1) = LogPolarExpr::abs_pow(-a);
  return h;
}

}  // namespace

std::vector<VerifyCase> verify_local(const VerifyOptions& opt) {
  int m_max = opt.m_max.value_or(6);
  long k = opt.k;
  std::vector<VerifyCase> out;

  for (int m = 1; m <= m_max; ++m)
    for (int l = 0; 2 * l <= m; ++l) {
      out.push_back(run_case("normal form pairing and char " + grid_tag(m, l), [&](VerifyCase& c) {
        LocalHiggsGerm e = sl2_normal_form(m, l);
        check_pairing(e);
        require_char(c, char_poly_of(e), {-zpow(m), LaurentSeries(), LaurentSeries(1)}, "char");
      }));

      out.push_back(run_case(
          "pushforward frames k=" + std::to_string(k) + " " + grid_tag(m, l),
          [&](VerifyCase& c) {
            LocalHiggsGerm e = sl2_normal_form(m, l);
            PushforwardResult p = pushforward_germ(e, k);
            check_pairing(p.germ);
            std::vector<long> want;
            for (long j = 0; j < k; ++j) {
              want.push_back(j);
              want.push_back(j);
            }
            require(c, p.transition_exponents == want, "transition exponents differ");
            int rank = p.germ.form.rows();
            for (int i = 0; i < rank; ++i)
              for (int j = 0; j < rank; ++j) {
                const LaurentSeries& f = p.germ.form(i, j);
                if (i + j == rank - 1)
                  require(c, f.known_nonzero() && f.order() == 0,
                          "antidiagonal form entry is not a unit constant");
                else
                  require(c, f.is_exact_zero(), "form entry off the antidiagonal is nonzero");
              }
            require_char(c, char_poly_of(p.germ), norm_char_poly(e, k), "norm char");
          }));

      out.push_back(run_case("double cover roundtrip " + grid_tag(m, l), [&](VerifyCase& c) {
        LocalHiggsGerm g;
        g.higgs = Mat<LaurentSeries>(2, 2);
        g.higgs(0, 1) = (zpow(0) + zpow(1)).shifted(l);
        g.higgs(1, 0) = zpow(m - l);
        g.form = standard_symplectic();
        LaurentSeries det = g.higgs(0, 1) * g.higgs(1, 0);

        PushforwardResult push = pushforward_germ(g, 2);
        require_char(c, char_poly_of(push.germ), norm_char_poly(g, 2), "pushforward char");

        LocalHiggsGerm pull = pullback_eigengerm(push.germ, -det, 2);
        require(c, frame_equivalent(pull, g), "pullback is not frame equivalent to the input");
        require_char(c, char_poly_of(pull), {-det, LaurentSeries(), LaurentSeries(1)},
                     "roundtrip char");
        LaurentSeries d = pull.form.det();
        require(c, d.known_nonzero() && d.order() == 0,
                "roundtrip form is not in the unimodular congruence class");
      }));

      out.push_back(run_case("adjoint normal form " + grid_tag(m, l), [&](VerifyCase& c) {
        LocalHiggsGerm a = so3_from_sl2_adjoint(sl2_normal_form(m, l));
        LocalHiggsGerm b = so3_normal_form(m, l);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            require_series(c, a.higgs(i, j), b.higgs(i, j), "higgs entry");
            require_series(c, a.form(i, j), b.form(i, j), "form entry");
          }
        require_char(c, char_poly_of(b),
                     {LaurentSeries(), zpow(m).scaled(GaussRational(-4)), LaurentSeries(),
                      LaurentSeries(1)},
                     "char");
      }));

      out.push_back(run_case("kernel line " + grid_tag(m, l), [&](VerifyCase& c) {
        SoKernelData kd = so_kernel_data(so3_normal_form(m, l));
        long n = m - 2 * l;
        require(c, kd.vanishing_order == l, "kernel vanishing order is not l");
        require_series(c, kd.form_on_kernel, zpow(n).scaled(GaussRational(-4)),
                       "form on the kernel");
        check_pairing(kd.complement);
        LaurentSeries d = kd.complement.form.det();
        require(c, d.known_nonzero() && d.order() == n,
                "complement form determinant valuation is not m - 2l");
      }));

      out.push_back(run_case("symmetric modification " + grid_tag(m, l), [&](VerifyCase& c) {
        LocalHiggsGerm e = so3_normal_form(m, l);
        SoHeckeResult r = so_hecke_reconstruct(so_kernel_data(e), m, l);
        require(c, r.torsion_length == m - 2 * l, "torsion length is not m - 2l");
        LaurentSeries d = r.germ.form.det();
        require(c, d.known_nonzero() && d.order() == 0,
                "rebuilt pairing is not unimodular");
        require_char(c, char_poly_of(r.germ), char_poly_of(e), "char");
      }));
    }

  return out;
}

std::vector<VerifyCase> verify_metrics(const VerifyOptions& opt) {
  int m_max = opt.m_max.value_or(8);
  std::vector<VerifyCase> out;

  for (int m = 1; m <= m_max; ++m)
    for (int l = 0; 2 * l <= m; ++l) {
      out.push_back(run_case("rank-two metric " + grid_tag(m, l), [&](VerifyCase& c) {
        Parity par = (m - 2 * l) % 2 != 0 ? Parity::Odd : Parity::Even;
        HermitianGerm h = build_hdc_sl2(m, l, par, LogPolarExpr(1), LogPolarExpr(0));
        require_decoupled(c, decoupled_report(sl2_normal_form(m, l).higgs, h));
      }));

      if (m % 2 == 0)
        out.push_back(run_case("rank-two constant profile " + grid_tag(m, l),
                               [&](VerifyCase& c) {
                                 HermitianGerm h =
                                     build_hdc_sl2(m, l, Parity::Even, rational_const(5, 4),
                                                   rational_const(3, 4));
                                 require_decoupled(
                                     c, decoupled_report(sl2_normal_form(m, l).higgs, h));
                               }));

      out.push_back(run_case("rank-three metric " + grid_tag(m, l), [&](VerifyCase& c) {
        require_decoupled(c, decoupled_report(build_phi_so3(m, l), build_hdc_so3(m, l)));
      }));
    }

  out.push_back(run_case("hecke frame metric, weight 1/2", [&](VerifyCase& c) {
    HermitianGerm h = hecke_push_metric(LogPolarExpr(1), mpq_class(1) / 2, 0);
    require_decoupled(c, decoupled_report(sl2_normal_form(1, 0).higgs, h));
  }));
  out.push_back(run_case("hecke frame metric, weight 3/2", [&](VerifyCase& c) {
    HermitianGerm h = hecke_push_metric(LogPolarExpr(1), mpq_class(3) / 2, 1);
    require_decoupled(c, decoupled_report(sl2_normal_form(5, 1).higgs, h));
  }));
  out.push_back(run_case("hecke frame metric, conformal factor |w|^2", [&](VerifyCase& c) {
    HermitianGerm h = hecke_push_metric(LogPolarExpr::abs_pow(2), mpq_class(1) / 2, 0);
    require_decoupled(c, decoupled_report(sl2_normal_form(1, 0).higgs, h));
  }));

  struct PushInput {
    const char* name;
    int m, l;
  };
  for (PushInput in : {PushInput{"order-one zero", 1, 0}, PushInput{"order-three zero", 3, 1}}) {
    out.push_back(run_case(std::string("pushforward metric, ") + in.name, [&](VerifyCase& c) {
      LocalHiggsGerm e = sl2_normal_form(in.m, in.l);
      PushforwardResult push = pushforward_germ(e, 2);
      mpq_class half_n = mpq_class(in.m - 2 * in.l) / 2;
      HermitianGerm up = hermitian_germ(diag_profile(half_n));
      require_decoupled(c, decoupled_report(sl2_normal_form(in.m, in.l).higgs, up));
      HermitianGerm down = pushforward_metric(up, 2, push);
      require(c, down.rank == 4, "pushed metric rank is not 4");
      require_decoupled(c, decoupled_report(push.germ.higgs, down));
    }));
  }
  out.push_back(run_case("pushforward metric, unitary direct sum", [&](VerifyCase& c) {
    LocalHiggsGerm e;
    e.higgs = Mat<LaurentSeries>(2, 2);
    e.higgs(0, 0) = LaurentSeries(3);
    e.higgs(1, 1) = LaurentSeries(-3);
    e.form = standard_symplectic();
    PushforwardResult push = pushforward_germ(e, 2);
    HermitianGerm down =
        pushforward_metric(hermitian_germ(Mat<LogPolarExpr>::identity(2)), 2, push);
    require(c, down.rank == 4, "pushed metric rank is not 4");
    require_decoupled(c, decoupled_report(push.germ.higgs, down));
  }));

  if (opt.inject_corruption)
    out.push_back(run_case("corrupted normal form (injected fixture)", [&](VerifyCase& c) {
      Mat<LaurentSeries> nil(2, 2);
      nil(0, 1) = LaurentSeries(1);
      HermitianGerm h = hermitian_germ(Mat<LogPolarExpr>::identity(2));
      require_decoupled(c, decoupled_report(nil, h));
    }));

  return out;
}

int print_verify(const std::vector<VerifyCase>& cases, std::ostream& out) {
  int failures = 0;
  for (const auto& c : cases) {
    out << (c.pass ? "ok   " : "FAIL ") << c.name << "\n";
    if (!c.pass && !c.detail.empty()) {
      std::istringstream lines(c.detail);
      std::string line;
      while (std::getline(lines, line)) out << "  " << line << "\n";
      ++failures;
    } else if (!c.pass) {
      ++failures;
    }
  }
  out << cases.size() << " checks, " << failures << " failed\n";
  return failures;
}

}  // namespace atlas
