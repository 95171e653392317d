// Python bindings for the exact Hitchin-fibre toolkit. The surface mirrors
// the C++ headers: base points and classification, stratification and
// duality tables, local germ operations, the config/report pipeline and the
// verification sweeps. Metric internals stay native and are reachable
// through verify_metrics.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "atlas/config.hpp"
#include "atlas/errors.hpp"
#include "atlas/laurent.hpp"
#include "atlas/localmodels.hpp"
#include "atlas/report.hpp"
#include "atlas/spectral.hpp"
#include "atlas/strata.hpp"
#include "atlas/verify.hpp"
#include "atlas/version.hpp"

namespace py = pybind11;
using namespace atlas;

namespace {

LaurentSeries parse_series(const std::string& text) {
  auto s = LaurentSeries::parse(text);
  if (!s) throw py::value_error("unparsable series: " + text);
  return *s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "exact stratification tables and germ/metric verification for "
      "sl(2)-type symplectic Hitchin fibres";

  m.def("version", &version, "library version string");

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<PreconditionError>(m, "PreconditionError");
  py::register_exception<PrecisionError>(m, "PrecisionError");

  py::class_<LaurentSeries>(m, "Series",
                            "exact Laurent series over the Gaussian rationals")
      .def(py::init<>())
      .def(py::init<long>(), py::arg("constant"))
      .def(py::init(&parse_series), py::arg("text"))
      .def_static("parse", &parse_series, py::arg("text"))
      .def("order", &LaurentSeries::order)
      .def("is_exact", &LaurentSeries::is_exact)
      .def("is_exact_zero", &LaurentSeries::is_exact_zero)
      .def("known_nonzero", &LaurentSeries::known_nonzero)
      .def("shifted", &LaurentSeries::shifted, py::arg("k"))
      .def("truncated", &LaurentSeries::truncated, py::arg("trunc"))
      .def("str", &LaurentSeries::str, py::arg("var") = "z")
      .def("__str__", [](const LaurentSeries& s) { return s.str(); })
      .def("__repr__",
           [](const LaurentSeries& s) { return "Series(\"" + s.str() + "\")"; })
      .def(py::self == py::self)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self);

  py::class_<Mat<LaurentSeries>>(m, "SeriesMatrix")
      .def_property_readonly("rows", &Mat<LaurentSeries>::rows)
      .def_property_readonly("cols", &Mat<LaurentSeries>::cols)
      .def("__getitem__",
           [](const Mat<LaurentSeries>& a, std::pair<std::size_t, std::size_t> ij) {
             if (ij.first >= a.rows() || ij.second >= a.cols())
               throw py::index_error("matrix index out of range");
             return a(ij.first, ij.second);
           });

  py::enum_<Branching>(m, "Branching")
      .value("Simple", Branching::Simple)
      .value("Declared", Branching::Declared);
  py::enum_<FibreKind>(m, "FibreKind")
      .value("Regular", FibreKind::Regular)
      .value("Sl2Singular", FibreKind::Sl2Singular)
      .value("NotSl2", FibreKind::NotSl2);
  py::enum_<Side>(m, "Side").value("Sp", Side::Sp).value("So", Side::So);
  py::enum_<FormKind>(m, "FormKind")
      .value("Symplectic", FormKind::Symplectic)
      .value("Symmetric", FormKind::Symmetric);

  py::class_<MarkedZero>(m, "MarkedZero")
      .def(py::init<>())
      .def(py::init([](std::string label, int order,
                       std::map<int, LaurentSeries> germs) {
             MarkedZero z;
             z.label = std::move(label);
             z.order = order;
             z.germs = std::move(germs);
             return z;
           }),
           py::arg("label"), py::arg("order"),
           py::arg("germs") = std::map<int, LaurentSeries>{})
      .def_readwrite("label", &MarkedZero::label)
      .def_readwrite("order", &MarkedZero::order)
      .def_readwrite("germs", &MarkedZero::germs)
      .def("has_germs", &MarkedZero::has_germs);

  py::class_<BasePoint>(m, "BasePoint")
      .def(py::init<>())
      .def_readwrite("n", &BasePoint::n)
      .def_readwrite("g", &BasePoint::g)
      .def_readwrite("canonical_twist", &BasePoint::canonical_twist)
      .def_readwrite("twist_degree", &BasePoint::twist_degree)
      .def_readwrite("irreducible_reduced", &BasePoint::irreducible_reduced)
      .def_readwrite("branching", &BasePoint::branching)
      .def_readwrite("zeros", &BasePoint::zeros)
      .def_readwrite("truncation", &BasePoint::truncation)
      .def("deg_twist", &BasePoint::deg_twist)
      .def("deg_zeros", &BasePoint::deg_zeros)
      .def("germ_mode", &BasePoint::germ_mode)
      .def("n_odd", &BasePoint::n_odd)
      .def("n_even", &BasePoint::n_even);

  m.def("validate", &validate, py::arg("base"),
        "raise ValidationError when the base point data is inconsistent");

  py::class_<ZeroReport>(m, "ZeroReport")
      .def_readonly("label", &ZeroReport::label)
      .def_readonly("order", &ZeroReport::order)
      .def_readonly("origin_multiplicity", &ZeroReport::origin_multiplicity)
      .def_readonly("two_sheets_at_origin", &ZeroReport::two_sheets_at_origin)
      .def_readonly("smooth_at_origin", &ZeroReport::smooth_at_origin)
      .def_readonly("off_origin_ok", &ZeroReport::off_origin_ok);
  py::class_<Classification>(m, "Classification")
      .def_readonly("kind", &Classification::kind)
      .def_readonly("zeros", &Classification::zeros);
  m.def("classify", &classify, py::arg("base"));
  m.def("fibre_kind_name", &fibre_kind_name, py::arg("kind"));

  py::class_<DiscriminantGerms>(m, "DiscriminantGerms")
      .def_readonly("reduced", &DiscriminantGerms::reduced)
      .def_readonly("full", &DiscriminantGerms::full)
      .def_readonly("ord_reduced", &DiscriminantGerms::ord_reduced)
      .def_readonly("ord_full", &DiscriminantGerms::ord_full);
  m.def("discriminant_germs", &discriminant_germs, py::arg("base"),
        py::arg("zero"));

  py::class_<CurveInvariants>(m, "CurveInvariants")
      .def_readonly("genus_quotient", &CurveInvariants::genus_quotient)
      .def_readonly("genus_spectral", &CurveInvariants::genus_spectral)
      .def_readonly("prym_dim", &CurveInvariants::prym_dim)
      .def_readonly("deg_reduced_branch", &CurveInvariants::deg_reduced_branch)
      .def_readonly("n_odd", &CurveInvariants::n_odd)
      .def_readonly("n_even", &CurveInvariants::n_even);
  m.def("curve_invariants", &curve_invariants, py::arg("base"));

  py::class_<HiggsDivisor>(m, "HiggsDivisor")
      .def_readonly("mult", &HiggsDivisor::mult)
      .def("degree", &HiggsDivisor::degree);
  py::class_<TorsorInfo>(m, "TorsorInfo")
      .def_readonly("side", &TorsorInfo::side)
      .def_readonly("base", &TorsorInfo::base)
      .def_readonly("components", &TorsorInfo::components)
      .def_readonly("covering_degree", &TorsorInfo::covering_degree)
      .def_readonly("twist_line", &TorsorInfo::twist_line)
      .def_readonly("dim", &TorsorInfo::dim);
  py::class_<StratumRow>(m, "StratumRow")
      .def_readonly("divisor", &StratumRow::divisor)
      .def_readonly("deg", &StratumRow::deg)
      .def_readonly("r", &StratumRow::r)
      .def_readonly("s", &StratumRow::s)
      .def_readonly("dim", &StratumRow::dim)
      .def_readonly("torsor", &StratumRow::torsor);
  py::class_<StrataTable>(m, "StrataTable")
      .def_readonly("side", &StrataTable::side)
      .def_readonly("zero_labels", &StrataTable::zero_labels)
      .def_readonly("zero_orders", &StrataTable::zero_orders)
      .def_readonly("rows", &StrataTable::rows)
      .def_readonly("prym_dim", &StrataTable::prym_dim)
      .def_readonly("global_fibration", &StrataTable::global_fibration);
  m.def("strata_table", &strata_table, py::arg("base"), py::arg("side"));

  py::class_<ComponentCounts>(m, "ComponentCounts")
      .def_readonly("connected", &ComponentCounts::connected)
      .def_readonly("irreducible", &ComponentCounts::irreducible);
  m.def("component_counts", &component_counts, py::arg("base"), py::arg("side"));

  py::class_<DualityRow>(m, "DualityRow")
      .def_readonly("divisor", &DualityRow::divisor)
      .def_readonly("deg", &DualityRow::deg)
      .def_readonly("r_sp", &DualityRow::r_sp)
      .def_readonly("s_sp", &DualityRow::s_sp)
      .def_readonly("dim_sp", &DualityRow::dim_sp)
      .def_readonly("r_so", &DualityRow::r_so)
      .def_readonly("s_so", &DualityRow::s_so)
      .def_readonly("dim_so", &DualityRow::dim_so)
      .def_readonly("hecke_isomorphic", &DualityRow::hecke_isomorphic)
      .def_readonly("abelian_dual", &DualityRow::abelian_dual);
  m.def("duality_table", &duality_table, py::arg("base"));

  py::class_<DegenerationModel>(m, "DegenerationModel")
      .def_readonly("factor_per_zero", &DegenerationModel::factor_per_zero)
      .def_readonly("product", &DegenerationModel::product);
  m.def("first_degeneration", &first_degeneration, py::arg("base"));

  py::class_<LocalHiggsGerm>(m, "LocalHiggsGerm")
      .def_readonly("higgs", &LocalHiggsGerm::higgs)
      .def_readonly("form", &LocalHiggsGerm::form)
      .def_readonly("kind", &LocalHiggsGerm::kind);
  py::class_<PushforwardResult>(m, "PushforwardResult")
      .def_readonly("germ", &PushforwardResult::germ)
      .def_readonly("transition_exponents", &PushforwardResult::transition_exponents)
      .def_readonly("frame_twist_exponent", &PushforwardResult::frame_twist_exponent)
      .def_readonly("cover_degree", &PushforwardResult::cover_degree);
  py::class_<SoKernelData>(m, "SoKernelData")
      .def_readonly("kernel_section", &SoKernelData::kernel_section)
      .def_readonly("vanishing_order", &SoKernelData::vanishing_order)
      .def_readonly("form_on_kernel", &SoKernelData::form_on_kernel)
      .def_readonly("complement", &SoKernelData::complement);
  py::class_<SoHeckeResult>(m, "SoHeckeResult")
      .def_readonly("germ", &SoHeckeResult::germ)
      .def_readonly("torsion_length", &SoHeckeResult::torsion_length);

  m.def("check_pairing", &check_pairing, py::arg("germ"));
  m.def("sl2_normal_form", &sl2_normal_form, py::arg("m"), py::arg("l"));
  m.def("sp_normal_form", &sp_normal_form, py::arg("n"), py::arg("m"),
        py::arg("l"), py::arg("eigen"));
  m.def("so3_normal_form", &so3_normal_form, py::arg("m"), py::arg("l"));
  m.def("so3_from_sl2_adjoint", &so3_from_sl2_adjoint, py::arg("germ"));
  m.def("pushforward_germ", &pushforward_germ, py::arg("germ"), py::arg("k"),
        py::arg("twist_half_branch") = false);
  m.def("pullback_eigengerm", &pullback_eigengerm, py::arg("germ"),
        py::arg("b2"), py::arg("k"));
  m.def("so_kernel_data", &so_kernel_data, py::arg("germ"));
  m.def("so_hecke_reconstruct", &so_hecke_reconstruct, py::arg("kernel_data"),
        py::arg("m"), py::arg("l"));
  m.def("frame_equivalent", &frame_equivalent, py::arg("a"), py::arg("b"));
  m.def("char_poly_of", &char_poly_of, py::arg("germ"));
  m.def("norm_char_poly", &norm_char_poly, py::arg("germ"), py::arg("k"));

  py::class_<RunConfig>(m, "RunConfig")
      .def_readonly("base", &RunConfig::base)
      .def_readonly("canonical", &RunConfig::canonical)
      .def_readonly("sha256", &RunConfig::sha256);
  m.def("parse_config", &parse_config_text, py::arg("text"));
  m.def("parse_config_file", &parse_config_file, py::arg("path"));
  m.def("canonical_config", &canonical_config, py::arg("base"));
  m.def("sha256_hex", &sha256_hex, py::arg("data"));
  m.def(
      "report_json",
      [](const std::string& text) {
        return report_json(build_report(parse_config_text(text)));
      },
      py::arg("config_text"));
  m.def(
      "report_markdown",
      [](const std::string& text) {
        return report_markdown(build_report(parse_config_text(text)));
      },
      py::arg("config_text"));
  m.def(
      "report_csv",
      [](const std::string& text) {
        return report_csv(build_report(parse_config_text(text)));
      },
      py::arg("config_text"));

  py::class_<VerifyCase>(m, "VerifyCase")
      .def_readonly("name", &VerifyCase::name)
      .def_readonly("ok", &VerifyCase::pass)
      .def_readonly("detail", &VerifyCase::detail)
      .def("__repr__", [](const VerifyCase& c) {
        return "VerifyCase(\"" + c.name + "\", " + (c.pass ? "ok" : "FAIL") + ")";
      });
  m.def(
      "verify_local",
      [](std::optional<int> m_max, long k) {
        VerifyOptions o;
        o.m_max = m_max;
        o.k = k;
        return verify_local(o);
      },
      py::arg("m_max") = std::optional<int>{}, py::arg("k") = 2,
      "run the local germ checks; returns the individual cases");
  m.def(
      "verify_metrics",
      [](std::optional<int> m_max, bool inject_corruption) {
        VerifyOptions o;
        o.m_max = m_max;
        o.inject_corruption = inject_corruption;
        return verify_metrics(o);
      },
      py::arg("m_max") = std::optional<int>{},
      py::arg("inject_corruption") = false,
      "run the metric checks; returns the individual cases");
}
