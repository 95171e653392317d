#include "atlas/report.hpp"

#include <algorithm>
#include <sstream>

#include "atlas/version.hpp"
#include "json.hpp"

namespace atlas {
namespace {

using json = nlohmann::ordered_json;

std::string num(long v) { return std::to_string(v); }

// Stratum dimension decreases as the divisor degree grows, so the report
// order is: dimension descending, then divisor tuples lexicographic.
void sort_rows(std::vector<StratumRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const StratumRow& a, const StratumRow& b) { return a.dim > b.dim; });
}

std::string divisor_str(const HiggsDivisor& d, char sep) {
  std::string out;
  for (std::size_t i = 0; i < d.mult.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(d.mult[i]);
  }
  return out;
}

json divisor_json(const HiggsDivisor& d) {
  json a = json::array();
  for (int m : d.mult) a.push_back(std::to_string(m));
  return a;
}

json table_json(const StrataTable& t) {
  json out;
  out["side"] = side_name(t.side);
  out["zero_labels"] = t.zero_labels;
  json orders = json::array();
  for (int m : t.zero_orders) orders.push_back(num(m));
  out["zero_orders"] = orders;
  out["prym_dim"] = num(t.prym_dim);
  out["global_fibration"] = t.global_fibration;
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row;
    row["divisor"] = divisor_json(r.divisor);
    row["deg_D"] = num(r.deg);
    row["r"] = num(r.r);
    row["s"] = num(r.s);
    row["dim"] = num(r.dim);
    json torsor;
    torsor["base"] = r.torsor.base;
    torsor["components"] = num(r.torsor.components);
    torsor["covering_degree"] = num(r.torsor.covering_degree);
    torsor["twist_line"] = r.torsor.twist_line;
    torsor["dim"] = num(r.torsor.dim);
    row["torsor"] = torsor;
    rows.push_back(row);
  }
  out["rows"] = rows;
  return out;
}

json counts_json(const ComponentCounts& c) {
  json out;
  out["connected"] = num(c.connected);
  out["irreducible"] = num(c.irreducible);
  return out;
}

void markdown_table(std::ostringstream& md, const StrataTable& t) {
  md << "| divisor | deg D | r | s | dim | torsor | components | covering degree |\n";
  md << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : t.rows) {
    md << "| (" << divisor_str(r.divisor, ',') << ") | " << r.deg << " | " << r.r << " | "
       << r.s << " | " << r.dim << " | " << r.torsor.base << " | " << r.torsor.components
       << " | " << r.torsor.covering_degree << " |\n";
  }
}

}  // namespace

const char* fibre_kind_name(FibreKind k) {
  switch (k) {
    case FibreKind::Regular:
      return "regular";
    case FibreKind::Sl2Singular:
      return "sl2-singular";
    default:
      return "not-sl2";
  }
}

Report build_report(const RunConfig& cfg) {
  Report r;
  r.tool_version = version();
  r.config_sha256 = cfg.sha256;
  r.config_canonical = cfg.canonical;

  const BasePoint& bp = cfg.base;
  r.germ_mode = bp.germ_mode();
  if (r.germ_mode) r.classification = classify(bp);
  r.curve = curve_invariants(bp);

  r.sp = strata_table(bp, Side::Sp);
  r.so = strata_table(bp, Side::So);
  sort_rows(r.sp.rows);
  sort_rows(r.so.rows);
  r.counts_sp = component_counts(bp, Side::Sp);
  r.counts_so = component_counts(bp, Side::So);

  r.duality = duality_table(bp);
  std::stable_sort(r.duality.begin(), r.duality.end(),
                   [](const DualityRow& a, const DualityRow& b) { return a.dim_sp > b.dim_sp; });

  try {
    r.degeneration = first_degeneration(bp);
  } catch (const PreconditionError& e) {
    r.degeneration_note = e.what();
  }
  return r;
}

std::string report_json(const Report& r) {
  json out;
  out["atlas_version"] = r.tool_version;
  out["config_sha256"] = r.config_sha256;
  out["config"] = json::parse(r.config_canonical);

  json cls;
  cls["mode"] = r.germ_mode ? "germs" : "orders-only";
  if (r.classification) {
    cls["kind"] = fibre_kind_name(r.classification->kind);
    json zeros = json::array();
    for (const auto& z : r.classification->zeros) {
      json zo;
      zo["label"] = z.label;
      zo["order"] = num(z.order);
      zo["origin_multiplicity"] = num(z.origin_multiplicity);
      zo["two_sheets_at_origin"] = z.two_sheets_at_origin;
      zo["smooth_at_origin"] = z.smooth_at_origin;
      zo["off_origin_ok"] = z.off_origin_ok;
      zeros.push_back(zo);
    }
    cls["zeros"] = zeros;
  } else {
    cls["kind"] = "asserted";
  }
  out["classification"] = cls;

  json curve;
  curve["genus_quotient"] = num(r.curve.genus_quotient);
  curve["genus_spectral"] = num(r.curve.genus_spectral);
  curve["prym_dim"] = num(r.curve.prym_dim);
  curve["reduced_branch_degree"] = num(r.curve.deg_reduced_branch);
  curve["n_odd"] = num(r.curve.n_odd);
  curve["n_even"] = num(r.curve.n_even);
  out["curve"] = curve;

  json strata;
  strata["sp"] = table_json(r.sp);
  strata["so"] = table_json(r.so);
  out["strata"] = strata;

  json counts;
  counts["sp"] = counts_json(r.counts_sp);
  counts["so"] = counts_json(r.counts_so);
  out["component_counts"] = counts;

  json duality;
  json rows = json::array();
  bool all_hecke = true, all_abelian = true;
  for (const auto& d : r.duality) {
    json row;
    row["divisor"] = divisor_json(d.divisor);
    row["deg_D"] = num(d.deg);
    row["r_sp"] = num(d.r_sp);
    row["s_sp"] = num(d.s_sp);
    row["dim_sp"] = num(d.dim_sp);
    row["r_so"] = num(d.r_so);
    row["s_so"] = num(d.s_so);
    row["dim_so"] = num(d.dim_so);
    row["hecke_isomorphic"] = d.hecke_isomorphic;
    row["abelian_dual"] = d.abelian_dual;
    rows.push_back(row);
    all_hecke = all_hecke && d.hecke_isomorphic;
    all_abelian = all_abelian && d.abelian_dual;
  }
  duality["rows"] = rows;
  duality["all_hecke_isomorphic"] = all_hecke;
  duality["all_abelian_dual"] = all_abelian;
  out["duality"] = duality;

  json degen;
  degen["available"] = r.degeneration.has_value();
  if (r.degeneration) {
    json factors = json::array();
    for (std::size_t i = 0; i < r.degeneration->factor_per_zero.size(); ++i) {
      json f;
      f["zero"] = r.sp.zero_labels[i];
      f["order"] = num(r.sp.zero_orders[i]);
      f["factor"] = r.degeneration->factor_per_zero[i];
      factors.push_back(f);
    }
    degen["factors"] = factors;
    degen["product"] = r.degeneration->product;
  } else {
    degen["note"] = r.degeneration_note;
  }
  out["degeneration"] = degen;

  return out.dump(2) + "\n";
}

std::string report_markdown(const Report& r) {
  std::ostringstream md;
  md << "# atlas report\n\n";
  md << "- tool version: " << r.tool_version << "\n";
  md << "- config sha256: " << r.config_sha256 << "\n\n";

  md << "## configuration\n\n```json\n" << r.config_canonical << "```\n\n";

  md << "## classification\n\n";
  if (r.classification) {
    md << "- mode: coefficient germs\n";
    md << "- kind: " << fibre_kind_name(r.classification->kind) << "\n\n";
    md << "| zero | order | origin multiplicity | two sheets | smooth | off-origin ok |\n";
    md << "|---|---|---|---|---|---|\n";
    for (const auto& z : r.classification->zeros) {
      md << "| " << z.label << " | " << z.order << " | " << z.origin_multiplicity << " | "
         << (z.two_sheets_at_origin ? "yes" : "no") << " | "
         << (z.smooth_at_origin ? "yes" : "no") << " | " << (z.off_origin_ok ? "yes" : "no")
         << " |\n";
    }
    md << "\n";
  } else {
    md << "- mode: orders only\n";
    md << "- kind: asserted (the configuration carries no coefficient germs)\n\n";
  }

  md << "## curve invariants\n\n";
  md << "| quantity | value |\n|---|---|\n";
  md << "| genus of the quotient curve | " << r.curve.genus_quotient << " |\n";
  md << "| genus of the spectral curve | " << r.curve.genus_spectral << " |\n";
  md << "| prym dimension | " << r.curve.prym_dim << " |\n";
  md << "| reduced branch degree | " << r.curve.deg_reduced_branch << " |\n";
  md << "| odd zeros | " << r.curve.n_odd << " |\n";
  md << "| even zeros | " << r.curve.n_even << " |\n\n";

  for (const StrataTable* t : {&r.sp, &r.so}) {
    md << "## strata (" << side_name(t->side) << " side)\n\n";
    md << "- zeros: ";
    for (std::size_t i = 0; i < t->zero_labels.size(); ++i) {
      if (i) md << ", ";
      md << t->zero_labels[i] << " (order " << t->zero_orders[i] << ")";
    }
    md << "\n- prym dimension: " << t->prym_dim << "\n";
    md << "- global fibration: " << (t->global_fibration ? "yes" : "no") << "\n\n";
    markdown_table(md, *t);
    md << "\n";
  }

  md << "## component counts\n\n";
  md << "| side | connected | irreducible |\n|---|---|---|\n";
  md << "| sp | " << r.counts_sp.connected << " | " << r.counts_sp.irreducible << " |\n";
  md << "| so | " << r.counts_so.connected << " | " << r.counts_so.irreducible << " |\n\n";

  md << "## duality\n\n";
  md << "| divisor | deg D | (r, s) sp | (r, s) so | dim sp | dim so | hecke | abelian dual |\n";
  md << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& d : r.duality) {
    md << "| (" << divisor_str(d.divisor, ',') << ") | " << d.deg << " | (" << d.r_sp << ", "
       << d.s_sp << ") | (" << d.r_so << ", " << d.s_so << ") | " << d.dim_sp << " | "
       << d.dim_so << " | " << (d.hecke_isomorphic ? "pass" : "fail") << " | "
       << (d.abelian_dual ? "pass" : "fail") << " |\n";
  }
  md << "\n";

  md << "## first degeneration\n\n";
  if (r.degeneration) {
    md << "| zero | order | fibre factor |\n|---|---|---|\n";
    for (std::size_t i = 0; i < r.degeneration->factor_per_zero.size(); ++i) {
      md << "| " << r.sp.zero_labels[i] << " | " << r.sp.zero_orders[i] << " | "
         << r.degeneration->factor_per_zero[i] << " |\n";
    }
    md << "\n- product: " << r.degeneration->product << "\n";
  } else {
    md << "not available: " << r.degeneration_note << "\n";
  }
  return md.str();
}

std::string report_csv(const Report& r) {
  std::ostringstream csv;
  csv << "# atlas " << r.tool_version << "\n";
  csv << "# config sha256 " << r.config_sha256 << "\n";
  csv << "divisor,deg_D,r,s,dim,torsor_label,covering_degree,side\n";
  for (const StrataTable* t : {&r.sp, &r.so}) {
    for (const auto& row : t->rows) {
      csv << divisor_str(row.divisor, ';') << "," << row.deg << "," << row.r << "," << row.s
          << "," << row.dim << "," << row.torsor.base << "," << row.torsor.covering_degree
          << "," << side_name(t->side) << "\n";
    }
  }
  return csv.str();
}

}  // namespace atlas
