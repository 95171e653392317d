#pragma once

#include <optional>
#include <string>
#include <vector>

#include "atlas/config.hpp"
#include "atlas/strata.hpp"

namespace atlas {

// Everything the reporting commands print, computed once. Numeric values in
// the JSON form are serialized as strings so nothing ever passes through
// floating point; the Markdown and CSV forms print the same digits.
struct Report {
  std::string tool_version;
  std::string config_sha256;
  std::string config_canonical;

  bool germ_mode = false;
  std::optional<Classification> classification;  // germ mode only
  CurveInvariants curve;

  StrataTable sp;  // rows sorted by decreasing stratum dimension
  StrataTable so;
  ComponentCounts counts_sp, counts_so;
  std::vector<DualityRow> duality;

  std::optional<DegenerationModel> degeneration;
  std::string degeneration_note;  // why the model is unavailable, when it is
};

Report build_report(const RunConfig& cfg);

std::string report_json(const Report& r);
std::string report_markdown(const Report& r);
// One row per stratum, both sides, columns
// divisor,deg_D,r,s,dim,torsor_label,covering_degree,side. The version and
// config digest ride along as leading '#' comment lines.
std::string report_csv(const Report& r);

const char* fibre_kind_name(FibreKind k);

}  // namespace atlas
