#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace atlas {

// One verification check: a deterministic name, whether it passed, and on
// failure the mismatch (defect matrices, differing series) as printable text.
struct VerifyCase {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct VerifyOptions {
  // Zero-order bound for the (m, l) grids. Defaults per suite: 6 for the
  // local germ checks, 8 for the metric checks.
  std::optional<int> m_max;
  // Covering degree for the pushforward checks.
  long k = 2;
  // Adds a fixture that is broken on purpose (a nilpotent germ paired with
  // the identity metric), to exercise the failure path end to end.
  bool inject_corruption = false;
};

// Germ-level suite: normal-form pairings and characteristic polynomials,
// pushforward frames and norm identities, the double-cover roundtrip, and
// the rank-three kernel and modification checks.
std::vector<VerifyCase> verify_local(const VerifyOptions& opt);

// Metric suite: the rank-two and rank-three decoupled families over the full
// (m, l) grid, the hecke frame metrics, and the pushforward metrics.
std::vector<VerifyCase> verify_metrics(const VerifyOptions& opt);

// Prints one line per case plus a summary; returns the number of failures.
int print_verify(const std::vector<VerifyCase>& cases, std::ostream& out);

}  // namespace atlas
