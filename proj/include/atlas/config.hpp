#pragma once

#include <stdexcept>
#include <string>

#include "atlas/spectral.hpp"

namespace atlas {

// Configuration file that does not match the schema: unknown or missing or
// mistyped keys, malformed coefficient strings. Carries the path of the
// offending key so the CLI can point at it. CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(key) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// A parsed configuration: the base point plus the canonical serialization it
// round-trips to and the digest of that serialization. Reports embed the
// digest, so byte-equal reports imply semantically equal inputs.
struct RunConfig {
  BasePoint base;
  std::string canonical;
  std::string sha256;
};

// Schema:
//   {"n": int, "g": int, "twist": "canonical" | int,
//    "irreducible_reduced": bool, "off_zero_branching": "simple" | "declared",
//    "zeros": [{"label": str, "order": int,
//               "germs": {"a2": str, ..., "a2n": str}   (optional)}],
//    "truncation_order": int   (optional, default max zero order + 4)}
// Germ values are exact coefficient series such as "3/2*z" or "(1/2+i*2)*z^2";
// a missing germ key means that coefficient vanishes identically. Unknown
// keys anywhere raise ConfigError naming the key. The structural checks of
// validate() run before returning, so degree mismatches and the like surface
// as ValidationError here rather than later.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Canonical form: schema key order, defaults made explicit, germs listed in
// ascending coefficient order. parse_config_text() of this returns an equal
// base point with the same canonical string.
std::string canonical_config(const BasePoint& bp);

std::string sha256_hex(const std::string& bytes);

}  // namespace atlas
