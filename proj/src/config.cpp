#include "atlas/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include <openssl/evp.h>

#include "json.hpp"

namespace atlas {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError(key, what);
}

const json& need(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing required key");
  return *it;
}

long get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<long>();
}

bool get_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected a boolean");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& path) {
  for (const auto& item : obj.items()) {
    bool known = std::any_of(allowed.begin(), allowed.end(),
                             [&](const char* k) { return item.key() == k; });
    if (!known) fail(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
  }
}

// Germ keys are "a2", "a4", ..., up to the top coefficient "a<2n>".
int germ_key_index(const std::string& key, int n, const std::string& path) {
  int val = 0;
  bool numeric = key.size() > 1 && key[0] == 'a' && key[1] != '0';
  for (std::size_t i = 1; numeric && i < key.size(); ++i) {
    if (key[i] < '0' || key[i] > '9' || val > 100) {
      numeric = false;
      break;
    }
    val = 10 * val + (key[i] - '0');
  }
  if (!numeric || val % 2 != 0 || val < 2 || val > 2 * n) {
    std::string hint;
    if (n <= 1)
      hint = "the only germ key is \"a2\"";
    else if (n == 2)
      hint = "germ keys are \"a2\" and \"a4\"";
    else
      hint = "germ keys are \"a2\", \"a4\", ..., \"a" + std::to_string(2 * n) + "\"";
    fail(path, "unknown key (" + hint + ")");
  }
  return val;
}

MarkedZero parse_zero(const json& v, int n, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  reject_unknown(v, {"label", "order", "germs"}, path);
  MarkedZero z;
  z.label = get_string(need(v, "label", path), path + ".label");
  z.order = static_cast<int>(get_int(need(v, "order", path), path + ".order"));
  auto git = v.find("germs");
  if (git != v.end()) {
    if (!git->is_object()) fail(path + ".germs", "expected an object");
    for (const auto& item : git->items()) {
      std::string gpath = path + ".germs." + item.key();
      int idx = germ_key_index(item.key(), n, gpath);
      auto series = LaurentSeries::parse(get_string(item.value(), gpath));
      if (!series) fail(gpath, "unparsable coefficient series");
      z.germs[idx] = *series;
    }
  }
  return z;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("", std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("", "top level must be an object");
  reject_unknown(j,
                 {"n", "g", "twist", "irreducible_reduced", "off_zero_branching",
                  "zeros", "truncation_order"},
                 "");

  BasePoint bp;
  bp.n = static_cast<int>(get_int(need(j, "n", ""), "n"));
  bp.g = static_cast<int>(get_int(need(j, "g", ""), "g"));

  const json& tw = need(j, "twist", "");
  if (tw.is_string() && tw.get<std::string>() == "canonical") {
    bp.canonical_twist = true;
  } else if (tw.is_number_integer()) {
    bp.canonical_twist = false;
    bp.twist_degree = static_cast<int>(tw.get<long>());
  } else {
    fail("twist", "expected \"canonical\" or an integer degree");
  }

  bp.irreducible_reduced = get_bool(need(j, "irreducible_reduced", ""), "irreducible_reduced");

  std::string mode = get_string(need(j, "off_zero_branching", ""), "off_zero_branching");
  if (mode == "simple")
    bp.branching = Branching::Simple;
  else if (mode == "declared")
    bp.branching = Branching::Declared;
  else
    fail("off_zero_branching", "expected \"simple\" or \"declared\"");

  const json& zs = need(j, "zeros", "");
  if (!zs.is_array()) fail("zeros", "expected an array");
  for (std::size_t i = 0; i < zs.size(); ++i)
    bp.zeros.push_back(parse_zero(zs[i], bp.n, "zeros[" + std::to_string(i) + "]"));

  int m_max = 0;
  for (const auto& z : bp.zeros) m_max = std::max(m_max, z.order);
  auto to = j.find("truncation_order");
  bp.truncation = to == j.end() ? m_max + 4 : get_int(*to, "truncation_order");

  validate(bp);

  RunConfig rc;
  rc.base = std::move(bp);
  rc.canonical = canonical_config(rc.base);
  rc.sha256 = sha256_hex(rc.canonical);
  return rc;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("", "cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string canonical_config(const BasePoint& bp) {
  json j;
  j["n"] = bp.n;
  j["g"] = bp.g;
  if (bp.canonical_twist)
    j["twist"] = "canonical";
  else
    j["twist"] = bp.twist_degree;
  j["irreducible_reduced"] = bp.irreducible_reduced;
  j["off_zero_branching"] = bp.branching == Branching::Simple ? "simple" : "declared";
  json zs = json::array();
  for (const auto& z : bp.zeros) {
    json zo;
    zo["label"] = z.label;
    zo["order"] = z.order;
    if (!z.germs.empty()) {
      json g;
      for (const auto& [idx, series] : z.germs) g["a" + std::to_string(idx)] = series.str();
      zo["germs"] = g;
    }
    zs.push_back(zo);
  }
  j["zeros"] = zs;
  long m_max = 0;
  for (const auto& z : bp.zeros) m_max = std::max(m_max, static_cast<long>(z.order));
  j["truncation_order"] = bp.truncation > 0 ? bp.truncation : m_max + 4;
  return j.dump(2) + "\n";
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

}  // namespace atlas
