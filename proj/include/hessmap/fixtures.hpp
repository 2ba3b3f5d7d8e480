#pragma once

/// Fixture files: JSON under one directory, pinned by a SHA-256 manifest
/// (manifest.json, {"algorithm": "sha256", "files": {"path": "hex"}}).

#include <hessmap/curves.hpp>
#include <hessmap/hessian.hpp>
#include <hessmap/serialize.hpp>

#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hessmap {

/// Missing, unreadable, malformed or tampered fixture.
class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string default_fixture_dir() {
#ifdef HESSMAP_FIXTURE_DIR
  return HESSMAP_FIXTURE_DIR;
#else
  return "fixtures";
#endif
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw FixtureError("cannot read fixture " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

inline Json parse_fixture_json(const std::filesystem::path& p) {
  try {
    return Json::parse(read_file(p));
  } catch (const Json::exception& e) {
    throw FixtureError("malformed fixture " + p.string() + ": " + e.what());
  }
}

class FixtureStore {
 public:
  explicit FixtureStore(std::filesystem::path dir = default_fixture_dir()) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }

  /// Every file in the manifest with its recomputed hash; throws on mismatch.
  Json verify_manifest() const {
    const Json manifest = parse_fixture_json(dir_ / "manifest.json");
    if (manifest.value("algorithm", "") != "sha256") throw FixtureError("manifest must use sha256");
    Json out = Json::object();
    for (const auto& [name, expected] : manifest.at("files").items()) {
      const std::string actual = sha256_hex(read_file(dir_ / name));
      if (actual != expected.get<std::string>()) throw FixtureError("hash mismatch for fixture " + name);
      out[name] = actual;
    }
    return out;
  }

  /// Relative paths resolve inside the fixture directory unless they exist
  /// as given; a bare name also resolves to limit/<name>.json.
  std::filesystem::path resolve(const std::string& name) const {
    const std::filesystem::path p(name);
    if (std::filesystem::exists(p)) return p;
    if (std::filesystem::exists(dir_ / p)) return dir_ / p;
    if (!p.has_parent_path() && !p.has_extension()) {
      const auto limit = dir_ / "limit" / (name + ".json");
      if (std::filesystem::exists(limit)) return limit;
    }
    return dir_ / p;
  }

  Json load(const std::string& name) const { return parse_fixture_json(resolve(name)); }

  std::vector<IntegerPoint> omega(int family) const {
    try {
      const Json j = load("appendix/integral_points.json");
      std::vector<IntegerPoint> out;
      for (const auto& p : j.at("omega" + std::to_string(family)))
        out.emplace_back(p.at(0).get<long>(), p.at(1).get<long>());
      std::sort(out.begin(), out.end());
      return out;
    } catch (const Json::exception& e) {
      throw FixtureError(std::string("bad integral point fixture: ") + e.what());
    }
  }

  std::vector<ProjPoint> weierstrass_points(int family) const {
    try {
      const Json j = load("appendix/weierstrass_points.json");
      std::vector<ProjPoint> out;
      for (const auto& p : j.at("family" + std::to_string(family)).at("points"))
        out.emplace_back(rational_from_json(p.at(0)), rational_from_json(p.at(1)), rational_from_json(p.at(2)));
      return out;
    } catch (const Json::exception& e) {
      throw FixtureError(std::string("bad Weierstrass point fixture: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw FixtureError(std::string("bad Weierstrass point fixture: ") + e.what());
    }
  }

  Json seeds() const { return load("seeds.json"); }

  std::vector<std::string> limit_fixtures() const {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(dir_ / "limit"))
      if (e.path().extension() == ".json") out.push_back("limit/" + e.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::filesystem::path dir_;
};

struct LimitFixture {
  std::string name;
  int d = 0;
  TParameterForm family;
};

/// Reads {"name", "d", "family": {"slots": [...]}}; the family must have
/// x0^d at t^0, the degree must match and d >= 4.
inline LimitFixture parse_limit_fixture(const Json& j) {
  try {
    LimitFixture out;
    out.name = j.value("name", "unnamed");
    out.d = j.at("d").get<int>();
    out.family = tparameter_form_from_json(j.at("family"));
    if (out.family.degree() != out.d) throw FixtureError("limit fixture degree does not match its forms");
    if (out.d < 4) throw FixtureError("limit fixture needs d >= 4");
    if (out.family.nvars() != 3) throw FixtureError("limit fixture must be ternary");
    if (out.family.slot(0) != Form::monomial(Exponent{out.d, 0, 0}))
      throw FixtureError("limit fixture must have x0^d at t^0");
    return out;
  } catch (const Json::exception& e) {
    throw FixtureError(std::string("bad limit fixture: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FixtureError(std::string("bad limit fixture: ") + e.what());
  }
}

}  // namespace hessmap
