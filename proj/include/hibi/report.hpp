#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "hibi/certify.hpp"
#include "hibi/classify.hpp"
#include "hibi/toric.hpp"

namespace hibi {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

/// One run of one command. Object keys serialize sorted, so equal reports
/// dump to identical bytes.
struct Report {
  std::string command;
  Json inputs = Json::object();
  Json verdict = Json::object();
  std::string scope;
  double seconds = 0.0;
  std::string tool_version = kToolVersion;
  int status = 0;

  Json to_json() const;
  static Report from_json(const Json& j);
  std::string dump() const;
  friend bool operator==(const Report&, const Report&) = default;
};

Json poset_json(const Poset& poset);
Json matrix_json(const Matrix& m);
Json classification_json(const Poset& poset, const Classification& c);
Json verdict_json(const Poset& poset, const Verdict& v);
Json dn_result_json(const Cone& cone, const PiExponent& a, const DnCheckResult& r);
Json theorem_c_json(const TheoremCReport& rep);

/// One file per (poset digest, command, parameters) under `dir`. Writes go
/// to a temporary file that is then renamed into place.
class ReportCache {
 public:
  explicit ReportCache(std::filesystem::path dir);
  std::filesystem::path path_for(const std::string& command, const Json& inputs) const;
  std::optional<Report> load(const std::string& command, const Json& inputs) const;
  void store(const Report& report) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace hibi
