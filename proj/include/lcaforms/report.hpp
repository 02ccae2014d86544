#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace lcaforms {

using Json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Skip };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

inline Status parse_status(const std::string& s) {
  if (s == "pass") return Status::Pass;
  if (s == "fail") return Status::Fail;
  if (s == "skip") return Status::Skip;
  throw std::invalid_argument("unknown status '" + s + "'");
}

inline Status status_of(bool ok) { return ok ? Status::Pass : Status::Fail; }

/// One verification case. A negative control records the status it is
/// expected to reach; the case counts toward the suite when status == expected.
struct Case {
  std::string id;
  Status status = Status::Pass;
  Status expected = Status::Pass;
  std::optional<double> residual;
  std::optional<double> tolerance;
  std::string detail;

  bool as_expected() const { return status == expected; }
  friend bool operator==(const Case&, const Case&) = default;
};

struct Report {
  std::string suite;
  std::vector<Case> cases;
  std::uint64_t seed = 0;
  Json config = Json::object();

  bool overall() const {
    for (const auto& c : cases) {
      if (!c.as_expected()) return false;
    }
    return true;
  }

  Case& add(Case c) { return cases.emplace_back(std::move(c)); }

  friend bool operator==(const Report& a, const Report& b) {
    return a.suite == b.suite && a.cases == b.cases && a.seed == b.seed && a.config == b.config;
  }
};

namespace detail {

inline Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline std::optional<double> read_optional_number(const Json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

}  // namespace detail

inline Json to_json(const Case& c) {
  Json j;
  j["id"] = c.id;
  j["status"] = to_string(c.status);
  j["expected"] = to_string(c.expected);
  j["residual"] = detail::optional_number(c.residual);
  j["tolerance"] = detail::optional_number(c.tolerance);
  j["detail"] = c.detail;
  return j;
}

inline Json to_json(const Report& r) {
  Json j;
  j["suite"] = r.suite;
  j["cases"] = Json::array();
  for (const auto& c : r.cases) j["cases"].push_back(to_json(c));
  j["overall"] = r.overall() ? "pass" : "fail";
  j["seed"] = r.seed;
  j["config"] = r.config;
  return j;
}

inline Case case_from_json(const Json& j) {
  Case c;
  c.id = j.at("id").get<std::string>();
  c.status = parse_status(j.at("status").get<std::string>());
  c.expected = j.contains("expected") ? parse_status(j.at("expected").get<std::string>())
                                      : Status::Pass;
  c.residual = detail::read_optional_number(j, "residual");
  c.tolerance = detail::read_optional_number(j, "tolerance");
  c.detail = j.at("detail").get<std::string>();
  return c;
}

/// Rejects reports whose stored overall status disagrees with the cases.
inline Report report_from_json(const Json& j) {
  Report r;
  r.suite = j.at("suite").get<std::string>();
  for (const auto& c : j.at("cases")) r.cases.push_back(case_from_json(c));
  r.seed = j.at("seed").get<std::uint64_t>();
  r.config = j.at("config");
  const auto overall = parse_status(j.at("overall").get<std::string>());
  if ((overall == Status::Pass) != r.overall()) {
    throw std::invalid_argument("overall status inconsistent with cases");
  }
  return r;
}

inline std::string serialize(const Report& r) { return to_json(r).dump(2) + "\n"; }

inline Report parse_report(const std::string& text) { return report_from_json(Json::parse(text)); }

}  // namespace lcaforms
