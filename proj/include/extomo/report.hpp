#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace extomo {

using json = nlohmann::json;

// Pass rule attached to a metric.
//  le     : value <= bound
//  ge     : value >= bound
//  abs_le : |value - target| <= bound
//  rel_le : |value - target| <= bound * |target|
struct Tolerance {
  std::string kind = "le";
  double bound = 0;
  double target = 0;
  bool check(double v) const;
  std::string describe() const;
};

// Least-squares line through transformed data. Transforms: "id", "log"
// (log x), "neglog" (log 1/x), "neglog2" ((log 1/x)^2), "loglog" on y means
// log y.
struct GrowthFit {
  std::string x_label, y_label;
  std::string x_transform = "id", y_transform = "id";
  std::vector<double> x_raw, y_raw;
  std::vector<double> abscissae, ordinates;
  double slope = 0, intercept = 0, r_squared = 0;

  static GrowthFit fit(std::string x_label, std::vector<double> x, std::string y_label,
                       std::vector<double> y, std::string x_transform = "id",
                       std::string y_transform = "id");
  // Model value at sample i mapped back to the raw ordinate scale.
  double fit_value(std::size_t i) const;
  json to_json() const;
  static GrowthFit from_json(const json& j);
};

double apply_transform(const std::string& name, double v);

struct ExperimentReport {
  std::string name;
  std::map<std::string, std::string> params;
  std::map<std::string, double> metrics;
  std::uint64_t seed = 0;
  bool pass = false;
  std::map<std::string, Tolerance> tolerances;
  std::map<std::string, GrowthFit> sweeps;
  std::vector<std::string> flags;

  void metric(const std::string& key, double v) { metrics[key] = v; }
  void require(const std::string& key, Tolerance t) { tolerances[key] = std::move(t); }
  void param(const std::string& key, const std::string& v) { params[key] = v; }
  void param(const std::string& key, double v);
  // Recomputes pass from metrics and tolerances. A toleranced metric that
  // is missing or not finite fails.
  bool evaluate();
  // First failing metric as "key=value (rule)", empty when all pass.
  std::string first_failure() const;

  json to_json() const;
  static ExperimentReport from_json(const json& j);
  std::string summary() const;
};

// Doubles are written with 17 significant digits; non-finite values as strings.
json number_to_json(double v);
double number_from_json(const json& j);

}  // namespace extomo
