#include "extomo/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "extomo/common.hpp"

namespace extomo {

bool Tolerance::check(double v) const {
  if (!std::isfinite(v)) return false;
  if (kind == "le") return v <= bound;
  if (kind == "ge") return v >= bound;
  if (kind == "abs_le") return std::abs(v - target) <= bound;
  if (kind == "rel_le") return std::abs(v - target) <= bound * std::abs(target);
  throw InvalidArgument("unknown tolerance kind: " + kind);
}

std::string Tolerance::describe() const {
  char buf[128];
  if (kind == "le") std::snprintf(buf, sizeof buf, "<= %.6g", bound);
  else if (kind == "ge") std::snprintf(buf, sizeof buf, ">= %.6g", bound);
  else if (kind == "abs_le") std::snprintf(buf, sizeof buf, "%.6g +- %.6g", target, bound);
  else std::snprintf(buf, sizeof buf, "%.6g +- %.3g rel", target, bound);
  return buf;
}

double apply_transform(const std::string& name, double v) {
  if (name == "id") return v;
  if (name == "log") return std::log(v);
  if (name == "neglog") return std::log(1.0 / v);
  if (name == "neglog2") return std::pow(std::log(1.0 / v), 2);
  throw InvalidArgument("unknown transform: " + name);
}

static double inverse_transform(const std::string& name, double v) {
  if (name == "id") return v;
  if (name == "log") return std::exp(v);
  throw InvalidArgument("no inverse for transform: " + name);
}

GrowthFit GrowthFit::fit(std::string x_label, std::vector<double> x, std::string y_label,
                         std::vector<double> y, std::string x_transform,
                         std::string y_transform) {
  GrowthFit g;
  g.x_label = std::move(x_label);
  g.y_label = std::move(y_label);
  g.x_transform = std::move(x_transform);
  g.y_transform = std::move(y_transform);
  g.x_raw = std::move(x);
  g.y_raw = std::move(y);
  for (double v : g.x_raw) g.abscissae.push_back(apply_transform(g.x_transform, v));
  for (double v : g.y_raw) g.ordinates.push_back(apply_transform(g.y_transform, v));
  LinearFit f = least_squares(g.abscissae, g.ordinates);
  g.slope = f.slope;
  g.intercept = f.intercept;
  g.r_squared = f.r_squared;
  return g;
}

double GrowthFit::fit_value(std::size_t i) const {
  return inverse_transform(y_transform, intercept + slope * abscissae.at(i));
}

json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    throw InvalidArgument("bad number in report: " + s);
  }
  return j.get<double>();
}

static json vec_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number_to_json(x));
  return a;
}

static std::vector<double> vec_from(const json& j) {
  std::vector<double> v;
  for (const auto& e : j) v.push_back(number_from_json(e));
  return v;
}

json GrowthFit::to_json() const {
  return json{{"x_label", x_label},       {"y_label", y_label},
              {"x_transform", x_transform}, {"y_transform", y_transform},
              {"x_raw", vec_json(x_raw)},  {"y_raw", vec_json(y_raw)},
              {"abscissae", vec_json(abscissae)}, {"ordinates", vec_json(ordinates)},
              {"slope", number_to_json(slope)}, {"intercept", number_to_json(intercept)},
              {"r_squared", number_to_json(r_squared)}};
}

GrowthFit GrowthFit::from_json(const json& j) {
  GrowthFit g;
  g.x_label = j.at("x_label");
  g.y_label = j.at("y_label");
  g.x_transform = j.at("x_transform");
  g.y_transform = j.at("y_transform");
  g.x_raw = vec_from(j.at("x_raw"));
  g.y_raw = vec_from(j.at("y_raw"));
  g.abscissae = vec_from(j.at("abscissae"));
  g.ordinates = vec_from(j.at("ordinates"));
  g.slope = number_from_json(j.at("slope"));
  g.intercept = number_from_json(j.at("intercept"));
  g.r_squared = number_from_json(j.at("r_squared"));
  return g;
}

void ExperimentReport::param(const std::string& key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  params[key] = buf;
}

bool ExperimentReport::evaluate() {
  pass = first_failure().empty();
  return pass;
}

std::string ExperimentReport::first_failure() const {
  for (const auto& [k, t] : tolerances) {
    auto it = metrics.find(k);
    double v = it == metrics.end() ? std::nan("") : it->second;
    if (!t.check(v)) {
      std::ostringstream os;
      os << k << "=" << v << " (" << t.describe() << ")";
      return os.str();
    }
  }
  return {};
}

json ExperimentReport::to_json() const {
  json j;
  j["name"] = name;
  j["params"] = params;
  json m = json::object();
  for (const auto& [k, v] : metrics) m[k] = number_to_json(v);
  j["metrics"] = m;
  j["seed"] = seed;
  j["pass"] = pass;
  json t = json::object();
  for (const auto& [k, v] : tolerances)
    t[k] = json{{"kind", v.kind}, {"bound", number_to_json(v.bound)},
                {"target", number_to_json(v.target)}};
  j["tolerances"] = t;
  json s = json::object();
  for (const auto& [k, v] : sweeps) s[k] = v.to_json();
  j["sweeps"] = s;
  j["flags"] = flags;
  return j;
}

ExperimentReport ExperimentReport::from_json(const json& j) {
  ExperimentReport r;
  r.name = j.at("name");
  r.params = j.at("params").get<std::map<std::string, std::string>>();
  for (const auto& [k, v] : j.at("metrics").items()) r.metrics[k] = number_from_json(v);
  r.seed = j.at("seed").get<std::uint64_t>();
  r.pass = j.at("pass");
  for (const auto& [k, v] : j.at("tolerances").items()) {
    Tolerance t;
    t.kind = v.at("kind");
    t.bound = number_from_json(v.at("bound"));
    t.target = number_from_json(v.at("target"));
    r.tolerances[k] = t;
  }
  if (j.contains("sweeps"))
    for (const auto& [k, v] : j.at("sweeps").items()) r.sweeps[k] = GrowthFit::from_json(v);
  if (j.contains("flags")) r.flags = j.at("flags").get<std::vector<std::string>>();
  return r;
}

std::string ExperimentReport::summary() const {
  std::ostringstream os;
  os << name << ": " << (pass ? "PASS" : "FAIL") << "\n";
  for (const auto& [k, v] : metrics) {
    os << "  " << k << " = " << v;
    auto it = tolerances.find(k);
    if (it != tolerances.end())
      os << "  [" << it->second.describe() << "] " << (it->second.check(v) ? "ok" : "FAIL");
    os << "\n";
  }
  for (const auto& [k, f] : sweeps)
    os << "  sweep " << k << ": slope=" << f.slope << " intercept=" << f.intercept
       << " r2=" << f.r_squared << "\n";
  for (const auto& f : flags) os << "  flag: " << f << "\n";
  return os.str();
}

}  // namespace extomo
