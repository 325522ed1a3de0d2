#include "extomo/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "extomo/lorentz.hpp"

namespace extomo {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

void check_value(const KeySpec& k, const std::string& v) {
  switch (k.type) {
    case KeyType::integer: parse_integer(v); break;
    case KeyType::real: parse_real(v); break;
    case KeyType::reals: parse_reals(v); break;
    case KeyType::boolean: parse_bool(v); break;
    case KeyType::vector: parse_vector(v); break;
    case KeyType::text:
      if (!k.choices.empty() && std::find(k.choices.begin(), k.choices.end(), v) == k.choices.end()) {
        std::string all;
        for (const auto& c : k.choices) all += (all.empty() ? "" : "|") + c;
        throw InvalidArgument("key '" + k.name + "' must be one of " + all + ", got '" + v + "'");
      }
      break;
  }
}

}  // namespace

double parse_real(const std::string& s0) {
  std::string s = trim(s0);
  if (s == "inf" || s == "infinity") return kInf;
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size() && !std::isnan(v)) return v;
  } catch (const std::logic_error&) {
  }
  throw InvalidArgument("expected a real number, got '" + s0 + "'");
}

long parse_integer(const std::string& s0) {
  std::string s = trim(s0);
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw InvalidArgument("expected an integer, got '" + s0 + "'");
}

bool parse_bool(const std::string& s0) {
  std::string s = trim(s0);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw InvalidArgument("expected true/false, got '" + s0 + "'");
}

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
  if (out.empty()) throw InvalidArgument("expected a comma-separated list, got '" + s + "'");
  return out;
}

Vec parse_vector(const std::string& s) {
  std::vector<double> v = parse_reals(s);
  if (v.size() != 2 && v.size() != 3) throw InvalidArgument("expected 2 or 3 components, got '" + s + "'");
  return Vec(v[0], v[1], v.size() == 3 ? v[2] : 0.0);
}

RunConfig::RunConfig(std::string experiment, std::vector<KeySpec> schema)
    : experiment_(std::move(experiment)), schema_(std::move(schema)) {
  for (const auto& k : schema_) values_[k.name] = k.fallback;
}

const KeySpec& RunConfig::spec(const std::string& key) const {
  for (const auto& k : schema_)
    if (k.name == key) return k;
  throw InvalidArgument("unknown key '" + key + "' for experiment " + experiment_);
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const KeySpec& k = spec(key);
  std::string v = trim(value);
  check_value(k, v);
  values_[key] = v;
}

void RunConfig::load_text(const std::string& text, const std::string& origin) {
  std::istringstream is(text);
  std::string line;
  int no = 0;
  while (std::getline(is, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument(origin + ":" + std::to_string(no) + ": expected key=value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "experiment") {
      if (value != experiment_)
        throw InvalidArgument(origin + ": config is for '" + value + "', not '" + experiment_ + "'");
      continue;
    }
    if (key.rfind("tol.", 0) == 0) {
      tolerance_overrides[key.substr(4)] = parse_real(value);
      continue;
    }
    try {
      set(key, value);
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(origin + ":" + std::to_string(no) + ": " + e.what());
    }
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  load_text(ss.str(), path);
}

bool RunConfig::has(const std::string& key) const {
  return std::any_of(schema_.begin(), schema_.end(), [&](const KeySpec& k) { return k.name == key; });
}

std::string RunConfig::text(const std::string& key) const {
  spec(key);
  return values_.at(key);
}
long RunConfig::integer(const std::string& key) const { return parse_integer(text(key)); }
double RunConfig::real(const std::string& key) const { return parse_real(text(key)); }
std::vector<double> RunConfig::reals(const std::string& key) const { return parse_reals(text(key)); }
bool RunConfig::boolean(const std::string& key) const { return parse_bool(text(key)); }
Vec RunConfig::vector(const std::string& key) const { return parse_vector(text(key)); }

std::string RunConfig::echo() const {
  std::ostringstream os;
  os << "experiment=" << experiment_ << "\n";
  for (const auto& k : schema_) os << k.name << "=" << values_.at(k.name) << "\n";
  for (const auto& [m, b] : tolerance_overrides) os << "tol." << m << "=" << b << "\n";
  return os.str();
}

}  // namespace extomo
