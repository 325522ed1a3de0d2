#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "extomo/common.hpp"

namespace extomo {

enum class KeyType { integer, real, reals, text, boolean, vector };

struct KeySpec {
  std::string name;
  KeyType type = KeyType::real;
  std::string fallback;  // default, already in the key's text form
  std::string help;
  std::vector<std::string> choices;  // text keys only; empty means free text
};

// Flat key=value parameters of one experiment. Values are validated against
// the schema when set, so a config that loads is well typed.
class RunConfig {
 public:
  RunConfig() = default;
  RunConfig(std::string experiment, std::vector<KeySpec> schema);

  const std::string& experiment() const { return experiment_; }
  const std::vector<KeySpec>& schema() const { return schema_; }

  // Throws InvalidArgument for unknown keys or values of the wrong type.
  void set(const std::string& key, const std::string& value);
  // Lines "key = value"; '#' starts a comment. An "experiment" line must
  // match experiment().
  void load_text(const std::string& text, const std::string& origin = "config");
  void load_file(const std::string& path);

  bool has(const std::string& key) const;
  std::string text(const std::string& key) const;
  long integer(const std::string& key) const;
  double real(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  bool boolean(const std::string& key) const;
  Vec vector(const std::string& key) const;
  std::uint64_t seed() const { return static_cast<std::uint64_t>(integer("seed")); }

  // Tolerance overrides "metric=bound" applied to a report's requirements.
  std::map<std::string, double> tolerance_overrides;

  // Every key with its resolved value, one "key=value" per line.
  std::string echo() const;

 private:
  const KeySpec& spec(const std::string& key) const;
  std::string experiment_;
  std::vector<KeySpec> schema_;
  std::map<std::string, std::string> values_;
};

// Typed parsing shared by the config and the CLI. All throw InvalidArgument.
double parse_real(const std::string& s);
long parse_integer(const std::string& s);
bool parse_bool(const std::string& s);
std::vector<double> parse_reals(const std::string& s);  // "1,2,4" ; "inf" allowed
Vec parse_vector(const std::string& s);                 // 2 or 3 comma-separated reals

}  // namespace extomo
