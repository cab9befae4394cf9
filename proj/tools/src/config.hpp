// config.hpp — flat key = value run configuration with a fixed key registry
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rabicf/model.hpp"

namespace rabicli {

// A configuration problem the user can fix: unknown key, malformed value,
// unreadable file. Mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KeySpec {
  const char* name;
  const char* fallback;  // default value as written in --help
  const char* doc;
};

// Every configuration key the tool accepts, with its default and one-line
// documentation. The same table drives --help, validation, and defaults.
const std::vector<KeySpec>& key_registry();

// Flat key -> value store. Seeded with the registry defaults; a config file
// and --set overrides replace values. Unknown keys are a hard error at every
// layer (no silent typos).
class Config {
 public:
  Config();

  // `key = value` lines, blank lines, and `#` comments; optional [section]
  // headers are organizational only and are skipped.
  void load_file(const std::string& path);
  void set(const std::string& key, const std::string& value);  // throws UsageError
  void set_pair(const std::string& key_equals_value);          // "key=value" form

  const std::string& str(const std::string& key) const;
  double num(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  bool is_auto(const std::string& key) const;  // value equals "auto"

  // Typed views used by several commands.
  rabicf::model::ModelParams model_params() const;
  std::vector<rabicf::model::SectorLabel> sectors() const;
  std::vector<double> num_list(const std::string& key) const;
  std::vector<std::size_t> size_list(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
};

rabicf::model::Rational parse_rational(const std::string& text);

}  // namespace rabicli
