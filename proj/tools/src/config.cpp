// config.cpp — registry, file parsing, and typed accessors
#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>

namespace rabicli {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(trim(s.substr(start)));
      break;
    }
    out.push_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

}  // namespace

const std::vector<KeySpec>& key_registry() {
  static const std::vector<KeySpec> registry = {
      {"family", "twomode", "model family: twomode | kphoton"},
      {"omega", "1.0", "field frequency, must be positive"},
      {"delta", "0.0", "level splitting"},
      {"g", "0.0", "coupling strength (most commands need it nonzero)"},
      {"k", "1", "photon multiplicity, kphoton family only"},
      {"blocks", "all:2", "sector blocks: comma list of rationals, or all:N for the first N"},
      {"parity", "both", "parity sectors to run: plus | minus | both"},
      {"levels", "8", "levels requested per sector; sets the automatic window top"},
      {"e_min", "auto", "window floor (auto: -2 omega)"},
      {"e_max", "auto", "window top (auto: 2 omega (levels + 2 block), per block)"},
      {"grid", "auto", "scan grid points across the window (auto: step omega / 20)"},
      {"tol_refine", "1e-10", "bracket width target, relative to omega"},
      {"tol_confirm", "1e-8", "residual bound for accepting a root"},
      {"max_refine_iters", "200", "iteration cap per root refinement"},
      {"cf_tol", "1e-14", "continued-fraction convergence tolerance"},
      {"cf_max_terms", "100000", "continued-fraction iteration cap"},
      {"truncation", "400", "oracle basis size (ladder states per sector)"},
      {"truncations", "100,200,400,800", "convergence: comma list of ascending basis sizes"},
      {"conv_levels", "6", "convergence: number of levels tracked"},
      {"match_tol", "1e-8", "compare: oracle match tolerance, relative to omega"},
      {"energies", "auto", "diverge: comma list of probe energies (auto: 5 window midpoints)"},
      {"div_n_max", "2000", "diverge: norm-series length per probe energy"},
      {"div_min_log_gain", "0.002", "diverge: second-half log-gain above which a series is flagged"},
      {"wf_energy", "auto", "wavefunction: expansion energy (auto: lowest root in the window)"},
      {"wf_terms", "400", "wavefunction: coefficient series length"},
      {"wf_zmax", "4.0", "wavefunction: radial extent of the sample ray"},
      {"wf_samples", "81", "wavefunction: number of samples along the ray"},
      {"wf_angle_deg", "0.0", "wavefunction: ray angle in degrees"},
      {"out", "-", "output path, - for standard output"},
      {"format", "auto", "csv | json (auto: csv for tables, json for regime/blocks/diverge)"},
      {"trace", "false", "spectrum: also emit (energy, f_value, suspected_pole) grid samples"},
  };
  return registry;
}

Config::Config() {
  for (const auto& spec : key_registry()) {
    values_[spec.name] = spec.fallback;
  }
}

void Config::set(const std::string& key, const std::string& value) {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw UsageError("unknown configuration key '" + key + "' (see --help for the key list)");
  }
  it->second = trim(value);
}

void Config::set_pair(const std::string& key_equals_value) {
  const std::size_t pos = key_equals_value.find('=');
  if (pos == std::string::npos) {
    throw UsageError("--set expects key=value, got '" + key_equals_value + "'");
  }
  set(trim(key_equals_value.substr(0, pos)), key_equals_value.substr(pos + 1));
}

void Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot read config file '" + path + "'");
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[' && line.back() == ']') {
      continue;  // section headers group keys visually; the key space is flat
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      set(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const UsageError& err) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": " + err.what());
    }
  }
}

const std::string& Config::str(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw UsageError("unknown configuration key '" + key + "'");
  }
  return it->second;
}

double Config::num(const std::string& key) const {
  const std::string& text = str(key);
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
    throw UsageError("key '" + key + "': expected a number, got '" + text + "'");
  }
  return value;
}

int Config::integer(const std::string& key) const {
  const std::string& text = str(key);
  errno = 0;
  char* end = nullptr;
  const long value = std::strtol(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE) {
    throw UsageError("key '" + key + "': expected an integer, got '" + text + "'");
  }
  return static_cast<int>(value);
}

bool Config::flag(const std::string& key) const {
  const std::string& text = str(key);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw UsageError("key '" + key + "': expected a boolean, got '" + text + "'");
}

bool Config::is_auto(const std::string& key) const { return str(key) == "auto"; }

rabicf::model::Rational parse_rational(const std::string& text) {
  const std::string t = trim(text);
  const std::size_t slash = t.find('/');
  try {
    if (slash == std::string::npos) {
      return rabicf::model::Rational(std::stoll(t), 1);
    }
    return rabicf::model::Rational(std::stoll(t.substr(0, slash)),
                                   std::stoll(t.substr(slash + 1)));
  } catch (const std::exception&) {
    throw UsageError("expected a rational like 1/2 or 1, got '" + t + "'");
  }
}

rabicf::model::ModelParams Config::model_params() const {
  rabicf::model::ModelParams params;
  const std::string& family = str("family");
  if (family == "twomode") {
    params.family = rabicf::model::Family::TwoMode;
  } else if (family == "kphoton") {
    params.family = rabicf::model::Family::KPhoton;
  } else {
    throw UsageError("key 'family': expected twomode or kphoton, got '" + family + "'");
  }
  params.omega = num("omega");
  params.delta = num("delta");
  params.g = num("g");
  params.k = integer("k");
  try {
    params.validate();
  } catch (const std::invalid_argument& err) {
    throw UsageError(err.what());
  }
  return params;
}

std::vector<rabicf::model::SectorLabel> Config::sectors() const {
  const auto params = model_params();
  std::vector<rabicf::model::Rational> blocks;
  const std::string& spec = str("blocks");
  if (spec.rfind("all:", 0) == 0) {
    int count = 0;
    try {
      count = std::stoi(spec.substr(4));
    } catch (const std::exception&) {
      throw UsageError("key 'blocks': expected all:N, got '" + spec + "'");
    }
    if (count < 1) {
      throw UsageError("key 'blocks': all:N needs N >= 1");
    }
    blocks = rabicf::model::enumerate_blocks(params, count);
  } else {
    for (const auto& piece : split(spec, ',')) {
      if (piece.empty()) {
        throw UsageError("key 'blocks': empty entry in '" + spec + "'");
      }
      blocks.push_back(parse_rational(piece));
    }
  }

  const std::string& parity = str("parity");
  std::vector<rabicf::model::Parity> parities;
  if (parity == "plus") {
    parities = {rabicf::model::Parity::Plus};
  } else if (parity == "minus") {
    parities = {rabicf::model::Parity::Minus};
  } else if (parity == "both") {
    parities = {rabicf::model::Parity::Plus, rabicf::model::Parity::Minus};
  } else {
    throw UsageError("key 'parity': expected plus, minus, or both, got '" + parity + "'");
  }

  std::vector<rabicf::model::SectorLabel> out;
  for (const auto& block : blocks) {
    for (const auto p : parities) {
      rabicf::model::SectorLabel sector{block, p};
      try {
        rabicf::model::validate_sector(params, sector);
      } catch (const std::exception& err) {
        throw UsageError(std::string("key 'blocks': ") + err.what());
      }
      out.push_back(sector);
    }
  }
  return out;
}

std::vector<double> Config::num_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& piece : split(str(key), ',')) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(piece.c_str(), &end);
    if (piece.empty() || end == piece.c_str() || *end != '\0' || errno == ERANGE) {
      throw UsageError("key '" + key + "': expected comma-separated numbers, got '" +
                       str(key) + "'");
    }
    out.push_back(value);
  }
  return out;
}

std::vector<std::size_t> Config::size_list(const std::string& key) const {
  std::vector<std::size_t> out;
  for (const auto& piece : split(str(key), ',')) {
    errno = 0;
    char* end = nullptr;
    const long value = std::strtol(piece.c_str(), &end, 10);
    if (piece.empty() || end == piece.c_str() || *end != '\0' || errno == ERANGE || value < 1) {
      throw UsageError("key '" + key + "': expected comma-separated positive integers, got '" +
                       str(key) + "'");
    }
    out.push_back(static_cast<std::size_t>(value));
  }
  return out;
}

}  // namespace rabicli
