#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nlab/integrate.hpp"
#include "nlab/models.hpp"

namespace nlab::cli {

struct IntegratorConfig {
  integrate::Scheme scheme = integrate::Scheme::verlet;
  double h = 0.01;
  int n = 1000;
};

struct RunConfig {
  std::string model = "constant_force";
  models::ModelParams params;
  std::vector<std::string> suites;
  std::map<std::string, double> tolerances;  // defaults filled at parse time
  IntegratorConfig integrator;
  std::uint64_t seed = 42;
  std::string output_dir = "nlab-out";
  std::string echo;  // effective config as canonical JSON
};

const std::vector<std::string>& suite_names();
const std::map<std::string, double>& default_tolerances();

/// Strict parse: unknown keys anywhere are rejected (UnknownKey, with a
/// nearest-name suggestion), malformed JSON is ParseError, bad values
/// (h <= 0 and friends) are BadValue.  Defaults are filled in.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

}  // namespace nlab::cli
