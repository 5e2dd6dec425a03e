#include "nlab/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nlab::cli {

namespace {

using nlohmann::json;

int edit_distance(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string suggestion(const std::string& key,
                       const std::vector<std::string>& known) {
  std::string best;
  int best_d = 1 << 20;
  for (const std::string& k : known) {
    const int d = edit_distance(key, k);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  if (!best.empty() && best_d <= 3) return "; did you mean '" + best + "'?";
  return "";
}

void reject_unknown_keys(const json& obj, const std::vector<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end())
      fail(ErrorCode::UnknownKey,
           "unknown key '" + key + "' in " + where + suggestion(key, known));
  }
}

double require_positive(const json& v, const std::string& what) {
  if (!v.is_number())
    fail(ErrorCode::BadValue, what + " must be a number");
  const double x = v.get<double>();
  if (!(x > 0)) fail(ErrorCode::BadValue, what + " must be positive");
  return x;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "consistency", "conservation", "converse", "algebra",
      "trajectory",  "qfock",        "qwave"};
  return names;
}

const std::map<std::string, double>& default_tolerances() {
  // Tolerance ladder: 1e-10 for pure dual-number identities, 1e-9 where
  // derived fields bring finite differences in, 1e-6 for grid residuals.
  static const std::map<std::string, double> defaults = {
      {"consistency", 1e-10},
      {"consistency_derived", 1e-9},
      {"conservation_pointwise", 1e-10},
      {"trajectory_drift", 5e-4},
      {"converse_roundtrip", 1e-10},
      {"generator", 1e-10},
      {"closure", 1e-9},
      {"jacobi", 1e-6},
      {"qfock_block", 1e-12},
      {"qfock_spectrum", 1e-10},
      {"qfock_constancy", 1e-7},
      {"qwave_residual", 1e-6},
      {"qwave_translate", 1e-9},
      {"qwave_expectation", 1e-6},
      {"qwave_overlap", 1e-5},
  };
  return defaults;
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) fail(ErrorCode::ParseError, "config root must be an object");

  const std::vector<std::string> top_keys = {
      "model", "params", "suites", "tolerances", "integrator", "seed", "output_dir"};
  reject_unknown_keys(root, top_keys, "config");

  RunConfig cfg;

  if (root.contains("model")) {
    if (!root["model"].is_string())
      fail(ErrorCode::BadValue, "'model' must be a string");
    cfg.model = root["model"].get<std::string>();
  }
  const auto known_models = models::model_names();
  if (std::find(known_models.begin(), known_models.end(), cfg.model) ==
      known_models.end())
    fail(ErrorCode::BadValue,
         "unknown model '" + cfg.model + "'" + suggestion(cfg.model, known_models));

  if (root.contains("params")) {
    if (!root["params"].is_object())
      fail(ErrorCode::BadValue, "'params' must be an object");
    for (const auto& [key, value] : root["params"].items()) {
      if (value.is_number()) {
        cfg.params.scalars[key] = value.get<double>();
      } else if (value.is_array()) {
        std::vector<double> vec;
        for (const auto& x : value) {
          if (!x.is_number())
            fail(ErrorCode::BadValue, "param '" + key + "' has a non-numeric entry");
          vec.push_back(x.get<double>());
        }
        cfg.params.vectors[key] = std::move(vec);
      } else {
        fail(ErrorCode::BadValue,
             "param '" + key + "' must be a number or an array of numbers");
      }
    }
  }

  if (root.contains("suites")) {
    if (!root["suites"].is_array())
      fail(ErrorCode::BadValue, "'suites' must be an array of suite names");
    for (const auto& s : root["suites"]) {
      if (!s.is_string()) fail(ErrorCode::BadValue, "suite names must be strings");
      const std::string name = s.get<std::string>();
      if (std::find(suite_names().begin(), suite_names().end(), name) ==
          suite_names().end())
        fail(ErrorCode::UnknownKey,
             "unknown suite '" + name + "'" + suggestion(name, suite_names()));
      cfg.suites.push_back(name);
    }
  } else {
    cfg.suites = {"consistency", "conservation", "converse", "algebra", "trajectory"};
  }

  cfg.tolerances = default_tolerances();
  if (root.contains("tolerances")) {
    if (!root["tolerances"].is_object())
      fail(ErrorCode::BadValue, "'tolerances' must be an object");
    std::vector<std::string> known;
    for (const auto& [key, value] : default_tolerances()) {
      (void)value;
      known.push_back(key);
    }
    reject_unknown_keys(root["tolerances"], known, "tolerances");
    for (const auto& [key, value] : root["tolerances"].items())
      cfg.tolerances[key] = require_positive(value, "tolerance '" + key + "'");
  }

  if (root.contains("integrator")) {
    if (!root["integrator"].is_object())
      fail(ErrorCode::BadValue, "'integrator' must be an object");
    reject_unknown_keys(root["integrator"], {"scheme", "h", "n"}, "integrator");
    const json& integ = root["integrator"];
    if (integ.contains("scheme")) {
      if (!integ["scheme"].is_string())
        fail(ErrorCode::BadValue, "integrator scheme must be a string");
      try {
        cfg.integrator.scheme = integrate::scheme_from_name(integ["scheme"]);
      } catch (const Error&) {
        fail(ErrorCode::BadValue,
             "integrator scheme must be one of verlet, midpoint, rk4");
      }
    }
    if (integ.contains("h")) cfg.integrator.h = require_positive(integ["h"], "integrator h");
    if (integ.contains("n")) {
      if (!integ["n"].is_number_integer())
        fail(ErrorCode::BadValue, "integrator n must be an integer");
      const long long n = integ["n"].get<long long>();
      if (n <= 0) fail(ErrorCode::BadValue, "integrator n must be positive");
      cfg.integrator.n = static_cast<int>(n);
    }
  }

  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer())
      fail(ErrorCode::BadValue, "'seed' must be a non-negative integer");
    const long long seed = root["seed"].get<long long>();
    if (seed < 0) fail(ErrorCode::BadValue, "'seed' must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(seed);
  }

  if (root.contains("output_dir")) {
    if (!root["output_dir"].is_string())
      fail(ErrorCode::BadValue, "'output_dir' must be a string");
    cfg.output_dir = root["output_dir"].get<std::string>();
  }

  // Canonical echo with defaults filled, for the report envelope.
  json echo;
  echo["model"] = cfg.model;
  for (const auto& [key, value] : cfg.params.scalars) echo["params"][key] = value;
  for (const auto& [key, value] : cfg.params.vectors) echo["params"][key] = value;
  echo["suites"] = cfg.suites;
  for (const auto& [key, value] : cfg.tolerances) echo["tolerances"][key] = value;
  echo["integrator"] = {{"scheme", integrate::scheme_name(cfg.integrator.scheme)},
                        {"h", cfg.integrator.h},
                        {"n", cfg.integrator.n}};
  echo["seed"] = cfg.seed;
  echo["output_dir"] = cfg.output_dir;
  cfg.echo = echo.dump();

  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::IoError, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

}  // namespace nlab::cli
