// noether-lab: batch verification of Hamiltonian symmetries, conserved
// charges, and their quantum counterparts for the built-in model families.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include <json.hpp>

#include "nlab/csvio.hpp"
#include "nlab/parallel.hpp"
#include "nlab/poisson.hpp"
#include "nlab/suites.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using nlab::Error;
using nlab::ErrorCode;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::UnknownKey:
    case ErrorCode::BadValue:
      return 2;
    case ErrorCode::IoError:
      return 3;
    default:
      return 2;
  }
}

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

nlab::models::ModelParams params_from_json_text(const std::string& text) {
  nlab::models::ModelParams params;
  if (text.empty()) return params;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    nlab::fail(ErrorCode::ParseError, std::string("--params: ") + e.what());
  }
  for (const auto& [key, value] : j.items()) {
    if (value.is_number())
      params.scalars[key] = value.get<double>();
    else if (value.is_array())
      params.vectors[key] = value.get<std::vector<double>>();
    else
      nlab::fail(ErrorCode::BadValue, "--params entries must be numbers or arrays");
  }
  return params;
}

void apply_thread_cap() {
#ifdef _OPENMP
  const int cap = nlab::parallel::thread_cap();
  if (cap > 0) omp_set_num_threads(cap);
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noether-lab: machine checks for Hamiltonian Noether symmetries"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  long long seed_override = -1;
  auto* verify = app.add_subcommand("verify", "run verification suites from a config");
  verify->add_option("--config", config_path, "JSON run configuration")->required();
  verify->add_option("--out", out_dir, "output directory (overrides config)");
  verify->add_option("--seed", seed_override, "seed override");

  std::string model = "constant_force", params_text, q0_text, p0_text, scheme = "verlet";
  std::string traj_out = "trajectory.csv";
  double h = 0.01, t0 = 0.0;
  int n = 1000;
  auto* integrate_cmd = app.add_subcommand("integrate", "integrate and export a trajectory CSV");
  integrate_cmd->add_option("--model", model, "model name");
  integrate_cmd->add_option("--params", params_text, "model params as JSON");
  integrate_cmd->add_option("--h", h, "time step")->required();
  integrate_cmd->add_option("--n", n, "number of steps")->required();
  integrate_cmd->add_option("--q0", q0_text, "initial q, comma separated")->required();
  integrate_cmd->add_option("--p0", p0_text, "initial p, comma separated")->required();
  integrate_cmd->add_option("--t0", t0, "initial time");
  integrate_cmd->add_option("--scheme", scheme, "verlet|midpoint|rk4");
  integrate_cmd->add_option("--out", traj_out, "output CSV path");

  std::string obs_text = "H", q_text, p_text;
  double t_at = 0.0;
  auto* table_cmd = app.add_subcommand("table", "print a bracket table at a state");
  table_cmd->add_option("--model", model, "model name");
  table_cmd->add_option("--params", params_text, "model params as JSON");
  table_cmd->add_option("--obs", obs_text, "observable labels, comma separated")->required();
  table_cmd->add_option("--q", q_text, "state q, comma separated")->required();
  table_cmd->add_option("--p", p_text, "state p, comma separated")->required();
  table_cmd->add_option("--t", t_at, "state time");

  std::string qsuite = "qfock";
  auto* qcheck = app.add_subcommand("qcheck", "run a quantum suite from a config");
  qcheck->add_option("--suite", qsuite, "qfock|qwave")->required();
  qcheck->add_option("--config", config_path, "JSON run configuration")->required();
  qcheck->add_option("--out", out_dir, "output directory (overrides config)");

  CLI11_PARSE(app, argc, argv);
  apply_thread_cap();

  try {
    if (*verify) {
      nlab::cli::RunConfig cfg = nlab::cli::parse_config_file(config_path);
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
      const int rc = nlab::cli::run_and_write(cfg);
      std::cout << "report written to " << cfg.output_dir << "\n";
      return rc;
    }

    if (*integrate_cmd) {
      const auto params = params_from_json_text(params_text);
      const auto bundle = nlab::models::instantiate(model, params);
      const auto s0 = nlab::make_state(parse_csv_doubles(q0_text),
                                       parse_csv_doubles(p0_text), t0);
      nlab::integrate::Trajectory traj;
      switch (nlab::integrate::scheme_from_name(scheme)) {
        case nlab::integrate::Scheme::verlet:
          traj = nlab::integrate::verlet(bundle.sys, s0, h, n);
          break;
        case nlab::integrate::Scheme::midpoint:
          traj = nlab::integrate::midpoint(bundle.sys, s0, h, n);
          break;
        case nlab::integrate::Scheme::rk4:
          traj = nlab::integrate::rk4(bundle.sys, s0, h, n);
          break;
      }
      nlab::csvio::write_trajectory_file(traj, traj_out);
      std::cout << "trajectory (" << traj.size() << " states) written to "
                << traj_out << "\n";
      return 0;
    }

    if (*table_cmd) {
      const auto params = params_from_json_text(params_text);
      const auto bundle = nlab::models::instantiate(model, params);
      const auto s = nlab::make_state(parse_csv_doubles(q_text),
                                      parse_csv_doubles(p_text), t_at);
      std::vector<nlab::Observable> chosen;
      std::stringstream ss(obs_text);
      std::string label;
      while (std::getline(ss, label, ',')) {
        bool found = false;
        for (const auto& o : bundle.charges)
          if (o.label() == label) {
            chosen.push_back(o);
            found = true;
            break;
          }
        if (!found)
          nlab::fail(ErrorCode::BadValue, "model has no observable '" + label + "'");
      }
      const auto table = nlab::poisson::bracket_table(chosen, s);
      std::cout << "bracket table at t=" << s.t << "\n";
      for (std::size_t i = 0; i < table.labels.size(); ++i) {
        for (std::size_t j = 0; j < table.labels.size(); ++j)
          std::cout << (j ? "," : "") << nlab::csvio::format_double(table.values[i][j]);
        std::cout << "  # {" << table.labels[i] << ", .}\n";
      }
      return 0;
    }

    if (*qcheck) {
      nlab::cli::RunConfig cfg = nlab::cli::parse_config_file(config_path);
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      cfg.suites = {qsuite};
      return nlab::cli::run_and_write(cfg);
    }
  } catch (const Error& e) {
    std::cerr << "error [" << nlab::error_code_name(e.code()) << "]: " << e.what()
              << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
