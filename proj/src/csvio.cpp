#include "nlab/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace nlab::csvio {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trajectory(const integrate::Trajectory& traj, std::ostream& os) {
  const int d = traj.states.empty() ? 0 : traj.states.front().dim();
  os << "t";
  for (int i = 0; i < d; ++i) os << ",q" << i;
  for (int i = 0; i < d; ++i) os << ",p" << i;
  os << "\n";
  for (const PhaseState& s : traj.states) {
    os << format_double(s.t);
    for (int i = 0; i < d; ++i) os << "," << format_double(s.q[i]);
    for (int i = 0; i < d; ++i) os << "," << format_double(s.p[i]);
    os << "\n";
  }
}

void write_trajectory_file(const integrate::Trajectory& traj,
                           const std::string& path) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  write_trajectory(traj, os);
  if (!os) fail(ErrorCode::IoError, "write failed for '" + path + "'");
}

void write_wavestate(const qwave::WaveState& s, std::ostream& os) {
  os << "p,re,im\n";
  for (int j = 0; j < s.grid.n; ++j)
    os << format_double(s.grid.p(j)) << "," << format_double(s.amps[j].real())
       << "," << format_double(s.amps[j].imag()) << "\n";
}

void write_wavestate_file(const qwave::WaveState& s, const std::string& path) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  write_wavestate(s, os);
  if (!os) fail(ErrorCode::IoError, "write failed for '" + path + "'");
}

std::vector<std::vector<double>> read_numeric_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace nlab::csvio
