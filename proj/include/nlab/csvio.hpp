#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nlab/integrate.hpp"
#include "nlab/qwave.hpp"

namespace nlab::csvio {

/// Header `t,q0..q{d-1},p0..p{d-1}`, 17 significant digits per value.
void write_trajectory(const integrate::Trajectory& traj, std::ostream& os);
void write_trajectory_file(const integrate::Trajectory& traj,
                           const std::string& path);

/// Header `p,re,im`.
void write_wavestate(const qwave::WaveState& s, std::ostream& os);
void write_wavestate_file(const qwave::WaveState& s, const std::string& path);

/// Reads back a numeric CSV (first line treated as header).
std::vector<std::vector<double>> read_numeric_csv(std::istream& is);

std::string format_double(double x);

}  // namespace nlab::csvio
