// Trajectory CSV serialization. Metadata rides in '#'-prefixed comment lines
// ("# key = value") above a fixed header row.
#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "isotrack/sim.hpp"

namespace isotrack {

using Metadata = std::map<std::string, std::string>;

/// Writes metadata comments, the column header and one full-precision row per
/// sample. Columns: t,x,y,theta,d,d_dot,u,s and, with diagnostics,
/// lambda,rho,kappa,omega.
void write_trajectory(std::ostream& out, const SimResult& result, const Metadata& meta);

std::string trajectory_to_string(const SimResult& result, const Metadata& meta);

struct TrajectoryFile {
  Metadata meta;
  std::vector<TrajectoryRow> rows;
  bool diagnostics = false;
};

/// Parses what write_trajectory produced. Throws Error on malformed input.
TrajectoryFile read_trajectory(std::istream& in);

TrajectoryFile read_trajectory_file(const std::string& path);
void write_trajectory_file(const std::string& path, const SimResult& result,
                           const Metadata& meta);

}  // namespace isotrack
