// Small SVG writer for the run artifacts: trajectory over isoline snapshots,
// measured value against the target level, and the switching signal.
#pragma once

#include <string>
#include <vector>

#include "isotrack/csvio.hpp"
#include "isotrack/geom.hpp"

namespace isotrack {

struct PlotFiles {
  std::vector<std::string> written;  // paths of every emitted file
};

/// Renders three SVG plots from a trajectory and writes the plain data series
/// each one was drawn from next to it (*.csv). Isoline snapshot circles are
/// taken from the "isoline_snapshots" metadata entry ("t:cx:cy:radius;...")
/// when present. Throws Error for an empty trajectory or unwritable paths;
/// a single-row trajectory degenerates to a dot but is accepted.
PlotFiles emit_plots(const TrajectoryFile& traj, const std::string& out_dir);

/// Serializes isoline snapshot circles into the metadata string format.
std::string encode_snapshots(const std::vector<std::pair<double, Circle>>& snaps);

}  // namespace isotrack
