#pragma once

// CSV serialization of extremals.  One row per grid node with the columns
//
//   t, x{k}d{j} (k outer, j inner), z, psi{j}c{k} (j outer, k inner), psi_z
//
// e.g. for n = 2, m = 1:  t,x1d0,x1d1,x1d2,z,psi1c1,psi2c1,psi_z
//
// Values are written with enough digits to round-trip doubles exactly, so
// writing and re-reading a trajectory is lossless and byte-deterministic.

#include <iosfwd>
#include <string>

#include "herglotz/multipliers.hpp"
#include "herglotz/ode.hpp"
#include "herglotz/trajectory.hpp"

namespace herglotz {

struct TrajectoryData {
  Grid grid;
  GridFunction traj;   // TrajectoryLayout(n, m) components
  MultiplierSet mult;  // psi and psi_z on the same grid
  int n = 1;
  int m = 1;
};

std::string trajectory_csv_header(int n, int m);

void write_trajectory_csv(std::ostream& out, const Grid& grid,
                          const GridFunction& traj, const MultiplierSet& mult,
                          int n, int m);
void save_trajectory_csv(const std::string& path, const Grid& grid,
                         const GridFunction& traj, const MultiplierSet& mult,
                         int n, int m);

// Reads a CSV produced by write_trajectory_csv.  The header is validated
// against the expected layout for (n, m); a wrong column set raises
// ColumnMismatch.  The time column must be strictly increasing and uniform.
TrajectoryData read_trajectory_csv(std::istream& in, int n, int m);
TrajectoryData load_trajectory_csv(const std::string& path, int n, int m);

}  // namespace herglotz
