#include "herglotz/trajectory_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "herglotz/errors.hpp"

namespace herglotz {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_cell(const std::string& cell, std::size_t row) {
  const char* s = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0')
    throw FileFormatError("bad numeric cell '" + cell + "' in CSV row " +
                          std::to_string(row));
  if (!std::isfinite(v))
    throw FileFormatError("non-finite value in CSV row " + std::to_string(row));
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

std::string trajectory_csv_header(int n, int m) {
  std::string h = "t";
  for (int k = 1; k <= m; ++k)
    for (int j = 0; j <= n; ++j)
      h += ",x" + std::to_string(k) + "d" + std::to_string(j);
  h += ",z";
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= m; ++k)
      h += ",psi" + std::to_string(j) + "c" + std::to_string(k);
  h += ",psi_z";
  return h;
}

void write_trajectory_csv(std::ostream& out, const Grid& grid,
                          const GridFunction& traj, const MultiplierSet& mult,
                          int n, int m) {
  const TrajectoryLayout lay{n, m};
  if (traj.comps() != lay.comps())
    throw ColumnMismatch("trajectory component count does not match (order, dim)");
  if (mult.psi.comps() != static_cast<std::size_t>(n) * static_cast<std::size_t>(m))
    throw ColumnMismatch("multiplier component count does not match (order, dim)");

  out << trajectory_csv_header(n, m) << "\n";
  const std::size_t N = grid.nodes;
  for (std::size_t i = 0; i < N; ++i) {
    out << format_double(grid.t(i));
    for (int k = 1; k <= m; ++k)
      for (int j = 0; j <= n; ++j)
        out << ',' << format_double(traj.at(i, lay.x_comp(k, j)));
    out << ',' << format_double(traj.at(i, lay.z_comp()));
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= m; ++k)
        out << ',' << format_double(mult.psi.at(i, mult.psi_comp(j, k)));
    out << ',' << format_double(mult.psi_z.at(i, 0));
    out << "\n";
  }
}

void save_trajectory_csv(const std::string& path, const Grid& grid,
                         const GridFunction& traj, const MultiplierSet& mult,
                         int n, int m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileFormatError("cannot open '" + path + "' for writing");
  write_trajectory_csv(out, grid, traj, mult, n, m);
  if (!out) throw FileFormatError("write failure on '" + path + "'");
}

TrajectoryData read_trajectory_csv(std::istream& in, int n, int m) {
  if (n < 1 || m < 1) throw DimensionMismatch("order and dim must be at least 1");
  std::string line;
  if (!std::getline(in, line)) throw FileFormatError("empty trajectory CSV");
  {
    // Tolerate a trailing '\r' from CRLF files.
    std::string header = line;
    if (!header.empty() && header.back() == '\r') header.pop_back();
    const std::string expected = trajectory_csv_header(n, m);
    if (header != expected)
      throw ColumnMismatch("trajectory CSV header '" + header +
                           "' does not match expected '" + expected + "'");
  }

  const TrajectoryLayout lay{n, m};
  const std::size_t ncols = 1 + lay.comps() + static_cast<std::size_t>(n) * m + 1;
  std::vector<std::vector<double>> rows;
  std::size_t rowno = 1;
  while (std::getline(in, line)) {
    ++rowno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != ncols)
      throw ColumnMismatch("CSV row " + std::to_string(rowno) + " has " +
                           std::to_string(cells.size()) + " columns, expected " +
                           std::to_string(ncols));
    std::vector<double> vals;
    vals.reserve(ncols);
    for (const auto& c : cells) vals.push_back(parse_cell(c, rowno));
    rows.push_back(std::move(vals));
  }
  if (rows.size() < 3) throw GridTooCoarse("trajectory CSV needs at least 3 rows");

  const std::size_t N = rows.size();
  const double a = rows.front()[0];
  const double b = rows.back()[0];
  const Grid grid = Grid::uniform(a, b, N);
  const double tol = 1e-9 * (std::abs(b - a) + 1.0);
  for (std::size_t i = 0; i < N; ++i) {
    if (i > 0 && !(rows[i][0] > rows[i - 1][0]))
      throw FileFormatError("time column must be strictly increasing (row " +
                            std::to_string(i + 2) + ")");
    if (std::abs(rows[i][0] - grid.t(i)) > tol)
      throw FileFormatError("time column is not uniformly spaced (row " +
                            std::to_string(i + 2) + ")");
  }

  TrajectoryData data{
      grid, GridFunction(grid, lay.comps()),
      MultiplierSet{n, m, GridFunction(grid, static_cast<std::size_t>(n) * m),
                    GridFunction(grid, 1)},
      n, m};
  for (std::size_t i = 0; i < N; ++i) {
    std::size_t c = 1;
    for (int k = 1; k <= m; ++k)
      for (int j = 0; j <= n; ++j) data.traj.at(i, lay.x_comp(k, j)) = rows[i][c++];
    data.traj.at(i, lay.z_comp()) = rows[i][c++];
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= m; ++k)
        data.mult.psi.at(i, data.mult.psi_comp(j, k)) = rows[i][c++];
    data.mult.psi_z.at(i, 0) = rows[i][c++];
  }
  return data;
}

TrajectoryData load_trajectory_csv(const std::string& path, int n, int m) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileFormatError("cannot open trajectory CSV '" + path + "'");
  return read_trajectory_csv(in, n, m);
}

}  // namespace herglotz
