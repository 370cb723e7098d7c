#include "sscov/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "sscov/errors.hpp"

namespace sscov {

Eigen::MatrixXd sample_midpoints(const GridFunction& f, int resolution) {
  if (resolution < 1) throw InputError(fmt::format("grid resolution must be >= 1, got {}", resolution));
  Eigen::MatrixXd out(resolution, resolution);
  const double h = 1.0 / resolution;
  for (int a = 0; a < resolution; ++a) {
    for (int b = 0; b < resolution; ++b) out(a, b) = f((a + 0.5) * h, (b + 0.5) * h);
  }
  return out;
}

GridFunction piecewise_constant(Eigen::MatrixXd cells) {
  if (cells.size() == 0) throw InputError("empty grid");
  return [cells = std::move(cells)](double x, double u) {
    auto index = [](double t, Eigen::Index count) {
      const auto i = static_cast<Eigen::Index>(std::floor(t * static_cast<double>(count)));
      return std::clamp<Eigen::Index>(i, 0, count - 1);
    };
    return cells(index(x, cells.rows()), index(u, cells.cols()));
  };
}

Eigen::MatrixXd read_numeric_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open grid file '{}'", path));
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw ConfigError(fmt::format("{}:{}: '{}' is not a number", path, line_no, cell));
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ConfigError(fmt::format("{}:{}: ragged row ({} columns, expected {})", path, line_no,
                                    row.size(), rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError(fmt::format("grid file '{}' has no data", path));
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < rows[a].size(); ++b) m(a, b) = rows[a][b];
  }
  return m;
}

GridFunction load_grid_csv(const std::string& path) { return piecewise_constant(read_numeric_csv(path)); }

}  // namespace sscov
