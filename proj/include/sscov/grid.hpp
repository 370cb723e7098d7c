#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sscov {

/// A real function on [0,1]^2; first argument is the row (even-vertex)
/// coordinate, second the column (odd-vertex) coordinate.
using GridFunction = std::function<double(double, double)>;

/// Values at the midpoints of a uniform G x G grid:
/// out(a, b) = f((a + 1/2) / G, (b + 1/2) / G).
Eigen::MatrixXd sample_midpoints(const GridFunction& f, int resolution);

/// Piecewise-constant function over the cells of a rows x cols table: cell
/// (a, b) covers [a/rows, (a+1)/rows) x [b/cols, (b+1)/cols).
GridFunction piecewise_constant(Eigen::MatrixXd cells);

/// Reads a CSV table of numbers (no header; optional '#' comment lines) into
/// a piecewise-constant GridFunction. Rows index the first coordinate.
GridFunction load_grid_csv(const std::string& path);

Eigen::MatrixXd read_numeric_csv(const std::string& path);

}  // namespace sscov
