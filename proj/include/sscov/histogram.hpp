#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sscov {

inline constexpr int kMaxHistogramBins = 2000;

struct Histogram {
  std::vector<double> edges;            // bins [edges[i], edges[i+1]); last bin closed
  std::vector<std::uint64_t> counts;
  std::uint64_t outside = 0;            // values outside explicit edges

  std::uint64_t total() const;
  std::string csv() const;              // left_edge,right_edge,count
};

/// Freedman-Diaconis bin width 2 IQR / N^{1/3}. Falls back to Sturges when
/// the IQR vanishes and caps the bin count at kMaxHistogramBins.
Histogram freedman_diaconis(std::vector<double> values);

/// Counts against caller-supplied strictly increasing edges.
Histogram with_edges(const std::vector<double>& values, std::vector<double> edges);

/// gnuplot script that plots a hist.csv file as boxes.
std::string gnuplot_script(const std::string& csv_path, const std::string& title);

}  // namespace sscov
