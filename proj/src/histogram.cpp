#include "sscov/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "sscov/errors.hpp"

namespace sscov {

namespace {

// Linear interpolation between order statistics.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::size_t bin_of(const std::vector<double>& edges, double v) {
  const auto it = std::upper_bound(edges.begin(), edges.end(), v);
  const auto idx = static_cast<std::size_t>(it - edges.begin());
  // idx - 1 is the bin; the right end of the last bin is closed.
  return std::min(idx, edges.size() - 1) - 1;
}

}  // namespace

std::uint64_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::string Histogram::csv() const {
  std::string out = "left_edge,right_edge,count\n";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out += fmt::format("{:.17g},{:.17g},{}\n", edges[i], edges[i + 1], counts[i]);
  }
  return out;
}

Histogram freedman_diaconis(std::vector<double> values) {
  if (values.empty()) throw InputError("histogram of an empty sample");
  for (double v : values) {
    if (!std::isfinite(v)) throw NumericalContractError("histogram sample has non-finite values");
  }
  std::sort(values.begin(), values.end());
  const double lo = values.front();
  const double hi = values.back();
  const double n = static_cast<double>(values.size());
  if (hi == lo) return with_edges(values, {lo, lo + 1.0});

  const double iqr = quantile(values, 0.75) - quantile(values, 0.25);
  int bins;
  if (iqr > 0) {
    const double width = 2.0 * iqr / std::cbrt(n);
    bins = static_cast<int>(std::min<double>(std::ceil((hi - lo) / width), kMaxHistogramBins));
  } else {
    bins = static_cast<int>(std::ceil(std::log2(n))) + 1;
  }
  bins = std::max(bins, 1);
  std::vector<double> edges(bins + 1);
  for (int i = 0; i <= bins; ++i) edges[i] = lo + (hi - lo) * i / bins;
  edges.back() = hi;
  return with_edges(values, std::move(edges));
}

Histogram with_edges(const std::vector<double>& values, std::vector<double> edges) {
  if (edges.size() < 2) throw InputError("histogram needs at least two edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) throw InputError("histogram edges must be strictly increasing");
  }
  Histogram h;
  h.counts.assign(edges.size() - 1, 0);
  for (double v : values) {
    if (v < edges.front() || v > edges.back()) {
      ++h.outside;
      continue;
    }
    ++h.counts[bin_of(edges, v)];
  }
  h.edges = std::move(edges);
  return h;
}

std::string gnuplot_script(const std::string& csv_path, const std::string& title) {
  return fmt::format(
      "set datafile separator ','\n"
      "set title '{}'\n"
      "set style fill solid 0.6\n"
      "set xlabel 'eigenvalue'\n"
      "set ylabel 'count'\n"
      "plot '{}' every ::1 using (($1+$2)/2):3:($2-$1) with boxes notitle\n",
      title, csv_path);
}

}  // namespace sscov
