#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sscov/histogram.hpp"

namespace sscov::ensemble {

inline constexpr std::uint64_t kDefaultSeed = 20230917;
inline constexpr int kMaxTracePower = 8;

enum class Family { IidStandardized, SparseBernoulli, TriangularIid, HeavyTailStable, VarianceProfile, DtTriangular };

std::string family_name(Family f);
Family parse_family(const std::string& name);

/// Entry truncation level t_n: none, a fixed value, or c * n^e.
struct Truncation {
  enum class Kind { None, Value, Power };
  Kind kind = Kind::None;
  double value = 0;     // Value
  double coefficient = 1, exponent = 0;  // Power: coefficient * n^exponent

  double level(int n) const;
  std::string str() const;
  /// "inf", "0.1", "n^-1/3", "2*n^-0.25".
  static Truncation parse(const std::string& text);
};

/// sigma(i, j, p, n) with 1-based i <= p, j <= n.
using ProfileFn = std::function<double(int, int, int, int)>;

struct ProfileSpec {
  std::string name = "constant";
  ProfileFn fn;

  /// fig1: (i+j)^2 / (2 n^2); fig2: sin(pi (i+j) / (2n)); upper_triangular:
  /// 1{i <= j}; constant:<c>; grid:<csv path> (cell lookup at (i/p, j/n)).
  static ProfileSpec parse(const std::string& text);
};

struct EnsembleConfig {
  Family family = Family::IidStandardized;
  int p = 100;
  int n = 200;
  Truncation t_n;
  std::uint64_t seed = kDefaultSeed;
  int replicates = 1;
  int threads = 0;  // 0: hardware concurrency

  double lambda = 3.0;            // SparseBernoulli
  std::vector<double> c_sequence; // TriangularIid: C_2, C_4, ...
  double alpha = 1.5;             // HeavyTailStable
  double B = 10.0;                // HeavyTailStable truncation in units of a_p
  ProfileSpec profile;            // VarianceProfile
  Family base = Family::IidStandardized;  // VarianceProfile base law

  int max_moment = 4;                     // K
  std::optional<std::vector<double>> bin_edges;

  /// Throws InputError on any out-of-range field.
  void validate() const;
};

/// Sampler-level description of the realized law (for reporting).
struct RealizedLaw {
  std::string description;
  std::vector<double> n_beta;  // n * E[x^{2k}], k = 1..4, when known
};

RealizedLaw realized_law(const EnsembleConfig& cfg);

/// a_p for a symmetric alpha-stable law via its Pareto tail surrogate:
/// P(|x| >= u) ~ (2/pi) Gamma(alpha) sin(pi alpha / 2) u^{-alpha}.
double stable_scale(double alpha, int p);

struct SampledMatrix {
  Eigen::MatrixXd X;         // truncated entries y_ij
  double truncation_mass = 0;       // (1/n) sum x^2 1{|x| > t_n}
  double centered_second_moment = 0;  // (1/p) sum (y^2 - E y^2); NaN if E y^2 unknown
};

/// Deterministic in (cfg.seed, replicate); entry (i, j) draws from its own
/// Philox stream keyed by the seed with counter (i*n + j, replicate).
SampledMatrix sample_matrix(const EnsembleConfig& cfg, int replicate);

/// (1/p) Tr(S^k), k = 1..K, accumulated as e_i' S^k e_i over column blocks.
std::vector<double> empirical_moments(const Eigen::MatrixXd& S, int K);

struct SpectralSample {
  int replicate = 0;
  std::uint64_t seed = 0;
  std::vector<double> eigenvalues;  // ascending, clamped at 0
  double min_raw_eigenvalue = 0;
  std::vector<double> moments;      // k = 1..K
  double truncation_mass = 0;
  double centered_second_moment = 0;
};

SpectralSample spectral_sample(const EnsembleConfig& cfg, int replicate);

struct ExperimentReport {
  EnsembleConfig config;
  RealizedLaw law;
  std::vector<SpectralSample> samples;  // replicate order
  std::vector<double> mean;
  std::vector<double> stderr_;
  Histogram histogram;
};

ExperimentReport run_experiment(const EnsembleConfig& cfg);

}  // namespace sscov::ensemble
