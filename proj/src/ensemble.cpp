#include "sscov/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include <fmt/format.h>

#include "sscov/errors.hpp"
#include "sscov/grid.hpp"
#include "sscov/philox.hpp"
#include "sscov/symmetric_eigen.hpp"

namespace sscov::ensemble {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  const auto slash = t.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      const double num = std::stod(t.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(t);
      const std::string rest = t.substr(slash + 1);
      const double den = std::stod(rest, &used);
      if (used != rest.size() || den == 0) throw std::invalid_argument(t);
      return num / den;
    }
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw InputError(fmt::format("{}: '{}' is not a number", what, text));
  }
}

// E[Z^2 1{|Z| <= c}] for standard normal Z.
double truncated_normal_second(double c) {
  if (std::isinf(c)) return 1.0;
  const double phi = std::exp(-0.5 * c * c) / std::sqrt(2.0 * std::numbers::pi);
  return std::erf(c / std::numbers::sqrt2) - 2.0 * c * phi;
}

double double_factorial_odd(int k) {  // (2k-1)!!
  double out = 1;
  for (int i = 1; i <= 2 * k - 1; i += 2) out *= i;
  return out;
}

// Two-point realization of a C-sequence: symmetric atoms +-a with total mass
// q/n, so n E[x^{2k}] = q a^{2k}; matches C_2 and C_4 exactly.
struct AtomLaw {
  double a = 0;
  double q = 0;
};

AtomLaw atom_law(const std::vector<double>& c) {
  return {std::sqrt(c[1] / c[0]), c[0] * c[0] / c[1]};
}

bool gaussian_triangular(const EnsembleConfig& cfg) { return cfg.c_sequence.size() < 2; }

bool uses_law(const EnsembleConfig& cfg, Family f) {
  return cfg.family == f || (cfg.family == Family::VarianceProfile && cfg.base == f);
}

// Value of one entry before t_n truncation, and E[y^2] of the entry after
// truncation at t when it has a closed form.
struct EntryDraw {
  double x = 0;
  double second_moment = kNaN;
};

class EntryLaw {
 public:
  explicit EntryLaw(const EnsembleConfig& cfg) : cfg_(cfg), t_(cfg.t_n.level(cfg.n)) {
    if (cfg.family == Family::HeavyTailStable) a_p_ = stable_scale(cfg.alpha, cfg.p);
    if (uses_law(cfg, Family::TriangularIid)) {
      if (!gaussian_triangular(cfg)) atoms_ = atom_law(cfg.c_sequence);
    }
    if (cfg.family == Family::DtTriangular) {
      profile_ = [](int i, int j, int, int) { return i <= j ? 1.0 : 0.0; };
    } else if (cfg.family == Family::VarianceProfile) {
      profile_ = cfg.profile.fn;
    }
  }

  EntryDraw draw(rng::Stream& s, int i, int j) const {
    switch (cfg_.family) {
      case Family::HeavyTailStable:
        return {heavy_tail(s), kNaN};
      case Family::VarianceProfile:
        return scaled(s, cfg_.base, profile_(i, j, cfg_.p, cfg_.n));
      case Family::DtTriangular:
        return scaled(s, Family::IidStandardized, profile_(i, j, cfg_.p, cfg_.n));
      default:
        return scaled(s, cfg_.family, 1.0);
    }
  }

 private:
  EntryDraw scaled(rng::Stream& s, Family base, double sigma) const {
    const double n = cfg_.n;
    switch (base) {
      case Family::IidStandardized: {
        const double sd = std::abs(sigma) / std::sqrt(n);
        return {sigma * s.normal() / std::sqrt(n), sd == 0 ? 0.0 : sd * sd * truncated_normal_second(t_ / sd)};
      }
      case Family::SparseBernoulli: {
        const double x = s.uniform() < cfg_.lambda / n ? sigma : 0.0;
        return {x, std::abs(sigma) <= t_ ? cfg_.lambda / n * sigma * sigma : 0.0};
      }
      case Family::TriangularIid: {
        if (gaussian_triangular(cfg_)) {
          const double sd = std::abs(sigma) * std::sqrt(cfg_.c_sequence[0] / n);
          return {sigma * std::sqrt(cfg_.c_sequence[0] / n) * s.normal(),
                  sd == 0 ? 0.0 : sd * sd * truncated_normal_second(t_ / sd)};
        }
        const double u = s.uniform();
        const double sign = s.uniform() < 0.5 ? -1.0 : 1.0;
        const double v = sigma * atoms_.a;
        return {u < atoms_.q / n ? sign * v : 0.0, std::abs(v) <= t_ ? atoms_.q / n * v * v : 0.0};
      }
      default:
        throw InputError(fmt::format("'{}' cannot be used as a base law", family_name(base)));
    }
  }

  // Chambers-Mallows-Stuck, symmetric case, scaled by a_p and cut at B.
  double heavy_tail(rng::Stream& s) const {
    const double alpha = cfg_.alpha;
    const double v = std::numbers::pi * (s.uniform() - 0.5);
    const double w = s.exponential();
    double x;
    if (alpha == 1.0) {
      x = std::tan(v);
    } else {
      x = std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
          std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
    }
    const double scaled = x / a_p_;
    return std::abs(scaled) <= cfg_.B ? scaled : 0.0;
  }

  const EnsembleConfig& cfg_;
  double t_;
  double a_p_ = 1;
  AtomLaw atoms_;
  ProfileFn profile_;
};

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::IidStandardized: return "iid";
    case Family::SparseBernoulli: return "sparse_bernoulli";
    case Family::TriangularIid: return "triangular_iid";
    case Family::HeavyTailStable: return "heavy_tail_stable";
    case Family::VarianceProfile: return "variance_profile";
    case Family::DtTriangular: return "dt_triangular";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::IidStandardized, Family::SparseBernoulli, Family::TriangularIid,
                   Family::HeavyTailStable, Family::VarianceProfile, Family::DtTriangular}) {
    if (family_name(f) == name) return f;
  }
  throw InputError(fmt::format(
      "unknown family '{}' (iid, sparse_bernoulli, triangular_iid, heavy_tail_stable, variance_profile, "
      "dt_triangular)",
      name));
}

double Truncation::level(int n) const {
  switch (kind) {
    case Kind::None: return kInf;
    case Kind::Value: return value;
    case Kind::Power: return coefficient * std::pow(static_cast<double>(n), exponent);
  }
  return kInf;
}

std::string Truncation::str() const {
  switch (kind) {
    case Kind::None: return "inf";
    case Kind::Value: return fmt::format("{:.17g}", value);
    case Kind::Power:
      return coefficient == 1 ? fmt::format("n^{:.17g}", exponent)
                              : fmt::format("{:.17g}*n^{:.17g}", coefficient, exponent);
  }
  return "inf";
}

Truncation Truncation::parse(const std::string& text) {
  const std::string t = trim(text);
  Truncation out;
  if (t == "inf" || t == "infinity" || t == "none" || t.empty()) return out;
  const auto caret = t.find("n^");
  if (caret != std::string::npos) {
    out.kind = Kind::Power;
    std::string head = trim(t.substr(0, caret));
    if (!head.empty()) {
      if (head.back() != '*') throw InputError(fmt::format("truncation '{}': expected c*n^e", text));
      head.pop_back();
      out.coefficient = parse_number(head, "truncation coefficient");
    }
    out.exponent = parse_number(t.substr(caret + 2), "truncation exponent");
    if (!(out.coefficient > 0)) throw InputError("truncation coefficient must be positive");
    return out;
  }
  out.kind = Kind::Value;
  out.value = parse_number(t, "truncation level");
  if (!(out.value > 0)) throw InputError(fmt::format("truncation level must be positive, got '{}'", text));
  return out;
}

ProfileSpec ProfileSpec::parse(const std::string& text) {
  const std::string t = trim(text);
  ProfileSpec out;
  out.name = t;
  if (t == "fig1") {
    out.fn = [](int i, int j, int, int n) {
      const double s = i + j;
      return s * s / (2.0 * n * static_cast<double>(n));
    };
  } else if (t == "fig2") {
    out.fn = [](int i, int j, int, int n) { return std::sin(std::numbers::pi * (i + j) / (2.0 * n)); };
  } else if (t == "upper_triangular") {
    out.fn = [](int i, int j, int, int) { return i <= j ? 1.0 : 0.0; };
  } else if (t == "constant" || t.rfind("constant:", 0) == 0) {
    const double c = t == "constant" ? 1.0 : parse_number(t.substr(9), "profile constant");
    out.fn = [c](int, int, int, int) { return c; };
  } else if (t.rfind("grid:", 0) == 0) {
    const GridFunction g = load_grid_csv(trim(t.substr(5)));
    out.fn = [g](int i, int j, int p, int n) {
      return g((i - 0.5) / static_cast<double>(p), (j - 0.5) / static_cast<double>(n));
    };
  } else {
    throw InputError(fmt::format(
        "unknown profile '{}' (fig1, fig2, upper_triangular, constant[:c], grid:<path>)", text));
  }
  return out;
}

void EnsembleConfig::validate() const {
  if (p < 1 || n < 1) throw InputError(fmt::format("p and n must be >= 1 (p={}, n={})", p, n));
  if (replicates < 1) throw InputError("replicates must be >= 1");
  if (threads < 0) throw InputError("threads must be >= 0");
  if (max_moment < 1) throw InputError("max_moment must be >= 1");
  if (max_moment > kMaxTracePower) {
    throw SizeLimitError(fmt::format("max_moment {} exceeds the trace-power guard {}", max_moment, kMaxTracePower));
  }
  if (t_n.kind != Truncation::Kind::None && !(t_n.level(n) > 0)) throw InputError("truncation level must be positive");
  if (uses_law(*this, Family::SparseBernoulli) && !(lambda > 0 && lambda <= n)) throw InputError(fmt::format("lambda must lie in (0, n], got {}", lambda));
  if (uses_law(*this, Family::TriangularIid)) {
    if (c_sequence.empty()) throw InputError("triangular_iid needs c_sequence (C_2[, C_4, ...])");
    for (double c : c_sequence) {
      if (!(c > 0) || !std::isfinite(c)) throw InputError("c_sequence entries must be positive and finite");
    }
    if (c_sequence.size() >= 2 && atom_law(c_sequence).q > n) {
      throw InputError(fmt::format("C_2^2/C_4 = {} exceeds n; the two-point law is not realizable",
                                   atom_law(c_sequence).q));
    }
  }
  if (family == Family::HeavyTailStable) {
    if (!(alpha > 0 && alpha < 2)) throw InputError(fmt::format("alpha must lie in (0, 2), got {}", alpha));
    if (!(B > 0)) throw InputError("B must be positive");
  }
  if (family == Family::VarianceProfile) {
    if (!profile.fn) throw InputError("variance_profile needs a profile");
    if (base != Family::IidStandardized && base != Family::SparseBernoulli && base != Family::TriangularIid) {
      throw InputError(fmt::format("'{}' cannot be used as a base law", family_name(base)));
    }
  }
  if (family == Family::DtTriangular && p != n) {
    throw InputError(fmt::format("dt_triangular needs p == n (p={}, n={})", p, n));
  }
}

double stable_scale(double alpha, int p) {
  const double c = 2.0 / std::numbers::pi * std::tgamma(alpha) * std::sin(std::numbers::pi * alpha / 2.0);
  return std::pow(c * p, 1.0 / alpha);
}

RealizedLaw realized_law(const EnsembleConfig& cfg) {
  RealizedLaw law;
  const double n = cfg.n;
  switch (cfg.family) {
    case Family::IidStandardized:
      law.description = "N(0,1)/sqrt(n)";
      for (int k = 1; k <= 4; ++k) law.n_beta.push_back(n * double_factorial_odd(k) / std::pow(n, k));
      break;
    case Family::SparseBernoulli:
      law.description = fmt::format("Ber({:.17g}/n)", cfg.lambda);
      law.n_beta.assign(4, cfg.lambda);
      break;
    case Family::TriangularIid:
      if (gaussian_triangular(cfg)) {
        law.description = fmt::format("N(0, {:.17g}/n)", cfg.c_sequence[0]);
        for (int k = 1; k <= 4; ++k) {
          law.n_beta.push_back(n * double_factorial_odd(k) * std::pow(cfg.c_sequence[0] / n, k));
        }
      } else {
        const AtomLaw a = atom_law(cfg.c_sequence);
        law.description = fmt::format("+-{:.17g} with probability {:.17g}/n", a.a, a.q);
        for (int k = 1; k <= 4; ++k) law.n_beta.push_back(a.q * std::pow(a.a, 2 * k));
      }
      break;
    case Family::HeavyTailStable:
      law.description = fmt::format("S{:.17g}S / a_p (a_p = {:.17g}), cut at {:.17g}", cfg.alpha,
                                    stable_scale(cfg.alpha, cfg.p), cfg.B);
      break;
    case Family::VarianceProfile:
      law.description = fmt::format("{} x {}", cfg.profile.name, family_name(cfg.base));
      break;
    case Family::DtTriangular:
      law.description = "1{i<=j} N(0,1)/sqrt(n)";
      break;
  }
  return law;
}

SampledMatrix sample_matrix(const EnsembleConfig& cfg, int replicate) {
  cfg.validate();
  if (replicate < 0) throw InputError("replicate index must be >= 0");
  const EntryLaw law(cfg);
  const double t = cfg.t_n.level(cfg.n);
  SampledMatrix out;
  out.X.resize(cfg.p, cfg.n);
  double mass = 0;
  double centered = 0;
  bool second_known = true;
  for (int i = 1; i <= cfg.p; ++i) {
    for (int j = 1; j <= cfg.n; ++j) {
      const auto entry = static_cast<std::uint64_t>(i - 1) * static_cast<std::uint64_t>(cfg.n) + (j - 1);
      rng::Stream stream(cfg.seed, static_cast<std::uint32_t>(replicate), entry);
      const EntryDraw d = law.draw(stream, i, j);
      const double y = std::abs(d.x) <= t ? d.x : 0.0;
      if (y != d.x) mass += d.x * d.x;
      out.X(i - 1, j - 1) = y;
      if (std::isnan(d.second_moment)) second_known = false;
      centered += y * y - d.second_moment;
    }
  }
  out.truncation_mass = mass / cfg.n;
  out.centered_second_moment = second_known ? centered / cfg.p : kNaN;
  return out;
}

std::vector<double> empirical_moments(const Eigen::MatrixXd& S, int K) {
  if (K < 1) throw InputError("K must be >= 1");
  if (K > kMaxTracePower) {
    throw SizeLimitError(fmt::format("K = {} exceeds the trace-power guard {}", K, kMaxTracePower));
  }
  if (S.rows() != S.cols() || S.rows() == 0) throw InputError("empirical_moments needs a non-empty square matrix");
  const Eigen::Index p = S.rows();
  const int J = (K + 1) / 2;
  constexpr Eigen::Index kBlock = 64;
  std::vector<double> traces(K, 0.0);
  std::vector<Eigen::MatrixXd> W(J + 1);
  for (Eigen::Index c0 = 0; c0 < p; c0 += kBlock) {
    const Eigen::Index w = std::min(kBlock, p - c0);
    // W[j] = S^j restricted to columns c0 .. c0 + w - 1.
    W[1] = S.middleCols(c0, w);
    for (int j = 2; j <= J; ++j) W[j].noalias() = S * W[j - 1];
    traces[0] += W[1].middleRows(c0, w).trace();
    for (int m = 2; m <= K; ++m) {
      const int j = m / 2;
      traces[m - 1] += m % 2 == 0 ? W[j].squaredNorm() : W[j].cwiseProduct(W[j + 1]).sum();
    }
  }
  for (double& tr : traces) tr /= static_cast<double>(p);
  return traces;
}

SpectralSample spectral_sample(const EnsembleConfig& cfg, int replicate) {
  const SampledMatrix m = sample_matrix(cfg, replicate);
  Eigen::MatrixXd S = m.X * m.X.transpose();
  S = 0.5 * (S + S.transpose()).eval();

  SpectralSample out;
  out.replicate = replicate;
  out.seed = cfg.seed;
  out.truncation_mass = m.truncation_mass;
  out.centered_second_moment = m.centered_second_moment;

  const Eigen::VectorXd ev = eigenvalues(S);
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  out.min_raw_eigenvalue = ev.minCoeff();
  if (out.min_raw_eigenvalue < -1e-9 * scale) {
    throw NumericalContractError(
        fmt::format("replicate {}: eigenvalue {:.3g} violates positive semi-definiteness", replicate,
                    out.min_raw_eigenvalue));
  }
  out.eigenvalues.resize(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) out.eigenvalues[i] = std::max(0.0, ev(i));

  out.moments = empirical_moments(S, cfg.max_moment);
  for (int k = 1; k <= cfg.max_moment; ++k) {
    double power_sum = 0, abs_sum = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      power_sum += std::pow(ev(i), k);
      abs_sum += std::pow(std::abs(ev(i)), k);
    }
    power_sum /= cfg.p;
    abs_sum /= cfg.p;
    if (std::abs(power_sum - out.moments[k - 1]) > 1e-8 * abs_sum + 1e-300) {
      throw NumericalContractError(fmt::format(
          "replicate {}: trace moment {} = {:.17g} disagrees with eigenvalue power sum {:.17g}", replicate,
          k, out.moments[k - 1], power_sum));
    }
  }
  return out;
}

ExperimentReport run_experiment(const EnsembleConfig& cfg) {
  cfg.validate();
  ExperimentReport report;
  report.config = cfg;
  report.law = realized_law(cfg);
  const int R = cfg.replicates;
  report.samples.resize(R);
  std::vector<std::exception_ptr> errors(R);

  int workers = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, R);
  std::atomic<int> next{0};
  auto work = [&] {
    for (int r = next++; r < R; r = next++) {
      try {
        report.samples[r] = spectral_sample(cfg, r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const int K = cfg.max_moment;
  report.mean.assign(K, 0.0);
  report.stderr_.assign(K, 0.0);
  for (int k = 0; k < K; ++k) {
    double sum = 0;
    for (const auto& s : report.samples) sum += s.moments[k];
    const double mean = sum / R;
    double ss = 0;
    for (const auto& s : report.samples) ss += (s.moments[k] - mean) * (s.moments[k] - mean);
    report.mean[k] = mean;
    report.stderr_[k] = R > 1 ? std::sqrt(ss / (R - 1) / R) : 0.0;
  }

  std::vector<double> pooled;
  pooled.reserve(static_cast<std::size_t>(R) * cfg.p);
  for (const auto& s : report.samples) pooled.insert(pooled.end(), s.eigenvalues.begin(), s.eigenvalues.end());
  report.histogram = cfg.bin_edges ? with_edges(pooled, *cfg.bin_edges) : freedman_diaconis(std::move(pooled));
  return report;
}

}  // namespace sscov::ensemble
