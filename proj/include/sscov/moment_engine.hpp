#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "sscov/grid.hpp"
#include "sscov/partition.hpp"

namespace sscov::moments {

using Rational = mpq_class;

/// Parses "3", "-0.25", "1/3" or "2.5e-1" exactly.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// C_{2m} for m = 1, 2, ...; odd-indexed values are identically zero.
class ConstantSeq {
 public:
  ConstantSeq() = default;
  explicit ConstantSeq(std::vector<Rational> even) : even_(std::move(even)) {}

  /// Marchenko-Pastur reduction: C_2 = 1, C_{2m} = 0 for m > 1, up to C_{2k}.
  static ConstantSeq marchenko_pastur(int k);
  static ConstantSeq constant(const Rational& value, int k);

  /// Value for a block of the given size; throws InputError when an even
  /// size is not supplied.
  Rational at(int block_size) const;
  int max_even_index() const { return 2 * static_cast<int>(even_.size()); }
  const std::vector<Rational>& even_values() const { return even_; }

 private:
  std::vector<Rational> even_;
};

struct GridFunctions {
  std::map<int, GridFunction> g;  // keyed by even block size 2m
  int resolution = 128;
};

struct Profile {
  GridFunction sigma;
  ConstantSeq base;
  int resolution = 128;
};

struct MomentSpec {
  Rational y;
  std::variant<ConstantSeq, GridFunctions, Profile> source;
};

struct BreakdownEntry {
  std::string word;
  int b = 0;
  int r_plus_1 = 0;
  double weight = 0;        // y^r
  double integral = 0;      // product over letters, before the y^r weight
  double contribution = 0;  // weight * integral
  std::optional<Rational> exact_contribution;
};

struct MomentReport {
  int k = 0;
  double value = 0;
  std::optional<Rational> exact;
  std::vector<BreakdownEntry> breakdown;  // canonical word order
  double error_estimate = 0;              // quadrature only
  int resolution = 0;                     // quadrature only
};

/// Sum over r of N(k, r) y^r with Narayana coefficients N(k, r).
Rational mp_moment(int k, const Rational& y);
Rational narayana(int k, int r);

MomentReport moment_constant(int k, const Rational& y, const ConstantSeq& c);
MomentReport moment_sparse(int k, const Rational& y, const Rational& lambda);

struct Sandwich {
  Rational lower;
  Rational upper;
};

/// Lower and upper bounds on the sparse moment from the non-crossing
/// even-block and all even-block partition sums. For y <= 1:
/// (sum_NCE (lambda y)^|pi|, sum_E lambda^|pi|); for y > 1:
/// (sum_NCE lambda^|pi|, sum_E (lambda y)^|pi|).
Sandwich poisson_sandwich(int k, const Rational& y, const Rational& lambda,
                          EnumerationLimits limits = {});

MomentReport moment_grid(int k, double y, const GridFunctions& g);
MomentReport moment_profile(int k, double y, const GridFunction& sigma, const ConstantSeq& c,
                            int resolution);

MomentReport evaluate(const MomentSpec& spec, int k);

struct CarlemanReport {
  std::vector<Rational> alpha;        // alpha_{2k}, k = 1..K
  std::vector<double> partial_sums;   // sum_{j<=k} alpha_{2j}^{-1/(2j)}
};

/// M holds M_{2m} for m = 1..K (odd bounds are zero). alpha_{2k} sums the
/// multiplicative extension of M over P(2k).
CarlemanReport carleman_diagnostic(const std::vector<Rational>& even_bounds, int K);

/// Sum over P(m) of the multiplicative extension of `bounds` (bounds[s-1]
/// is the value for a block of size s).
Rational partition_moment_sum(const std::vector<Rational>& bounds, int m);

/// ((mt)! / (t! (m!)^t)) * integral of f^t over [0,1] (midpoint rule), a lower
/// bound for the mt-th moment.
double unbounded_support_bound(int m, int t, const std::function<double(double)>& f,
                               int resolution = 1024);

/// Exact (mt)! / (t! (m!)^t).
mpz_class star_word_count(int m, int t);

std::string report_json(const MomentReport& report, bool with_breakdown = true);

}  // namespace sscov::moments
