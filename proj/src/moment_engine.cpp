#include "sscov/moment_engine.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "json.hpp"
#include "sscov/errors.hpp"

namespace sscov::moments {

namespace {

void require_k(int k) {
  if (k < 1) throw InputError(fmt::format("moment order k must be >= 1, got {}", k));
}

Rational power(const Rational& base, int e) {
  Rational out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

mpz_class binomial(unsigned long n, unsigned long r) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, r);
  return out;
}

mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

// log of a positive rational without overflowing double.
double log_rational(const Rational& q) {
  long en = 0, ed = 0;
  const double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log(mn) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

// Closed-walk tree of an SS word. Vertex 0 is pi(0); letter j opens vertex
// j + 1 at its first occurrence. Edges connect an even (row, x) vertex to an
// odd (column, u) vertex.
struct WordTree {
  std::vector<int> parent;       // parent[v], -1 for the root
  std::vector<bool> even;        // vertex parity
  std::vector<int> multiplicity; // of the edge into v (v >= 1)
};

WordTree word_tree(const SsWord& sw) {
  const Word& w = sw.word;
  const int b = sw.stats.b;
  WordTree t;
  t.parent.assign(b + 1, -1);
  t.even.assign(b + 1, true);
  t.multiplicity.assign(b + 1, 0);
  std::vector<std::pair<int, int>> ends(b, {-1, -1});
  int current = 0;
  for (int i = 1; i <= w.length(); ++i) {
    const int letter = w.at(i);
    if (sw.stats.first_occurrence[letter] == i) {
      const int child = letter + 1;
      t.parent[child] = current;
      t.even[child] = i % 2 == 0;
      t.multiplicity[child] = sw.multiplicities[letter];
      ends[letter] = {current, child};
      current = child;
    } else {
      const auto [a, c] = ends[letter];
      current = current == a ? c : a;
    }
  }
  return t;
}

struct GridEvaluation {
  std::vector<double> integrals;  // per word, canonical order
  double total = 0;
};

GridEvaluation integrate_words(const std::vector<SsWord>& words, const std::vector<WordTree>& trees,
                               double y, const std::map<int, Eigen::MatrixXd>& samples, int G) {
  const double h = 1.0 / G;
  GridEvaluation out;
  out.integrals.reserve(words.size());
  for (std::size_t idx = 0; idx < words.size(); ++idx) {
    const WordTree& t = trees[idx];
    const int nv = static_cast<int>(t.parent.size());
    std::vector<Eigen::VectorXd> msg(nv, Eigen::VectorXd::Ones(G));
    // Children always carry larger ids than their parents.
    for (int v = nv - 1; v >= 1; --v) {
      const Eigen::MatrixXd& A = samples.at(t.multiplicity[v]);
      const Eigen::VectorXd up = t.even[v] ? Eigen::VectorXd(h * (A.transpose() * msg[v]))
                                           : Eigen::VectorXd(h * (A * msg[v]));
      msg[t.parent[v]] = msg[t.parent[v]].cwiseProduct(up);
    }
    const double integral = h * msg[0].sum();
    out.integrals.push_back(integral);
    out.total += std::pow(y, words[idx].stats.r_plus_1 - 1) * integral;
  }
  return out;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto fail = [&] { return InputError(fmt::format("'{}' is not a rational number", text)); };
  if (text.empty()) throw fail();
  if (text.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(text, 10) != 0) throw fail();
    if (q.get_den() == 0) throw fail();
    q.canonicalize();
    return q;
  }
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  std::string digits;
  int scale = 0;
  bool seen_digit = false, seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw fail();
  long exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw fail();
    const std::string rest = text.substr(i + 1);
    std::size_t used = 0;
    try {
      exponent = std::stol(rest, &used);
    } catch (const std::exception&) {
      throw fail();
    }
    if (used != rest.size() || std::labs(exponent) > 4000) throw fail();
  }
  mpz_class num(digits, 10);
  Rational q(num);
  const long shift = exponent - scale;
  mpz_class ten;
  mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  if (shift >= 0) {
    q *= ten;
  } else {
    q /= ten;
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

ConstantSeq ConstantSeq::marchenko_pastur(int k) {
  std::vector<Rational> even(std::max(k, 1), 0);
  even[0] = 1;
  return ConstantSeq(std::move(even));
}

ConstantSeq ConstantSeq::constant(const Rational& value, int k) {
  return ConstantSeq(std::vector<Rational>(std::max(k, 1), value));
}

Rational ConstantSeq::at(int block_size) const {
  if (block_size < 1) throw InputError(fmt::format("block size {} out of range", block_size));
  if (block_size % 2 != 0) return 0;
  const int m = block_size / 2;
  if (m > static_cast<int>(even_.size())) {
    throw InputError(fmt::format("C_{} not supplied (sequence ends at C_{})", block_size,
                                 max_even_index()));
  }
  return even_[m - 1];
}

Rational narayana(int k, int r) {
  require_k(k);
  if (r < 0 || r > k - 1) return 0;
  Rational out(binomial(k, r) * binomial(k - 1, r));
  out /= r + 1;
  return out;
}

Rational mp_moment(int k, const Rational& y) {
  require_k(k);
  Rational sum = 0;
  Rational yr = 1;
  for (int r = 0; r < k; ++r) {
    sum += narayana(k, r) * yr;
    yr *= y;
  }
  return sum;
}

MomentReport moment_constant(int k, const Rational& y, const ConstantSeq& c) {
  require_k(k);
  if (y <= 0) throw InputError("aspect ratio y must be positive");
  MomentReport report;
  report.k = k;
  Rational total = 0;
  for (const SsWord& sw : special_symmetric_words(k)) {
    Rational product = 1;
    for (int s : sw.multiplicities) product *= c.at(s);
    const Rational weight = power(y, sw.stats.r_plus_1 - 1);
    const Rational contribution = weight * product;
    total += contribution;
    report.breakdown.push_back({sw.word.str(), sw.stats.b, sw.stats.r_plus_1, weight.get_d(),
                                product.get_d(), contribution.get_d(), contribution});
  }
  report.value = total.get_d();
  report.exact = total;
  return report;
}

MomentReport moment_sparse(int k, const Rational& y, const Rational& lambda) {
  if (lambda <= 0) throw InputError("sparsity lambda must be positive");
  return moment_constant(k, y, ConstantSeq::constant(lambda, k));
}

Sandwich poisson_sandwich(int k, const Rational& y, const Rational& lambda, EnumerationLimits limits) {
  require_k(k);
  if (y <= 0 || lambda <= 0) throw InputError("sandwich needs y > 0 and lambda > 0");
  const int m = 2 * k;
  std::vector<std::uint64_t> all_even(m + 1, 0), non_crossing(m + 1, 0);
  std::vector<int> sizes;
  for_each_partition(
      m,
      [&](const std::vector<int>& rgs) {
        sizes.assign(m, 0);
        int blocks = 0;
        for (int letter : rgs) {
          ++sizes[letter];
          blocks = std::max(blocks, letter + 1);
        }
        for (int j = 0; j < blocks; ++j) {
          if (sizes[j] % 2 != 0) return;
        }
        ++all_even[blocks];
        if (is_non_crossing(Partition::from_word(Word(rgs)))) ++non_crossing[blocks];
      },
      limits);

  auto sum = [&](const std::vector<std::uint64_t>& counts, const Rational& base) {
    Rational out = 0;
    for (int b = 1; b <= m; ++b) {
      if (counts[b] != 0) out += Rational(mpz_class(std::to_string(counts[b]))) * power(base, b);
    }
    return out;
  };
  const Rational ly = lambda * y;
  if (y <= 1) return {sum(non_crossing, ly), sum(all_even, lambda)};
  return {sum(non_crossing, lambda), sum(all_even, ly)};
}

MomentReport moment_grid(int k, double y, const GridFunctions& g) {
  require_k(k);
  if (!(y > 0) || !std::isfinite(y)) throw InputError("aspect ratio y must be positive and finite");
  const int G = g.resolution;
  if (G < 2) throw InputError(fmt::format("grid resolution must be >= 2, got {}", G));

  const auto& words = special_symmetric_words(k);
  std::vector<WordTree> trees;
  trees.reserve(words.size());
  std::map<int, Eigen::MatrixXd> fine, coarse;
  for (const SsWord& sw : words) {
    trees.push_back(word_tree(sw));
    for (int s : sw.multiplicities) {
      if (fine.count(s)) continue;
      const auto it = g.g.find(s);
      if (it == g.g.end() || !it->second) {
        throw InputError(fmt::format("g_{} not supplied (needed by word {})", s, sw.word.str()));
      }
      fine.emplace(s, sample_midpoints(it->second, G));
      coarse.emplace(s, sample_midpoints(it->second, G / 2));
    }
  }
  for (const auto& [s, A] : fine) {
    if (!A.allFinite()) throw NumericalContractError(fmt::format("g_{} is not finite on the grid", s));
  }

  const GridEvaluation at_g = integrate_words(words, trees, y, fine, G);
  const GridEvaluation at_half = integrate_words(words, trees, y, coarse, G / 2);

  MomentReport report;
  report.k = k;
  report.resolution = G;
  report.value = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const SsWord& sw = words[i];
    const double weight = std::pow(y, sw.stats.r_plus_1 - 1);
    const double contribution = weight * at_g.integrals[i];
    report.value += contribution;
    report.breakdown.push_back(
        {sw.word.str(), sw.stats.b, sw.stats.r_plus_1, weight, at_g.integrals[i], contribution, {}});
  }
  report.error_estimate = std::abs(at_g.total - at_half.total);
  return report;
}

MomentReport moment_profile(int k, double y, const GridFunction& sigma, const ConstantSeq& c,
                            int resolution) {
  if (!sigma) throw InputError("variance profile not supplied");
  GridFunctions g;
  g.resolution = resolution;
  const int available = c.max_even_index() / 2;
  for (int m = 1; m <= std::min(k, available); ++m) {
    const double cm = c.at(2 * m).get_d();
    g.g[2 * m] = [sigma, cm, m](double x, double u) { return std::pow(sigma(x, u), 2 * m) * cm; };
  }
  return moment_grid(k, y, g);
}

MomentReport evaluate(const MomentSpec& spec, int k) {
  return std::visit(
      [&](const auto& source) -> MomentReport {
        using T = std::decay_t<decltype(source)>;
        if constexpr (std::is_same_v<T, ConstantSeq>) {
          return moment_constant(k, spec.y, source);
        } else if constexpr (std::is_same_v<T, GridFunctions>) {
          return moment_grid(k, spec.y.get_d(), source);
        } else {
          return moment_profile(k, spec.y.get_d(), source.sigma, source.base, source.resolution);
        }
      },
      spec.source);
}

Rational partition_moment_sum(const std::vector<Rational>& bounds, int m) {
  if (m < 0) throw InputError("ground set size must be >= 0");
  // a_j = sum over the block containing element 1: C(j-1, s-1) M_s a_{j-s}.
  std::vector<Rational> a(m + 1, 0);
  a[0] = 1;
  for (int j = 1; j <= m; ++j) {
    Rational acc = 0;
    for (int s = 1; s <= j; ++s) {
      if (s > static_cast<int>(bounds.size()) || bounds[s - 1] == 0) continue;
      acc += Rational(binomial(j - 1, s - 1)) * bounds[s - 1] * a[j - s];
    }
    a[j] = acc;
  }
  return a[m];
}

CarlemanReport carleman_diagnostic(const std::vector<Rational>& even_bounds, int K) {
  if (K < 1) throw InputError("Carleman horizon K must be >= 1");
  if (static_cast<int>(even_bounds.size()) < K) {
    throw InputError(fmt::format("need M_2..M_{}, got {} values", 2 * K, even_bounds.size()));
  }
  std::vector<Rational> bounds(2 * K, 0);
  for (int m = 1; m <= K; ++m) {
    if (even_bounds[m - 1] < 0) throw InputError(fmt::format("M_{} is negative", 2 * m));
    bounds[2 * m - 1] = even_bounds[m - 1];
  }
  CarlemanReport out;
  double partial = 0;
  for (int k = 1; k <= K; ++k) {
    const Rational alpha = partition_moment_sum(bounds, 2 * k);
    out.alpha.push_back(alpha);
    if (alpha == 0) {
      partial = std::numeric_limits<double>::infinity();
    } else {
      partial += std::exp(-log_rational(alpha) / (2.0 * k));
    }
    out.partial_sums.push_back(partial);
  }
  return out;
}

mpz_class star_word_count(int m, int t) {
  if (m < 1 || t < 1) throw InputError("star word count needs m >= 1 and t >= 1");
  mpz_class denom = factorial(t);
  const mpz_class mf = factorial(m);
  for (int i = 0; i < t; ++i) denom *= mf;
  return factorial(static_cast<unsigned long>(m) * t) / denom;
}

double unbounded_support_bound(int m, int t, const std::function<double(double)>& f, int resolution) {
  if (!f) throw InputError("f not supplied");
  if (resolution < 1) throw InputError("resolution must be >= 1");
  const double h = 1.0 / resolution;
  double integral = 0;
  for (int i = 0; i < resolution; ++i) integral += std::pow(f((i + 0.5) * h), t);
  integral *= h;
  // The coefficient can exceed double range only for absurd (m, t); keep it
  // exact until the final product.
  const mpz_class coefficient = star_word_count(m, t);
  long e = 0;
  const double mant = mpz_get_d_2exp(&e, coefficient.get_mpz_t());
  return std::ldexp(mant * integral, static_cast<int>(e));
}

std::string report_json(const MomentReport& report, bool with_breakdown) {
  nlohmann::json j;
  j["k"] = report.k;
  j["value"] = report.value;
  if (report.exact) j["exact"] = to_string(*report.exact);
  if (report.resolution > 0) {
    j["resolution"] = report.resolution;
    j["error_estimate"] = report.error_estimate;
  }
  if (with_breakdown) {
    auto rows = nlohmann::json::array();
    for (const auto& e : report.breakdown) {
      nlohmann::json row{{"word", e.word},         {"b", e.b},
                         {"r_plus_1", e.r_plus_1}, {"weight", e.weight},
                         {"integral", e.integral}, {"contribution", e.contribution}};
      if (e.exact_contribution) row["exact"] = to_string(*e.exact_contribution);
      rows.push_back(std::move(row));
    }
    j["breakdown"] = std::move(rows);
  }
  return j.dump(2);
}

}  // namespace sscov::moments
