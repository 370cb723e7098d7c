#include "unit/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include <Eigen/Eigenvalues>

namespace oracle {

std::vector<Blocks> all_partitions(int m) {
  if (m == 0) return {Blocks{}};
  std::vector<Blocks> out;
  for (const auto& smaller : all_partitions(m - 1)) {
    for (std::size_t j = 0; j < smaller.size(); ++j) {
      Blocks p = smaller;
      p[j].push_back(m);
      out.push_back(std::move(p));
    }
    Blocks p = smaller;
    p.push_back({m});
    out.push_back(std::move(p));
  }
  return out;
}

std::uint64_t bell(int m) {
  // Stirling numbers of the second kind.
  std::vector<std::vector<std::uint64_t>> s(m + 1, std::vector<std::uint64_t>(m + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= i; ++j) s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
  }
  std::uint64_t total = 0;
  for (int j = 0; j <= m; ++j) total += s[m][j];
  return total;
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t c = 1;
  for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

std::uint64_t catalan(int k) { return binomial(2 * k, k) / (k + 1); }

std::uint64_t narayana(int k, int r) { return binomial(k, r) * binomial(k - 1, r) / (r + 1); }

std::vector<int> letters_of(const Blocks& p, int m) {
  std::vector<int> owner(m, -1);
  for (std::size_t j = 0; j < p.size(); ++j) {
    for (int e : p[j]) owner[e - 1] = static_cast<int>(j);
  }
  return owner;
}

bool crossing(const Blocks& p, int m) {
  const auto owner = letters_of(p, m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = b + 1; c < m; ++c)
        for (int d = c + 1; d < m; ++d)
          if (owner[a] == owner[c] && owner[b] == owner[d] && owner[a] != owner[b]) return true;
  return false;
}

bool is_tree_walk(const std::vector<int>& letters) {
  std::map<int, std::pair<int, int>> edge;
  int current = 0;
  int next_vertex = 1;
  for (int x : letters) {
    auto it = edge.find(x);
    if (it == edge.end()) {
      edge[x] = {current, next_vertex};
      current = next_vertex++;
    } else if (current == it->second.first) {
      current = it->second.second;
    } else if (current == it->second.second) {
      current = it->second.first;
    } else {
      return false;
    }
  }
  return current == 0;
}

std::pair<int, int> generating_counts(const std::vector<int>& letters) {
  std::set<int> seen;
  int even = 1;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (seen.insert(letters[i]).second && (i + 1) % 2 == 0) ++even;
  }
  return {static_cast<int>(seen.size()), even};
}

namespace {

template <class SameEdge>
std::uint64_t census(const std::vector<int>& letters, const std::vector<int>& range, Rule rule, SameEdge same) {
  const int len = static_cast<int>(letters.size());
  std::vector<int> pi(len + 1, 1);
  std::uint64_t count = 0;
  std::function<void(int)> rec = [&](int i) {
    if (i == len) {
      pi[len] = pi[0];
      for (int a = 1; a <= len; ++a) {
        for (int b = a + 1; b <= len; ++b) {
          const bool letter = letters[a - 1] == letters[b - 1];
          const bool edge = same(pi, a, b);
          if (letter && !edge) return;
          if (rule == Rule::Exact && edge && !letter) return;
        }
      }
      ++count;
      return;
    }
    for (int v = 1; v <= range[i]; ++v) {
      pi[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

}  // namespace

std::uint64_t census_S(const std::vector<int>& letters, int p, int n, Rule rule) {
  std::vector<int> range(letters.size());
  for (std::size_t i = 0; i < range.size(); ++i) range[i] = i % 2 == 0 ? p : n;
  return census(letters, range, rule, [](const std::vector<int>& pi, int i, int j) {
    // L1/L2: same parity matches componentwise, opposite parity swapped.
    if ((i - j) % 2 == 0) return pi[i - 1] == pi[j - 1] && pi[i] == pi[j];
    return pi[i - 1] == pi[j] && pi[i] == pi[j - 1];
  });
}

std::uint64_t census_W(const std::vector<int>& letters, int N, Rule rule) {
  std::vector<int> range(letters.size(), N);
  return census(letters, range, rule, [](const std::vector<int>& pi, int i, int j) {
    return std::minmax(pi[i - 1], pi[i]) == std::minmax(pi[j - 1], pi[j]);
  });
}

double partition_sum(const std::vector<double>& bounds, int m) {
  double total = 0;
  for (const auto& p : all_partitions(m)) {
    double term = 1;
    for (const auto& b : p) term *= b.size() <= bounds.size() ? bounds[b.size() - 1] : 0.0;
    total += term;
  }
  return total;
}

Eigen::VectorXd reference_eigenvalues(const Eigen::MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double dt_moment(int k) {
  double f = 1;
  for (int i = 2; i <= k + 1; ++i) f *= i;
  return std::pow(k, k) / f;
}

}  // namespace oracle
