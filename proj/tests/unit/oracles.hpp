#pragma once

// Independent reference implementations used only by the tests. None of
// them call into the library's enumeration or census code.

#include <cstdint>
#include <set>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Blocks = std::vector<std::vector<int>>;

/// All set partitions of {1..m} by inserting element m into every block of
/// each partition of {1..m-1} or into a new block.
std::vector<Blocks> all_partitions(int m);

std::uint64_t bell(int m);
std::uint64_t catalan(int k);
std::uint64_t narayana(int k, int r);
std::uint64_t binomial(int n, int r);

/// Crossing test by the four-index definition.
bool crossing(const Blocks& p, int m);

/// Letters as 0-based ints; element e of block j gets letter j.
std::vector<int> letters_of(const Blocks& p, int m);

/// Closed walk starting at a root where every first occurrence steps to a
/// brand-new vertex and every repeat must cross back over its own edge.
bool is_tree_walk(const std::vector<int>& letters);

/// First-occurrence positions, counted with 0: (b, r+1).
std::pair<int, int> generating_counts(const std::vector<int>& letters);

enum class Rule { Implied, Exact };

/// Full tuple enumeration over pi(0..2k-1) with the literal S link.
std::uint64_t census_S(const std::vector<int>& letters, int p, int n, Rule rule = Rule::Implied);
/// Full tuple enumeration with the Wigner link on 1..N.
std::uint64_t census_W(const std::vector<int>& letters, int N, Rule rule = Rule::Implied);

/// Sum over partitions of {1..m} of prod_blocks bounds[|block|-1].
double partition_sum(const std::vector<double>& bounds, int m);

Eigen::VectorXd reference_eigenvalues(const Eigen::MatrixXd& S);

/// k^k / (k+1)!: moments of T T^* for the upper-triangular DT operator.
double dt_moment(int k);

}  // namespace oracle
