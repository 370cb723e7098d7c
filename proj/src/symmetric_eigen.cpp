#include "sscov/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "sscov/errors.hpp"

namespace sscov {

namespace {

void check_symmetric(const Eigen::MatrixXd& S, double tol) {
  if (S.rows() != S.cols()) {
    throw DomainError(fmt::format("matrix is {}x{}, not square", S.rows(), S.cols()));
  }
  if (!S.allFinite()) throw DomainError("matrix has non-finite entries");
  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol * scale) {
    throw DomainError(fmt::format("matrix is not symmetric (max |S - S^T| = {:.3g})", asym));
  }
}

// Householder tridiagonalization. On return d is the diagonal, e(1..n-1) the
// subdiagonal, and V the accumulated orthogonal transform when wanted.
void tred2(Eigen::MatrixXd& V, Eigen::VectorXd& d, Eigen::VectorXd& e, bool want_vectors) {
  const Eigen::Index n = V.rows();
  for (Eigen::Index j = 0; j < n; ++j) d(j) = V(n - 1, j);

  for (Eigen::Index i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (Eigen::Index k = 0; k < i; ++k) scale += std::abs(d(k));
    if (scale == 0.0) {
      e(i) = d(i - 1);
      for (Eigen::Index j = 0; j < i; ++j) {
        d(j) = V(i - 1, j);
        V(i, j) = 0.0;
        V(j, i) = 0.0;
      }
    } else {
      for (Eigen::Index k = 0; k < i; ++k) {
        d(k) /= scale;
        h += d(k) * d(k);
      }
      double f = d(i - 1);
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e(i) = scale * g;
      h -= f * g;
      d(i - 1) = f - g;
      for (Eigen::Index j = 0; j < i; ++j) e(j) = 0.0;

      for (Eigen::Index j = 0; j < i; ++j) {
        f = d(j);
        V(j, i) = f;
        g = e(j) + V(j, j) * f;
        for (Eigen::Index k = j + 1; k <= i - 1; ++k) {
          g += V(k, j) * d(k);
          e(k) += V(k, j) * f;
        }
        e(j) = g;
      }
      f = 0.0;
      for (Eigen::Index j = 0; j < i; ++j) {
        e(j) /= h;
        f += e(j) * d(j);
      }
      const double hh = f / (h + h);
      for (Eigen::Index j = 0; j < i; ++j) e(j) -= hh * d(j);
      for (Eigen::Index j = 0; j < i; ++j) {
        f = d(j);
        g = e(j);
        for (Eigen::Index k = j; k <= i - 1; ++k) V(k, j) -= (f * e(k) + g * d(k));
        d(j) = V(i - 1, j);
        V(i, j) = 0.0;
      }
    }
    d(i) = h;
  }

  if (!want_vectors) {
    for (Eigen::Index j = 0; j < n; ++j) d(j) = V(j, j);
    e(0) = 0.0;
    return;
  }

  for (Eigen::Index i = 0; i < n - 1; ++i) {
    V(n - 1, i) = V(i, i);
    V(i, i) = 1.0;
    const double h = d(i + 1);
    if (h != 0.0) {
      for (Eigen::Index k = 0; k <= i; ++k) d(k) = V(k, i + 1) / h;
      for (Eigen::Index j = 0; j <= i; ++j) {
        double g = 0.0;
        for (Eigen::Index k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
        for (Eigen::Index k = 0; k <= i; ++k) V(k, j) -= g * d(k);
      }
    }
    for (Eigen::Index k = 0; k <= i; ++k) V(k, i + 1) = 0.0;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    d(j) = V(n - 1, j);
    V(n - 1, j) = 0.0;
  }
  V(n - 1, n - 1) = 1.0;
  e(0) = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e).
void tql2(Eigen::MatrixXd& V, Eigen::VectorXd& d, Eigen::VectorXd& e, bool want_vectors) {
  const Eigen::Index n = d.size();
  for (Eigen::Index i = 1; i < n; ++i) e(i - 1) = e(i);
  e(n - 1) = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::ldexp(1.0, -52);
  const int max_iter = 30 * static_cast<int>(std::max<Eigen::Index>(n, 10));
  for (Eigen::Index l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d(l)) + std::abs(e(l)));
    Eigen::Index m = l;
    while (m < n - 1 && std::abs(e(m)) > eps * tst1) ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_iter) throw NumericalContractError("QL iteration did not converge");
        double g = d(l);
        double p = (d(l + 1) - g) / (2.0 * e(l));
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d(l) = e(l) / (p + r);
        d(l + 1) = e(l) * (p + r);
        const double dl1 = d(l + 1);
        double h = g - d(l);
        for (Eigen::Index i = l + 2; i < n; ++i) d(i) -= h;
        f += h;

        p = d(m);
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e(l + 1);
        double s = 0.0, s2 = 0.0;
        for (Eigen::Index i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e(i);
          h = c * p;
          r = std::hypot(p, e(i));
          e(i + 1) = s * r;
          s = e(i) / r;
          c = p / r;
          p = c * d(i) - s * g;
          d(i + 1) = h + s * (c * g + s * d(i));
          if (want_vectors) {
            for (Eigen::Index k = 0; k < n; ++k) {
              h = V(k, i + 1);
              V(k, i + 1) = s * V(k, i) + c * h;
              V(k, i) = c * V(k, i) - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e(l) / dl1;
        e(l) = s * p;
        d(l) = c * p;
      } while (std::abs(e(l)) > eps * tst1);
    }
    d(l) += f;
    e(l) = 0.0;
  }
}

}  // namespace

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& S, bool want_vectors, double symmetry_tol) {
  check_symmetric(S, symmetry_tol);
  const Eigen::Index n = S.rows();
  SymmetricEigen out;
  if (n == 0) return out;

  // Work on the symmetrized matrix so both triangles agree exactly.
  Eigen::MatrixXd V = 0.5 * (S + S.transpose());
  Eigen::VectorXd d(n), e(n);
  if (n == 1) {
    out.values = V.diagonal();
    if (want_vectors) out.vectors = Eigen::MatrixXd::Identity(1, 1);
    return out;
  }
  tred2(V, d, e, want_vectors);
  tql2(V, d, e, want_vectors);

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return d(a) < d(b); });
  out.values.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) out.values(j) = d(order[j]);
  if (want_vectors) {
    out.vectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) out.vectors.col(j) = V.col(order[j]);
  }
  return out;
}

Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& S, double symmetry_tol) {
  return symmetric_eigen(S, false, symmetry_tol).values;
}

}  // namespace sscov
