// Principal component analysis via cyclic Jacobi eigendecomposition of the
// sample covariance. When dimensionality exceeds the sample count the
// eigenproblem is solved on the Gram matrix instead and the directions are
// mapped back, which keeps raw-profile PCA (d in the hundreds, dozens of
// curves) cheap.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace multiq {

struct PcaModel {
  std::vector<double> mean;
  std::vector<std::vector<double>> components;  // orthonormal, variance order
  std::vector<double> variances;                // non-increasing, >= 0
};

namespace detail {

struct EigenResult {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // vectors[j] pairs with values[j]
};

// Cyclic Jacobi sweeps on a symmetric matrix. Converges when every
// off-diagonal magnitude drops below 1e-12 (relaxed to a relative floor for
// matrices whose scale makes that absolute target unreachable in doubles).
inline EigenResult jacobi_eigen(std::vector<std::vector<double>> a) {
  const std::size_t d = a.size();
  std::vector<std::vector<double>> v(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) v[i][i] = 1.0;

  double scale = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) scale = std::max(scale, std::abs(a[i][j]));
  const double tol = std::max(1e-12, scale * 1e-15);

  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) off = std::max(off, std::abs(a[p][q]));
    if (off < tol) break;

    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a[p][q];
        if (apq == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        const double t_mag = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double t = theta < 0.0 ? -t_mag : t_mag;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a[p][p] -= t * apq;
        a[q][q] += t * apq;
        a[p][q] = a[q][p] = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
          if (i == p || i == q) continue;
          const double aip = a[i][p];
          const double aiq = a[i][q];
          a[i][p] = a[p][i] = c * aip - s * aiq;
          a[i][q] = a[q][i] = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < d; ++i) {
          const double vip = v[i][p];
          const double viq = v[i][q];
          v[i][p] = c * vip - s * viq;
          v[i][q] = s * vip + c * viq;
        }
      }
    }
  }

  EigenResult r;
  r.values.resize(d);
  r.vectors.assign(d, std::vector<double>(d, 0.0));
  for (std::size_t j = 0; j < d; ++j) {
    r.values[j] = a[j][j];
    for (std::size_t i = 0; i < d; ++i) r.vectors[j][i] = v[i][j];
  }
  return r;
}

// Flip so the largest-magnitude entry (first on ties) is positive;
// eigenvectors are otherwise sign-ambiguous across runs and platforms.
inline void fix_sign(std::vector<double>& component) {
  std::size_t at = 0;
  for (std::size_t i = 1; i < component.size(); ++i)
    if (std::abs(component[i]) > std::abs(component[at])) at = i;
  if (component[at] < 0.0)
    for (double& x : component) x = -x;
}

}  // namespace detail

inline PcaModel fit_pca(const std::vector<std::vector<double>>& data) {
  const std::size_t n = data.size();
  if (n < 2) throw std::invalid_argument("fit_pca: need at least 2 vectors");
  const std::size_t d = data[0].size();
  if (d < 1) throw std::invalid_argument("fit_pca: vectors must be non-empty");
  for (const auto& row : data)
    if (row.size() != d)
      throw std::invalid_argument("fit_pca: inconsistent vector lengths");

  PcaModel m;
  m.mean.assign(d, 0.0);
  for (const auto& row : data)
    for (std::size_t j = 0; j < d; ++j) m.mean[j] += row[j];
  for (double& x : m.mean) x /= static_cast<double>(n);

  std::vector<std::vector<double>> centered(n, std::vector<double>(d));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) centered[i][j] = data[i][j] - m.mean[j];

  const double divisor = static_cast<double>(n - 1);
  std::vector<double> values;
  std::vector<std::vector<double>> directions;

  if (d <= n) {
    std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = j; k < d; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += centered[i][j] * centered[i][k];
        cov[j][k] = cov[k][j] = acc / divisor;
      }
    detail::EigenResult eig = detail::jacobi_eigen(std::move(cov));
    values = std::move(eig.values);
    directions = std::move(eig.vectors);
  } else {
    // Gram route: X X^T / (n-1) shares the covariance's nonzero spectrum and
    // each direction is X^T u rescaled to unit length.
    std::vector<std::vector<double>> gram(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = i; l < n; ++l) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc += centered[i][j] * centered[l][j];
        gram[i][l] = gram[l][i] = acc / divisor;
      }
    detail::EigenResult eig = detail::jacobi_eigen(std::move(gram));
    double top = 0.0;
    for (double lambda : eig.values) top = std::max(top, lambda);
    const double keep = top * 1e-9;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(eig.values[j] > keep)) continue;
      std::vector<double> dir(d, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t col = 0; col < d; ++col)
          dir[col] += eig.vectors[j][i] * centered[i][col];
      const double norm =
          std::sqrt(std::inner_product(dir.begin(), dir.end(), dir.begin(), 0.0));
      for (double& x : dir) x /= norm;
      values.push_back(eig.values[j]);
      directions.push_back(std::move(dir));
    }
    if (directions.empty())
      throw std::runtime_error("fit_pca: data has no variance");
  }

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  m.variances.reserve(order.size());
  m.components.reserve(order.size());
  for (std::size_t idx : order) {
    m.variances.push_back(std::max(values[idx], 0.0));
    detail::fix_sign(directions[idx]);
    m.components.push_back(std::move(directions[idx]));
  }
  return m;
}

// Coordinates of v in the rotated and translated frame, first k directions.
inline std::vector<double> project(const PcaModel& m, const std::vector<double>& v,
                                   int k) {
  if (v.size() != m.mean.size())
    throw std::invalid_argument("project: vector length mismatch");
  if (k < 1 || static_cast<std::size_t>(k) > m.components.size())
    throw std::invalid_argument("project: k out of range");
  std::vector<double> out(static_cast<std::size_t>(k), 0.0);
  for (std::size_t c = 0; c < out.size(); ++c) {
    double acc = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j)
      acc += (v[j] - m.mean[j]) * m.components[c][j];
    out[c] = acc;
  }
  return out;
}

}  // namespace multiq
