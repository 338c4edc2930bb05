#include "clustan/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "clustan/error.hpp"

namespace clustan {

SymmetricEigen jacobi_eigen(const Matrix& symmetric, std::size_t max_sweeps) {
  const std::size_t d = symmetric.rows();
  if (symmetric.cols() != d) throw Error(ErrorKind::DimensionMismatch, "eigensolver needs a square matrix");
  Matrix a = symmetric;
  Matrix v(d, d, 0.0);
  for (std::size_t i = 0; i < d; ++i) v(i, i) = 1.0;

  double scale = 0.0;
  for (double x : a.values()) scale = std::max(scale, std::abs(x));

  std::size_t sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) off += a(p, q) * a(p, q);
    if (off == 0.0 || std::sqrt(off) <= 1e-15 * scale) break;

    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t r = 0; r < d; ++r) {
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        for (std::size_t r = 0; r < d; ++r) {
          const double apr = a(p, r);
          const double aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = s * apr + c * aqr;
        }
        for (std::size_t r = 0; r < d; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  SymmetricEigen out;
  out.sweeps = sweep;
  out.vectors = Matrix(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    out.values.push_back(a(order[j], order[j]));
    for (std::size_t r = 0; r < d; ++r) out.vectors(r, j) = v(r, order[j]);
  }
  return out;
}

Matrix covariance(const Matrix& data) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  if (n < 2) throw Error(ErrorKind::TooFewPoints, "covariance needs at least 2 points");
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) mean[j] += data(i, j);
  for (auto& m : mean) m /= static_cast<double>(n);
  Matrix cov(d, d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < d; ++p) {
      const double dp = data(i, p) - mean[p];
      for (std::size_t q = p; q < d; ++q) cov(p, q) += dp * (data(i, q) - mean[q]);
    }
  }
  for (std::size_t p = 0; p < d; ++p) {
    for (std::size_t q = p; q < d; ++q) {
      cov(p, q) /= static_cast<double>(n - 1);
      cov(q, p) = cov(p, q);
    }
  }
  return cov;
}

Projection2D pca_2d(const Matrix& data) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  if (n < 2 || d < 2) throw Error(ErrorKind::TooFewPoints, "PCA projection needs n >= 2 and d >= 2");

  Projection2D proj;
  proj.mean.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) proj.mean[j] += data(i, j);
  for (auto& m : proj.mean) m /= static_cast<double>(n);

  const auto eig = jacobi_eigen(covariance(data));
  proj.eigenvalues = eig.values;
  for (double ev : eig.values) proj.total_variance += std::max(ev, 0.0);
  proj.components = Matrix(2, d, 0.0);
  proj.coords = Matrix(n, 2, 0.0);

  if (!(proj.total_variance > 0.0)) {
    proj.degenerate = true;
    proj.components(0, 0) = 1.0;
    proj.components(1, 1) = 1.0;
    return proj;
  }

  for (std::size_t a = 0; a < 2; ++a) {
    std::size_t argmax = 0;
    for (std::size_t j = 1; j < d; ++j) {
      if (std::abs(eig.vectors(j, a)) > std::abs(eig.vectors(argmax, a))) argmax = j;
    }
    const double sign = eig.vectors(argmax, a) < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < d; ++j) proj.components(a, j) = sign * eig.vectors(j, a);
    proj.axis_variance[a] = std::max(eig.values[a], 0.0) / proj.total_variance;
  }
  proj.coords = project(proj, data);
  return proj;
}

Matrix project(const Projection2D& proj, const Matrix& points) {
  const std::size_t d = proj.mean.size();
  if (points.rows() > 0 && points.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch, "points have " + std::to_string(points.cols()) +
                                                  " columns, projection expects " + std::to_string(d));
  }
  Matrix out(points.rows(), 2, 0.0);
  for (std::size_t i = 0; i < points.rows(); ++i) {
    for (std::size_t a = 0; a < 2; ++a) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc += (points(i, j) - proj.mean[j]) * proj.components(a, j);
      out(i, a) = acc;
    }
  }
  return out;
}

}  // namespace clustan
