#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "clustan/dataset.hpp"
#include "clustan/matrix.hpp"

namespace clustan {

struct SymmetricEigen {
  /// Descending.
  std::vector<double> values;
  /// Column j is the unit eigenvector for values[j].
  Matrix vectors;
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
SymmetricEigen jacobi_eigen(const Matrix& symmetric, std::size_t max_sweeps = 100);

/// Sample covariance (divisor n - 1) of the columns.
Matrix covariance(const Matrix& data);

struct Projection2D {
  Matrix coords;  // n x 2
  /// Fraction of total variance carried by each axis.
  std::array<double, 2> axis_variance{0.0, 0.0};
  Matrix components;  // 2 x d, unit rows
  std::vector<double> mean;
  std::vector<double> eigenvalues;
  double total_variance = 0.0;
  bool degenerate = false;
};

/// Covariance PCA onto the top two axes. Each component is signed so its
/// largest-magnitude loading is positive. Zero total variance yields all-zero
/// coordinates and sets `degenerate`.
Projection2D pca_2d(const Matrix& data);
inline Projection2D pca_2d(const Dataset& data) { return pca_2d(data.features); }

/// Maps further points (e.g. centroids) into an existing projection plane.
Matrix project(const Projection2D& proj, const Matrix& points);

}  // namespace clustan
