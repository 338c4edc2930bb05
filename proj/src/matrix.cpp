#include "clustan/matrix.hpp"

#include "clustan/error.hpp"

namespace clustan {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorKind::DimensionMismatch, "matrix of " + std::to_string(rows) + "x" + std::to_string(cols) +
                                                  " given " + std::to_string(data_.size()) + " values");
  }
}

}  // namespace clustan
