#pragma once

#include <cstddef>
#include <vector>

#include "tdblda/matrix.hpp"

namespace tdblda {

/// N matrix samples of identical shape with labels in {1..class_count}.
struct LabeledMatrixDataset {
  std::vector<Matrix> samples;
  std::vector<int> labels;
  int class_count = 0;

  std::size_t size() const noexcept { return samples.size(); }
  std::size_t rows() const noexcept { return samples.empty() ? 0 : samples.front().rows(); }
  std::size_t cols() const noexcept { return samples.empty() ? 0 : samples.front().cols(); }
};

/// Throws ShapeMismatch/LengthMismatch/EmptyClass/InvalidArgument when the
/// dataset invariants do not hold.
void validate(const LabeledMatrixDataset& data);

/// Builds a dataset, deriving class_count as the largest label.
LabeledMatrixDataset make_dataset(std::vector<Matrix> samples, std::vector<int> labels);

/// Each sample flattened row-major into an n×1 column.
LabeledMatrixDataset vectorize(const LabeledMatrixDataset& data);

std::vector<std::size_t> class_sizes(const LabeledMatrixDataset& data);

}  // namespace tdblda
