#include "tdblda/dataset.hpp"

#include <algorithm>
#include <string>

#include "tdblda/error.hpp"

namespace tdblda {

void validate(const LabeledMatrixDataset& data) {
  if (data.samples.size() != data.labels.size()) {
    throw Error(ErrorCode::LengthMismatch, "samples and labels differ in length");
  }
  if (data.samples.empty()) throw Error(ErrorCode::Empty, "dataset has no samples");
  if (data.class_count < 1) throw Error(ErrorCode::InvalidArgument, "class_count must be positive");
  const std::size_t d1 = data.rows();
  const std::size_t d2 = data.cols();
  if (d1 == 0 || d2 == 0) throw Error(ErrorCode::ShapeMismatch, "samples must be non-empty matrices");
  for (const Matrix& x : data.samples) {
    if (x.rows() != d1 || x.cols() != d2) throw Error(ErrorCode::ShapeMismatch, "samples differ in shape");
  }
  for (int y : data.labels) {
    if (y < 1 || y > data.class_count) {
      throw Error(ErrorCode::InvalidArgument, "label " + std::to_string(y) + " outside 1.." + std::to_string(data.class_count));
    }
  }
  const auto sizes = class_sizes(data);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) throw Error(ErrorCode::EmptyClass, "class " + std::to_string(i + 1) + " has no samples");
  }
}

LabeledMatrixDataset make_dataset(std::vector<Matrix> samples, std::vector<int> labels) {
  LabeledMatrixDataset d;
  d.class_count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
  d.samples = std::move(samples);
  d.labels = std::move(labels);
  return d;
}

LabeledMatrixDataset vectorize(const LabeledMatrixDataset& data) {
  LabeledMatrixDataset out;
  out.class_count = data.class_count;
  out.labels = data.labels;
  out.samples.reserve(data.size());
  for (const Matrix& x : data.samples) out.samples.push_back(vectorize(x));
  return out;
}

std::vector<std::size_t> class_sizes(const LabeledMatrixDataset& data) {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(std::max(data.class_count, 0)), 0);
  for (int y : data.labels) {
    if (y >= 1 && y <= data.class_count) ++sizes[static_cast<std::size_t>(y - 1)];
  }
  return sizes;
}

}  // namespace tdblda
