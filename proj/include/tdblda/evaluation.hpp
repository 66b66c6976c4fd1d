#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tdblda/dataset.hpp"
#include "tdblda/matrix.hpp"
#include "tdblda/methods.hpp"

namespace tdblda {

enum class Metric { Accuracy, Are };

std::string_view metric_name(Metric m) noexcept;
Metric parse_metric(std::string_view name);

struct ReportRow {
  std::size_t r = 0;
  double value = 0.0;
};

struct ExperimentReport {
  std::string method;
  Metric metric = Metric::Accuracy;
  std::vector<ReportRow> rows;  // r strictly increasing
  std::uint64_t seed = 0;
  std::string dataset;
};

/// Label of the training sample nearest to `query` in Frobenius distance;
/// exact ties go to the lowest training index.
int nn_classify(std::span<const Matrix> train, std::span<const int> labels, const Matrix& query);

double accuracy(std::span<const int> predictions, std::span<const int> truth);

/// (1/N)·Σ‖X_l − W·Wᵀ·X_l‖_F over the dataset samples.
double average_reconstruction_error(const LabeledMatrixDataset& data, const Projector& p);

struct CurveSpec {
  Method method = Method::TwoDBLDA;
  Metric metric = Metric::Accuracy;
  std::vector<std::size_t> r_values;
  std::optional<double> ridge;
  std::uint64_t seed = 0;
  std::string dataset;
};

/// One fit per r. Accuracy rows classify `test` by 1-NN against the projected
/// `train`; ARE rows reconstruct the training samples themselves.
ExperimentReport metric_curve(const LabeledMatrixDataset& train, const LabeledMatrixDataset& test, const CurveSpec& spec);

/// CSV with header `method,r,metric,value,seed`; rows sorted by (method, r).
std::string reports_to_csv(std::span<const ExperimentReport> reports);

}  // namespace tdblda
