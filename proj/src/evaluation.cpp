#include "tdblda/evaluation.hpp"

#include <algorithm>
#include <limits>

#include "tdblda/error.hpp"
#include "tdblda/text.hpp"

namespace tdblda {

namespace {

double squared_distance(const Matrix& a, const Matrix& b) {
  double s = 0.0;
  const auto x = a.data();
  const auto y = b.data();
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - y[k];
    s += d * d;
  }
  return s;
}

}  // namespace

std::string_view metric_name(Metric m) noexcept { return m == Metric::Accuracy ? "accuracy" : "are"; }

Metric parse_metric(std::string_view name) {
  if (name == "accuracy") return Metric::Accuracy;
  if (name == "are") return Metric::Are;
  throw Error(ErrorCode::InvalidArgument, "unknown metric '" + std::string(name) + "'");
}

int nn_classify(std::span<const Matrix> train, std::span<const int> labels, const Matrix& query) {
  if (train.empty()) throw Error(ErrorCode::EmptyTrainingSet, "nearest-neighbor search over nothing");
  if (train.size() != labels.size()) throw Error(ErrorCode::LengthMismatch, "training samples and labels");
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < train.size(); ++l) {
    if (train[l].rows() != query.rows() || train[l].cols() != query.cols()) {
      throw Error(ErrorCode::ShapeMismatch, "query shape differs from training sample");
    }
    const double d = squared_distance(train[l], query);
    if (d < best_d) {
      best_d = d;
      best = l;
    }
  }
  return labels[best];
}

double accuracy(std::span<const int> predictions, std::span<const int> truth) {
  if (predictions.size() != truth.size()) throw Error(ErrorCode::LengthMismatch, "predictions vs truth");
  if (predictions.empty()) throw Error(ErrorCode::Empty, "no predictions");
  std::size_t hits = 0;
  for (std::size_t k = 0; k < truth.size(); ++k) hits += predictions[k] == truth[k] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double average_reconstruction_error(const LabeledMatrixDataset& data, const Projector& p) {
  if (data.samples.empty()) throw Error(ErrorCode::Empty, "no samples to reconstruct");
  double total = 0.0;
  for (const Matrix& raw : data.samples) {
    const Matrix x = conform_input(p, raw);
    total += frobenius_norm(x - reconstruct(p, x));
  }
  return total / static_cast<double>(data.samples.size());
}

ExperimentReport metric_curve(const LabeledMatrixDataset& train, const LabeledMatrixDataset& test, const CurveSpec& spec) {
  ExperimentReport report;
  report.method = std::string(method_name(spec.method));
  report.metric = spec.metric;
  report.seed = spec.seed;
  report.dataset = spec.dataset;

  std::vector<std::size_t> rs = spec.r_values;
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  if (rs.empty()) return report;

  const bool as_vectors = spec.method == Method::L2BLDA;
  const LabeledMatrixDataset fit_train = as_vectors ? vectorize(train) : train;

  for (std::size_t r : rs) {
    const Projector p = fit(spec.method, fit_train, r, spec.ridge);
    double value = 0.0;
    if (spec.metric == Metric::Are) {
      value = average_reconstruction_error(fit_train, p);
    } else {
      std::vector<Matrix> projected;
      projected.reserve(fit_train.size());
      for (const Matrix& x : fit_train.samples) projected.push_back(project(p, x));
      std::vector<int> predictions;
      predictions.reserve(test.size());
      for (const Matrix& x : test.samples) {
        predictions.push_back(nn_classify(projected, fit_train.labels, project(p, conform_input(p, x))));
      }
      value = accuracy(predictions, test.labels);
    }
    report.rows.push_back({r, value});
  }
  return report;
}

std::string reports_to_csv(std::span<const ExperimentReport> reports) {
  struct Line {
    std::string method;
    std::size_t r;
    std::string text;
  };
  std::vector<Line> lines;
  for (const auto& rep : reports) {
    for (const auto& row : rep.rows) {
      lines.push_back({rep.method, row.r,
                       rep.method + ',' + std::to_string(row.r) + ',' + std::string(metric_name(rep.metric)) + ',' +
                           format_double(row.value) + ',' + std::to_string(rep.seed) + '\n'});
    }
  }
  std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return a.method != b.method ? a.method < b.method : a.r < b.r;
  });
  std::string out = "method,r,metric,value,seed\n";
  for (const auto& l : lines) out += l.text;
  return out;
}

}  // namespace tdblda
