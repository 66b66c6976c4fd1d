#include "tdblda/class_stats.hpp"

#include <cmath>

#include "tdblda/error.hpp"

namespace tdblda {

ClassStatistics compute_stats(const LabeledMatrixDataset& data) {
  validate(data);
  const std::size_t c = static_cast<std::size_t>(data.class_count);
  const std::size_t d1 = data.rows();
  const std::size_t d2 = data.cols();

  ClassStatistics stats;
  stats.total = data.size();
  stats.counts.assign(c, 0);
  stats.class_means.assign(c, Matrix(d1, d2));
  stats.overall_mean = Matrix(d1, d2);

  for (std::size_t l = 0; l < data.size(); ++l) {
    const auto k = static_cast<std::size_t>(data.labels[l] - 1);
    ++stats.counts[k];
    stats.class_means[k] += data.samples[l];
    stats.overall_mean += data.samples[l];
  }
  stats.priors.resize(c);
  for (std::size_t k = 0; k < c; ++k) {
    stats.class_means[k] *= 1.0 / static_cast<double>(stats.counts[k]);
    stats.priors[k] = static_cast<double>(stats.counts[k]) / static_cast<double>(stats.total);
  }
  stats.overall_mean *= 1.0 / static_cast<double>(stats.total);
  return stats;
}

double delta(const ClassStatistics& stats) {
  const std::size_t c = stats.counts.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = i + 1; j < c; ++j) {
      sum += std::sqrt(stats.priors[i] * stats.priors[j]) *
             squared_frobenius_norm(stats.class_means[i] - stats.class_means[j]);
    }
  }
  return 0.25 * sum;
}

ScatterMatrices build_scatters(const LabeledMatrixDataset& data, const ClassStatistics& stats) {
  validate(data);
  if (stats.class_count() != data.class_count || stats.total != data.size()) {
    throw Error(ErrorCode::InvalidArgument, "statistics do not describe this dataset");
  }
  const std::size_t c = stats.counts.size();
  const std::size_t d1 = data.rows();
  const double n = static_cast<double>(stats.total);

  ScatterMatrices out;
  out.between = Matrix(d1, d1);
  out.within_sum = Matrix(d1, d1);
  out.pairwise_between = Matrix(d1, d1);

  for (std::size_t i = 0; i < c; ++i) {
    add_outer(out.between, stats.class_means[i] - stats.overall_mean, static_cast<double>(stats.counts[i]));
  }
  out.between *= 1.0 / n;

  for (std::size_t l = 0; l < data.size(); ++l) {
    const auto k = static_cast<std::size_t>(data.labels[l] - 1);
    add_outer(out.within_sum, data.samples[l] - stats.class_means[k]);
  }

  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = i + 1; j < c; ++j) {
      const double weight = std::sqrt(static_cast<double>(stats.counts[i]) * static_cast<double>(stats.counts[j]));
      add_outer(out.pairwise_between, stats.class_means[i] - stats.class_means[j], weight);
    }
  }
  out.pairwise_between *= 1.0 / n;

  out.delta = delta(stats);
  out.within = out.within_sum * (1.0 / n);
  out.bound = out.within_sum * out.delta - out.pairwise_between;

  out.between = symmetrize(out.between);
  out.within = symmetrize(out.within);
  out.within_sum = symmetrize(out.within_sum);
  out.pairwise_between = symmetrize(out.pairwise_between);
  out.bound = symmetrize(out.bound);
  return out;
}

}  // namespace tdblda
