#include "tdblda/bound.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tdblda/eigen.hpp"
#include "tdblda/error.hpp"
#include "tdblda/rng.hpp"

namespace tdblda {

namespace {

std::vector<double> project_row(std::span<const double> w, const Matrix& x) {
  std::vector<double> out(x.cols(), 0.0);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    if (w[r] == 0.0) continue;
    for (std::size_t c = 0; c < x.cols(); ++c) out[c] += w[r] * x(r, c);
  }
  return out;
}

std::vector<double> difference(std::span<const double> a, std::span<const double> b) {
  std::vector<double> d(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) d[k] = a[k] - b[k];
  return d;
}

bool within_slack(double lhs, double rhs) {
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return lhs <= rhs + 1e-12 * scale;
}

}  // namespace

ProjectedGaussianModel projected_model(const LabeledMatrixDataset& data, const ClassStatistics& stats,
                                       std::span<const double> w) {
  validate(data);
  if (w.size() != data.rows()) throw Error(ErrorCode::ShapeMismatch, "direction length must equal d1");
  if (std::abs(norm2(w) - 1.0) > kDirectionNormTol) throw Error(ErrorCode::NonUnitDirection, "direction is not unit norm");

  const std::size_t d2 = data.cols();
  ProjectedGaussianModel model;
  model.direction.assign(w.begin(), w.end());
  model.priors = stats.priors;
  for (const Matrix& mean : stats.class_means) model.projected_class_means.push_back(project_row(w, mean));

  // Columns of D − X̄_I are the projected within-class deviations.
  model.shared_covariance = Matrix(d2, d2);
  for (std::size_t l = 0; l < data.size(); ++l) {
    const auto k = static_cast<std::size_t>(data.labels[l] - 1);
    const std::vector<double> dev = difference(project_row(w, data.samples[l]), model.projected_class_means[k]);
    for (std::size_t a = 0; a < d2; ++a)
      for (std::size_t b = 0; b < d2; ++b) model.shared_covariance(a, b) += dev[a] * dev[b];
  }
  return model;
}

std::vector<double> pair_exponents(const ProjectedGaussianModel& model) {
  const Matrix& cov = model.shared_covariance;
  const double tr = trace(cov);
  if (!(tr > 0.0)) throw Error(ErrorCode::SingularCovariance, "projected covariance is zero");
  const EigenPairs pairs = sym_eig(symmetrize(cov));
  if (pairs.values.front() <= kCovarianceFloor * tr) {
    throw Error(ErrorCode::SingularCovariance, "projected covariance is not invertible");
  }

  const std::size_t c = model.projected_class_means.size();
  std::vector<double> out;
  out.reserve(c * (c - 1) / 2);
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = i + 1; j < c; ++j) {
      const std::vector<double> gap = difference(model.projected_class_means[i], model.projected_class_means[j]);
      // gap·Σ̃⁻¹·gapᵀ = Σ_k (v_k·gap)² / λ_k
      double quad = 0.0;
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        const double proj = dot(pairs.vector(k), gap);
        quad += proj * proj / pairs.values[k];
      }
      out.push_back(quad / 8.0);
    }
  }
  return out;
}

double bhattacharyya_error(const ProjectedGaussianModel& model) {
  const std::vector<double> z = pair_exponents(model);
  const std::size_t c = model.priors.size();
  double eps = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = i + 1; j < c; ++j) eps += std::sqrt(model.priors[i] * model.priors[j]) * std::exp(-z[k++]);
  return eps;
}

double chord_slope(double b_cap) {
  if (b_cap < 0.0 || !std::isfinite(b_cap)) throw Error(ErrorCode::InvalidArgument, "b_cap must be a non-negative real");
  if (b_cap == 0.0) return 1.0;
  return -std::expm1(-b_cap) / b_cap;
}

BoundReport bound_rhs(const LabeledMatrixDataset& data, const ClassStatistics& stats, std::span<const double> w,
                      double b_cap) {
  if (!(b_cap > 0.0)) throw Error(ErrorCode::InvalidArgument, "b_cap must be positive");
  return check_direction(data, stats, w, b_cap).report;
}

DirectionCheck check_direction(const LabeledMatrixDataset& data, const ClassStatistics& stats,
                               std::span<const double> w, std::optional<double> b_cap) {
  const ProjectedGaussianModel model = projected_model(data, stats, w);
  const std::vector<double> z = pair_exponents(model);
  const std::size_t c = stats.counts.size();
  const double t = trace(model.shared_covariance);
  const double big_delta = delta(stats);

  DirectionCheck out;
  BoundReport& rep = out.report;
  rep.b_cap = b_cap ? *b_cap : (z.empty() ? 0.0 : *std::max_element(z.begin(), z.end()));
  rep.a_constant = chord_slope(rep.b_cap);

  double between = 0.0;
  double prior_sum = 0.0;
  std::size_t k = 0;
  bool chain = true;
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = i + 1; j < c; ++j, ++k) {
      const double weight = std::sqrt(stats.priors[i] * stats.priors[j]);
      const Matrix mean_gap = stats.class_means[i] - stats.class_means[j];
      const std::vector<double> projected_gap = project_row(w, mean_gap);

      PairInequalities p;
      p.i = i;
      p.j = j;
      p.exponent = z[k];
      p.projected_gap_sq = dot(projected_gap, projected_gap);
      p.mean_gap_sq = squared_frobenius_norm(mean_gap);
      p.covariance_trace = t;
      p.shrink_lhs = p.projected_gap_sq * (1.0 / t) * (1.0 - 1.0 / t);
      p.shrink_rhs = 0.25 * p.mean_gap_sq;
      p.trade_lhs = -p.projected_gap_sq / t;
      p.trade_rhs = -p.projected_gap_sq + 0.25 * p.mean_gap_sq * t;
      p.norm_chain_holds = within_slack(p.projected_gap_sq, p.mean_gap_sq);
      p.shrink_holds = within_slack(p.shrink_lhs, p.shrink_rhs);
      p.trade_holds = within_slack(p.trade_lhs, p.trade_rhs);
      chain = chain && p.norm_chain_holds && p.shrink_holds && p.trade_holds;
      out.pairs.push_back(p);

      rep.epsilon_b += weight * std::exp(-z[k]);
      between += weight * p.projected_gap_sq;
      prior_sum += weight;
    }
  }

  // Σ_i Σ_s ‖wᵀ(X_is − X̄_i)‖₂² equals trace(Σ̃).
  rep.rhs = -(rep.a_constant / 8.0) * between + (rep.a_constant / 8.0) * big_delta * t + prior_sum;
  rep.margin = rep.rhs - rep.epsilon_b;
  out.holds = chain && rep.margin >= -kMarginTol;
  return out;
}

BoundVerification verify_bound(const LabeledMatrixDataset& data, std::size_t trials, std::uint64_t seed) {
  validate(data);
  const ClassStatistics stats = compute_stats(data);
  const Rng root(seed);
  BoundVerification out;
  out.requested = trials;
  std::size_t successes = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = root.split(trial);
    std::vector<double> w(data.rows());
    double len = 0.0;
    while (len == 0.0) {
      for (double& x : w) x = rng.normal();
      len = norm2(w);
    }
    for (double& x : w) x /= len;
    try {
      TrialRecord rec{trial, check_direction(data, stats, w)};
      if (rec.check.holds) ++successes;
      out.trials.push_back(std::move(rec));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularCovariance) throw;
      ++out.skipped;
    }
  }
  if (trials > 0 && out.trials.empty()) {
    throw Error(ErrorCode::DegenerateDataset,
                "no sampled direction gave an invertible projected covariance in " + std::to_string(trials) + " trials");
  }
  out.success_fraction = out.trials.empty() ? 1.0 : static_cast<double>(successes) / static_cast<double>(out.trials.size());
  return out;
}

}  // namespace tdblda
