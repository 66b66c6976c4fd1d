#include "tdblda/corruption.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "tdblda/error.hpp"

namespace tdblda {

namespace {

void require_ratio(double ratio) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) throw Error(ErrorCode::InvalidArgument, "area ratio must lie in [0, 1]");
}

std::size_t side(std::size_t extent, double ratio) {
  const auto s = static_cast<std::size_t>(std::lround(static_cast<double>(extent) * std::sqrt(ratio)));
  return std::min(s, extent);
}

}  // namespace

std::string_view corruption_kind_name(CorruptionKind k) noexcept {
  switch (k) {
    case CorruptionKind::BlockOcclusion: return "block";
    case CorruptionKind::GaussianPatch: return "gaussian";
    case CorruptionKind::DummyImages: return "dummy";
  }
  return "unknown";
}

CorruptionKind parse_corruption_kind(std::string_view name) {
  for (auto k : {CorruptionKind::BlockOcclusion, CorruptionKind::GaussianPatch, CorruptionKind::DummyImages}) {
    if (corruption_kind_name(k) == name) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown corruption kind '" + std::string(name) + "'");
}

void validate(const CorruptionSpec& spec) {
  require_ratio(spec.area_ratio);
  if (!(spec.noise_variance >= 0.0) || !std::isfinite(spec.noise_mean)) {
    throw Error(ErrorCode::InvalidArgument, "noise variance must be non-negative and the mean finite");
  }
}

std::string to_json(const CorruptionSpec& spec) {
  nlohmann::ordered_json j;
  j["kind"] = corruption_kind_name(spec.kind);
  j["area_ratio"] = spec.area_ratio;
  j["noise_mean"] = spec.noise_mean;
  j["noise_variance"] = spec.noise_variance;
  j["count"] = spec.count;
  j["seed"] = spec.seed;
  j["rng"] = Rng::kAlgorithm;
  return j.dump(2) + "\n";
}

Rect random_rect(std::size_t d1, std::size_t d2, double ratio, Rng& rng) {
  require_ratio(ratio);
  Rect rect;
  rect.height = side(d1, ratio);
  rect.width = side(d2, ratio);
  rect.row = static_cast<std::size_t>(rng.uniform_index(d1 - rect.height + 1));
  rect.col = static_cast<std::size_t>(rng.uniform_index(d2 - rect.width + 1));
  return rect;
}

Matrix block_occlusion(const Matrix& x, double ratio, Rng& rng) {
  const Rect rect = random_rect(x.rows(), x.cols(), ratio, rng);
  Matrix out = x;
  for (std::size_t r = rect.row; r < rect.row + rect.height; ++r)
    for (std::size_t c = rect.col; c < rect.col + rect.width; ++c) out(r, c) = 0.0;
  return out;
}

NoisePatch gaussian_patch_noise(std::size_t d1, std::size_t d2, double ratio, double mean, double variance, Rng& rng) {
  if (!(variance >= 0.0)) throw Error(ErrorCode::InvalidArgument, "variance must be non-negative");
  NoisePatch patch{random_rect(d1, d2, ratio, rng), Matrix(d1, d2)};
  const double stddev = std::sqrt(variance);
  for (std::size_t r = patch.rect.row; r < patch.rect.row + patch.rect.height; ++r)
    for (std::size_t c = patch.rect.col; c < patch.rect.col + patch.rect.width; ++c) patch.noise(r, c) = rng.normal(mean, stddev);
  return patch;
}

Matrix gaussian_patch(const Matrix& x, double ratio, double mean, double variance, Rng& rng) {
  const NoisePatch patch = gaussian_patch_noise(x.rows(), x.cols(), ratio, mean, variance, rng);
  Matrix out = x + patch.noise;
  for (double& v : out.data()) v = std::clamp(v, 0.0, 1.0);
  return out;
}

LabeledMatrixDataset inject_dummies(const LabeledMatrixDataset& data, std::size_t count, Rng& rng) {
  validate(data);
  LabeledMatrixDataset out = data;
  const std::size_t d1 = data.rows();
  const std::size_t d2 = data.cols();
  out.samples.reserve(data.size() + count);
  out.labels.reserve(data.size() + count);
  for (std::size_t k = 0; k < count; ++k) {
    Matrix dummy(d1, d2);
    for (double& v : dummy.data()) v = rng.uniform01();
    out.samples.push_back(std::move(dummy));
    out.labels.push_back(1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(data.class_count))));
  }
  return out;
}

LabeledMatrixDataset corrupt_dataset(const LabeledMatrixDataset& data, const CorruptionSpec& spec) {
  validate(spec);
  validate(data);
  const Rng root(spec.seed);
  if (spec.kind == CorruptionKind::DummyImages) {
    Rng rng = root;
    return inject_dummies(data, spec.count, rng);
  }
  LabeledMatrixDataset out = data;
  for (std::size_t l = 0; l < out.size(); ++l) {
    Rng rng = root.split(l);
    out.samples[l] = spec.kind == CorruptionKind::BlockOcclusion
                         ? block_occlusion(data.samples[l], spec.area_ratio, rng)
                         : gaussian_patch(data.samples[l], spec.area_ratio, spec.noise_mean, spec.noise_variance, rng);
  }
  return out;
}

}  // namespace tdblda
