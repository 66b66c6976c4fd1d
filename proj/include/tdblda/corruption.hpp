#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "tdblda/dataset.hpp"
#include "tdblda/matrix.hpp"
#include "tdblda/rng.hpp"

namespace tdblda {

enum class CorruptionKind { BlockOcclusion, GaussianPatch, DummyImages };

std::string_view corruption_kind_name(CorruptionKind k) noexcept;  // block, gaussian, dummy
CorruptionKind parse_corruption_kind(std::string_view name);

struct CorruptionSpec {
  CorruptionKind kind = CorruptionKind::BlockOcclusion;
  double area_ratio = 0.0;
  double noise_mean = 0.0;
  double noise_variance = 0.2;
  std::size_t count = 100;
  std::uint64_t seed = 0;
};

void validate(const CorruptionSpec& spec);
/// JSON object with every CorruptionSpec field plus the generator algorithm name.
std::string to_json(const CorruptionSpec& spec);

/// Axis-aligned block: rows [row, row+height), cols [col, col+width).
struct Rect {
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t height = 0;
  std::size_t width = 0;

  bool contains(std::size_t r, std::size_t c) const noexcept {
    return r >= row && r < row + height && c >= col && c < col + width;
  }
  std::size_t area() const noexcept { return height * width; }
};

/// Height round(d1·√ratio), width round(d2·√ratio); the top-left corner is
/// drawn uniformly (row first, then column) over all positions that fit.
Rect random_rect(std::size_t d1, std::size_t d2, double ratio, Rng& rng);

/// Zeroes a random block covering `ratio` of the image area.
Matrix block_occlusion(const Matrix& x, double ratio, Rng& rng);

struct NoisePatch {
  Rect rect;
  Matrix noise;  // d1×d2, zero outside rect
};

/// The additive field used by gaussian_patch: Normal(mean, variance) draws in
/// row-major order inside the rectangle.
NoisePatch gaussian_patch_noise(std::size_t d1, std::size_t d2, double ratio, double mean, double variance, Rng& rng);

/// clamp(X + noise, 0, 1) with the noise of gaussian_patch_noise.
Matrix gaussian_patch(const Matrix& x, double ratio, double mean, double variance, Rng& rng);

/// Appends `count` images of i.i.d. Uniform[0,1) pixels; each label is drawn
/// uniformly from the existing classes. Original samples stay first.
LabeledMatrixDataset inject_dummies(const LabeledMatrixDataset& data, std::size_t count, Rng& rng);

/// Applies the corruption to every sample. Image l draws from Rng(seed).split(l);
/// dummy injection draws from Rng(seed).
LabeledMatrixDataset corrupt_dataset(const LabeledMatrixDataset& data, const CorruptionSpec& spec);

}  // namespace tdblda
