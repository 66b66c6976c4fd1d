#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "tdblda/dataset.hpp"
#include "tdblda/matrix.hpp"

namespace tdblda {

struct ManifestEntry {
  std::filesystem::path path;  // resolved against the manifest's directory
  long long label = 0;         // as written in the manifest
};

/// `path,label` per line; blank lines and lines starting with `#` skipped.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest_path);
/// Paths are written relative to the manifest's directory when possible.
void write_manifest(const std::filesystem::path& manifest_path, const std::vector<ManifestEntry>& entries);

/// Binary (P5) or ASCII (P2) PGM, pixels divided by maxval.
Matrix read_pgm(const std::filesystem::path& path);
/// Writes P5 with the given maxval; values are clamped to [0, 1] and scaled.
void write_pgm(const std::filesystem::path& path, const Matrix& pixels, unsigned maxval = 255);

/// One row per line, comma-separated decimals, values taken verbatim.
Matrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);

/// Format chosen by extension: .pgm, otherwise matrix-CSV.
Matrix read_image(const std::filesystem::path& path);

/// Loads every manifest entry in order. Labels are renumbered 1..c by order of
/// first appearance.
LabeledMatrixDataset load_dataset(const std::filesystem::path& manifest_path);

/// Writes each sample as `<stem>_NNNNN.csv` into `dir` plus `manifest.txt`;
/// returns the manifest path.
std::filesystem::path save_dataset(const LabeledMatrixDataset& data, const std::filesystem::path& dir,
                                   const std::string& stem = "img");

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Per class, a seeded Fisher-Yates shuffle (class k uses Rng(seed).split(k))
/// picks `per_class_train` samples for training. Both index lists ascend.
SplitIndices split_indices(const LabeledMatrixDataset& data, std::size_t per_class_train, std::uint64_t seed);

LabeledMatrixDataset subset(const LabeledMatrixDataset& data, const std::vector<std::size_t>& indices);

std::pair<LabeledMatrixDataset, LabeledMatrixDataset> split(const LabeledMatrixDataset& data,
                                                            std::size_t per_class_train, std::uint64_t seed);

}  // namespace tdblda
