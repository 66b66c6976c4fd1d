#include "tdblda/data_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <string_view>

#include "tdblda/error.hpp"
#include "tdblda/rng.hpp"
#include "tdblda/text.hpp"

namespace fs = std::filesystem;

namespace tdblda {

namespace {

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

// Reads one whitespace-delimited header token, skipping `#` comments.
std::string next_pgm_token(std::string_view bytes, std::size_t& pos, const fs::path& path) {
  while (pos < bytes.size()) {
    const unsigned char ch = static_cast<unsigned char>(bytes[pos]);
    if (ch == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(ch)) {
      ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) && bytes[pos] != '#') ++pos;
  if (start == pos) throw Error(ErrorCode::DecodeError, path.string() + ": truncated PGM header");
  return std::string(bytes.substr(start, pos - start));
}

long long header_integer(std::string_view bytes, std::size_t& pos, const fs::path& path) {
  const std::string tok = next_pgm_token(bytes, pos, path);
  try {
    return parse_integer(tok);
  } catch (const Error&) {
    throw Error(ErrorCode::DecodeError, path.string() + ": bad PGM header field '" + tok + "'");
  }
}

bool has_extension(const fs::path& p, std::string_view ext) {
  std::string e = p.extension().string();
  std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return e == ext;
}

}  // namespace

std::vector<ManifestEntry> read_manifest(const fs::path& manifest_path) {
  if (!fs::exists(manifest_path)) throw Error(ErrorCode::MissingFile, manifest_path.string() + " does not exist");
  const std::string text = read_file(manifest_path);
  const fs::path base = manifest_path.parent_path();
  std::vector<ManifestEntry> entries;
  std::size_t lineno = 0;
  for (std::string_view raw : lines_of(text)) {
    ++lineno;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t comma = line.rfind(',');
    if (comma == std::string_view::npos) {
      throw Error(ErrorCode::DecodeError, manifest_path.string() + ":" + std::to_string(lineno) + ": expected path,label");
    }
    ManifestEntry e;
    const fs::path rel(std::string(trim(line.substr(0, comma))));
    e.path = rel.is_absolute() ? rel : base / rel;
    try {
      e.label = parse_integer(line.substr(comma + 1));
    } catch (const Error&) {
      throw Error(ErrorCode::DecodeError, manifest_path.string() + ":" + std::to_string(lineno) + ": bad label");
    }
    entries.push_back(std::move(e));
  }
  if (entries.empty()) throw Error(ErrorCode::EmptyManifest, manifest_path.string() + " lists no images");
  return entries;
}

void write_manifest(const fs::path& manifest_path, const std::vector<ManifestEntry>& entries) {
  const fs::path base = fs::absolute(manifest_path).parent_path();
  std::string out;
  for (const auto& e : entries) {
    std::error_code ec;
    fs::path rel = fs::relative(fs::absolute(e.path), base, ec);
    if (ec || rel.empty()) rel = fs::absolute(e.path);
    out += rel.generic_string() + ',' + std::to_string(e.label) + '\n';
  }
  write_file_atomic(manifest_path, out);
}

Matrix read_pgm(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::MissingFile, path.string() + " does not exist");
  const std::string bytes = read_file(path);
  std::size_t pos = 0;
  const std::string magic = next_pgm_token(bytes, pos, path);
  if (magic != "P2" && magic != "P5") throw Error(ErrorCode::DecodeError, path.string() + ": not a grayscale PGM");
  const long long width = header_integer(bytes, pos, path);
  const long long height = header_integer(bytes, pos, path);
  const long long maxval = header_integer(bytes, pos, path);
  if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) {
    throw Error(ErrorCode::DecodeError, path.string() + ": invalid PGM dimensions or maxval");
  }
  const auto rows = static_cast<std::size_t>(height);
  const auto cols = static_cast<std::size_t>(width);
  const double scale = 1.0 / static_cast<double>(maxval);
  std::vector<double> px(rows * cols);

  if (magic == "P2") {
    for (double& v : px) {
      const long long raw = header_integer(bytes, pos, path);
      if (raw < 0 || raw > maxval) throw Error(ErrorCode::DecodeError, path.string() + ": pixel exceeds maxval");
      v = static_cast<double>(raw) * scale;
    }
  } else {
    ++pos;  // the single whitespace byte after maxval
    const std::size_t bpp = maxval < 256 ? 1 : 2;
    if (bytes.size() < pos + px.size() * bpp) throw Error(ErrorCode::DecodeError, path.string() + ": truncated pixel data");
    for (std::size_t k = 0; k < px.size(); ++k) {
      unsigned raw = static_cast<unsigned char>(bytes[pos + k * bpp]);
      if (bpp == 2) raw = (raw << 8) | static_cast<unsigned char>(bytes[pos + k * bpp + 1]);
      if (raw > maxval) throw Error(ErrorCode::DecodeError, path.string() + ": pixel exceeds maxval");
      px[k] = static_cast<double>(raw) * scale;
    }
  }
  return Matrix(rows, cols, std::move(px));
}

void write_pgm(const fs::path& path, const Matrix& pixels, unsigned maxval) {
  if (maxval < 1 || maxval > 65535) throw Error(ErrorCode::InvalidArgument, "maxval must be in 1..65535");
  std::string out = "P5\n" + std::to_string(pixels.cols()) + " " + std::to_string(pixels.rows()) + "\n" +
                    std::to_string(maxval) + "\n";
  for (double v : pixels.data()) {
    const auto raw = static_cast<unsigned>(std::lround(std::clamp(v, 0.0, 1.0) * maxval));
    if (maxval >= 256) out.push_back(static_cast<char>((raw >> 8) & 0xFF));
    out.push_back(static_cast<char>(raw & 0xFF));
  }
  write_file_atomic(path, out);
}

Matrix read_matrix_csv(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::MissingFile, path.string() + " does not exist");
  const std::string text = read_file(path);
  std::vector<double> entries;
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (std::string_view raw : lines_of(text)) {
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (rows == 0) cols = fields.size();
    if (fields.size() != cols) throw Error(ErrorCode::DecodeError, path.string() + ": ragged rows");
    for (auto f : fields) entries.push_back(parse_double(f));
    ++rows;
  }
  if (rows == 0) throw Error(ErrorCode::DecodeError, path.string() + ": empty matrix");
  try {
    return Matrix(rows, cols, std::move(entries));
  } catch (const Error& e) {
    throw Error(ErrorCode::DecodeError, path.string() + ": " + e.what());
  }
}

void write_matrix_csv(const fs::path& path, const Matrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_double(m(r, c));
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

Matrix read_image(const fs::path& path) {
  return has_extension(path, ".pgm") ? read_pgm(path) : read_matrix_csv(path);
}

LabeledMatrixDataset load_dataset(const fs::path& manifest_path) {
  const auto entries = read_manifest(manifest_path);
  LabeledMatrixDataset data;
  std::map<long long, int> canonical;
  for (const auto& e : entries) {
    Matrix img = read_image(e.path);
    if (!data.samples.empty() && (img.rows() != data.rows() || img.cols() != data.cols())) {
      throw Error(ErrorCode::DimensionMismatch, e.path.string() + " is " + std::to_string(img.rows()) + "x" +
                                                    std::to_string(img.cols()) + ", expected " +
                                                    std::to_string(data.rows()) + "x" + std::to_string(data.cols()));
    }
    auto [it, inserted] = canonical.try_emplace(e.label, static_cast<int>(canonical.size()) + 1);
    data.samples.push_back(std::move(img));
    data.labels.push_back(it->second);
  }
  data.class_count = static_cast<int>(canonical.size());
  return data;
}

fs::path save_dataset(const LabeledMatrixDataset& data, const fs::path& dir, const std::string& stem) {
  fs::create_directories(dir);
  std::vector<ManifestEntry> entries;
  entries.reserve(data.size());
  for (std::size_t l = 0; l < data.size(); ++l) {
    char name[32];
    std::snprintf(name, sizeof(name), "_%05zu.csv", l);
    const fs::path file = dir / (stem + name);
    write_matrix_csv(file, data.samples[l]);
    entries.push_back({file, data.labels[l]});
  }
  const fs::path manifest = dir / "manifest.txt";
  write_manifest(manifest, entries);
  return manifest;
}

SplitIndices split_indices(const LabeledMatrixDataset& data, std::size_t per_class_train, std::uint64_t seed) {
  validate(data);
  if (per_class_train < 1) throw Error(ErrorCode::InvalidArgument, "per_class_train must be positive");
  const std::size_t c = static_cast<std::size_t>(data.class_count);
  std::vector<std::vector<std::size_t>> members(c);
  for (std::size_t l = 0; l < data.size(); ++l) members[static_cast<std::size_t>(data.labels[l] - 1)].push_back(l);

  const Rng root(seed);
  std::vector<bool> in_train(data.size(), false);
  for (std::size_t k = 0; k < c; ++k) {
    auto& idx = members[k];
    if (idx.size() <= per_class_train) {
      throw Error(ErrorCode::InsufficientClassSize, "class " + std::to_string(k + 1) + " has " +
                                                        std::to_string(idx.size()) + " samples, needs more than " +
                                                        std::to_string(per_class_train));
    }
    Rng rng = root.split(k);
    for (std::size_t i = idx.size() - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(rng.uniform_index(i + 1));
      std::swap(idx[i], idx[j]);
    }
    for (std::size_t t = 0; t < per_class_train; ++t) in_train[idx[t]] = true;
  }
  SplitIndices out;
  for (std::size_t l = 0; l < data.size(); ++l) (in_train[l] ? out.train : out.test).push_back(l);
  return out;
}

LabeledMatrixDataset subset(const LabeledMatrixDataset& data, const std::vector<std::size_t>& indices) {
  LabeledMatrixDataset out;
  out.class_count = data.class_count;
  out.samples.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (std::size_t l : indices) {
    out.samples.push_back(data.samples.at(l));
    out.labels.push_back(data.labels.at(l));
  }
  return out;
}

std::pair<LabeledMatrixDataset, LabeledMatrixDataset> split(const LabeledMatrixDataset& data,
                                                            std::size_t per_class_train, std::uint64_t seed) {
  const SplitIndices idx = split_indices(data, per_class_train, seed);
  return {subset(data, idx.train), subset(data, idx.test)};
}

}  // namespace tdblda
