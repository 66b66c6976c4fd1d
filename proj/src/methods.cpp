#include "tdblda/methods.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "tdblda/eigen.hpp"
#include "tdblda/error.hpp"
#include "tdblda/text.hpp"

namespace tdblda {

namespace {

void require_rank(std::size_t r, std::size_t limit) {
  if (r < 1 || r > limit) {
    throw Error(ErrorCode::InvalidArgument,
                "reduced dimension " + std::to_string(r) + " outside 1.." + std::to_string(limit));
  }
}

void require_two_classes(const LabeledMatrixDataset& data) {
  validate(data);
  if (data.class_count < 2) throw Error(ErrorCode::SingleClass, "discriminant fitting needs at least two classes");
}

std::vector<std::size_t> nonzero_positions(const EigenPairs& pairs) {
  double max_abs = 0.0;
  for (double v : pairs.values) max_abs = std::max(max_abs, std::abs(v));
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (std::abs(pairs.values[k]) > kNonzeroEigenvalueFraction * max_abs) keep.push_back(k);
  }
  return keep;
}

enum class Order { Smallest, Largest };

Projector take(const EigenPairs& pairs, std::size_t r, Order order, Method method, std::size_t d1, std::size_t d2) {
  std::vector<std::size_t> keep = nonzero_positions(pairs);
  if (keep.size() < r) {
    throw Error(ErrorCode::RankDeficient, "only " + std::to_string(keep.size()) +
                                              " nonzero eigenvalues available, " + std::to_string(r) + " requested");
  }
  if (order == Order::Largest) {
    // Values ascend along `keep`; ties keep the lower solver position first.
    std::stable_sort(keep.begin(), keep.end(),
                     [&](std::size_t a, std::size_t b) { return pairs.values[a] > pairs.values[b]; });
  }
  Projector p;
  p.method = method;
  p.d1 = d1;
  p.d2 = d2;
  p.w = Matrix(pairs.vectors.rows(), r);
  p.eigenvalues.reserve(r);
  for (std::size_t k = 0; k < r; ++k) {
    p.w.set_col(k, pairs.vectors.col(keep[k]));
    p.eigenvalues.push_back(pairs.values[keep[k]]);
  }
  return p;
}

Projector fit_bound_criterion(const LabeledMatrixDataset& data, std::size_t r, Method method) {
  require_two_classes(data);
  require_rank(r, data.rows());
  const ClassStatistics stats = compute_stats(data);
  const ScatterMatrices scatters = build_scatters(data, stats);
  return take(sym_eig(scatters.bound), r, Order::Smallest, method, data.rows(), data.cols());
}

}  // namespace

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::TwoDBLDA: return "2dblda";
    case Method::TwoDLDA: return "2dlda";
    case Method::TwoDPCA: return "2dpca";
    case Method::L2BLDA: return "l2blda";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::TwoDBLDA, Method::TwoDLDA, Method::TwoDPCA, Method::L2BLDA}) {
    if (method_name(m) == name) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

double Projector::orthonormality_error() const {
  return frobenius_norm(multiply_atb(w, w) - Matrix::identity(w.cols()));
}

Projector fit_2dblda(const LabeledMatrixDataset& data, std::size_t r) {
  return fit_bound_criterion(data, r, Method::TwoDBLDA);
}

Projector fit_l2blda(const LabeledMatrixDataset& vectors, std::size_t r) {
  validate(vectors);
  if (vectors.cols() != 1) throw Error(ErrorCode::ShapeMismatch, "L2BLDA expects n x 1 column samples");
  return fit_bound_criterion(vectors, r, Method::L2BLDA);
}

double auto_ridge(const Matrix& within) {
  const std::size_t d1 = within.rows();
  const double tr = trace(within);
  if (!(tr > 0.0)) return 1e-6;
  const EigenPairs pairs = sym_eig(within);
  const double largest = pairs.values.back();
  if (pairs.values.front() <= 1e-12 * largest) return 1e-6 * tr / static_cast<double>(d1);
  return 0.0;
}

Projector fit_2dlda(const LabeledMatrixDataset& data, std::size_t r, std::optional<double> ridge) {
  require_two_classes(data);
  require_rank(r, data.rows());
  if (ridge && *ridge < 0.0) throw Error(ErrorCode::InvalidArgument, "ridge must be non-negative");
  const ClassStatistics stats = compute_stats(data);
  const ScatterMatrices scatters = build_scatters(data, stats);
  const double lambda = ridge ? *ridge : auto_ridge(scatters.within);
  return take(gen_sym_eig(scatters.between, scatters.within, lambda), r, Order::Largest, Method::TwoDLDA, data.rows(),
              data.cols());
}

Projector fit_2dpca(const LabeledMatrixDataset& data, std::size_t r) {
  validate(data);
  require_rank(r, data.rows());
  const ClassStatistics stats = compute_stats(data);
  Matrix total(data.rows(), data.rows());
  for (const Matrix& x : data.samples) add_outer(total, x - stats.overall_mean);
  total *= 1.0 / static_cast<double>(data.size());
  return take(sym_eig(symmetrize(total)), r, Order::Largest, Method::TwoDPCA, data.rows(), data.cols());
}

Projector fit(Method method, const LabeledMatrixDataset& data, std::size_t r, std::optional<double> ridge) {
  switch (method) {
    case Method::TwoDBLDA: return fit_2dblda(data, r);
    case Method::TwoDLDA: return fit_2dlda(data, r, ridge);
    case Method::TwoDPCA: return fit_2dpca(data, r);
    case Method::L2BLDA: return fit_l2blda(data.cols() == 1 ? data : vectorize(data), r);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method");
}

Matrix conform_input(const Projector& p, const Matrix& x) {
  if (p.method == Method::L2BLDA && x.cols() != 1 && x.size() == p.d1) return vectorize(x);
  return x;
}

Matrix project(const Projector& p, const Matrix& x) {
  if (x.rows() != p.d1 || x.cols() != p.d2) {
    throw Error(ErrorCode::ShapeMismatch, "projector expects " + std::to_string(p.d1) + "x" + std::to_string(p.d2) +
                                              ", got " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  }
  return multiply_atb(p.w, x);
}

Matrix reconstruct(const Projector& p, const Matrix& x) {
  if (p.method == Method::TwoDLDA) {
    throw Error(ErrorCode::NonOrthonormalProjector, "2DLDA directions are not mutually orthogonal");
  }
  if (p.orthonormality_error() > kOrthonormalityTol) {
    throw Error(ErrorCode::NonOrthonormalProjector, "projector columns are not orthonormal");
  }
  return p.w * project(p, x);
}

double bound_objective(const LabeledMatrixDataset& data, const ClassStatistics& stats, const Matrix& w) {
  const std::size_t c = stats.counts.size();
  const double n = static_cast<double>(stats.total);
  double between = 0.0;
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = i + 1; j < c; ++j) {
      const double weight = std::sqrt(static_cast<double>(stats.counts[i]) * static_cast<double>(stats.counts[j]));
      between += weight * squared_frobenius_norm(multiply_atb(w, stats.class_means[i] - stats.class_means[j]));
    }
  }
  double within = 0.0;
  for (std::size_t l = 0; l < data.size(); ++l) {
    const auto k = static_cast<std::size_t>(data.labels[l] - 1);
    within += squared_frobenius_norm(multiply_atb(w, data.samples[l] - stats.class_means[k]));
  }
  return -between / n + delta(stats) * within;
}

std::string serialize_projector(const Projector& p) {
  std::string out;
  out += method_name(p.method);
  out += ',' + std::to_string(p.d1) + ',' + std::to_string(p.d2) + ',' + std::to_string(p.rank()) + '\n';
  for (std::size_t i = 0; i < p.w.rows(); ++i) {
    for (std::size_t k = 0; k < p.w.cols(); ++k) {
      if (k) out += ',';
      out += format_double(p.w(i, k));
    }
    out += '\n';
  }
  return out;
}

Projector deserialize_projector(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::DecodeError, "empty projector file");
  const auto header = split_fields(lines[0]);
  if (header.size() != 4) throw Error(ErrorCode::DecodeError, "projector header must be method,d1,d2,r");
  Projector p;
  p.method = parse_method(header[0]);
  const long long d1 = parse_integer(header[1]);
  const long long d2 = parse_integer(header[2]);
  const long long r = parse_integer(header[3]);
  if (d1 < 1 || d2 < 1 || r < 1 || r > d1) throw Error(ErrorCode::DecodeError, "invalid projector dimensions");
  if (lines.size() != static_cast<std::size_t>(d1) + 1) throw Error(ErrorCode::DecodeError, "projector row count");
  p.d1 = static_cast<std::size_t>(d1);
  p.d2 = static_cast<std::size_t>(d2);
  std::vector<double> entries;
  entries.reserve(p.d1 * static_cast<std::size_t>(r));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    if (fields.size() != static_cast<std::size_t>(r)) throw Error(ErrorCode::DecodeError, "projector column count");
    for (auto f : fields) entries.push_back(parse_double(f));
  }
  try {
    p.w = Matrix(p.d1, static_cast<std::size_t>(r), std::move(entries));
  } catch (const Error& e) {
    throw Error(ErrorCode::DecodeError, e.what());
  }
  return p;
}

void save_projector(const Projector& p, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_projector(p));
}

Projector load_projector(const std::filesystem::path& path) { return deserialize_projector(read_file(path)); }

}  // namespace tdblda
