// Command-line front end: fitting, projection, reconstruction, experiment
// curves, corruption, bound verification and dataset splitting.
//
// Exit status: 0 success, 1 runtime failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tdblda/bound.hpp"
#include "tdblda/class_stats.hpp"
#include "tdblda/corruption.hpp"
#include "tdblda/data_io.hpp"
#include "tdblda/error.hpp"
#include "tdblda/evaluation.hpp"
#include "tdblda/methods.hpp"
#include "tdblda/text.hpp"

namespace fs = std::filesystem;
using namespace tdblda;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kMethods{"2dblda", "2dlda", "2dpca", "l2blda"};

std::string join_numbers(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ';';
    out += format_double(xs[k]);
  }
  return out;
}

// "3", "1..5", "1,2,8" or combinations such as "1..3,7".
std::vector<std::size_t> parse_r_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (auto field : split_fields(text)) {
    if (field.empty()) continue;
    try {
      const auto dots = field.find("..");
      if (dots == std::string_view::npos) {
        const long long v = parse_integer(field);
        if (v < 1) throw UsageError("r values must be positive");
        out.push_back(static_cast<std::size_t>(v));
      } else {
        const long long lo = parse_integer(field.substr(0, dots));
        const long long hi = parse_integer(field.substr(dots + 2));
        if (lo < 1 || hi < lo) throw UsageError("bad r range '" + std::string(field) + "'");
        for (long long v = lo; v <= hi; ++v) out.push_back(static_cast<std::size_t>(v));
      }
    } catch (const Error&) {
      throw UsageError("bad r list '" + text + "'");
    }
  }
  return out;
}

std::size_t input_dimension(Method m, const LabeledMatrixDataset& data) {
  return m == Method::L2BLDA ? data.rows() * data.cols() : data.rows();
}

void require_r_in_range(std::size_t r, Method m, const LabeledMatrixDataset& data) {
  const std::size_t limit = input_dimension(m, data);
  if (r < 1 || r > limit) {
    throw UsageError("--r " + std::to_string(r) + " outside 1.." + std::to_string(limit) + " for " +
                     std::string(method_name(m)));
  }
}

struct CorruptionFlags {
  std::string kind;
  double area_ratio = 0.0;
  double noise_mean = 0.0;
  double noise_variance = 0.2;
  std::size_t count = 100;

  void attach(CLI::App* app, bool required) {
    auto* k = app->add_option("--kind", kind, "block | gaussian | dummy")
                  ->check(CLI::IsMember({"block", "gaussian", "dummy"}));
    if (required) k->required();
    app->add_option("--area-ratio", area_ratio, "fraction of the image covered by the block or patch")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--noise-mean", noise_mean, "Gaussian patch mean")->capture_default_str();
    app->add_option("--noise-variance", noise_variance, "Gaussian patch variance")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app->add_option("--count", count, "number of dummy images")->capture_default_str();
  }

  CorruptionSpec spec(std::uint64_t seed) const {
    CorruptionSpec s;
    s.kind = parse_corruption_kind(kind);
    s.area_ratio = area_ratio;
    s.noise_mean = noise_mean;
    s.noise_variance = noise_variance;
    s.count = count;
    s.seed = seed;
    return s;
  }
};

struct Options {
  std::uint64_t seed = 0;

  std::string manifest;
  std::string output;
  std::string method;
  std::string projector;
  std::size_t r = 0;
  std::optional<double> ridge;

  std::string train;
  std::string test;
  std::size_t per_class_train = 0;
  std::string methods = "2dblda";
  std::string r_list;
  std::string metric = "accuracy";
  std::string train_corruption;

  std::size_t trials = 100;
  CorruptionFlags corruption;
};

int cmd_fit(const Options& o) {
  const auto data = load_dataset(o.manifest);
  const Method m = parse_method(o.method);
  require_r_in_range(o.r, m, data);

  std::optional<double> ridge = o.ridge;
  const auto stats = compute_stats(data);
  if (m == Method::TwoDLDA && !ridge) {
    const double auto_value = auto_ridge(build_scatters(data, stats).within);
    if (auto_value > 0.0) {
      std::cerr << "warning: within-class scatter is singular; applying ridge " << format_double(auto_value) << "\n";
    }
    ridge = auto_value;
  }
  const Projector p = fit(m, data, o.r, ridge);
  save_projector(p, o.output);
  std::cout << "method=" << method_name(m) << " r=" << p.rank() << " eigenvalues=" << join_numbers(p.eigenvalues)
            << " delta=" << format_double(delta(stats)) << "\n";
  return 0;
}

int cmd_transform(const Options& o, bool reconstruct_images) {
  const Projector p = load_projector(o.projector);
  const auto data = load_dataset(o.manifest);
  LabeledMatrixDataset out;
  out.class_count = data.class_count;
  out.labels = data.labels;
  for (const Matrix& raw : data.samples) {
    const Matrix x = conform_input(p, raw);
    if (x.rows() != p.d1 || x.cols() != p.d2) {
      throw UsageError("images are " + std::to_string(raw.rows()) + "x" + std::to_string(raw.cols()) +
                       " but the projector expects " + std::to_string(p.d1) + "x" + std::to_string(p.d2));
    }
    out.samples.push_back(reconstruct_images ? reconstruct(p, x) : project(p, x));
  }
  const fs::path manifest = save_dataset(out, o.output, reconstruct_images ? "recon" : "proj");
  if (reconstruct_images) {
    std::cout << "are=" << format_double(average_reconstruction_error(data, p)) << "\n";
  }
  std::cout << "wrote " << out.size() << " matrices; manifest " << manifest.string() << "\n";
  return 0;
}

int cmd_curve(const Options& o) {
  LabeledMatrixDataset train;
  LabeledMatrixDataset test;
  std::string dataset_id;
  if (!o.train.empty()) {
    train = load_dataset(o.train);
    test = o.test.empty() ? train : load_dataset(o.test);
    dataset_id = o.train;
  } else if (!o.manifest.empty()) {
    if (o.per_class_train == 0) throw UsageError("--manifest requires --per-class-train");
    auto parts = split(load_dataset(o.manifest), o.per_class_train, o.seed);
    train = std::move(parts.first);
    test = std::move(parts.second);
    dataset_id = o.manifest;
  } else {
    throw UsageError("curve needs --train [--test] or --manifest with --per-class-train");
  }
  if (test.size() > 0 && (test.rows() != train.rows() || test.cols() != train.cols())) {
    throw UsageError("train and test images differ in size");
  }

  if (!o.train_corruption.empty()) {
    CorruptionFlags flags = o.corruption;
    flags.kind = o.train_corruption;
    train = corrupt_dataset(train, flags.spec(o.seed));
  }

  const Metric metric = parse_metric(o.metric);
  std::vector<Method> methods;
  for (auto name : split_fields(o.methods)) {
    try {
      methods.push_back(parse_method(name));
    } catch (const Error&) {
      throw UsageError("unknown method '" + std::string(name) + "'");
    }
  }
  if (methods.empty()) throw UsageError("--methods is empty");

  std::vector<ExperimentReport> reports;
  for (Method m : methods) {
    CurveSpec spec;
    spec.method = m;
    spec.metric = metric;
    spec.ridge = o.ridge;
    spec.seed = o.seed;
    spec.dataset = dataset_id;
    if (o.r_list.empty()) {
      for (std::size_t r = 1; r <= input_dimension(m, train); ++r) spec.r_values.push_back(r);
    } else {
      spec.r_values = parse_r_list(o.r_list);
      for (std::size_t r : spec.r_values) require_r_in_range(r, m, train);
    }
    reports.push_back(metric_curve(train, test, spec));
  }
  const std::string csv = reports_to_csv(reports);
  write_file_atomic(o.output, csv);
  std::size_t rows = 0;
  for (const auto& rep : reports) rows += rep.rows.size();
  std::cout << "wrote " << rows << " rows to " << o.output << "\n";
  return 0;
}

int cmd_corrupt(const Options& o) {
  const auto data = load_dataset(o.manifest);
  const CorruptionSpec spec = o.corruption.spec(o.seed);
  const auto corrupted = corrupt_dataset(data, spec);
  const fs::path manifest = save_dataset(corrupted, o.output, "img");
  write_file_atomic(fs::path(o.output) / "corruption.json", to_json(spec));
  std::cout << "wrote " << corrupted.size() << " images; manifest " << manifest.string() << "\n";
  return 0;
}

int cmd_bound_check(const Options& o) {
  const auto data = load_dataset(o.manifest);
  const BoundVerification ver = verify_bound(data, o.trials, o.seed);
  std::string csv = "trial,epsilon_b,rhs,margin,b_cap\n";
  for (const auto& t : ver.trials) {
    const auto& rep = t.check.report;
    csv += std::to_string(t.trial) + ',' + format_double(rep.epsilon_b) + ',' + format_double(rep.rhs) + ',' +
           format_double(rep.margin) + ',' + format_double(rep.b_cap) + '\n';
  }
  write_file_atomic(o.output, csv);
  std::size_t chain_failures = 0;
  for (const auto& t : ver.trials) {
    for (const auto& p : t.check.pairs) {
      if (!(p.norm_chain_holds && p.shrink_holds && p.trade_holds)) ++chain_failures;
    }
  }
  std::cout << "success_fraction=" << format_double(ver.success_fraction) << " evaluated=" << ver.trials.size()
            << " skipped=" << ver.skipped << " chain_violations=" << chain_failures << "\n";
  return 0;
}

int cmd_split(const Options& o) {
  const auto entries = read_manifest(o.manifest);
  const auto data = load_dataset(o.manifest);
  const SplitIndices idx = split_indices(data, o.per_class_train, o.seed);
  const fs::path dir(o.output);
  fs::create_directories(dir);
  std::vector<ManifestEntry> train, test;
  for (std::size_t l : idx.train) train.push_back(entries[l]);
  for (std::size_t l : idx.test) test.push_back(entries[l]);
  write_manifest(dir / "train.txt", train);
  write_manifest(dir / "test.txt", test);
  std::cout << "train=" << train.size() << " test=" << test.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-dimensional Bhattacharyya-bound LDA toolkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  Options o;
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "seed for every random choice")->capture_default_str();
  };
  auto existing = [](CLI::App* sub, const std::string& name, std::string& target, const std::string& help) {
    return sub->add_option(name, target, help)->check(CLI::ExistingFile);
  };

  auto* fit_cmd = app.add_subcommand("fit", "fit a projector and write it to a file");
  existing(fit_cmd, "--manifest", o.manifest, "training manifest")->required();
  fit_cmd->add_option("--method", o.method, "2dblda | 2dlda | 2dpca | l2blda")->required()->check(CLI::IsMember(kMethods));
  fit_cmd->add_option("--r", o.r, "reduced dimension")->required()->check(CLI::PositiveNumber);
  fit_cmd->add_option("--ridge", o.ridge, "2DLDA within-class ridge (default: automatic)")->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--output", o.output, "projector file")->required();
  add_seed(fit_cmd);

  auto* project_cmd = app.add_subcommand("project", "project images with a fitted projector");
  auto* recon_cmd = app.add_subcommand("reconstruct", "reconstruct images as W Wt X");
  for (auto* sub : {project_cmd, recon_cmd}) {
    existing(sub, "--projector", o.projector, "projector file")->required();
    existing(sub, "--manifest", o.manifest, "image manifest")->required();
    sub->add_option("--output", o.output, "output directory")->required();
  }

  auto* curve_cmd = app.add_subcommand("curve", "metric versus reduced dimension");
  existing(curve_cmd, "--train", o.train, "training manifest");
  existing(curve_cmd, "--test", o.test, "test manifest (accuracy)");
  existing(curve_cmd, "--manifest", o.manifest, "single manifest to split per class");
  curve_cmd->add_option("--per-class-train", o.per_class_train, "training images per class when splitting");
  curve_cmd->add_option("--methods", o.methods, "comma-separated methods")->capture_default_str();
  curve_cmd->add_option("--r", o.r_list, "reduced dimensions, e.g. 1..10 or 1,2,5 (default: all)");
  curve_cmd->add_option("--metric", o.metric, "accuracy | are")->check(CLI::IsMember({"accuracy", "are"}))->capture_default_str();
  curve_cmd->add_option("--ridge", o.ridge, "2DLDA within-class ridge")->check(CLI::NonNegativeNumber);
  curve_cmd->add_option("--corrupt-train", o.train_corruption, "corrupt training images: block | gaussian | dummy")
      ->check(CLI::IsMember({"block", "gaussian", "dummy"}));
  o.corruption.attach(curve_cmd, false);
  curve_cmd->add_option("--output", o.output, "report CSV")->required();
  add_seed(curve_cmd);

  auto* corrupt_cmd = app.add_subcommand("corrupt", "write a corrupted copy of a dataset");
  existing(corrupt_cmd, "--manifest", o.manifest, "input manifest")->required();
  o.corruption.attach(corrupt_cmd, true);
  corrupt_cmd->add_option("--output", o.output, "output directory")->required();
  add_seed(corrupt_cmd);

  auto* bound_cmd = app.add_subcommand("bound-check", "check the Bhattacharyya error bound on random directions");
  existing(bound_cmd, "--manifest", o.manifest, "dataset manifest")->required();
  bound_cmd->add_option("--trials", o.trials, "number of random directions")->capture_default_str();
  bound_cmd->add_option("--output", o.output, "per-trial CSV")->required();
  add_seed(bound_cmd);

  auto* split_cmd = app.add_subcommand("split", "seeded per-class train/test split");
  existing(split_cmd, "--manifest", o.manifest, "dataset manifest")->required();
  split_cmd->add_option("--per-class-train", o.per_class_train, "training images per class")
      ->required()
      ->check(CLI::PositiveNumber);
  split_cmd->add_option("--output", o.output, "directory for train.txt and test.txt")->required();
  add_seed(split_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*fit_cmd) return cmd_fit(o);
    if (*project_cmd) return cmd_transform(o, false);
    if (*recon_cmd) return cmd_transform(o, true);
    if (*curve_cmd) return cmd_curve(o);
    if (*corrupt_cmd) return cmd_corrupt(o);
    if (*bound_cmd) return cmd_bound_check(o);
    if (*split_cmd) return cmd_split(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
